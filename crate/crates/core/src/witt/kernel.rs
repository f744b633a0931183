//! Exhaustive kernels of operators on Witt vectors over finite rings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::ring::CoeffRing;
use super::trunc::TruncationSet;
use super::vector::WittVector;
use crate::error::{Error, Result};

/// Default cap on the number of vectors searched.
pub const DEFAULT_BOUND: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct KernelOptions {
    pub bound: u64,
    /// Worker threads; `0` lets rayon decide.
    pub jobs: usize,
}

impl Default for KernelOptions {
    fn default() -> Self {
        KernelOptions {
            bound: DEFAULT_BOUND,
            jobs: 1,
        }
    }
}

/// The `i`-th vector in big-endian mixed-radix order: the component at the
/// smallest index of `S` is the most significant digit.
pub fn nth_vector(trunc: &TruncationSet, ring: &CoeffRing, q: u64, mut i: u64) -> WittVector {
    let mut digits = vec![0u64; trunc.len()];
    for d in digits.iter_mut().rev() {
        *d = i % q;
        i /= q;
    }
    let coeffs = digits.into_iter().map(|d| ring.element(d)).collect();
    WittVector::new(trunc.clone(), ring.clone(), coeffs).expect("canonical elements are reduced")
}

/// All `a` in `W_S(R)` with `op(a) = 0`, in canonical order.
///
/// When `additive` is set the result is checked to be a subgroup; a failure
/// is reported as a falsification.
pub fn kernel_enumerate<F>(
    trunc: &TruncationSet,
    ring: &CoeffRing,
    op: F,
    additive: bool,
    opts: &KernelOptions,
) -> Result<Vec<WittVector>>
where
    F: Fn(&WittVector) -> Result<WittVector> + Sync,
{
    let q = ring
        .cardinality()
        .ok_or_else(|| Error::InvalidInput(format!("{ring} is not finite")))?;
    let size = q.pow(trunc.len() as u32);
    if size > BigInt::from(opts.bound) {
        return Err(Error::BoundExceeded {
            size: size.to_string(),
            bound: opts.bound.to_string(),
        });
    }
    let (q, size) = (q.to_u64().unwrap(), size.to_u64().unwrap());
    let search = || -> Result<Vec<WittVector>> {
        let hits: Vec<Result<Option<WittVector>>> = (0..size)
            .into_par_iter()
            .map(|i| {
                let a = nth_vector(trunc, ring, q, i);
                Ok(op(&a)?.is_zero().then_some(a))
            })
            .collect();
        hits.into_iter().filter_map(Result::transpose).collect()
    };
    let kernel = if opts.jobs == 1 {
        (0..size)
            .map(|i| nth_vector(trunc, ring, q, i))
            .filter_map(|a| match op(&a) {
                Ok(v) if v.is_zero() => Some(Ok(a)),
                Ok(_) => None,
                Err(e) => Some(Err(e)),
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::InvalidInput(e.to_string()))?
            .install(search)?
    };
    if additive {
        check_subgroup(&kernel)?;
    }
    Ok(kernel)
}

/// Contains zero and is closed under Witt addition and negation.
pub fn check_subgroup(k: &[WittVector]) -> Result<()> {
    if !k.iter().any(WittVector::is_zero) {
        return Err(Error::Falsified(
            "kernel of an additive map misses zero".into(),
        ));
    }
    for a in k {
        if !k.contains(&a.neg()) {
            return Err(Error::Falsified(format!(
                "kernel not closed under negation at {a}"
            )));
        }
        for b in k {
            if !k.contains(&a.add(b)?) {
                return Err(Error::Falsified(format!(
                    "kernel not closed under addition at {a} + {b}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::vector::{twisted_frobenius, FrobeniusModel};

    fn count(p: u64, k: usize, t: u64, model: FrobeniusModel, jobs: usize) -> Vec<WittVector> {
        let s = TruncationSet::p_typical(p, 2);
        let r = CoeffRing::finite_field(p, k).unwrap();
        let t = r.element(t);
        let opts = KernelOptions {
            jobs,
            ..Default::default()
        };
        kernel_enumerate(&s, &r, |a| twisted_frobenius(p, a, &t, model), true, &opts).unwrap()
    }

    #[test]
    fn truncating_kernels() {
        assert_eq!(count(2, 1, 1, FrobeniusModel::Truncating, 1).len(), 4);
        let k0 = count(2, 1, 0, FrobeniusModel::Truncating, 1);
        let shown: Vec<String> = k0.iter().map(ToString::to_string).collect();
        assert_eq!(shown, vec!["[0,0]", "[0,1]"]);
        assert_eq!(count(2, 2, 1, FrobeniusModel::Truncating, 1).len(), 8);
    }

    #[test]
    fn endomorphism_kernels() {
        assert_eq!(count(2, 1, 1, FrobeniusModel::Endomorphism, 1).len(), 4);
        assert_eq!(count(3, 1, 1, FrobeniusModel::Endomorphism, 1).len(), 9);
        let k = count(2, 2, 1, FrobeniusModel::Endomorphism, 1);
        let shown: Vec<String> = k.iter().map(ToString::to_string).collect();
        assert_eq!(shown, vec!["[0,0]", "[0,1]", "[1,0]", "[1,1]"]);
    }

    #[test]
    fn parallel_order_is_canonical() {
        let a = count(3, 2, 1, FrobeniusModel::Truncating, 1);
        let b = count(3, 2, 1, FrobeniusModel::Truncating, 4);
        assert_eq!(a, b);
    }

    #[test]
    fn bound_is_enforced() {
        let s = TruncationSet::divisors_of(6);
        let r = CoeffRing::finite_field(3, 2).unwrap();
        let opts = KernelOptions {
            bound: 100,
            jobs: 1,
        };
        let e = kernel_enumerate(&s, &r, |a| Ok(a.clone()), true, &opts).unwrap_err();
        assert!(matches!(e, Error::BoundExceeded { .. }));
    }
}
