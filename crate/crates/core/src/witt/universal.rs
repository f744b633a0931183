//! Universal polynomials for Witt vector operations, generated by solving
//! the triangular ghost system with exact division.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

use super::ring::{CoeffRing, RingElem};
use super::trunc::TruncationSet;
use crate::arith::{Monomial, ZPoly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpTag {
    Sum,
    Product,
    Negation,
    Frobenius(u64),
}

impl OpTag {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(OpTag::Sum),
            "product" => Ok(OpTag::Product),
            "neg" | "negation" => Ok(OpTag::Negation),
            _ => s
                .strip_prefix("frobenius-")
                .or_else(|| s.strip_prefix("frob-"))
                .and_then(|n| n.parse().ok())
                .filter(|&n| n > 0)
                .map(OpTag::Frobenius)
                .ok_or_else(|| {
                    Error::Parse(format!(
                        "unknown operation {s:?}; expected sum, product, neg or frobenius-N"
                    ))
                }),
        }
    }

    fn binary(self) -> bool {
        matches!(self, OpTag::Sum | OpTag::Product)
    }
}

impl fmt::Display for OpTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpTag::Sum => write!(f, "sum"),
            OpTag::Product => write!(f, "product"),
            OpTag::Negation => write!(f, "neg"),
            OpTag::Frobenius(n) => write!(f, "frobenius-{n}"),
        }
    }
}

pub fn a_var(d: u64) -> String {
    format!("a{d}")
}

pub fn b_var(d: u64) -> String {
    format!("b{d}")
}

/// `w_n = sum_{d | n, d in S} d * x_d^(n/d)` with `x_d` given by `var`.
pub fn ghost_poly(s: &TruncationSet, n: u64, var: impl Fn(u64) -> String) -> ZPoly {
    let mut w = ZPoly::zero();
    for d in s.divisors_in(n) {
        w.add_term(Monomial::var(&var(d), (n / d) as u32), BigInt::from(d));
    }
    w
}

/// A term list with variables resolved to input slots.
#[derive(Clone, Debug)]
struct Compiled {
    terms: Vec<(BigInt, Vec<(usize, u32)>)>,
}

/// The polynomials of one operation on one truncation set.
#[derive(Debug)]
pub struct UniversalFamily {
    pub op: OpTag,
    pub source: TruncationSet,
    pub target: TruncationSet,
    /// Indexed like `target.elements()`.
    pub polys: Vec<ZPoly>,
    compiled: Vec<Compiled>,
}

impl UniversalFamily {
    pub fn poly(&self, n: u64) -> Option<&ZPoly> {
        self.target.index_of(n).map(|i| &self.polys[i])
    }

    /// Evaluates every component at `a` (and `b` for binary operations),
    /// both indexed like `source`.
    pub fn eval(&self, ring: &CoeffRing, a: &[RingElem], b: Option<&[RingElem]>) -> Vec<RingElem> {
        let k = self.source.len();
        let inputs: Vec<&RingElem> = a.iter().chain(b.unwrap_or(&[])).collect();
        let mut powers: HashMap<(usize, u32), RingElem> = HashMap::new();
        self.compiled
            .iter()
            .map(|c| {
                let mut acc = ring.zero();
                for (coeff, factors) in &c.terms {
                    let mut t = ring.from_int(coeff);
                    for &(slot, e) in factors {
                        debug_assert!(slot < inputs.len() && (slot < k || b.is_some()));
                        let p = powers
                            .entry((slot, e))
                            .or_insert_with(|| ring.pow(inputs[slot], e as u64));
                        t = ring.mul(&t, p);
                        if ring.is_zero(&t) {
                            break;
                        }
                    }
                    acc = ring.add(&acc, &t);
                }
                acc
            })
            .collect()
    }
}

fn generate(op: OpTag, s: &TruncationSet) -> Result<UniversalFamily> {
    let target = match op {
        OpTag::Frobenius(n) => s.quotient(n),
        _ => s.clone(),
    };
    let ghost_a = |n: u64| ghost_poly(s, n, a_var);
    let ghost_b = |n: u64| ghost_poly(s, n, b_var);
    let mut polys: Vec<ZPoly> = Vec::with_capacity(target.len());
    for (idx, &n) in target.elements().iter().enumerate() {
        let mut rhs = match op {
            OpTag::Sum => &ghost_a(n) + &ghost_b(n),
            OpTag::Product => &ghost_a(n) * &ghost_b(n),
            OpTag::Negation => -ghost_a(n),
            OpTag::Frobenius(m) => ghost_a(m * n),
        };
        for (j, &d) in target.elements()[..idx].iter().enumerate() {
            if n % d == 0 {
                rhs = &rhs - &polys[j].pow((n / d) as u32).scale(&BigInt::from(d));
            }
        }
        let p = rhs.div_exact(&BigInt::from(n)).ok_or_else(|| {
            Error::Falsified(format!("ghost division by {n} failed for {op} on {s}"))
        })?;
        polys.push(p);
    }
    let slot = |name: &str| -> usize {
        let (side, d) = name.split_at(1);
        let d: u64 = d.parse().expect("generated variable name");
        let i = s.index_of(d).expect("generated variable index");
        if side == "a" {
            i
        } else {
            s.len() + i
        }
    };
    let compiled = polys
        .iter()
        .map(|p| Compiled {
            terms: p
                .terms()
                .map(|(m, c)| {
                    let f = m.factors().iter().map(|(v, e)| (slot(v), *e)).collect();
                    (c.clone(), f)
                })
                .collect(),
        })
        .collect();
    Ok(UniversalFamily {
        op,
        source: s.clone(),
        target,
        polys,
        compiled,
    })
}

type Key = (OpTag, TruncationSet);

/// Memo table for universal polynomials, shared across threads.
#[derive(Default)]
pub struct UniversalCache {
    map: RwLock<HashMap<Key, Arc<UniversalFamily>>>,
}

impl UniversalCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static UniversalCache {
        static CACHE: OnceLock<UniversalCache> = OnceLock::new();
        CACHE.get_or_init(UniversalCache::new)
    }

    pub fn get(&self, op: OpTag, s: &TruncationSet) -> Result<Arc<UniversalFamily>> {
        if let OpTag::Frobenius(0) = op {
            return Err(Error::InvalidInput(
                "Frobenius index must be positive".into(),
            ));
        }
        let key = (op, s.clone());
        if let Some(f) = self.map.read().unwrap().get(&key) {
            return Ok(f.clone());
        }
        // Generated outside the lock; a concurrent duplicate yields an equal value.
        let fam = Arc::new(generate(op, s)?);
        let mut w = self.map.write().unwrap();
        Ok(w.entry(key).or_insert(fam).clone())
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Universal polynomial for component `n` of `op` on `s`.
pub fn universal_poly(op: OpTag, n: u64, s: &TruncationSet) -> Result<ZPoly> {
    let fam = UniversalCache::global().get(op, s)?;
    fam.poly(n).cloned().ok_or_else(|| {
        Error::InvalidInput(format!("component {n} is not in the target {}", fam.target))
    })
}

pub(super) fn family(op: OpTag, s: &TruncationSet) -> Result<Arc<UniversalFamily>> {
    UniversalCache::global().get(op, s)
}

/// Checks the defining ghost identity of a family as a polynomial identity.
pub fn certify(fam: &UniversalFamily) -> bool {
    let s = &fam.source;
    let subs: std::collections::BTreeMap<String, ZPoly> = fam
        .target
        .elements()
        .iter()
        .zip(&fam.polys)
        .map(|(&d, p)| (format!("p{d}"), p.clone()))
        .collect();
    fam.target.elements().iter().all(|&n| {
        let lhs = ghost_poly(&fam.target, n, |d| format!("p{d}")).substitute(&subs);
        let rhs = match fam.op {
            OpTag::Sum => &ghost_poly(s, n, a_var) + &ghost_poly(s, n, b_var),
            OpTag::Product => &ghost_poly(s, n, a_var) * &ghost_poly(s, n, b_var),
            OpTag::Negation => -ghost_poly(s, n, a_var),
            OpTag::Frobenius(m) => ghost_poly(s, m * n, a_var),
        };
        lhs == rhs
    }) && (fam.op.binary()
        || !fam
            .polys
            .iter()
            .any(|p| p.vars().iter().any(|v| v.starts_with('b'))))
}

impl fmt::Display for UniversalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, p) in self.target.elements().iter().zip(&self.polys) {
            writeln!(f, "{n}\t{p}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_zpoly;

    fn s12() -> TruncationSet {
        TruncationSet::new([1, 2]).unwrap()
    }

    #[test]
    fn small_sum_and_product() {
        let s = s12();
        assert_eq!(
            universal_poly(OpTag::Sum, 1, &s).unwrap(),
            parse_zpoly("a1+b1").unwrap()
        );
        assert_eq!(
            universal_poly(OpTag::Sum, 2, &s).unwrap(),
            parse_zpoly("a2+b2-a1*b1").unwrap()
        );
        assert_eq!(
            universal_poly(OpTag::Product, 2, &s).unwrap(),
            parse_zpoly("a1^2*b2+a2*b1^2+2*a2*b2").unwrap()
        );
        assert_eq!(
            universal_poly(OpTag::Frobenius(2), 1, &s).unwrap(),
            parse_zpoly("a1^2+2*a2").unwrap()
        );
        assert!(universal_poly(OpTag::Frobenius(2), 2, &s).is_err());
    }

    #[test]
    fn negation_at_two_is_not_componentwise() {
        let s = s12();
        assert_eq!(
            universal_poly(OpTag::Negation, 1, &s).unwrap(),
            parse_zpoly("-a1").unwrap()
        );
        assert_eq!(
            universal_poly(OpTag::Negation, 2, &s).unwrap(),
            parse_zpoly("-a2-a1^2").unwrap()
        );
    }

    #[test]
    fn families_certify() {
        let s = TruncationSet::divisors_of(6);
        for op in [
            OpTag::Sum,
            OpTag::Product,
            OpTag::Negation,
            OpTag::Frobenius(2),
            OpTag::Frobenius(3),
        ] {
            assert!(certify(&family(op, &s).unwrap()), "{op}");
        }
    }

    #[test]
    fn cache_is_a_memo() {
        let cache = UniversalCache::new();
        let s = TruncationSet::p_typical(3, 3);
        let handles: Vec<_> = std::thread::scope(|sc| {
            (0..4)
                .map(|_| sc.spawn(|| cache.get(OpTag::Product, &s).unwrap().polys.clone()))
                .collect::<Vec<_>>()
                .into_iter()
                .map(|h| h.join().unwrap())
                .collect()
        });
        assert!(handles.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(cache.len(), 1);
    }
}
