use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use super::ring::{CoeffRing, RingElem};
use super::trunc::TruncationSet;
use super::universal::{family, OpTag};
use crate::error::{Error, Result};

/// A truncated Witt vector: one coefficient per element of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittVector {
    trunc: TruncationSet,
    ring: CoeffRing,
    coeffs: Vec<RingElem>,
}

/// How the twisted Frobenius is read when `n` is the characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrobeniusModel {
    /// `F_n - [t]^(n-1) * res : W_S -> W_{S/n}`.
    Truncating,
    /// `W(phi) - [t]^(p-1) : W_S -> W_S` with `phi` the `p`-th power map of a
    /// ring of characteristic `p`.
    Endomorphism,
}

impl WittVector {
    pub fn new(trunc: TruncationSet, ring: CoeffRing, coeffs: Vec<RingElem>) -> Result<Self> {
        if coeffs.len() != trunc.len() {
            return Err(Error::InvalidInput(format!(
                "{} coefficients given for truncation set {trunc}",
                coeffs.len()
            )));
        }
        for c in &coeffs {
            ring.check(c)?;
        }
        Ok(WittVector {
            trunc,
            ring,
            coeffs,
        })
    }

    pub fn zero(trunc: &TruncationSet, ring: &CoeffRing) -> Self {
        WittVector {
            trunc: trunc.clone(),
            ring: ring.clone(),
            coeffs: vec![ring.zero(); trunc.len()],
        }
    }

    pub fn one(trunc: &TruncationSet, ring: &CoeffRing) -> Self {
        teichmuller(ring.one(), trunc, ring)
    }

    pub fn from_ints(trunc: &TruncationSet, ring: &CoeffRing, coeffs: &[i64]) -> Result<Self> {
        let c = coeffs.iter().map(|&x| ring.from_i64(x)).collect();
        Self::new(trunc.clone(), ring.clone(), c)
    }

    /// Parses coefficient strings in ring syntax.
    pub fn parse(trunc: &TruncationSet, ring: &CoeffRing, coeffs: &[&str]) -> Result<Self> {
        let c = coeffs
            .iter()
            .map(|s| ring.parse_elem(s))
            .collect::<Result<_>>()?;
        Self::new(trunc.clone(), ring.clone(), c)
    }

    /// Generic vector over `Z[x_d : d in S]`.
    pub fn generic(trunc: &TruncationSet, prefix: &str) -> Self {
        let coeffs = trunc
            .elements()
            .iter()
            .map(|d| RingElem::Poly(crate::arith::ZPoly::var(&format!("{prefix}{d}"))))
            .collect();
        WittVector {
            trunc: trunc.clone(),
            ring: CoeffRing::Polynomials,
            coeffs,
        }
    }

    pub fn trunc(&self) -> &TruncationSet {
        &self.trunc
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn coeff(&self, n: u64) -> Option<&RingElem> {
        self.trunc.index_of(n).map(|i| &self.coeffs[i])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    fn compatible(&self, other: &WittVector) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(format!(
                "{} vs {}",
                self.trunc, other.trunc
            )));
        }
        Ok(())
    }

    fn with_coeffs(&self, trunc: TruncationSet, coeffs: Vec<RingElem>) -> WittVector {
        WittVector {
            trunc,
            ring: self.ring.clone(),
            coeffs,
        }
    }

    /// `w_n = sum_{d | n} d * a_d^(n/d)` for each `n` in `S`.
    pub fn ghost(&self) -> Vec<RingElem> {
        let r = &self.ring;
        self.trunc
            .elements()
            .iter()
            .map(|&n| {
                let mut w = r.zero();
                for d in self.trunc.divisors_in(n) {
                    let a = &self.coeffs[self.trunc.index_of(d).unwrap()];
                    let t = r.mul_int(&r.pow(a, n / d), &BigInt::from(d));
                    w = r.add(&w, &t);
                }
                w
            })
            .collect()
    }

    fn binary(&self, op: OpTag, other: &WittVector) -> Result<WittVector> {
        self.compatible(other)?;
        let fam = family(op, &self.trunc)?;
        let c = fam.eval(&self.ring, &self.coeffs, Some(&other.coeffs));
        Ok(self.with_coeffs(self.trunc.clone(), c))
    }

    pub fn add(&self, other: &WittVector) -> Result<WittVector> {
        self.binary(OpTag::Sum, other)
    }

    pub fn mul(&self, other: &WittVector) -> Result<WittVector> {
        self.binary(OpTag::Product, other)
    }

    pub fn neg(&self) -> WittVector {
        let fam = family(OpTag::Negation, &self.trunc).expect("negation polynomials are integral");
        let c = fam.eval(&self.ring, &self.coeffs, None);
        self.with_coeffs(self.trunc.clone(), c)
    }

    pub fn sub(&self, other: &WittVector) -> Result<WittVector> {
        self.add(&other.neg())
    }

    /// `k`-fold Witt sum, negative `k` through negation.
    pub fn mul_int(&self, k: i64) -> WittVector {
        let mut acc = WittVector::zero(&self.trunc, &self.ring);
        let mut base = if k < 0 { self.neg() } else { self.clone() };
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.add(&base).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.add(&base).unwrap();
            }
        }
        acc
    }

    pub fn pow(&self, mut e: u64) -> WittVector {
        let mut acc = WittVector::one(&self.trunc, &self.ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).unwrap();
            }
        }
        acc
    }

    /// `F_n : W_S -> W_{S/n}`, characterized by `w_m(F_n a) = w_{nm}(a)`.
    pub fn frobenius(&self, n: u64) -> Result<WittVector> {
        if n == 0 || !self.trunc.contains(n) {
            return Err(Error::InvalidInput(format!(
                "Frobenius index {n} is not in the truncation set {}",
                self.trunc
            )));
        }
        let fam = family(OpTag::Frobenius(n), &self.trunc)?;
        let c = fam.eval(&self.ring, &self.coeffs, None);
        Ok(self.with_coeffs(fam.target.clone(), c))
    }

    /// `V_n : W_S -> W_T` with `(V_n a)_m = a_{m/n}` when `n | m`, else 0.
    /// `T/n` must be contained in `S`.
    pub fn verschiebung(&self, n: u64, target: &TruncationSet) -> Result<WittVector> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "Verschiebung index must be positive".into(),
            ));
        }
        let c = target
            .elements()
            .iter()
            .map(|&m| {
                if m % n != 0 {
                    return Ok(self.ring.zero());
                }
                self.coeff(m / n).cloned().ok_or_else(|| {
                    Error::InvalidTruncation(format!(
                        "target {target} needs component {} missing from {}",
                        m / n,
                        self.trunc
                    ))
                })
            })
            .collect::<Result<_>>()?;
        Ok(self.with_coeffs(target.clone(), c))
    }

    /// Default target of `V_n`: the divisor closure of `S ∪ nS`.
    pub fn verschiebung_default(&self, n: u64) -> Result<WittVector> {
        let t = TruncationSet::closure(self.trunc.elements().iter().flat_map(|&d| [d, d * n]))?;
        self.verschiebung(n, &t)
    }

    /// Restriction to a divisor-closed subset.
    pub fn restrict(&self, t: &TruncationSet) -> Result<WittVector> {
        if !t.is_subset(&self.trunc) {
            return Err(Error::TruncationMismatch(format!(
                "{t} is not contained in {}",
                self.trunc
            )));
        }
        let c = t
            .elements()
            .iter()
            .map(|&d| self.coeff(d).unwrap().clone())
            .collect();
        Ok(self.with_coeffs(t.clone(), c))
    }

    /// `W(phi)` for `phi(x) = x^p`, `p` the characteristic. An endomorphism
    /// of `W_S(R)` whenever `R` has prime characteristic `p`.
    pub fn frobenius_char_p(&self) -> Result<WittVector> {
        let p = prime_characteristic(&self.ring)?;
        let c = self.coeffs.iter().map(|a| self.ring.pow(a, p)).collect();
        Ok(self.with_coeffs(self.trunc.clone(), c))
    }

    /// Solves `k * x = self` over `Z`, if possible.
    pub fn div_int(&self, k: i64) -> Result<Option<WittVector>> {
        if self.ring != CoeffRing::Integers {
            return Err(Error::InvalidInput(
                "division is only available over Z".into(),
            ));
        }
        if k == 0 {
            return Err(Error::InvalidInput("division by zero".into()));
        }
        let kq = BigRational::from_integer(BigInt::from(k));
        let ghost: Vec<BigRational> = self
            .ghost()
            .into_iter()
            .map(|g| match g {
                RingElem::Int(x) => BigRational::from_integer(x) / &kq,
                _ => unreachable!(),
            })
            .collect();
        let a = ghost_inverse_q(&self.trunc, &ghost);
        let mut out = Vec::with_capacity(a.len());
        for x in a {
            if !x.is_integer() {
                return Ok(None);
            }
            out.push(RingElem::Int(x.to_integer()));
        }
        Ok(Some(self.with_coeffs(self.trunc.clone(), out)))
    }

    pub fn to_json(&self) -> Value {
        let coeffs: serde_json::Map<String, Value> = self
            .trunc
            .elements()
            .iter()
            .zip(&self.coeffs)
            .map(|(d, c)| (d.to_string(), Value::String(self.ring.fmt_elem(c))))
            .collect();
        json!({
            "trunc": self.trunc.elements(),
            "ring": self.ring.to_json(),
            "coeffs": coeffs,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let trunc = v
            .get("trunc")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("Witt vector needs a \"trunc\" array".into()))?
            .iter()
            .map(|x| {
                x.as_u64().ok_or_else(|| {
                    Error::Parse(format!("truncation entry {x} is not a positive integer"))
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        let trunc = TruncationSet::new(trunc)?;
        let ring = CoeffRing::from_json(
            v.get("ring")
                .ok_or_else(|| Error::Parse("Witt vector needs a \"ring\"".into()))?,
        )?;
        let map = v
            .get("coeffs")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("Witt vector needs a \"coeffs\" object".into()))?;
        let mut parsed = BTreeMap::new();
        for (k, val) in map {
            let d: u64 = k
                .parse()
                .map_err(|_| Error::Parse(format!("coefficient key {k:?} is not an index")))?;
            if !trunc.contains(d) {
                return Err(Error::InvalidInput(format!("index {d} is not in {trunc}")));
            }
            let text = match val {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                other => return Err(Error::Parse(format!("bad coefficient {other}"))),
            };
            parsed.insert(d, ring.parse_elem(&text)?);
        }
        // components not listed are zero
        let coeffs = trunc
            .elements()
            .iter()
            .map(|d| parsed.remove(d).unwrap_or_else(|| ring.zero()))
            .collect();
        WittVector::new(trunc, ring, coeffs)
    }

    pub fn fmt_coeffs(&self) -> String {
        fmt_list(&self.ring, &self.coeffs)
    }
}

/// `[x1,x2,...]` in ring syntax.
pub fn fmt_list(ring: &CoeffRing, xs: &[RingElem]) -> String {
    let s: Vec<String> = xs.iter().map(|x| ring.fmt_elem(x)).collect();
    format!("[{}]", s.join(","))
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_coeffs())
    }
}

fn prime_characteristic(ring: &CoeffRing) -> Result<u64> {
    let c = ring.characteristic();
    if c.is_zero() || !crate::arith::is_prime(&c) {
        return Err(Error::InvalidInput(format!(
            "{ring} does not have prime characteristic"
        )));
    }
    Ok(c.to_u64().expect("small characteristic"))
}

/// Inverts the ghost map over `Q`.
pub fn ghost_inverse_q(trunc: &TruncationSet, ghost: &[BigRational]) -> Vec<BigRational> {
    let mut a: Vec<BigRational> = Vec::with_capacity(ghost.len());
    for (i, &n) in trunc.elements().iter().enumerate() {
        let mut rest = ghost[i].clone();
        for (j, &d) in trunc.elements()[..i].iter().enumerate() {
            if n % d == 0 {
                let e = i32::try_from(n / d).unwrap();
                rest -= num_traits::pow::Pow::pow(&a[j], e)
                    * BigRational::from_integer(BigInt::from(d));
            }
        }
        a.push(rest / BigRational::from_integer(BigInt::from(n)));
    }
    a
}

/// The Teichmüller representative `[r] = (r, 0, ..., 0)`.
pub fn teichmuller(r: RingElem, trunc: &TruncationSet, ring: &CoeffRing) -> WittVector {
    let mut coeffs = vec![ring.zero(); trunc.len()];
    if !coeffs.is_empty() {
        coeffs[0] = r;
    }
    WittVector {
        trunc: trunc.clone(),
        ring: ring.clone(),
        coeffs,
    }
}

/// `F_n(a) - [t]^(n-1) * a`, read according to `model`.
pub fn twisted_frobenius(
    n: u64,
    a: &WittVector,
    t: &RingElem,
    model: FrobeniusModel,
) -> Result<WittVector> {
    a.ring.check(t)?;
    if n == 0 {
        return Err(Error::InvalidInput(
            "Frobenius index must be positive".into(),
        ));
    }
    match model {
        FrobeniusModel::Truncating => {
            let f = a.frobenius(n)?;
            let res = a.restrict(f.trunc())?;
            let twist = teichmuller(a.ring.pow(t, n - 1), f.trunc(), &a.ring);
            f.sub(&twist.mul(&res)?)
        }
        FrobeniusModel::Endomorphism => {
            let p = prime_characteristic(&a.ring)?;
            if n != p {
                return Err(Error::InvalidInput(format!(
                    "the endomorphism model needs n = {p}, the characteristic"
                )));
            }
            let f = a.frobenius_char_p()?;
            let twist = teichmuller(a.ring.pow(t, n - 1), &a.trunc, &a.ring);
            f.sub(&twist.mul(a)?)
        }
    }
}

/// Checks `F_p(a) ≡ a^p` modulo `p W_{S/p}(Z)`.
pub fn frobenius_congruence(a: &WittVector, p: u64) -> Result<bool> {
    let f = a.frobenius(p)?;
    let pw = a.restrict(f.trunc())?.pow(p);
    let diff = f.sub(&pw)?;
    Ok(diff.div_int(p as i64)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> CoeffRing {
        CoeffRing::Integers
    }

    fn ints(v: &WittVector) -> Vec<i64> {
        v.coeffs()
            .iter()
            .map(|c| match c {
                RingElem::Int(x) => x.to_i64().unwrap(),
                _ => panic!(),
            })
            .collect()
    }

    #[test]
    fn ghost_examples() {
        let s = TruncationSet::new([1, 2]).unwrap();
        let a = WittVector::from_ints(&s, &z(), &[1, 0]).unwrap();
        assert_eq!(fmt_list(&z(), &a.ghost()), "[1,1]");
        let s6 = TruncationSet::divisors_of(6);
        let b = WittVector::from_ints(&s6, &z(), &[0, 0, 0, 1]).unwrap();
        assert_eq!(fmt_list(&z(), &b.ghost()), "[0,0,0,6]");
        let r = teichmuller(RingElem::Int(BigInt::from(3)), &s6, &z());
        assert_eq!(fmt_list(&z(), &r.ghost()), "[3,9,27,729]");
    }

    #[test]
    fn arithmetic_examples() {
        let s = TruncationSet::new([1, 2]).unwrap();
        let a = WittVector::from_ints(&s, &z(), &[1, 0]).unwrap();
        assert_eq!(ints(&a.add(&a).unwrap()), vec![2, -1]);
        let t2 = WittVector::from_ints(&s, &z(), &[2, 0]).unwrap();
        let t3 = WittVector::from_ints(&s, &z(), &[3, 0]).unwrap();
        let sum = t2.add(&t3).unwrap();
        assert_eq!(ints(&sum), vec![5, -6]);
        assert_eq!(fmt_list(&z(), &sum.ghost()), "[5,13]");
        assert_eq!(ints(&t2.mul(&t3).unwrap()), vec![6, 0]);
        assert!(a.add(&a.neg()).unwrap().is_zero());
        let zero = WittVector::zero(&s, &z());
        let one = WittVector::one(&s, &z());
        let v = WittVector::from_ints(&s, &z(), &[4, -7]).unwrap();
        assert_eq!(one.mul(&v).unwrap(), v);
        assert!(zero.mul(&v).unwrap().is_zero());
    }

    #[test]
    fn frobenius_and_verschiebung() {
        let s = TruncationSet::new([1, 2]).unwrap();
        let a = WittVector::from_ints(&s, &z(), &[0, 1]).unwrap();
        assert_eq!(ints(&a.frobenius(2).unwrap()), vec![2]);
        let one = TruncationSet::new([1]).unwrap();
        let x = WittVector::from_ints(&one, &z(), &[5]).unwrap();
        let v = x.verschiebung(2, &s).unwrap();
        assert_eq!(ints(&v), vec![0, 5]);
        assert_eq!(v.frobenius(2).unwrap(), x.add(&x).unwrap());
        assert_eq!(x.verschiebung_default(2).unwrap().trunc(), &s);
        let bad = TruncationSet::divisors_of(4);
        assert!(x.verschiebung(2, &bad).is_err());
    }

    #[test]
    fn twisted_specializations_over_f2() {
        let s = TruncationSet::p_typical(2, 2);
        let f2 = CoeffRing::finite_field(2, 1).unwrap();
        let zero = f2.zero();
        for i in 0..4u64 {
            let a = WittVector::new(
                s.clone(),
                f2.clone(),
                vec![f2.element(i % 2), f2.element(i / 2)],
            )
            .unwrap();
            let t0 = twisted_frobenius(2, &a, &zero, FrobeniusModel::Truncating).unwrap();
            let sq = f2.pow(&a.coeffs()[0], 2);
            assert_eq!(t0.coeffs(), &[sq]);
        }
    }

    #[test]
    fn json_roundtrip() {
        let s = TruncationSet::divisors_of(6);
        let r = CoeffRing::parse("Zmod:9").unwrap();
        let v = WittVector::from_ints(&s, &r, &[4, 0, 7, 8]).unwrap();
        let j = v.to_json();
        assert_eq!(
            j.to_string(),
            r#"{"coeffs":{"1":"4","2":"0","3":"7","6":"8"},"ring":{"kind":"Zmod","m":"9"},"trunc":[1,2,3,6]}"#
        );
        assert_eq!(WittVector::from_json(&j).unwrap(), v);
        let lit = r#"{"trunc":[1,2,3,6],"ring":{"kind":"Zmod","m":9},"coeffs":{"1":"4","2":"0"}}"#;
        let w = WittVector::from_json(&serde_json::from_str(lit).unwrap()).unwrap();
        assert_eq!(w.coeff(1), Some(&RingElem::Int(BigInt::from(4))));
        assert!(w.coeff(6).map(|c| r.is_zero(c)).unwrap());
    }

    #[test]
    fn division_by_integers() {
        let s = TruncationSet::new([1, 2]).unwrap();
        let a = WittVector::from_ints(&s, &z(), &[3, -2]).unwrap();
        let three_a = a.mul_int(3);
        assert_eq!(three_a.div_int(3).unwrap(), Some(a.clone()));
        let one = WittVector::one(&s, &z());
        assert_eq!(one.div_int(2).unwrap(), None);
        assert!(frobenius_congruence(&a, 2).unwrap());
    }

    #[test]
    fn mul_int_negative() {
        let s = TruncationSet::divisors_of(4);
        let a = WittVector::from_ints(&s, &z(), &[1, 2, 3]).unwrap();
        assert!(a.mul_int(3).add(&a.mul_int(-3)).unwrap().is_zero());
        assert!(a.mul_int(0).is_zero());
    }
}
