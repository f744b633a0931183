//! Coefficient rings for Witt vectors.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::{is_prime, parse_bigint, parse_zpoly, Monomial, ZPoly};
use crate::error::{Error, Result};

/// `F_q` as `F_p[g]/(m(g))` for a monic irreducible `m` of degree `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
    k: usize,
    /// Monic modulus, coefficients from the constant term up; length `k + 1`.
    modulus: Vec<u64>,
}

/// Conway polynomials for the small fields used most often, constant term first.
const CONWAY: &[(u64, usize, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 2, &[3, 6, 1]),
];

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while a.len() > dm && !a.is_empty() {
        let top = *a.last().unwrap();
        if top != 0 {
            let c = top * lead_inv % p;
            let shift = a.len() - 1 - dm;
            for (i, &mi) in m.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - c * mi % p) % p;
            }
        }
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(p));
    e.x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn is_irreducible(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    // trial division by every monic polynomial of degree 1..=k/2
    for d in 1..=k / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut r = idx;
            for _ in 0..d {
                f.push(r % p);
                r /= p;
            }
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn new(p: u64, k: usize) -> Result<Self> {
        if !is_prime(&BigInt::from(p)) {
            return Err(Error::NotPrime(p.to_string()));
        }
        if k == 0 {
            return Err(Error::InvalidInput("field degree must be positive".into()));
        }
        if let Some((_, _, m)) = CONWAY.iter().find(|(q, d, _)| *q == p && *d == k) {
            return Ok(FiniteField {
                p,
                k,
                modulus: m.to_vec(),
            });
        }
        if k == 1 {
            return Ok(FiniteField {
                p,
                k,
                modulus: vec![0, 1],
            });
        }
        let count = p
            .checked_pow(k as u32)
            .ok_or_else(|| Error::InvalidInput(format!("F_{p}^{k} is too large")))?;
        for idx in 0..count {
            let mut m = Vec::with_capacity(k + 1);
            let mut r = idx;
            for _ in 0..k {
                m.push(r % p);
                r /= p;
            }
            m.push(1);
            if is_irreducible(&m, p) {
                return Ok(FiniteField { p, k, modulus: m });
            }
        }
        unreachable!("an irreducible polynomial of every degree exists")
    }

    /// Uses a caller-supplied monic modulus (constant term first).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(&BigInt::from(p)) {
            return Err(Error::NotPrime(p.to_string()));
        }
        if modulus.len() < 2 || modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidInput(
                "modulus must be monic with reduced coefficients".into(),
            ));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidInput("modulus is reducible".into()));
        }
        Ok(FiniteField {
            p,
            k: modulus.len() - 1,
            modulus,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn reduce(&self, v: Vec<u64>) -> Vec<u64> {
        let mut r = poly_rem(&v, &self.modulus, self.p);
        r.resize(self.k, 0);
        r
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; 2 * self.k - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        self.reduce(out)
    }

    fn embed(&self, n: &BigInt) -> Vec<u64> {
        let mut v = vec![0; self.k];
        v[0] = n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap();
        v
    }

    /// Element with index `i` in the canonical enumeration (base-`p` digits,
    /// constant coefficient least significant).
    fn element(&self, mut i: u64) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.k);
        for _ in 0..self.k {
            v.push(i % self.p);
            i /= self.p;
        }
        v
    }

    fn to_zpoly(&self, a: &[u64]) -> ZPoly {
        ZPoly::from_terms(
            a.iter()
                .enumerate()
                .map(|(i, &c)| (Monomial::var("g", i as u32), BigInt::from(c))),
        )
    }
}

/// A ring descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoeffRing {
    Integers,
    IntegersMod(BigInt),
    Finite(Arc<FiniteField>),
    /// `Z[vars]`, variables created on demand.
    Polynomials,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingElem {
    Int(BigInt),
    Fq(Vec<u64>),
    Poly(ZPoly),
}

impl CoeffRing {
    pub fn integers_mod(m: BigInt) -> Result<Self> {
        if m < BigInt::from(2) {
            return Err(Error::InvalidInput(format!(
                "modulus {m} must be at least 2"
            )));
        }
        Ok(CoeffRing::IntegersMod(m))
    }

    pub fn finite_field(p: u64, k: usize) -> Result<Self> {
        Ok(CoeffRing::Finite(Arc::new(FiniteField::new(p, k)?)))
    }

    /// Parses `Z`, `Zmod:m`, `Fq:p,k` or `Poly`.
    pub fn parse(src: &str) -> Result<Self> {
        let s = src.trim();
        let bad = || {
            Error::Parse(format!(
                "unknown ring {s:?}; expected Z, Zmod:m, Fq:p,k or Poly"
            ))
        };
        match s {
            "Z" => return Ok(CoeffRing::Integers),
            "Poly" => return Ok(CoeffRing::Polynomials),
            _ => {}
        }
        if let Some(m) = s.strip_prefix("Zmod:") {
            return Self::integers_mod(parse_bigint(m)?);
        }
        if let Some(rest) = s.strip_prefix("Fq:") {
            let (p, k) = rest.split_once(',').ok_or_else(bad)?;
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            let k: usize = k.trim().parse().map_err(|_| bad())?;
            return Self::finite_field(p, k);
        }
        Err(bad())
    }

    pub fn to_json(&self) -> Value {
        match self {
            CoeffRing::Integers => json!({"kind": "Z"}),
            CoeffRing::IntegersMod(m) => json!({"kind": "Zmod", "m": m.to_string()}),
            CoeffRing::Finite(f) => json!({"kind": "Fq", "p": f.p, "k": f.k}),
            CoeffRing::Polynomials => json!({"kind": "Poly"}),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("ring descriptor needs a \"kind\"".into()))?;
        let field = |name: &str| {
            v.get(name)
                .ok_or_else(|| Error::Parse(format!("ring descriptor {kind} needs {name:?}")))
        };
        match kind {
            "Z" => Ok(CoeffRing::Integers),
            "Poly" => Ok(CoeffRing::Polynomials),
            "Zmod" => Self::integers_mod(crate::json::bigint_from_value(field("m")?)?),
            "Fq" => {
                let p = crate::json::bigint_from_value(field("p")?)?;
                let k = crate::json::bigint_from_value(field("k")?)?;
                let p = p
                    .to_u64()
                    .ok_or_else(|| Error::InvalidInput("p out of range".into()))?;
                let k = k
                    .to_usize()
                    .ok_or_else(|| Error::InvalidInput("k out of range".into()))?;
                Self::finite_field(p, k)
            }
            other => Err(Error::Parse(format!("unknown ring kind {other:?}"))),
        }
    }

    /// Zero for `Z`, `m` for `Z/m`, `p` for `F_q`.
    pub fn characteristic(&self) -> BigInt {
        match self {
            CoeffRing::Integers | CoeffRing::Polynomials => BigInt::zero(),
            CoeffRing::IntegersMod(m) => m.clone(),
            CoeffRing::Finite(f) => BigInt::from(f.p),
        }
    }

    /// Number of elements, if finite.
    pub fn cardinality(&self) -> Option<BigInt> {
        match self {
            CoeffRing::IntegersMod(m) => Some(m.clone()),
            CoeffRing::Finite(f) => Some(BigInt::from(f.p).pow(f.k as u32)),
            _ => None,
        }
    }

    /// Whether every nonzero integer is a nonzero divisor.
    pub fn is_torsion_free(&self) -> bool {
        matches!(self, CoeffRing::Integers | CoeffRing::Polynomials)
    }

    /// The `i`-th element in canonical order: `0..m` for `Z/m`, base-`p`
    /// digits for `F_q`.
    pub fn element(&self, i: u64) -> RingElem {
        match self {
            CoeffRing::IntegersMod(m) => RingElem::Int(BigInt::from(i) % m),
            CoeffRing::Finite(f) => RingElem::Fq(f.element(i)),
            _ => RingElem::Int(BigInt::from(i)),
        }
    }

    pub fn elements(&self) -> Option<Vec<RingElem>> {
        let n = self.cardinality()?.to_u64()?;
        Some((0..n).map(|i| self.element(i)).collect())
    }

    pub fn zero(&self) -> RingElem {
        self.from_int(&BigInt::zero())
    }

    pub fn one(&self) -> RingElem {
        self.from_int(&BigInt::one())
    }

    pub fn from_int(&self, n: &BigInt) -> RingElem {
        match self {
            CoeffRing::Integers => RingElem::Int(n.clone()),
            CoeffRing::IntegersMod(m) => RingElem::Int(n.mod_floor(m)),
            CoeffRing::Finite(f) => RingElem::Fq(f.embed(n)),
            CoeffRing::Polynomials => RingElem::Poly(ZPoly::constant(n.clone())),
        }
    }

    pub fn from_i64(&self, n: i64) -> RingElem {
        self.from_int(&BigInt::from(n))
    }

    /// Checks that `x` is a reduced element of this ring.
    pub fn check(&self, x: &RingElem) -> Result<()> {
        let ok = match (self, x) {
            (CoeffRing::Integers, RingElem::Int(_)) => true,
            (CoeffRing::IntegersMod(m), RingElem::Int(n)) => !n.is_negative() && n < m,
            (CoeffRing::Finite(f), RingElem::Fq(v)) => v.len() == f.k && v.iter().all(|&c| c < f.p),
            (CoeffRing::Polynomials, RingElem::Poly(_)) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.to_string(),
                right: format!("{x:?}"),
            })
        }
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match (self, a, b) {
            (CoeffRing::Integers, RingElem::Int(x), RingElem::Int(y)) => RingElem::Int(x + y),
            (CoeffRing::IntegersMod(m), RingElem::Int(x), RingElem::Int(y)) => {
                RingElem::Int((x + y).mod_floor(m))
            }
            (CoeffRing::Finite(f), RingElem::Fq(x), RingElem::Fq(y)) => RingElem::Fq(f.add(x, y)),
            (CoeffRing::Polynomials, RingElem::Poly(x), RingElem::Poly(y)) => RingElem::Poly(x + y),
            _ => panic!("ring element of the wrong kind for {self}"),
        }
    }

    pub fn neg(&self, a: &RingElem) -> RingElem {
        match (self, a) {
            (CoeffRing::Integers, RingElem::Int(x)) => RingElem::Int(-x),
            (CoeffRing::IntegersMod(m), RingElem::Int(x)) => RingElem::Int((-x).mod_floor(m)),
            (CoeffRing::Finite(f), RingElem::Fq(x)) => RingElem::Fq(f.neg(x)),
            (CoeffRing::Polynomials, RingElem::Poly(x)) => RingElem::Poly(-x),
            _ => panic!("ring element of the wrong kind for {self}"),
        }
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> RingElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> RingElem {
        match (self, a, b) {
            (CoeffRing::Integers, RingElem::Int(x), RingElem::Int(y)) => RingElem::Int(x * y),
            (CoeffRing::IntegersMod(m), RingElem::Int(x), RingElem::Int(y)) => {
                RingElem::Int((x * y).mod_floor(m))
            }
            (CoeffRing::Finite(f), RingElem::Fq(x), RingElem::Fq(y)) => RingElem::Fq(f.mul(x, y)),
            (CoeffRing::Polynomials, RingElem::Poly(x), RingElem::Poly(y)) => RingElem::Poly(x * y),
            _ => panic!("ring element of the wrong kind for {self}"),
        }
    }

    pub fn mul_int(&self, a: &RingElem, n: &BigInt) -> RingElem {
        self.mul(a, &self.from_int(n))
    }

    pub fn pow(&self, a: &RingElem, mut e: u64) -> RingElem {
        if let (CoeffRing::Polynomials, RingElem::Poly(x)) = (self, a) {
            return RingElem::Poly(x.pow(u32::try_from(e).expect("exponent too large")));
        }
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_zero(&self, a: &RingElem) -> bool {
        match a {
            RingElem::Int(x) => x.is_zero(),
            RingElem::Fq(v) => v.iter().all(|&c| c == 0),
            RingElem::Poly(p) => p.is_zero(),
        }
    }

    pub fn parse_elem(&self, src: &str) -> Result<RingElem> {
        let s = src.trim();
        match self {
            CoeffRing::Integers | CoeffRing::IntegersMod(_) => Ok(self.from_int(&parse_bigint(s)?)),
            CoeffRing::Polynomials => Ok(RingElem::Poly(parse_zpoly(s)?)),
            CoeffRing::Finite(f) => {
                let p = parse_zpoly(s)?;
                if let Some(v) = p.vars().iter().find(|v| &***v != "g") {
                    return Err(Error::Parse(format!(
                        "field elements are polynomials in g, found variable {v}"
                    )));
                }
                let deg = p.degree_in("g").unwrap_or(0) as usize;
                let modp = BigInt::from(f.p);
                let mut raw = vec![0u64; deg.max(f.k) + 1];
                for (m, c) in p.terms() {
                    raw[m.exponent("g") as usize] = c.mod_floor(&modp).to_u64().unwrap();
                }
                Ok(RingElem::Fq(f.reduce(raw)))
            }
        }
    }

    pub fn fmt_elem(&self, a: &RingElem) -> String {
        match (self, a) {
            (_, RingElem::Int(x)) => x.to_string(),
            (CoeffRing::Finite(f), RingElem::Fq(v)) => f.to_zpoly(v).to_string(),
            (_, RingElem::Fq(v)) => format!("{v:?}"),
            (_, RingElem::Poly(p)) => p.to_string(),
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Integers => write!(f, "Z"),
            CoeffRing::IntegersMod(m) => write!(f, "Zmod:{m}"),
            CoeffRing::Finite(ff) => write!(f, "Fq:{},{}", ff.p, ff.k),
            CoeffRing::Polynomials => write!(f, "Poly"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields_are_fields() {
        for (p, k) in [(2, 2), (2, 3), (3, 2), (5, 2), (2, 5), (3, 4)] {
            let r = CoeffRing::finite_field(p, k).unwrap();
            let elems = r.elements().unwrap();
            assert_eq!(elems.len() as u64, p.pow(k as u32));
            for a in elems.iter().filter(|a| !r.is_zero(a)) {
                assert!(elems.iter().any(|b| r.mul(a, b) == r.one()), "{p}^{k}");
            }
        }
    }

    #[test]
    fn parse_and_print() {
        let r = CoeffRing::parse("Fq:3,2").unwrap();
        let g = r.parse_elem("g").unwrap();
        // g^2 = g + 1 in F_3[g]/(g^2+2g+2)
        assert_eq!(r.fmt_elem(&r.mul(&g, &g)), "g+1");
        assert_eq!(r.parse_elem("g^2").unwrap(), r.parse_elem("g+1").unwrap());
        assert_eq!(r.fmt_elem(&r.zero()), "0");
        let z = CoeffRing::parse("Zmod:9").unwrap();
        assert_eq!(z.parse_elem("-1").unwrap(), RingElem::Int(BigInt::from(8)));
        assert!(CoeffRing::parse("Fq:4,1").is_err());
        assert!(CoeffRing::parse("Q").is_err());
        for s in ["Z", "Zmod:8", "Fq:2,3", "Poly"] {
            let r = CoeffRing::parse(s).unwrap();
            assert_eq!(r.to_string(), s);
            assert_eq!(CoeffRing::from_json(&r.to_json()).unwrap(), r);
        }
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let r = CoeffRing::finite_field(2, 2).unwrap();
        let fixed: Vec<_> = r
            .elements()
            .unwrap()
            .into_iter()
            .filter(|a| r.pow(a, 2) == *a)
            .collect();
        assert_eq!(fixed.len(), 2);
    }
}
