//! Sparse multivariate polynomials with exact coefficients.
//!
//! Indeterminates are named. A monomial stores only the variables with a
//! positive exponent, sorted by name; terms are kept in graded
//! lexicographic order so that printing is deterministic.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};

use crate::error::{Error, Result};

pub type Var = Arc<str>;

/// Coefficient domain for [`Poly`].
pub trait Coeff:
    Clone + Num + Neg<Output = Self> + fmt::Display + fmt::Debug + Send + Sync + 'static
{
    fn from_bigint(n: BigInt) -> Self;
    fn is_negative_coeff(&self) -> bool;
    fn abs_coeff(&self) -> Self;
}

impl Coeff for BigInt {
    fn from_bigint(n: BigInt) -> Self {
        n
    }
    fn is_negative_coeff(&self) -> bool {
        self.is_negative()
    }
    fn abs_coeff(&self) -> Self {
        self.abs()
    }
}

impl Coeff for BigRational {
    fn from_bigint(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }
    fn is_negative_coeff(&self) -> bool {
        self.is_negative()
    }
    fn abs_coeff(&self) -> Self {
        self.abs()
    }
}

/// A monomial: `(variable, exponent)` pairs sorted by variable name, all
/// exponents positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(Arc::from(name), exp)])
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.0
            .iter()
            .find(|(v, _)| &**v == var)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Removes `var` and returns its exponent.
    pub fn split_off(&self, var: &str) -> (u32, Monomial) {
        let mut exp = 0;
        let rest = self
            .0
            .iter()
            .filter(|(v, e)| {
                if &**v == var {
                    exp = *e;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (exp, Monomial(rest))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// alphabetically first variable where the two differ.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    // `self` has a variable earlier in the alphabet that `other` lacks
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial over a coefficient domain `C`.
///
/// The declared indeterminate set is tracked explicitly and is the union
/// of the operands' sets under every arithmetic operation.
#[derive(Clone, Debug)]
pub struct Poly<C: Coeff> {
    vars: BTreeSet<Var>,
    terms: BTreeMap<Monomial, C>,
}

pub type QPoly = Poly<BigRational>;
pub type ZPoly = Poly<BigInt>;

impl<C: Coeff> PartialEq for Poly<C> {
    /// Equality of polynomial values; the declared universes may differ.
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<C: Coeff> Eq for Poly<C> where C: Eq {}

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly {
            vars: BTreeSet::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(C::from_bigint(BigInt::from(n)))
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(C::one(), Monomial::var(name, 1))
    }

    pub fn monomial(c: C, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.vars.extend(m.factors().iter().map(|(v, _)| v.clone()));
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds from raw terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `var` to the declared universe without changing the value.
    pub fn with_vars<'a, I: IntoIterator<Item = &'a str>>(mut self, vars: I) -> Self {
        self.vars.extend(vars.into_iter().map(Arc::from));
        self
    }

    pub fn vars(&self) -> &BTreeSet<Var> {
        &self.vars
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        self.vars.extend(m.factors().iter().map(|(v, _)| v.clone()));
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one())
    }

    /// Returns the constant if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in a single variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: &str) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Poly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.clone() * c.clone()))
                .filter(|(_, k)| !k.is_zero())
                .collect(),
        }
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> Poly<D> {
        let mut out = Poly::<D>::zero();
        out.vars = self.vars.clone();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        acc.vars = self.vars.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficients of `var^0, var^1, ...` as polynomials in the other
    /// variables.
    pub fn coeffs_in(&self, var: &str) -> Vec<Poly<C>> {
        let mut out: Vec<Poly<C>> = Vec::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(var);
            let e = e as usize;
            if out.len() <= e {
                out.resize_with(e + 1, Poly::zero);
            }
            out[e].add_term(rest, c.clone());
        }
        let others: Vec<Var> = self.vars.iter().filter(|v| &***v != var).cloned().collect();
        for p in &mut out {
            p.vars.extend(others.iter().cloned());
        }
        out
    }

    /// Evaluates with each variable replaced through `value`; values live
    /// in an arbitrary commutative ring supplied by the closures.
    pub fn eval_with<R, FV, FC, FM, FA>(&self, zero: R, value: FV, coeff: FC, mul: FM, add: FA) -> R
    where
        R: Clone,
        FV: Fn(&str, u32) -> R,
        FC: Fn(&C) -> R,
        FM: Fn(&R, &R) -> R,
        FA: Fn(&R, &R) -> R,
    {
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = coeff(c);
            for (v, e) in m.factors() {
                t = mul(&t, &value(v, *e));
            }
            acc = add(&acc, &t);
        }
        acc
    }

    /// Substitutes polynomials for variables; unlisted variables are kept.
    pub fn substitute(&self, subs: &BTreeMap<String, Poly<C>>) -> Poly<C> {
        let mut cache: BTreeMap<(Var, u32), Poly<C>> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (v, e) in m.factors() {
                let factor = match subs.get(&**v) {
                    Some(p) => cache
                        .entry((v.clone(), *e))
                        .or_insert_with(|| p.pow(*e))
                        .clone(),
                    None => Poly::monomial(C::one(), Monomial::var(v, *e)),
                };
                t = &t * &factor;
            }
            out = &out + &t;
        }
        for v in &self.vars {
            if !subs.contains_key(&**v) {
                out.vars.insert(v.clone());
            }
        }
        out
    }

    /// Evaluates at coefficient values for every variable occurring.
    pub fn eval(&self, point: &BTreeMap<String, C>) -> Result<C> {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                let x = point
                    .get(&**v)
                    .ok_or_else(|| Error::InvalidInput(format!("no value for variable {v}")))?;
                t = t * num_traits::pow(x.clone(), *e as usize);
            }
            acc = acc + t;
        }
        Ok(acc)
    }
}

impl ZPoly {
    pub fn to_rational(&self) -> QPoly {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }

    /// Divides every coefficient exactly by `d`; `None` if some coefficient
    /// is not divisible.
    pub fn div_exact(&self, d: &BigInt) -> Option<ZPoly> {
        use num_integer::Integer;
        let mut out = ZPoly::zero();
        out.vars = self.vars.clone();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.add_term(m.clone(), q);
        }
        Some(out)
    }

    /// Reduces coefficients into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> ZPoly {
        use num_integer::Integer;
        self.map_coeffs(|c| c.mod_floor(m))
    }
}

impl QPoly {
    /// Converts to integer coefficients if every coefficient is integral.
    pub fn to_integer(&self) -> Option<ZPoly> {
        let mut out = ZPoly::zero();
        out.vars = self.vars.clone();
        for (m, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            out.add_term(m.clone(), c.to_integer());
        }
        Some(out)
    }
}

impl<C: Coeff> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        out.vars.extend(rhs.vars.iter().cloned());
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        let mut out = self.clone();
        out.vars.extend(rhs.vars.iter().cloned());
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<C: Coeff> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        let mut terms: BTreeMap<Monomial, C> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca.clone() * cb.clone();
                match terms.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = e.get().clone() + c;
                        *e.get_mut() = s;
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        let mut vars = self.vars.clone();
        vars.extend(rhs.vars.iter().cloned());
        Poly { vars, terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for Poly<C> {
            type Output = Poly<C>;
            fn $m(self, rhs: Poly<C>) -> Poly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> Neg for Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        -(&self)
    }
}

/// Multiplies two polynomials exactly.
pub fn poly_mul<C: Coeff>(p: &Poly<C>, q: &Poly<C>) -> Poly<C> {
    p * q
}

impl<C: Coeff> fmt::Display for Poly<C> {
    /// Highest graded-lex term first: `x^2-x`, `1/2*x*y+3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative_coeff();
            let a = c.abs_coeff();
            if neg {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::parse_qpoly;

    fn q(s: &str) -> QPoly {
        parse_qpoly(s).unwrap()
    }

    #[test]
    fn degree_one_product() {
        assert_eq!(&q("x") * &q("x-1"), q("x^2-x"));
    }

    #[test]
    fn rational_cancellation() {
        assert_eq!(&q("1/2*x") * &q("2*x"), q("x^2"));
    }

    #[test]
    fn schoolbook_oracle_bivariate() {
        // Schoolbook expansion of (x + t)(x - t) by hand: x^2 - t^2.
        let p = &q("x+t") * &q("x-t");
        assert_eq!(p, q("x^2-t^2"));
        assert_eq!(p.to_string(), "-t^2+x^2");
    }

    #[test]
    fn degree_adds() {
        let a = q("3*x^2*y+y-1");
        let b = q("x*y^3-7");
        assert_eq!((&a * &b).degree(), Some(7));
        assert_eq!(QPoly::zero().degree(), None);
    }

    #[test]
    fn grlex_ordering_is_deterministic() {
        let p = q("b+a^2+a*b+1+a");
        assert_eq!(p.to_string(), "a^2+a*b+a+b+1");
    }

    #[test]
    fn universe_is_explicit() {
        let p = &q("x") * &q("1");
        assert!(p.vars().contains("x"));
        let z = &q("x") - &q("x");
        assert!(z.is_zero());
        assert!(z.vars().contains("x"));
    }

    #[test]
    fn substitute_and_coeffs_in() {
        let p = q("x^2*t+3*x");
        let mut subs = BTreeMap::new();
        subs.insert("t".to_string(), QPoly::from_int(1));
        assert_eq!(p.substitute(&subs), q("x^2+3*x"));
        let cs = p.coeffs_in("x");
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2], q("t"));
        assert_eq!(cs[1], q("3"));
    }
}
