//! Truncated power series `Z[[u]]/(u^N)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{Monomial, ZPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    var: String,
    coeffs: Vec<BigInt>,
}

impl TruncSeries {
    pub fn zero(var: &str, order: usize) -> Self {
        TruncSeries {
            var: var.to_string(),
            coeffs: vec![BigInt::zero(); order],
        }
    }

    pub fn one(var: &str, order: usize) -> Self {
        let mut s = Self::zero(var, order);
        if order > 0 {
            s.coeffs[0] = BigInt::one();
        }
        s
    }

    /// `u^k` truncated at `order` (zero if `k >= order`).
    pub fn monomial(var: &str, k: usize, order: usize) -> Self {
        let mut s = Self::zero(var, order);
        if k < order {
            s.coeffs[k] = BigInt::one();
        }
        s
    }

    /// Coefficients beyond `order` are dropped; missing ones are zero.
    pub fn from_coeffs(var: &str, order: usize, coeffs: &[BigInt]) -> Self {
        let mut s = Self::zero(var, order);
        for (k, c) in coeffs.iter().take(order).enumerate() {
            s.coeffs[k] = c.clone();
        }
        s
    }

    /// Truncation of a univariate integer polynomial in `var`.
    pub fn from_poly(p: &ZPoly, var: &str, order: usize) -> Result<Self> {
        let mut s = Self::zero(var, order);
        for (k, c) in p.coeffs_in(var).into_iter().enumerate() {
            let c = c.as_constant().ok_or_else(|| {
                Error::InvalidInput(format!("series polynomial {p} is not univariate in {var}"))
            })?;
            if k < order {
                s.coeffs[k] = c;
            }
        }
        Ok(s)
    }

    pub fn to_poly(&self) -> ZPoly {
        let mut p = ZPoly::zero().with_vars([self.var.as_str()]);
        for (k, c) in self.coeffs.iter().enumerate() {
            p.add_term(Monomial::var(&self.var, k as u32), c.clone());
        }
        p
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.var != other.var || self.order() != other.order() {
            return Err(Error::InvalidInput(format!(
                "series mismatch: {}/(order {}) vs {}/(order {})",
                self.var,
                self.order(),
                other.var,
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TruncSeries {
            var: self.var.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.order();
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(TruncSeries {
            var: self.var.clone(),
            coeffs: out,
        })
    }

    /// Multiplicative inverse; requires constant term `±1`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.order();
        let c0 = self.coeff(0);
        if !(c0.is_one() || (-&c0).is_one()) {
            return Err(Error::InvalidInput(format!(
                "series with constant term {c0} is not a unit over Z"
            )));
        }
        let mut inv = vec![BigInt::zero(); n];
        if n == 0 {
            return Ok(self.clone());
        }
        inv[0] = c0.clone();
        for k in 1..n {
            let mut s = BigInt::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &inv[k - j];
            }
            // c0 = ±1 is its own inverse
            inv[k] = -(s * &c0);
        }
        Ok(TruncSeries {
            var: self.var.clone(),
            coeffs: inv,
        })
    }

    /// Integer power; negative exponents go through [`TruncSeries::inverse`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = TruncSeries::one(&self.var, self.order());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "{}", Monomial::var(&self.var, k as u32))?,
                (_, false) => write!(f, "{a}*{}", Monomial::var(&self.var, k as u32))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order())
    }
}

/// JSON form `{"var":"u","trunc":N,"coeffs":["1","3",...]}`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SeriesJson {
    pub var: String,
    pub trunc: usize,
    pub coeffs: Vec<serde_json::Value>,
}

impl SeriesJson {
    pub fn from_series(s: &TruncSeries) -> Self {
        SeriesJson {
            var: s.var.clone(),
            trunc: s.order(),
            coeffs: s
                .coeffs
                .iter()
                .map(|c| serde_json::Value::String(c.to_string()))
                .collect(),
        }
    }

    pub fn to_series(&self) -> Result<TruncSeries> {
        let mut cs = Vec::with_capacity(self.coeffs.len());
        for v in &self.coeffs {
            cs.push(crate::json::bigint_from_value(v)?);
        }
        if cs.len() > self.trunc {
            return Err(Error::InvalidInput(format!(
                "{} coefficients given for truncation order {}",
                cs.len(),
                self.trunc
            )));
        }
        Ok(TruncSeries::from_coeffs(&self.var, self.trunc, &cs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::parse_zpoly;
    use proptest::prelude::*;

    #[test]
    fn binomial_cube() {
        let s = TruncSeries::from_poly(&parse_zpoly("1+u").unwrap(), "u", 5).unwrap();
        let c = s.pow(3).unwrap();
        assert_eq!(c.coeffs(), &[1, 3, 3, 1, 0].map(BigInt::from));
    }

    #[test]
    fn inverse_of_one_plus_u() {
        let s = TruncSeries::from_poly(&parse_zpoly("1+u").unwrap(), "u", 6).unwrap();
        let inv = s.pow(-1).unwrap();
        assert_eq!(inv.coeffs(), &[1, -1, 1, -1, 1, -1].map(BigInt::from));
        assert_eq!(inv.mul(&s).unwrap(), TruncSeries::one("u", 6));
        assert!(TruncSeries::from_coeffs("u", 3, &[BigInt::from(2)])
            .inverse()
            .is_err());
    }

    #[test]
    fn display() {
        let s = TruncSeries::from_coeffs("u", 4, &[1, -3, 0, 1].map(BigInt::from));
        assert_eq!(s.to_string(), "1-3*u+u^3 + O(u^4)");
    }

    proptest! {
        /// Series multiplication agrees with polynomial multiplication
        /// followed by truncation.
        #[test]
        fn mul_matches_poly_then_truncate(
            a in prop::collection::vec(-30i64..30, 0..8),
            b in prop::collection::vec(-30i64..30, 0..8),
            order in 1usize..10,
        ) {
            let pa = ZPoly::from_terms(a.iter().enumerate().map(|(k, c)| (Monomial::var("u", k as u32), BigInt::from(*c))));
            let pb = ZPoly::from_terms(b.iter().enumerate().map(|(k, c)| (Monomial::var("u", k as u32), BigInt::from(*c))));
            let sa = TruncSeries::from_poly(&pa, "u", order).unwrap();
            let sb = TruncSeries::from_poly(&pb, "u", order).unwrap();
            let expected = TruncSeries::from_poly(&(&pa * &pb), "u", order).unwrap();
            prop_assert_eq!(sa.mul(&sb).unwrap(), expected);
        }
    }
}
