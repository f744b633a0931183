//! Conversion between the monomial basis of `Q[x]` and the binomial basis
//! `C(x, n) = x(x-1)...(x-n+1)/n!`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::QPoly;
use crate::error::{Error, Result};

/// `C(a, n)` for any integer `a`.
pub fn binom(a: &BigInt, n: usize) -> BigInt {
    let mut c = BigInt::one();
    for k in 0..n {
        c = c * (a - BigInt::from(k)) / BigInt::from(k + 1);
    }
    c
}

pub fn binom_u(a: usize, n: usize) -> BigInt {
    binom(&BigInt::from(a), n)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `C(x, n)` as a polynomial in `var`.
pub fn binomial_poly(var: &str, n: usize) -> QPoly {
    let x = QPoly::var(var);
    let mut p = QPoly::one().with_vars([var]);
    for k in 0..n {
        p = &p * &(&x - &QPoly::from_int(k as i64));
    }
    p.scale(&BigRational::new(BigInt::one(), factorial(n)))
}

/// Coordinates of a polynomial in the binomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialCoeffs {
    pub coeffs: Vec<BigRational>,
}

impl BinomialCoeffs {
    /// True when every coordinate is an integer, i.e. the polynomial is
    /// integer-valued.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }

    /// First non-integral coordinate.
    pub fn first_non_integral(&self) -> Option<(usize, &BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_integer())
    }

    /// Expands back to the monomial basis.
    pub fn expand(&self, var: &str) -> QPoly {
        let mut p = QPoly::zero().with_vars([var]);
        for (n, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                p = &p + &binomial_poly(var, n).scale(c);
            }
        }
        p
    }
}

/// Values of a univariate polynomial at `0, 1, ..., count-1`.
fn values(p: &QPoly, var: &str, count: usize) -> Result<Vec<BigRational>> {
    let coeffs = p.coeffs_in(var);
    let mut cs = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        cs.push(c.as_constant().ok_or_else(|| {
            Error::InvalidInput(format!("polynomial {p} is not univariate in {var}"))
        })?);
    }
    Ok((0..count)
        .map(|a| {
            let a = BigRational::from_integer(BigInt::from(a));
            cs.iter()
                .rev()
                .fold(BigRational::zero(), |acc, c| acc * a.clone() + c.clone())
        })
        .collect())
}

/// Writes `p` as `sum c_n C(x, n)` using `c_n = (Delta^n p)(0)`.
pub fn binomial_transform(p: &QPoly, var: &str) -> Result<BinomialCoeffs> {
    let deg = match p.degree_in(var) {
        None => return Ok(BinomialCoeffs { coeffs: Vec::new() }),
        Some(d) => d as usize,
    };
    let mut row = values(p, var, deg + 1)?;
    let mut coeffs = Vec::with_capacity(deg + 1);
    while !row.is_empty() {
        coeffs.push(row[0].clone());
        row = row
            .windows(2)
            .map(|w| w[1].clone() - w[0].clone())
            .collect();
    }
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    Ok(BinomialCoeffs { coeffs })
}

/// Sparse integer coordinates; fails if `p` is not integer-valued.
pub fn integral_binomial_coeffs(p: &QPoly, var: &str) -> Result<BTreeMap<usize, BigInt>> {
    let bc = binomial_transform(p, var)?;
    if let Some((index, c)) = bc.first_non_integral() {
        return Err(Error::NonIntegral {
            index,
            coeff: c.to_string(),
        });
    }
    Ok(bc
        .coeffs
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(n, c)| (n, c.to_integer()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse::parse_qpoly;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Independent oracle: full forward-difference table of sample values.
    fn difference_table_oracle(p: &QPoly, deg: usize) -> Vec<BigRational> {
        let mut vals: Vec<BigRational> = (0..=deg as i64)
            .map(|a| {
                let mut pt = BTreeMap::new();
                pt.insert("x".to_string(), r(a, 1));
                p.eval(&pt).unwrap()
            })
            .collect();
        let mut out = vec![];
        for _ in 0..=deg {
            out.push(vals[0].clone());
            vals = (1..vals.len())
                .map(|i| vals[i].clone() - vals[i - 1].clone())
                .collect();
        }
        out
    }

    #[test]
    fn x_squared() {
        let bc = binomial_transform(&parse_qpoly("x^2").unwrap(), "x").unwrap();
        assert_eq!(bc.coeffs, vec![r(0, 1), r(1, 1), r(2, 1)]);
        assert!(bc.is_integral());
    }

    #[test]
    fn round_trip_binomial() {
        let p = binomial_poly("x", 3);
        let bc = binomial_transform(&p, "x").unwrap();
        assert_eq!(bc.coeffs, vec![r(0, 1), r(0, 1), r(0, 1), r(1, 1)]);
    }

    #[test]
    fn half_x_flagged() {
        let bc = binomial_transform(&parse_qpoly("1/2*x").unwrap(), "x").unwrap();
        assert_eq!(bc.coeffs, vec![r(0, 1), r(1, 2)]);
        assert!(!bc.is_integral());
        assert!(integral_binomial_coeffs(&parse_qpoly("1/2*x").unwrap(), "x").is_err());
    }

    #[test]
    fn rejects_multivariate() {
        assert!(binomial_transform(&parse_qpoly("x*y").unwrap(), "x").is_err());
    }

    #[test]
    fn binom_negative_argument() {
        assert_eq!(binom(&BigInt::from(-1), 3), BigInt::from(-1));
        assert_eq!(binom(&BigInt::from(5), 2), BigInt::from(10));
        assert_eq!(binom(&BigInt::from(2), 5), BigInt::from(0));
    }

    fn arb_qpoly() -> impl Strategy<Value = QPoly> {
        prop::collection::vec((-50i64..50, 1i64..7), 0..=13).prop_map(|cs| {
            let mut p = QPoly::zero().with_vars(["x"]);
            for (k, (n, d)) in cs.into_iter().enumerate() {
                p = &p
                    + &QPoly::monomial(r(n, d), crate::arith::poly::Monomial::var("x", k as u32));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn transform_then_expand_is_identity(p in arb_qpoly()) {
            let bc = binomial_transform(&p, "x").unwrap();
            prop_assert_eq!(bc.expand("x"), p);
        }

        #[test]
        fn matches_difference_table(p in arb_qpoly()) {
            let deg = p.degree_in("x").unwrap_or(0) as usize;
            let mut expected = difference_table_oracle(&p, deg);
            while expected.last().is_some_and(Zero::is_zero) { expected.pop(); }
            prop_assert_eq!(binomial_transform(&p, "x").unwrap().coeffs, expected);
        }
    }
}
