//! The bilinear pairing `<C(x,n), u^k> = δ_{n,k}` between `Int(Z)` and
//! `Z[[u]]`, `u = t - 1`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{IntZElement, TensorElement};
use crate::arith::TruncSeries;
use crate::error::{Error, Result};

pub fn pair(f: &IntZElement, s: &TruncSeries) -> Result<BigInt> {
    if let Some(d) = f.degree() {
        if s.order() <= d {
            return Err(Error::TruncationTooShort {
                order: s.order(),
                degree: d,
            });
        }
    }
    Ok(f.coeffs().iter().map(|(n, c)| c * s.coeff(*n)).sum())
}

/// Element of `Z[[u]] ⊗ Z[[u]]` modulo total degree `order`: only
/// coefficients of `u^i ⊗ u^j` with `i + j < order` are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTensor {
    order: usize,
    coeffs: Vec<Vec<BigInt>>,
}

impl SeriesTensor {
    pub fn zero(order: usize) -> Self {
        SeriesTensor {
            order,
            coeffs: vec![vec![BigInt::zero(); order]; order],
        }
    }

    /// `s ⊗ s'`.
    pub fn pure(s: &TruncSeries, t: &TruncSeries) -> Result<Self> {
        if s.order() != t.order() {
            return Err(Error::InvalidInput("series orders differ".into()));
        }
        let n = s.order();
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n - i {
                out.coeffs[i][j] = s.coeff(i) * t.coeff(j);
            }
        }
        Ok(out)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    fn mul(&self, other: &Self) -> Self {
        let n = self.order;
        let mut out = Self::zero(n);
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for k in 0..n - i - j {
                    for l in 0..n - i - j - k {
                        let b = &other.coeffs[k][l];
                        if !b.is_zero() {
                            out.coeffs[i + k][j + l] += a * b;
                        }
                    }
                }
            }
        }
        out
    }
}

/// `s(u ⊗ 1 + 1 ⊗ u + u ⊗ u)`: the coproduct of `Z[[u]]` coming from the
/// multiplicative formal group law in the coordinate `u = t - 1`.
pub fn series_coproduct(s: &TruncSeries) -> SeriesTensor {
    let n = s.order();
    let mut law = SeriesTensor::zero(n);
    if n > 1 {
        law.coeffs[1][0] = 1.into();
        law.coeffs[0][1] = 1.into();
        law.coeffs[1][1] = 1.into();
    }
    let mut power = SeriesTensor::zero(n);
    if n > 0 {
        power.coeffs[0][0] = 1.into();
    }
    let mut out = SeriesTensor::zero(n);
    for k in 0..n {
        let c = s.coeff(k);
        if !c.is_zero() {
            for i in 0..n {
                for j in 0..n - i {
                    out.coeffs[i][j] += &c * &power.coeffs[i][j];
                }
            }
        }
        power = power.mul(&law);
    }
    out
}

/// `<f ⊗ g, T>` extended bilinearly.
pub fn pair_tensor(t: &TensorElement, st: &SeriesTensor) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for ((m, n), c) in t.coeffs() {
        if m + n >= st.order() {
            return Err(Error::TruncationTooShort {
                order: st.order(),
                degree: m + n,
            });
        }
        acc += c * st.coeff(*m, *n);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_zpoly;

    fn series(src: &str, n: usize) -> TruncSeries {
        TruncSeries::from_poly(&parse_zpoly(src).unwrap(), "u", n).unwrap()
    }

    #[test]
    fn dual_basis() {
        for n in 0..6 {
            for k in 0..6 {
                let v = pair(&IntZElement::basis(n), &TruncSeries::monomial("u", k, 8)).unwrap();
                assert_eq!(v, BigInt::from((n == k) as i64));
            }
        }
    }

    #[test]
    fn pairs_with_cube() {
        let s = series("1+u", 4).pow(3).unwrap();
        assert_eq!(pair(&IntZElement::basis(2), &s).unwrap(), BigInt::from(3));
        assert_eq!(pair(&IntZElement::one(), &s).unwrap(), s.coeff(0));
    }

    #[test]
    fn short_truncation_rejected() {
        let s = series("1+u", 2);
        assert!(matches!(
            pair(&IntZElement::basis(2), &s),
            Err(Error::TruncationTooShort {
                order: 2,
                degree: 2
            })
        ));
    }

    #[test]
    fn coproduct_of_u() {
        let d = series_coproduct(&series("u", 4));
        assert_eq!(d.coeff(1, 0), BigInt::from(1));
        assert_eq!(d.coeff(0, 1), BigInt::from(1));
        assert_eq!(d.coeff(1, 1), BigInt::from(1));
        assert_eq!(d.coeff(2, 0), BigInt::from(0));
    }

    #[test]
    fn group_like_is_group_like() {
        // (1+u)^a ↦ (1+u)^a ⊗ (1+u)^a
        let s = series("1+u", 6).pow(-3).unwrap();
        assert_eq!(series_coproduct(&s), SeriesTensor::pure(&s, &s).unwrap());
    }
}
