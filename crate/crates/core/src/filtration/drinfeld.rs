//! The deformation of `Int(Z)` spanned by `b_n(x,t) = x(x-t)...(x-(n-1)t)/n!`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::graded::{GradedAlgebraPresentation, T};
use crate::arith::{factorial, QPoly, ZPoly};
use crate::error::{Error, Result};

/// `b_n(x,t)` in `Q[x,t]`.
pub fn drinfeld_poly(n: usize) -> QPoly {
    let x = QPoly::var("x");
    let t = QPoly::var(T);
    let mut p = QPoly::one().with_vars(["x", T]);
    for i in 0..n {
        let shift = t.scale(&BigRational::from_integer(BigInt::from(i)));
        p = &p * &(&x - &shift);
    }
    p.scale(&BigRational::new(BigInt::one(), factorial(n)))
}

/// `b_n(a,t)` at rational points.
pub fn drinfeld_eval(n: usize, a: &BigRational, t: &BigRational) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..n {
        acc *= a - t * BigRational::from_integer(BigInt::from(i));
    }
    acc / BigRational::from_integer(factorial(n))
}

/// Coefficient of `x^k` as a polynomial in `t`.
fn x_coeff(p: &QPoly, k: u32) -> QPoly {
    p.coeffs_in("x")
        .get(k as usize)
        .cloned()
        .unwrap_or_else(QPoly::zero)
}

/// `b_m b_n = sum_k c^k(t) b_k`, found by peeling off leading `x`-terms.
///
/// Each `c^k` must lie in `Z[t]`; a rational coefficient is reported as a
/// falsification.
pub fn drinfeld_structure_constants(m: usize, n: usize) -> Result<BTreeMap<usize, ZPoly>> {
    let mut rest = &drinfeld_poly(m) * &drinfeld_poly(n);
    let mut out = BTreeMap::new();
    for k in (0..=m + n).rev() {
        // b_k has leading term x^k / k!
        let lead = x_coeff(&rest, k as u32);
        if lead.is_zero() {
            continue;
        }
        let c = lead.scale(&BigRational::from_integer(factorial(k)));
        let cz = c.to_integer().ok_or_else(|| {
            Error::Falsified(format!(
                "b_{m} * b_{n} has non-integral coefficient {c} on b_{k}"
            ))
        })?;
        rest = &rest - &(&c * &drinfeld_poly(k));
        out.insert(k, cz);
    }
    if !rest.is_zero() {
        return Err(Error::Falsified(format!(
            "b_{m} * b_{n} leaves remainder {rest} after reduction"
        )));
    }
    Ok(out)
}

/// Presentation on `b_0..=b_n` (weight of `b_k` is `k`) with products for
/// `i + j <= n`.
pub fn drinfeld_presentation(n: usize) -> Result<GradedAlgebraPresentation> {
    let mut p = GradedAlgebraPresentation::new(
        (0..=n).map(|k| format!("C{k}")).collect(),
        (0..=n as i64).collect(),
    )?;
    for i in 0..=n {
        for j in i..=n - i {
            p.set_product(i, j, drinfeld_structure_constants(i, j)?);
        }
    }
    Ok(p)
}

/// `t`-degree bound `deg_t c^k_mn <= m + n - k`.
pub fn check_degree_bound(m: usize, n: usize, c: &BTreeMap<usize, ZPoly>) -> Result<()> {
    for (&k, ck) in c {
        let d = ck.degree_in(T).unwrap_or(0) as usize;
        if k > m + n || d > m + n - k {
            return Err(Error::Falsified(format!(
                "c^{k}_{{{m},{n}}} = {ck} exceeds t-degree {}",
                (m + n).saturating_sub(k)
            )));
        }
    }
    Ok(())
}

/// Additive Vandermonde: `b_n(a+b,t) = sum_{i+j=n} b_i(a,t) b_j(b,t)`.
pub fn additive_law_holds(n: usize, a: &BigRational, b: &BigRational, t: &BigRational) -> bool {
    let lhs = drinfeld_eval(n, &(a + b), t);
    let rhs: BigRational = (0..=n)
        .map(|i| drinfeld_eval(i, a, t) * drinfeld_eval(n - i, b, t))
        .sum();
    lhs == rhs
}

/// Multiplication of bivariate series in `u, v` truncated to total degree `< order`.
fn mul2(x: &[Vec<BigRational>], y: &[Vec<BigRational>], order: usize) -> Vec<Vec<BigRational>> {
    let mut out = vec![vec![BigRational::zero(); order]; order];
    for i in 0..order {
        for j in 0..order - i {
            if x[i][j].is_zero() {
                continue;
            }
            for k in 0..order - i - j {
                for l in 0..order - i - j - k {
                    if !y[k][l].is_zero() {
                        out[i + k][j + l] += &x[i][j] * &y[k][l];
                    }
                }
            }
        }
    }
    out
}

/// Formal group law `u +_t v = u + v + t u v`: with
/// `G_a(u) = sum_n b_n(a,t) u^n`, checks `G_a(u +_t v) = G_a(u) G_a(v)`
/// through total degree `< order`.
pub fn group_law_holds(a: &BigRational, t: &BigRational, order: usize) -> bool {
    let zero = || vec![vec![BigRational::zero(); order]; order];
    let g: Vec<BigRational> = (0..order).map(|n| drinfeld_eval(n, a, t)).collect();
    let mut s = zero();
    if order > 1 {
        s[1][0] = BigRational::one();
        s[0][1] = BigRational::one();
    }
    if order > 2 {
        s[1][1] = t.clone();
    }
    let mut power = zero();
    power[0][0] = BigRational::one();
    let mut lhs = zero();
    for gn in &g {
        for i in 0..order {
            for j in 0..order - i {
                lhs[i][j] += gn * &power[i][j];
            }
        }
        power = mul2(&power, &s, order);
    }
    let mut gu = zero();
    let mut gv = zero();
    for (n, gn) in g.iter().enumerate() {
        gu[n][0] = gn.clone();
        gv[0][n] = gn.clone();
    }
    lhs == mul2(&gu, &gv, order)
}

/// The substitution `b_n(a + b + tab, t)` against the Vandermonde sum.
pub fn substituted_law_holds(n: usize, a: &BigRational, b: &BigRational, t: &BigRational) -> bool {
    let lhs = drinfeld_eval(n, &(a + b + t * a * b), t);
    let rhs: BigRational = (0..=n)
        .map(|i| drinfeld_eval(i, a, t) * drinfeld_eval(n - i, b, t))
        .sum();
    lhs == rhs
}

/// Substitutes an integer for `t`.
pub fn at_t(p: &QPoly, t: i64) -> QPoly {
    let subs = BTreeMap::from([(T.to_string(), QPoly::from_int(t))]);
    p.substitute(&subs)
}
