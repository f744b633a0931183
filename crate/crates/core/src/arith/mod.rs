//! Exact arithmetic substrate: big integers and rationals, sparse
//! multivariate polynomials, truncated power series and the binomial basis.

pub mod binomial;
pub mod parse;
pub mod poly;
pub mod series;

pub use num_bigint::BigInt;
pub use num_rational::BigRational as BigRat;

pub use binomial::{binom, binom_u, binomial_poly, binomial_transform, factorial, BinomialCoeffs};
pub use parse::{parse_bigint, parse_bigrat, parse_qpoly, parse_zpoly};
pub use poly::{poly_mul, Monomial, Poly, QPoly, ZPoly};
pub use series::TruncSeries;

/// Deterministic primality test for the small moduli used here.
pub fn is_prime(n: &BigInt) -> bool {
    use num_traits::{One, Zero};
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    let mut d = two;
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return false;
        }
        d += BigInt::one();
    }
    true
}
