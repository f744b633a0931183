//! The ring `Int(Z)` of integer-valued polynomials, as a free `Z`-module
//! on the binomial basis `C(x, n)`, with its bicommutative Hopf structure
//! (`x` primitive), degree filtration, reduction mod `p`, and the pairing
//! against `Z[[u]]`.

mod pairing;
mod text;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::binomial::{binom, binomial_poly, factorial};
use crate::arith::{is_prime, QPoly};
use crate::error::{Error, Result};

pub use pairing::{pair, pair_tensor, series_coproduct, SeriesTensor};
pub use text::{parse_intz, IntZJson, TensorJson};

/// Filtration degree; the zero element sits at `-∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiltrationDegree {
    NegInfinity,
    Finite(usize),
}

impl fmt::Display for FiltrationDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationDegree::NegInfinity => write!(f, "-inf"),
            FiltrationDegree::Finite(n) => write!(f, "{n}"),
        }
    }
}

/// A finite integral combination of the basis vectors `C(x, n)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntZElement {
    coeffs: BTreeMap<usize, BigInt>,
}

fn insert_nonzero<K: Ord>(map: &mut BTreeMap<K, BigInt>, k: K, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(k).or_insert_with(BigInt::zero);
    *e += c;
}

fn prune<K: Ord>(map: &mut BTreeMap<K, BigInt>) {
    map.retain(|_, c| !c.is_zero());
}

impl IntZElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    /// The basis vector `C(x, n)`.
    pub fn basis(n: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(n, BigInt::one());
        IntZElement { coeffs }
    }

    pub fn from_coeffs<I: IntoIterator<Item = (usize, BigInt)>>(it: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (n, c) in it {
            insert_nonzero(&mut coeffs, n, c);
        }
        prune(&mut coeffs);
        IntZElement { coeffs }
    }

    /// Fails with [`Error::NonIntegral`] unless `p` is integer-valued.
    pub fn from_poly(p: &QPoly, var: &str) -> Result<Self> {
        let coeffs = crate::arith::binomial::integral_binomial_coeffs(p, var)?;
        Ok(IntZElement { coeffs })
    }

    pub fn to_poly(&self, var: &str) -> QPoly {
        let mut p = QPoly::zero().with_vars([var]);
        for (n, c) in &self.coeffs {
            p = &p
                + &binomial_poly(var, *n)
                    .scale(&num_rational::BigRational::from_integer(c.clone()));
        }
        p
    }

    pub fn coeff(&self, n: usize) -> BigInt {
        self.coeffs.get(&n).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, BigInt> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (n, c) in &other.coeffs {
            insert_nonzero(&mut coeffs, *n, c.clone());
        }
        prune(&mut coeffs);
        IntZElement { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(n, c)| (*n, c * k)))
    }

    pub fn filtration_degree(&self) -> FiltrationDegree {
        match self.coeffs.keys().next_back() {
            None => FiltrationDegree::NegInfinity,
            Some(n) => FiltrationDegree::Finite(*n),
        }
    }

    /// Membership in `fil^n = span{C(x,k) : k <= n}`.
    pub fn fil_member(&self, n: usize) -> bool {
        self.filtration_degree() <= FiltrationDegree::Finite(n)
    }

    /// Largest index with a nonzero coefficient, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn counit(&self) -> BigInt {
        self.coeff(0)
    }

    /// Value at an integer point.
    pub fn eval(&self, a: &BigInt) -> BigInt {
        self.coeffs.iter().map(|(n, c)| c * binom(a, *n)).sum()
    }

    /// Product through `Q[x]`: expand, multiply, transform back.
    ///
    /// Polynomials are kept as integer vectors over the common denominator
    /// `deg(f)! deg(g)!`, so only the final division is checked.
    pub fn mult(&self, other: &Self) -> Result<Self> {
        let (Some(df), Some(dg)) = (self.degree(), other.degree()) else {
            return Ok(Self::zero());
        };
        let falling = falling_factorials(df.max(dg));
        let p = convolve(
            &self.scaled_dense(df, &falling),
            &other.scaled_dense(dg, &falling),
        );
        let denom = factorial(df) * factorial(dg);
        let mut row: Vec<BigInt> = (0..=df + dg)
            .map(|a| {
                let a = BigInt::from(a);
                p.iter().rev().fold(BigInt::zero(), |acc, c| acc * &a + c)
            })
            .collect();
        let mut coeffs = BTreeMap::new();
        for n in 0..=df + dg {
            let (q, r) = row[0].div_rem(&denom);
            if !r.is_zero() {
                let c = num_rational::BigRational::new(row[0].clone(), denom);
                return Err(Error::Falsified(format!(
                    "product {self} * {other} left Int(Z): coefficient {c} of C(x,{n})"
                )));
            }
            insert_nonzero(&mut coeffs, n, q);
            row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        Ok(IntZElement { coeffs })
    }

    /// `deg! * self` in the monomial basis.
    fn scaled_dense(&self, deg: usize, falling: &[Vec<BigInt>]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); deg + 1];
        for (&n, c) in &self.coeffs {
            // deg!/n! * x(x-1)...(x-n+1)
            let k: BigInt = c * (n + 1..=deg).fold(BigInt::one(), |acc, i| acc * i);
            for (o, f) in out.iter_mut().zip(&falling[n]) {
                *o += &k * f;
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mult(self)?;
        }
        Ok(acc)
    }

    /// `Δ C(x,n) = Σ_{i+j=n} C(x,i) ⊗ C(x,j)`, extended linearly.
    pub fn comult(&self) -> TensorElement {
        let mut t = BTreeMap::new();
        for (n, c) in &self.coeffs {
            for i in 0..=*n {
                insert_nonzero(&mut t, (i, n - i), c.clone());
            }
        }
        prune(&mut t);
        TensorElement { coeffs: t }
    }

    /// Antipode, obtained degree by degree from `Σ_{i+j=n} S(C_i) C_j = ε(C_n)`.
    pub fn antipode(&self) -> Result<Self> {
        let top = match self.degree() {
            None => return Ok(Self::zero()),
            Some(d) => d,
        };
        let table = antipode_table(top)?;
        Ok(self
            .coeffs
            .iter()
            .fold(Self::zero(), |acc, (n, c)| acc.add(&table[*n].scale(c))))
    }

    /// Whether `f^p ≡ f` modulo `p` in the binomial basis.
    pub fn frobenius_mod_p_identity(&self, p: u32) -> Result<bool> {
        let pb = BigInt::from(p);
        if !is_prime(&pb) {
            return Err(Error::NotPrime(p.to_string()));
        }
        let diff = self.pow(p)?.sub(self);
        Ok(diff.coeffs.values().all(|c| c.is_multiple_of(&pb)))
    }
}

/// Monomial coefficients of `x(x-1)...(x-n+1)` for `n <= top`.
fn falling_factorials(top: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::one()]];
    for n in 0..top {
        let prev = &rows[n];
        let mut next = vec![BigInt::zero(); n + 2];
        for (j, c) in prev.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * n;
        }
        rows.push(next);
    }
    rows
}

fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `S(C_0), ..., S(C_top)`.
fn antipode_table(top: usize) -> Result<Vec<IntZElement>> {
    let mut table = vec![IntZElement::one()];
    for n in 1..=top {
        let mut acc = IntZElement::zero();
        for (i, s) in table.iter().enumerate() {
            acc = acc.add(&s.mult(&IntZElement::basis(n - i))?);
        }
        table.push(acc.neg());
    }
    Ok(table)
}

/// Top coefficient of `C(x,m) C(x,n)`: the structure constant of the
/// associated graded, checked against `C(m+n, n)`.
pub fn graded_constant(m: usize, n: usize) -> Result<BigInt> {
    let prod = IntZElement::basis(m).mult(&IntZElement::basis(n))?;
    let top = prod.coeff(m + n);
    let expected = crate::arith::binomial::binom_u(m + n, n);
    if prod.degree() != Some(m + n) || top != expected {
        return Err(Error::Falsified(format!(
            "top coefficient of C(x,{m})C(x,{n}) is {top}, divided powers require {expected}"
        )));
    }
    Ok(top)
}

/// Element of `Int(Z) ⊗ Int(Z)` in the basis `C(x,m) ⊗ C(x,n)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TensorElement {
    coeffs: BTreeMap<(usize, usize), BigInt>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coeffs<I: IntoIterator<Item = ((usize, usize), BigInt)>>(it: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in it {
            insert_nonzero(&mut coeffs, k, c);
        }
        prune(&mut coeffs);
        TensorElement { coeffs }
    }

    pub fn pure(f: &IntZElement, g: &IntZElement) -> Self {
        Self::from_coeffs(
            f.coeffs
                .iter()
                .flat_map(|(m, a)| g.coeffs.iter().map(move |(n, b)| ((*m, *n), a * b))),
        )
    }

    pub fn coeffs(&self) -> &BTreeMap<(usize, usize), BigInt> {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize, n: usize) -> BigInt {
        self.coeffs
            .get(&(m, n))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .chain(&other.coeffs)
                .map(|(k, c)| (*k, c.clone())),
        )
    }

    /// Factorwise product `(a⊗b)(c⊗d) = ac ⊗ bd`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut cache: BTreeMap<(usize, usize), IntZElement> = BTreeMap::new();
        let mut prod = |i: usize, j: usize| -> Result<IntZElement> {
            let key = (i.min(j), i.max(j));
            if let Some(v) = cache.get(&key) {
                return Ok(v.clone());
            }
            let v = IntZElement::basis(i).mult(&IntZElement::basis(j))?;
            cache.insert(key, v.clone());
            Ok(v)
        };
        let mut acc = TensorElement::zero();
        for ((a, b), c1) in &self.coeffs {
            for ((c, d), c2) in &other.coeffs {
                let left = prod(*a, *c)?;
                let right = prod(*b, *d)?;
                let k = c1 * c2;
                acc = acc.add(&TensorElement::pure(&left, &right.scale(&k)));
            }
        }
        Ok(acc)
    }

    /// `m: Int(Z) ⊗ Int(Z) -> Int(Z)`.
    pub fn multiply_out(&self) -> Result<IntZElement> {
        let mut acc = IntZElement::zero();
        for ((m, n), c) in &self.coeffs {
            acc = acc.add(
                &IntZElement::basis(*m)
                    .mult(&IntZElement::basis(*n))?
                    .scale(c),
            );
        }
        Ok(acc)
    }

    /// Applies linear maps to each factor.
    pub fn map_each<F, G>(&self, f: F, g: G) -> Result<Self>
    where
        F: Fn(&IntZElement) -> Result<IntZElement>,
        G: Fn(&IntZElement) -> Result<IntZElement>,
    {
        let mut acc = TensorElement::zero();
        for ((m, n), c) in &self.coeffs {
            let l = f(&IntZElement::basis(*m))?;
            let r = g(&IntZElement::basis(*n))?;
            acc = acc.add(&TensorElement::pure(&l.scale(c), &r));
        }
        Ok(acc)
    }

    /// `(ε ⊗ id)`.
    pub fn counit_left(&self) -> IntZElement {
        IntZElement::from_coeffs(
            self.coeffs
                .iter()
                .filter(|((m, _), _)| *m == 0)
                .map(|((_, n), c)| (*n, c.clone())),
        )
    }

    /// `(id ⊗ ε)`.
    pub fn counit_right(&self) -> IntZElement {
        IntZElement::from_coeffs(
            self.coeffs
                .iter()
                .filter(|((_, n), _)| *n == 0)
                .map(|((m, _), c)| (*m, c.clone())),
        )
    }

    /// `(Δ ⊗ id)` into triple tensors.
    pub fn comult_left(&self) -> Tensor3 {
        let mut t = BTreeMap::new();
        for ((m, n), c) in &self.coeffs {
            for i in 0..=*m {
                insert_nonzero(&mut t, (i, m - i, *n), c.clone());
            }
        }
        prune(&mut t);
        Tensor3 { coeffs: t }
    }

    /// `(id ⊗ Δ)` into triple tensors.
    pub fn comult_right(&self) -> Tensor3 {
        let mut t = BTreeMap::new();
        for ((m, n), c) in &self.coeffs {
            for j in 0..=*n {
                insert_nonzero(&mut t, (*m, j, n - j), c.clone());
            }
        }
        prune(&mut t);
        Tensor3 { coeffs: t }
    }

    /// `Σ c_{m,n} C(a,m) C(b,n)`.
    pub fn eval(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .map(|((m, n), c)| c * binom(a, *m) * binom(b, *n))
            .sum()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor3 {
    coeffs: BTreeMap<(usize, usize, usize), BigInt>,
}

impl Tensor3 {
    pub fn coeffs(&self) -> &BTreeMap<(usize, usize, usize), BigInt> {
        &self.coeffs
    }
}

impl fmt::Display for IntZElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::fmt_intz(self, "x", f)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::fmt_tensor(self, "x", f)
    }
}
