//! Reduced bar and cobar constructions.
//!
//! Signs: a bar word `[a_1|...|a_n]` sits in total degree `sum |a_i| + n`
//! and
//!
//! ```text
//! d[a_1|...|a_n] = sum_i (-1)^(e_i) [a_1|...|a_i a_(i+1)|...|a_n],
//! e_i = sum_(j <= i) (|a_j| + 1).
//! ```
//!
//! A cobar word `[c_1|...|c_n]` sits in total degree `sum |c_i| - n` and
//! each term `c' ⊗ c''` of the reduced coproduct of `c_i` contributes
//! `(-1)^(sum_(j<i)(|c_j|+1) + |c'|+1) [...|c'|c''|...]`. With these choices
//! the cobar differential of a dual coalgebra is the transpose of the bar
//! differential of the algebra. Both differentials lower total degree by one.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::algebra::{Generator, GradedAugmentedAlgebra, GradedCoalgebra};
use super::complex::{Bidegree, ChainComplex, HomologyGroup};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

pub type Word = Vec<usize>;

fn sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// One row of a homology table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyRow {
    pub degree: i64,
    pub weight: i64,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

/// A complex spanned by words in a bigraded basis, kept only up to a
/// length and a weight bound.
#[derive(Clone, Debug)]
pub struct WordComplex {
    pub complex: ChainComplex,
    basis: Vec<Generator>,
    cells: BTreeMap<Bidegree, Vec<Word>>,
    /// Bidegrees containing words longer than the length bound.
    truncated: BTreeSet<Bidegree>,
    max_length: usize,
    /// `+1` for bar, `-1` for cobar.
    shift: i64,
}

fn enumerate_words(basis: &[Generator], max_len: usize, weight_bound: i64) -> Vec<Word> {
    let mut out = vec![vec![]];
    let mut frontier: Vec<(Word, i64)> = vec![(vec![], 0)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, wt) in &frontier {
            for (i, g) in basis.iter().enumerate() {
                let nw = wt + g.weight;
                if nw.abs() <= weight_bound {
                    let mut word = w.clone();
                    word.push(i);
                    out.push(word.clone());
                    next.push((word, nw));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    out
}

impl WordComplex {
    fn bidegree(basis: &[Generator], shift: i64, w: &Word) -> Bidegree {
        let deg: i64 = w.iter().map(|&i| basis[i].degree).sum();
        let wt: i64 = w.iter().map(|&i| basis[i].weight).sum();
        (deg + shift * w.len() as i64, wt)
    }

    fn build(
        basis: Vec<Generator>,
        max_length: usize,
        weight_bound: usize,
        shift: i64,
        d: impl Fn(&Word) -> Vec<(Word, BigInt)>,
    ) -> Result<Self> {
        let wb = i64::try_from(weight_bound)
            .map_err(|_| Error::InvalidInput("weight bound too large".into()))?;
        // weights are nonzero and of one sign, so no word is longer than the bound
        let all = enumerate_words(&basis, weight_bound.max(max_length), wb);
        let mut cells: BTreeMap<Bidegree, Vec<Word>> = BTreeMap::new();
        let mut truncated = BTreeSet::new();
        for w in all {
            let b = Self::bidegree(&basis, shift, &w);
            if w.len() > max_length {
                truncated.insert(b);
            } else {
                cells.entry(b).or_default().push(w);
            }
        }
        for v in cells.values_mut() {
            v.sort();
        }
        let index: BTreeMap<&Word, usize> = cells
            .values()
            .flat_map(|v| v.iter().enumerate().map(|(i, w)| (w, i)))
            .collect();
        let mut diffs = BTreeMap::new();
        for (&(n, wt), words) in &cells {
            let Some(target) = cells.get(&(n - 1, wt)) else {
                continue;
            };
            let mut m = IntMatrix::zeros(target.len(), words.len());
            for (j, w) in words.iter().enumerate() {
                for (v, c) in d(w) {
                    if v.len() > max_length {
                        continue;
                    }
                    let i = index[&v];
                    m[(i, j)] += c;
                }
            }
            diffs.insert((n, wt), m);
        }
        let ranks = cells.iter().map(|(&b, v)| (b, v.len())).collect();
        Ok(WordComplex {
            complex: ChainComplex::new(ranks, diffs)?,
            basis,
            cells,
            truncated,
            max_length,
            shift,
        })
    }

    pub fn cells(&self, b: Bidegree) -> &[Word] {
        self.cells.get(&b).map_or(&[], Vec::as_slice)
    }

    pub fn bidegrees(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.cells.keys().copied()
    }

    pub fn basis(&self) -> &[Generator] {
        &self.basis
    }

    /// Whether homology at `b` is unaffected by the length bound.
    pub fn is_complete(&self, (n, w): Bidegree) -> bool {
        (n - 1..=n + 1).all(|k| !self.truncated.contains(&(k, w)))
    }

    pub fn word_bidegree(&self, w: &Word) -> Bidegree {
        Self::bidegree(&self.basis, self.shift, w)
    }

    /// The chain given by a single word.
    pub fn chain_of(&self, w: &Word) -> Result<(Bidegree, Vec<BigInt>)> {
        let b = self.word_bidegree(w);
        let cells = self.cells(b);
        let i = cells
            .iter()
            .position(|c| c == w)
            .ok_or_else(|| Error::BoundExceeded {
                size: format!("word of length {}", w.len()),
                bound: format!("length {}", self.max_length),
            })?;
        let mut v = vec![BigInt::zero(); cells.len()];
        v[i] = BigInt::one();
        Ok((b, v))
    }

    pub fn homology(&self, b: Bidegree) -> HomologyGroup {
        self.complex.homology(b)
    }

    /// Homology at every complete bidegree, ordered by weight (descending in
    /// absolute value last) then degree.
    pub fn homology_table(&self, jobs: usize) -> Vec<HomologyRow> {
        let all = self.complex.homology_all(jobs);
        let mut rows: Vec<HomologyRow> = all
            .into_iter()
            .filter(|(b, _)| self.is_complete(*b))
            .map(|((n, w), h)| HomologyRow {
                degree: n,
                weight: w,
                free_rank: h.free_rank,
                torsion: h.torsion,
            })
            .collect();
        rows.sort_by_key(|r| (r.weight.abs(), r.weight, r.degree));
        rows
    }

    fn combine(
        &self,
        (bx, x): (Bidegree, &[BigInt]),
        (by, y): (Bidegree, &[BigInt]),
        words: impl Fn(&Word, &Word) -> Vec<(Word, BigInt)>,
    ) -> Result<(Bidegree, Vec<BigInt>)> {
        let target = (bx.0 + by.0, bx.1 + by.1);
        let mut out = vec![BigInt::zero(); self.cells(target).len()];
        for (u, cu) in self.cells(bx).iter().zip(x) {
            if cu.is_zero() {
                continue;
            }
            for (v, cv) in self.cells(by).iter().zip(y) {
                if cv.is_zero() {
                    continue;
                }
                for (w, c) in words(u, v) {
                    let (b, e) = self.chain_of(&w)?;
                    debug_assert_eq!(b, target);
                    let i = e.iter().position(|x| !x.is_zero()).unwrap();
                    out[i] += cu * cv * c;
                }
            }
        }
        Ok((target, out))
    }
}

/// `Bar(A)` through `stages` tensor factors and `|weight| <= weight_bound`.
pub fn bar_complex(
    a: &GradedAugmentedAlgebra,
    stages: usize,
    weight_bound: usize,
) -> Result<WordComplex> {
    let basis = a.basis.clone();
    WordComplex::build(a.basis.clone(), stages, weight_bound, 1, |w| {
        let mut out = Vec::new();
        let mut e = 0i64;
        for i in 0..w.len().saturating_sub(1) {
            e += basis[w[i]].degree + 1;
            for (k, c) in a.mul(w[i], w[i + 1]) {
                let mut v = w[..i].to_vec();
                v.push(k);
                v.extend_from_slice(&w[i + 2..]);
                out.push((v, sign(e) * c));
            }
        }
        out
    })
}

/// `Cobar(C)` through `max_length` tensor factors and `|weight| <= weight_bound`.
pub fn cobar_complex(
    c: &GradedCoalgebra,
    max_length: usize,
    weight_bound: usize,
) -> Result<WordComplex> {
    let basis = c.basis.clone();
    WordComplex::build(c.basis.clone(), max_length, weight_bound, -1, |w| {
        let mut out = Vec::new();
        let mut e = 0i64;
        for i in 0..w.len() {
            for ((l, r), coef) in c.delta(w[i]) {
                let mut v = w[..i].to_vec();
                v.push(l);
                v.push(r);
                v.extend_from_slice(&w[i + 1..]);
                out.push((v, sign(e + basis[l].degree + 1) * coef));
            }
            e += basis[w[i]].degree + 1;
        }
        out
    })
}

/// Shuffles of two words with Koszul signs on the shifted degrees `|a| + 1`.
pub fn shuffle_words(basis: &[Generator], u: &Word, v: &Word) -> Vec<(Word, BigInt)> {
    let mut out = Vec::new();
    let shifted = |i: usize| basis[i].degree + 1;
    fn rec(
        u: &[usize],
        v: &[usize],
        acc: &mut Word,
        e: i64,
        shifted: &dyn Fn(usize) -> i64,
        out: &mut Vec<(Word, BigInt)>,
    ) {
        if u.is_empty() && v.is_empty() {
            out.push((acc.clone(), sign(e)));
            return;
        }
        if let Some((&a, rest)) = u.split_first() {
            acc.push(a);
            rec(rest, v, acc, e, shifted, out);
            acc.pop();
        }
        if let Some((&b, rest)) = v.split_first() {
            // b jumps over every remaining letter of u
            let jumped: i64 = u.iter().map(|&a| shifted(a)).sum();
            acc.push(b);
            rec(u, rest, acc, e + jumped * shifted(b), shifted, out);
            acc.pop();
        }
    }
    rec(u, v, &mut Vec::new(), 0, &shifted, &mut out);
    out
}

/// Shuffle product of two bar chains.
pub fn shuffle_product(
    bar: &WordComplex,
    x: (Bidegree, &[BigInt]),
    y: (Bidegree, &[BigInt]),
) -> Result<(Bidegree, Vec<BigInt>)> {
    let basis = bar.basis().to_vec();
    let (hx, hy) = (bar.homology(x.0), bar.homology(y.0));
    hx.reduce(x.1)?;
    hy.reduce(y.1)?;
    bar.combine(x, y, |u, v| shuffle_words(&basis, u, v))
}

/// Concatenation product of two cobar chains.
pub fn concatenation_product(
    cobar: &WordComplex,
    x: (Bidegree, &[BigInt]),
    y: (Bidegree, &[BigInt]),
) -> Result<(Bidegree, Vec<BigInt>)> {
    cobar.homology(x.0).reduce(x.1)?;
    cobar.homology(y.0).reduce(y.1)?;
    cobar.combine(x, y, |u, v| {
        let mut w = u.clone();
        w.extend_from_slice(v);
        vec![(w, BigInt::one())]
    })
}

/// Whether every cobar differential of `A^∨` is the transpose of the
/// corresponding bar differential of `A`, word by word.
pub fn cobar_is_transpose_of_bar(
    a: &GradedAugmentedAlgebra,
    max_length: usize,
    weight_bound: usize,
) -> Result<bool> {
    let bar = bar_complex(a, max_length, weight_bound)?;
    let cobar = cobar_complex(&a.dual_coalgebra(), max_length, weight_bound)?;
    let entries = |c: &WordComplex, forward: bool| {
        let mut m: BTreeMap<(Word, Word), BigInt> = BTreeMap::new();
        for b in c.bidegrees() {
            let src = c.cells(b);
            let tgt = c.cells((b.0 - 1, b.1));
            let d = c.complex.differential(b);
            for (j, u) in src.iter().enumerate() {
                for (i, v) in tgt.iter().enumerate() {
                    if !d[(i, j)].is_zero() {
                        let key = if forward {
                            (u.clone(), v.clone())
                        } else {
                            (v.clone(), u.clone())
                        };
                        m.insert(key, d[(i, j)].clone());
                    }
                }
            }
        }
        m
    };
    Ok(entries(&cobar, true) == entries(&bar, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binom;

    fn ranks(rows: &[HomologyRow]) -> Vec<(i64, i64, usize)> {
        rows.iter()
            .filter(|r| r.free_rank > 0 || !r.torsion.is_empty())
            .map(|r| (r.degree, r.weight, r.free_rank))
            .collect()
    }

    #[test]
    fn trivial_inputs() {
        let bar = bar_complex(&GradedAugmentedAlgebra::trivial(), 4, 4).unwrap();
        assert_eq!(ranks(&bar.homology_table(1)), vec![(0, 0, 1)]);
        let cobar = cobar_complex(&GradedCoalgebra::trivial(), 4, 4).unwrap();
        assert_eq!(ranks(&cobar.homology_table(1)), vec![(0, 0, 1)]);
    }

    #[test]
    fn exterior_in_degree_minus_one() {
        let a = GradedAugmentedAlgebra::exterior(-1, -1).unwrap();
        let bar = bar_complex(&a, 6, 6).unwrap();
        for n in 0..=6i64 {
            assert_eq!(bar.complex.rank((0, -n)), 1);
        }
        assert!(bar.complex.differential((0, -3)).is_zero());
        let expected: Vec<_> = (0..=6).map(|n| (0, -n, 1)).collect();
        let rows = bar.homology_table(1);
        assert_eq!(ranks(&rows), expected);
        assert!(rows.iter().all(|r| r.torsion.is_empty()));
    }

    #[test]
    fn exterior_in_degree_one_gives_divided_powers() {
        let a = GradedAugmentedAlgebra::exterior(1, 1).unwrap();
        let bar = bar_complex(&a, 4, 4).unwrap();
        let expected: Vec<_> = (0..=4).map(|n| (2 * n, n, 1)).collect();
        assert_eq!(ranks(&bar.homology_table(1)), expected);
    }

    #[test]
    fn shuffle_constants() {
        let a = GradedAugmentedAlgebra::exterior(-1, -1).unwrap();
        let bar = bar_complex(&a, 6, 6).unwrap();
        let gamma = |n: usize| bar.chain_of(&vec![0; n]).unwrap();
        for (m, n) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
            let (gm, gn) = (gamma(m), gamma(n));
            let (b, prod) = shuffle_product(&bar, (gm.0, &gm.1), (gn.0, &gn.1)).unwrap();
            let h = bar.homology(b);
            let lhs = h.reduce(&prod).unwrap().free[0].clone();
            let unit = h.reduce(&gamma(m + n).1).unwrap().free[0].clone();
            assert_eq!(lhs, unit * binom(&BigInt::from(m + n), n), "{m},{n}");
        }
    }

    #[test]
    fn cobar_of_divided_powers_is_exterior() {
        let c = GradedCoalgebra::divided_power(2, 5).unwrap();
        let cobar = cobar_complex(&c, 5, 5).unwrap();
        assert_eq!(ranks(&cobar.homology_table(1)), vec![(0, 0, 1), (1, 1, 1)]);
        // d[g2] = ±[g1|g1]
        let d = cobar.complex.differential((3, 2));
        assert_eq!(d.rows(), 1);
        let y = cobar.chain_of(&vec![0]).unwrap();
        let (b, sq) = concatenation_product(&cobar, (y.0, &y.1), (y.0, &y.1)).unwrap();
        assert!(cobar.homology(b).reduce(&sq).unwrap().free.is_empty());
    }

    #[test]
    fn duality_is_transposition() {
        let a = GradedAugmentedAlgebra::polynomial(2, 5).unwrap();
        assert!(cobar_is_transpose_of_bar(&a, 5, 5).unwrap());
        let l = GradedAugmentedAlgebra::exterior(1, 1).unwrap();
        assert!(cobar_is_transpose_of_bar(&l, 4, 4).unwrap());
    }

    #[test]
    fn truncated_strands_are_hidden() {
        let a = GradedAugmentedAlgebra::exterior(1, 1).unwrap();
        let bar = bar_complex(&a, 2, 4).unwrap();
        assert!(bar
            .homology_table(1)
            .iter()
            .all(|r| r.weight <= 2 || r.weight.abs() > 4));
        assert!(!bar.is_complete((6, 3)));
        assert!(bar.chain_of(&vec![0, 0, 0]).is_err());
    }

    #[test]
    fn parallel_table_matches() {
        let c = GradedCoalgebra::divided_power(2, 5).unwrap();
        let cobar = cobar_complex(&c, 5, 5).unwrap();
        assert_eq!(cobar.homology_table(1), cobar.homology_table(3));
    }
}
