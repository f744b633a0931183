use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::bigint_from_value;
use crate::linalg::{smith_normal_form, IntMatrix};

/// A decreasing filtration `... ⊇ fil^n ⊇ fil^(n+1) ⊇ ...` of a free module
/// `Z^rank`, bounded in `[n_min, n_max]`.
///
/// Each piece is stored as a matrix whose columns form a basis of `fil^n`
/// inside the ambient module. Below `n_min` every piece is the whole module,
/// above `n_max` it is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredModule {
    rank: usize,
    n_min: i64,
    pieces: Vec<IntMatrix>,
}

impl FilteredModule {
    /// Builds from ambient bases of `fil^n_min, fil^(n_min+1), ...`.
    ///
    /// The first piece must span the whole module, each piece must be
    /// contained in the previous one, and each basis must be independent.
    pub fn from_pieces(rank: usize, n_min: i64, pieces: Vec<IntMatrix>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidInput(
                "a filtration needs at least one piece".into(),
            ));
        }
        for (k, p) in pieces.iter().enumerate() {
            if p.rows() != rank {
                return Err(Error::InvalidInput(format!(
                    "piece {} has {} rows, expected {rank}",
                    n_min + k as i64,
                    p.rows()
                )));
            }
            if p.rank() != p.cols() {
                return Err(Error::InvalidInput(format!(
                    "basis of piece {} is linearly dependent",
                    n_min + k as i64
                )));
            }
        }
        if !pieces[0].same_span(&IntMatrix::identity(rank)) {
            return Err(Error::InvalidInput(format!(
                "fil^{n_min} must be the whole module"
            )));
        }
        for (k, w) in pieces.windows(2).enumerate() {
            if !w[0].spans(&w[1]) {
                return Err(Error::InvalidInput(format!(
                    "fil^{} is not contained in fil^{}",
                    n_min + k as i64 + 1,
                    n_min + k as i64
                )));
            }
        }
        Ok(FilteredModule {
            rank,
            n_min,
            pieces,
        })
    }

    /// Builds from structure maps: `ranks[k]` is the rank of `fil^(n_min+k)`
    /// and `maps[k]` is the injection `fil^(n_min+k+1) -> fil^(n_min+k)`.
    pub fn from_inclusions(n_min: i64, ranks: &[usize], maps: &[IntMatrix]) -> Result<Self> {
        if ranks.is_empty() || maps.len() + 1 != ranks.len() {
            return Err(Error::InvalidInput(
                "need one inclusion between consecutive ranks".into(),
            ));
        }
        let mut pieces = vec![IntMatrix::identity(ranks[0])];
        for (k, m) in maps.iter().enumerate() {
            if m.rows() != ranks[k] || m.cols() != ranks[k + 1] {
                return Err(Error::InvalidInput(format!(
                    "inclusion {k} has the wrong shape"
                )));
            }
            if m.rank() != m.cols() {
                return Err(Error::InvalidInput(format!(
                    "inclusion {k} is not injective"
                )));
            }
            let next = pieces[k].mul(m);
            pieces.push(next);
        }
        Self::from_pieces(ranks[0], n_min, pieces)
    }

    /// `L_p Z^rank`: everything in filtration `<= p`, nothing above.
    pub fn trivial(p: i64, rank: usize) -> Self {
        FilteredModule {
            rank,
            n_min: p,
            pieces: vec![IntMatrix::identity(rank)],
        }
    }

    /// The degree filtration of the binomial basis `C(x,0..=n)`, indexed
    /// decreasingly: `fil^(-k)` is spanned by `C(x,j)` for `j <= k`.
    pub fn degree_filtration(n: usize) -> Self {
        let pieces = (0..=n)
            .map(|k| {
                let keep = n + 1 - k;
                let mut m = IntMatrix::zeros(n + 1, keep);
                for j in 0..keep {
                    m[(j, j)] = BigInt::one();
                }
                m
            })
            .collect();
        FilteredModule {
            rank: n + 1,
            n_min: -(n as i64),
            pieces,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    pub fn n_max(&self) -> i64 {
        self.n_min + self.pieces.len() as i64 - 1
    }

    /// Ambient basis of `fil^n`.
    pub fn piece(&self, n: i64) -> IntMatrix {
        if n <= self.n_min {
            self.pieces[0].clone()
        } else if n > self.n_max() {
            IntMatrix::zeros(self.rank, 0)
        } else {
            self.pieces[(n - self.n_min) as usize].clone()
        }
    }

    pub fn rank_at(&self, n: i64) -> usize {
        self.piece(n).cols()
    }

    /// The structure map `fil^(n+1) -> fil^n` in the stored bases.
    pub fn inclusion(&self, n: i64) -> IntMatrix {
        let big = self.piece(n);
        let small = self.piece(n + 1);
        let cols: Vec<Vec<BigInt>> = small
            .columns()
            .iter()
            .map(|c| big.solve(c).expect("pieces are nested"))
            .collect();
        IntMatrix::from_columns(big.cols(), &cols)
    }

    /// `X(k)^n = X^(n-k)`.
    pub fn shift(&self, k: i64) -> Self {
        FilteredModule {
            rank: self.rank,
            n_min: self.n_min + k,
            pieces: self.pieces.clone(),
        }
    }

    /// Day convolution: `(X ⊗ Y)^n = sum_{i+j=n} fil^i X ⊗ fil^j Y` inside
    /// `X ⊗ Y`, with ambient index `a * rank(Y) + b`.
    pub fn day_tensor(&self, other: &FilteredModule) -> Self {
        let rank = self.rank * other.rank;
        let lo = self.n_min + other.n_min;
        let hi = self.n_max() + other.n_max();
        let pieces = (lo..=hi)
            .map(|n| {
                let mut acc = IntMatrix::zeros(rank, 0);
                for i in self.n_min..=self.n_max() {
                    let x = self.piece(i);
                    let y = other.piece(n - i);
                    if x.cols() > 0 && y.cols() > 0 {
                        acc = acc.hconcat(&x.kron(&y));
                    }
                }
                acc.column_span_basis()
            })
            .collect();
        FilteredModule {
            rank,
            n_min: lo,
            pieces,
        }
    }

    /// Same pieces as submodules, after reindexing the ambient basis by
    /// `perm` (new coordinate `i` is old coordinate `perm[i]`).
    pub fn same_filtration(&self, other: &FilteredModule, perm: Option<&[usize]>) -> bool {
        if self.rank != other.rank {
            return false;
        }
        let lo = self.n_min.min(other.n_min);
        let hi = self.n_max().max(other.n_max()) + 1;
        (lo..=hi).all(|n| {
            let a = match perm {
                Some(p) => self.piece(n).permute_rows(p),
                None => self.piece(n),
            };
            let b = other.piece(n);
            a.cols() == b.cols() && a.same_span(&b)
        })
    }

    /// Ranks of `gr^n = fil^n / fil^(n+1)`; rejects torsion quotients.
    pub fn associated_graded(&self) -> Result<BTreeMap<i64, usize>> {
        let mut out = BTreeMap::new();
        for n in self.n_min..=self.n_max() {
            let inc = self.inclusion(n);
            let snf = smith_normal_form(&inc);
            let torsion = snf.torsion();
            if !torsion.is_empty() {
                return Err(Error::TorsionInGraded {
                    weight: n,
                    invariants: torsion.iter().map(ToString::to_string).collect(),
                });
            }
            out.insert(n, inc.rows() - inc.cols());
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let pieces: Vec<Value> = self
            .pieces
            .iter()
            .map(|p| {
                Value::Array(
                    p.columns()
                        .iter()
                        .map(|c| c.iter().map(|x| Value::String(x.to_string())).collect())
                        .collect(),
                )
            })
            .collect();
        json!({"rank": self.rank, "n_min": self.n_min, "pieces": pieces})
    }

    /// Reads `{"rank": r, "n_min": n, "pieces": [[column, ...], ...]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("filtered module: {m}"));
        let rank = v
            .get("rank")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing \"rank\""))?;
        let n_min = v
            .get("n_min")
            .and_then(Value::as_i64)
            .ok_or_else(|| bad("missing \"n_min\""))?;
        let pieces = v
            .get("pieces")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"pieces\""))?;
        let rank = rank as usize;
        let mut mats = Vec::with_capacity(pieces.len());
        for p in pieces {
            let cols = p
                .as_array()
                .ok_or_else(|| bad("a piece must be a list of columns"))?;
            let cols = cols
                .iter()
                .map(|c| {
                    let c = c.as_array().ok_or_else(|| bad("a column must be a list"))?;
                    if c.len() != rank {
                        return Err(bad("column length differs from rank"));
                    }
                    c.iter().map(bigint_from_value).collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            mats.push(IntMatrix::from_columns(rank, &cols));
        }
        Self::from_pieces(rank, n_min, mats)
    }

    /// The trivially filtered unit `L_0 Z`.
    pub fn unit() -> Self {
        Self::trivial(0, 1)
    }
}

/// Permutation taking the ambient basis of `X ⊗ Y` to that of `Y ⊗ X`.
pub fn swap_permutation(rx: usize, ry: usize) -> Vec<usize> {
    // new index b * rx + a holds old index a * ry + b
    let mut perm = vec![0; rx * ry];
    for a in 0..rx {
        for b in 0..ry {
            perm[b * rx + a] = a * ry + b;
        }
    }
    perm
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_step() -> FilteredModule {
        // Z^2 ⊇ span(e1) ⊇ 0 in degrees 0, 1
        FilteredModule::from_pieces(
            2,
            0,
            vec![IntMatrix::identity(2), IntMatrix::from_i64(&[&[1], &[0]])],
        )
        .unwrap()
    }

    #[test]
    fn unit_law() {
        let x = two_step();
        let u = FilteredModule::unit();
        assert!(u.day_tensor(&x).same_filtration(&x, None));
        assert!(x.day_tensor(&u).same_filtration(&x, None));
    }

    #[test]
    fn trivial_tensor_trivial() {
        let a = FilteredModule::trivial(2, 2);
        let b = FilteredModule::trivial(-1, 3);
        let t = a.day_tensor(&b);
        assert!(t.same_filtration(&FilteredModule::trivial(1, 6), None));
    }

    #[test]
    fn shifts_add() {
        let x = two_step();
        let y = FilteredModule::degree_filtration(2);
        let lhs = x.shift(3).day_tensor(&y.shift(-1));
        assert!(lhs.same_filtration(&x.day_tensor(&y).shift(2), None));
    }

    #[test]
    fn commutative_and_associative() {
        let x = two_step();
        let y = FilteredModule::degree_filtration(2);
        let z = FilteredModule::trivial(1, 2);
        let xy = x.day_tensor(&y);
        let yx = y.day_tensor(&x);
        assert!(yx.same_filtration(&xy, Some(&swap_permutation(3, 2))));
        let l = xy.day_tensor(&z);
        let r = x.day_tensor(&y.day_tensor(&z));
        assert!(l.same_filtration(&r, None));
    }

    #[test]
    fn graded_of_degree_filtration() {
        let f = FilteredModule::degree_filtration(4);
        let gr = f.associated_graded().unwrap();
        assert_eq!(gr.values().copied().collect::<Vec<_>>(), vec![1; 5]);
        assert_eq!(gr.values().sum::<usize>(), f.rank());
        let unit = FilteredModule::unit().associated_graded().unwrap();
        assert_eq!(unit, BTreeMap::from([(0, 1)]));
    }

    #[test]
    fn torsion_is_rejected() {
        let f = FilteredModule::from_pieces(
            1,
            0,
            vec![IntMatrix::identity(1), IntMatrix::from_i64(&[&[2]])],
        )
        .unwrap();
        let e = f.associated_graded().unwrap_err();
        assert!(matches!(e, Error::TorsionInGraded { weight: 0, .. }));
    }

    #[test]
    fn malformed_inputs() {
        assert!(FilteredModule::from_pieces(1, 0, vec![IntMatrix::from_i64(&[&[2]])]).is_err());
        assert!(FilteredModule::from_pieces(
            2,
            0,
            vec![
                IntMatrix::identity(2),
                IntMatrix::from_i64(&[&[1, 2], &[0, 0]])
            ]
        )
        .is_err());
        let inc = IntMatrix::from_i64(&[&[1], &[1]]);
        let f = FilteredModule::from_inclusions(0, &[2, 1], std::slice::from_ref(&inc)).unwrap();
        assert_eq!(f.inclusion(0), inc);
    }

    #[test]
    fn json_roundtrip() {
        let f = FilteredModule::degree_filtration(2);
        assert_eq!(FilteredModule::from_json(&f.to_json()).unwrap(), f);
    }
}
