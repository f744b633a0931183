use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix};

/// A bigrading `(degree, weight)`.
pub type Bidegree = (i64, i64);

/// A bigraded complex of free modules with `d : C_(n,w) -> C_(n-1,w)`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ranks: BTreeMap<Bidegree, usize>,
    /// Keyed by source bidegree; `rows = rank(n-1,w)`, `cols = rank(n,w)`.
    diffs: BTreeMap<Bidegree, IntMatrix>,
}

/// `H_(n,w) ≅ Z^free ⊕ ⊕ Z/torsion_i`, with enough data to express a
/// cycle in terms of the chosen generators.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    pub bidegree: Bidegree,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    /// Cycles representing the free generators, as columns.
    pub generators: IntMatrix,
    cycle_basis: IntMatrix,
    boundary_snf_p: IntMatrix,
    boundary_diag: Vec<BigInt>,
    outgoing: IntMatrix,
}

/// Coordinates of a homology class: free part, then torsion part reduced
/// modulo each invariant factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl ChainComplex {
    /// Checks shapes and `d ∘ d = 0`.
    pub fn new(
        ranks: BTreeMap<Bidegree, usize>,
        diffs: BTreeMap<Bidegree, IntMatrix>,
    ) -> Result<Self> {
        let rank = |b: &Bidegree| ranks.get(b).copied().unwrap_or(0);
        for (&(n, w), d) in &diffs {
            if d.rows() != rank(&(n - 1, w)) || d.cols() != rank(&(n, w)) {
                return Err(Error::InvalidInput(format!(
                    "differential out of ({n},{w}) has shape {}x{}",
                    d.rows(),
                    d.cols()
                )));
            }
        }
        let c = ChainComplex { ranks, diffs };
        for (&(n, w), d) in &c.diffs {
            if let Some(d2) = c.diffs.get(&(n - 1, w)) {
                if !d2.mul(d).is_zero() {
                    return Err(Error::Falsified(format!("d^2 != 0 out of ({n},{w})")));
                }
            }
        }
        Ok(c)
    }

    pub fn rank(&self, b: Bidegree) -> usize {
        self.ranks.get(&b).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &BTreeMap<Bidegree, usize> {
        &self.ranks
    }

    /// The differential out of `b` (a zero matrix when none is stored).
    pub fn differential(&self, (n, w): Bidegree) -> IntMatrix {
        self.diffs
            .get(&(n, w))
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.rank((n - 1, w)), self.rank((n, w))))
    }

    pub fn homology(&self, b: Bidegree) -> HomologyGroup {
        let (n, w) = b;
        let out = self.differential(b);
        let incoming = self.differential((n + 1, w));
        let dim = self.rank(b);
        // cycles: trailing columns of Q in the Smith form of d_out
        let s = smith_normal_form(&out);
        let cols: Vec<Vec<BigInt>> = (s.rank()..dim).map(|j| s.q.column(j)).collect();
        let cycles = IntMatrix::from_columns(dim, &cols);
        // boundaries in cycle coordinates
        let coords: Vec<Vec<BigInt>> = incoming
            .columns()
            .iter()
            .map(|c| cycles.solve(c).expect("boundaries are cycles"))
            .collect();
        let c = IntMatrix::from_columns(cycles.cols(), &coords);
        let sc = smith_normal_form(&c);
        let r = sc.rank();
        let gens: Vec<Vec<BigInt>> = (r..cycles.cols())
            .map(|j| cycles.mul_vec(&sc.p_inv.column(j)))
            .collect();
        HomologyGroup {
            bidegree: b,
            free_rank: cycles.cols() - r,
            torsion: sc.torsion(),
            generators: IntMatrix::from_columns(dim, &gens),
            cycle_basis: cycles,
            boundary_snf_p: sc.p,
            boundary_diag: sc.diagonal,
            outgoing: out,
        }
    }

    /// Homology at every bidegree carrying cells, strands in parallel when
    /// `jobs != 1`; the result is ordered by bidegree either way.
    pub fn homology_all(&self, jobs: usize) -> BTreeMap<Bidegree, HomologyGroup> {
        let keys: Vec<Bidegree> = self.ranks.keys().copied().collect();
        let compute = || {
            keys.par_iter()
                .map(|&b| (b, self.homology(b)))
                .collect::<Vec<_>>()
        };
        let v = if jobs == 1 {
            keys.iter().map(|&b| (b, self.homology(b))).collect()
        } else {
            match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
                Ok(pool) => pool.install(compute),
                Err(_) => compute(),
            }
        };
        v.into_iter().collect()
    }

    /// The complex with every differential transposed and degrees negated,
    /// so that it is again a chain complex: `C^T_(-n,w) = C_(n,w)`.
    pub fn transpose(&self) -> ChainComplex {
        let ranks = self
            .ranks
            .iter()
            .map(|(&(n, w), &r)| ((-n, w), r))
            .collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(&(n, w), d)| ((-(n - 1), w), d.transpose()))
            .collect();
        ChainComplex { ranks, diffs }
    }
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Expresses a cycle in terms of the homology generators.
    pub fn reduce(&self, chain: &[BigInt]) -> Result<HomologyClass> {
        if chain.len() != self.outgoing.cols() {
            return Err(Error::InvalidInput("chain has the wrong length".into()));
        }
        if self.outgoing.mul_vec(chain).iter().any(|x| !x.is_zero()) {
            return Err(Error::NotACycle);
        }
        let z = self
            .cycle_basis
            .solve(chain)
            .expect("cycles lie in the cycle lattice");
        let y = self.boundary_snf_p.mul_vec(&z);
        let r = self.boundary_diag.len();
        let torsion = self
            .boundary_diag
            .iter()
            .zip(&y)
            .filter(|(d, _)| *d != &BigInt::from(1))
            .map(|(d, v)| v.mod_floor(d))
            .collect();
        Ok(HomologyClass {
            free: y[r..].to_vec(),
            torsion,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(d: IntMatrix) -> ChainComplex {
        let ranks = BTreeMap::from([((0, 0), d.rows()), ((1, 0), d.cols())]);
        ChainComplex::new(ranks, BTreeMap::from([((1, 0), d)])).unwrap()
    }

    #[test]
    fn zero_differential() {
        let c = ChainComplex::new(BTreeMap::from([((0, 0), 3)]), BTreeMap::new()).unwrap();
        let h = c.homology((0, 0));
        assert_eq!((h.free_rank, h.torsion.len()), (3, 0));
    }

    #[test]
    fn multiplication_by_two() {
        let c = single(IntMatrix::from_i64(&[&[2]]));
        let h0 = c.homology((0, 0));
        assert_eq!(h0.free_rank, 0);
        assert_eq!(h0.torsion, vec![BigInt::from(2)]);
        assert!(c.homology((1, 0)).is_zero());
        let cls = h0.reduce(&[BigInt::from(3)]).unwrap();
        assert_eq!(cls.torsion, vec![BigInt::from(1)]);
    }

    #[test]
    fn d_squared_checked() {
        let ranks = BTreeMap::from([((0, 0), 1), ((1, 0), 1), ((2, 0), 1)]);
        let one = IntMatrix::from_i64(&[&[1]]);
        let diffs = BTreeMap::from([((1, 0), one.clone()), ((2, 0), one)]);
        assert!(matches!(
            ChainComplex::new(ranks, diffs),
            Err(Error::Falsified(_))
        ));
    }

    #[test]
    fn reduce_rejects_non_cycles() {
        let c = single(IntMatrix::from_i64(&[&[1, -1]]));
        let h1 = c.homology((1, 0));
        assert_eq!(h1.free_rank, 1);
        assert!(matches!(
            h1.reduce(&[BigInt::from(1), BigInt::from(0)]),
            Err(Error::NotACycle)
        ));
        let g = h1.generators.column(0);
        assert_eq!(h1.reduce(&g).unwrap().free, vec![BigInt::from(1)]);
        let t = c.transpose();
        assert_eq!(t.homology((-1, 0)).free_rank, 1);
    }
}
