use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `p * a * q = diag(diagonal, 0, ...)`, with `p`, `q` unimodular and
/// each diagonal entry positive and dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diagonal: Vec<BigInt>,
    pub p: IntMatrix,
    pub p_inv: IntMatrix,
    pub q: IntMatrix,
    pub q_inv: IntMatrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

struct Work {
    a: IntMatrix,
    p: IntMatrix,
    p_inv: IntMatrix,
    q: IntMatrix,
    q_inv: IntMatrix,
}

impl Work {
    /// row_i += c * row_j
    fn row_add(&mut self, i: usize, j: usize, c: &BigInt) {
        for m in [&mut self.a, &mut self.p] {
            for k in 0..m.cols() {
                let v = &m[(j, k)] * c;
                m[(i, k)] += v;
            }
        }
        let pi = &mut self.p_inv;
        for k in 0..pi.rows() {
            let v = &pi[(k, i)] * c;
            pi[(k, j)] -= v;
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.p] {
            for k in 0..m.cols() {
                let t = m[(i, k)].clone();
                m[(i, k)] = m[(j, k)].clone();
                m[(j, k)] = t;
            }
        }
        let pi = &mut self.p_inv;
        for k in 0..pi.rows() {
            let t = pi[(k, i)].clone();
            pi[(k, i)] = pi[(k, j)].clone();
            pi[(k, j)] = t;
        }
    }

    fn row_neg(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.p] {
            for k in 0..m.cols() {
                m[(i, k)] = -m[(i, k)].clone();
            }
        }
        let pi = &mut self.p_inv;
        for k in 0..pi.rows() {
            pi[(k, i)] = -pi[(k, i)].clone();
        }
    }

    /// col_i += c * col_j
    fn col_add(&mut self, i: usize, j: usize, c: &BigInt) {
        for m in [&mut self.a, &mut self.q] {
            for k in 0..m.rows() {
                let v = &m[(k, j)] * c;
                m[(k, i)] += v;
            }
        }
        let qi = &mut self.q_inv;
        for k in 0..qi.cols() {
            let v = &qi[(i, k)] * c;
            qi[(j, k)] -= v;
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.q] {
            for k in 0..m.rows() {
                let t = m[(k, i)].clone();
                m[(k, i)] = m[(k, j)].clone();
                m[(k, j)] = t;
            }
        }
        let qi = &mut self.q_inv;
        for k in 0..qi.cols() {
            let t = qi[(i, k)].clone();
            qi[(i, k)] = qi[(j, k)].clone();
            qi[(j, k)] = t;
        }
    }

    fn min_nonzero(
        &self,
        rows: impl Iterator<Item = usize>,
        cols: impl Iterator<Item = usize> + Clone,
    ) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in rows {
            for j in cols.clone() {
                let v = self.a[(i, j)].abs();
                if v.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, _, b)| v < *b) {
                    best = Some((i, j, v));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        p: IntMatrix::identity(rows),
        p_inv: IntMatrix::identity(rows),
        q: IntMatrix::identity(cols),
        q_inv: IntMatrix::identity(cols),
    };
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((i, j)) = w.min_nonzero(t..rows, t..cols) else {
            break;
        };
        w.row_swap(t, i);
        w.col_swap(t, j);
        loop {
            let pivot = w.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if !w.a[(i, t)].is_zero() {
                    let c = -w.a[(i, t)].div_floor(&pivot);
                    w.row_add(i, t, &c);
                    clean &= w.a[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.a[(t, j)].is_zero() {
                    let c = -w.a[(t, j)].div_floor(&pivot);
                    w.col_add(j, t, &c);
                    clean &= w.a[(t, j)].is_zero();
                }
            }
            if !clean {
                // bring the smallest remainder in row/column t to the pivot
                let mut best = (t, t, w.a[(t, t)].abs());
                for i in t + 1..rows {
                    let v = w.a[(i, t)].abs();
                    if !v.is_zero() && v < best.2 {
                        best = (i, t, v);
                    }
                }
                for j in t + 1..cols {
                    let v = w.a[(t, j)].abs();
                    if !v.is_zero() && v < best.2 {
                        best = (t, j, v);
                    }
                }
                w.row_swap(t, best.0);
                w.col_swap(t, best.1);
                continue;
            }
            let pivot = w.a[(t, t)].clone();
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    w.row_add(t, i, &one);
                }
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.row_neg(t);
        }
        diagonal.push(w.a[(t, t)].clone());
    }
    Smith {
        diagonal,
        p: w.p,
        p_inv: w.p_inv,
        q: w.q,
        q_inv: w.q_inv,
    }
}

/// Solves `a x = b` given the Smith form of `a`.
pub(super) fn solve_with(s: &Smith, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let y = s.p.mul_vec(b);
    let r = s.rank();
    let mut z = vec![BigInt::zero(); s.q.rows()];
    for (k, yk) in y.iter().enumerate() {
        if k < r {
            let (quot, rem) = yk.div_rem(&s.diagonal[k]);
            if !rem.is_zero() {
                return None;
            }
            z[k] = quot;
        } else if !yk.is_zero() {
            return None;
        }
    }
    Some(s.q.mul_vec(&z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) {
        let s = smith_normal_form(m);
        let d = s.p.mul(m).mul(&s.q);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let expect = if i == j && i < s.rank() {
                    s.diagonal[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(d[(i, j)], expect, "{m:?}");
            }
        }
        assert_eq!(s.p.mul(&s.p_inv), IntMatrix::identity(m.rows()));
        assert_eq!(s.q.mul(&s.q_inv), IntMatrix::identity(m.cols()));
        for w in s.diagonal.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(s.diagonal.iter().all(|x| x.is_positive()));
    }

    #[test]
    fn small_cases() {
        let m = IntMatrix::from_i64(&[&[2]]);
        assert_eq!(smith_normal_form(&m).diagonal, vec![BigInt::from(2)]);
        let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        check(&m);
        assert_eq!(
            smith_normal_form(&m).diagonal,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        check(&IntMatrix::zeros(2, 3));
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(
            smith_normal_form(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]])).diagonal,
            vec![BigInt::from(1), BigInt::from(6)]
        );
    }

    #[test]
    fn solve_and_span() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 1], &[0, 0]]);
        assert!(a
            .solve(&[BigInt::from(1), BigInt::from(0), BigInt::from(0)])
            .is_none());
        let x = a
            .solve(&[BigInt::from(4), BigInt::from(-3), BigInt::from(0)])
            .unwrap();
        assert_eq!(x, vec![BigInt::from(2), BigInt::from(-3)]);
        let b = IntMatrix::from_i64(&[&[2, 2], &[1, 0], &[0, 0]]);
        assert!(a.same_span(&b));
        assert_eq!(a.column_span_basis().cols(), 2);
        assert!(a.column_span_basis().same_span(&a));
    }

    proptest! {
        #[test]
        fn smith_properties(r in 1usize..5, c in 1usize..5, seed in prop::collection::vec(-9i64..10, 16)) {
            let mut m = IntMatrix::zeros(r, c);
            for i in 0..r { for j in 0..c { m[(i, j)] = BigInt::from(seed[i * 4 + j]); } }
            check(&m);
        }
    }
}
