//! Dense exact rational matrices: fraction-free (Bareiss) elimination,
//! reduced row echelon form, nullspaces and linear solves.

use crate::{Int, Rat, Result};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        RatMatrix { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rat) -> Self {
        let mut m = RatMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn matvec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc += &self[(i, j)] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn matmul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Exact reduced row echelon form: fraction-free forward elimination on
    /// the denominator-cleared integer matrix, then rational normalization
    /// and back-substitution. Returns (R, pivot columns, rank).
    pub fn rref(&self) -> (RatMatrix, Vec<usize>, usize) {
        // clear denominators row by row
        let mut int_rows: Vec<Vec<Int>> = (0..self.rows)
            .map(|i| {
                let mut lcm = Int::one();
                for j in 0..self.cols {
                    let d = self[(i, j)].denom();
                    lcm = num_integer::lcm(lcm, d.clone());
                }
                (0..self.cols)
                    .map(|j| {
                        let r = &self[(i, j)];
                        r.numer() * (&lcm / r.denom())
                    })
                    .collect()
            })
            .collect();

        let mut pivots = Vec::new();
        let mut prev = Int::one();
        let mut pr = 0usize; // current pivot row
        for c in 0..self.cols {
            let Some(sel) = (pr..self.rows).find(|&i| !int_rows[i][c].is_zero()) else {
                continue;
            };
            int_rows.swap(pr, sel);
            for i in pr + 1..self.rows {
                for j in c + 1..self.cols {
                    let num = &int_rows[pr][c] * &int_rows[i][j] - &int_rows[i][c] * &int_rows[pr][j];
                    debug_assert!((&num % &prev).is_zero());
                    int_rows[i][j] = num / &prev;
                }
                int_rows[i][c] = Int::zero();
            }
            prev = int_rows[pr][c].clone();
            pivots.push(c);
            pr += 1;
            if pr == self.rows {
                break;
            }
        }
        let rank = pivots.len();

        // normalize pivot rows to rationals and eliminate above the pivots
        let mut r = RatMatrix::zeros(self.rows, self.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            let pivot = int_rows[i][pc].clone();
            for j in pc..self.cols {
                r[(i, j)] = Rat::new(int_rows[i][j].clone(), pivot.clone());
            }
        }
        for i in (0..rank).rev() {
            let pc = pivots[i];
            for above in 0..i {
                let factor = r[(above, pc)].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in pc..self.cols {
                    let v = &r[(i, j)] * &factor;
                    r[(above, j)] -= v;
                }
            }
        }
        (r, pivots, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().2
    }

    /// Exact basis of the right kernel; size = cols - rank.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (r, pivots, rank) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - rank);
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(i, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// A particular exact solution of `self * x = b`, or `None` if the system
    /// is inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = RatMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots, _) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(i, self.cols)].clone();
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Stack coordinate vectors as the rows of a matrix.
pub fn rows_matrix(rows: Vec<Vec<Rat>>) -> RatMatrix {
    RatMatrix::from_rows(rows)
}

/// Do the row spans of two matrices coincide? Compared by rref equality
/// after dropping zero rows.
pub fn same_row_span(a: &RatMatrix, b: &RatMatrix) -> Result<bool> {
    if a.cols() != b.cols() {
        return Err(crate::Error::Dimension(format!(
            "row spans in ambient dimensions {} and {}",
            a.cols(),
            b.cols()
        )));
    }
    let (ra, pa, ka) = a.rref();
    let (rb, pb, kb) = b.rref();
    if ka != kb || pa != pb {
        return Ok(false);
    }
    for i in 0..ka {
        for j in 0..a.cols() {
            if ra[(i, j)] != rb[(i, j)] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat_int;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_identity() {
        let id = RatMatrix::identity(3);
        let (r, pivots, rank) = id.rref();
        assert_eq!(r, id);
        assert_eq!(pivots, vec![0, 1, 2]);
        assert_eq!(rank, 3);
    }

    #[test]
    fn rref_rank_one() {
        let a = m(&[&[1, 2], &[2, 4]]);
        let (_, _, rank) = a.rref();
        assert_eq!(rank, 1);
    }

    #[test]
    fn rref_idempotent() {
        let a = m(&[&[2, 4, 1], &[3, 1, 0], &[5, 5, 1]]);
        let (r, _, _) = a.rref();
        let (r2, _, _) = r.rref();
        assert_eq!(r, r2);
    }

    #[test]
    fn nullspace_identity_empty() {
        assert!(RatMatrix::identity(4).nullspace().is_empty());
    }

    #[test]
    fn nullspace_zero_matrix() {
        let z = RatMatrix::zeros(2, 3);
        assert_eq!(z.nullspace().len(), 3);
    }

    #[test]
    fn nullspace_vectors_in_kernel() {
        let a = m(&[&[1, 2, 3, 1], &[0, 1, 1, -1], &[1, 3, 4, 0]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 4 - a.rank());
        for v in &ns {
            assert!(a.matvec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = a.solve(&[rat_int(3), rat_int(1)]).unwrap();
        assert_eq!(x, vec![rat_int(2), rat_int(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(b.solve(&[rat_int(0), rat_int(1)]).is_none());
    }

    #[test]
    fn rank_equals_transpose_rank() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9], &[1, 0, 1]]);
        assert_eq!(a.rank(), a.transpose().rank());
    }
}
