//! Exact linear algebra over `Q`: row reduction, kernels, fraction-free rank
//! and an incrementally solved affine system.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// column of each nonzero row.
pub fn rref(rows: &mut Vec<Vec<Q>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : M x = 0}`. Each returned vector is 1 at its own free column
/// and 0 at every other free column.
pub fn kernel(mat: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    kernel_with_free(mat, ncols).into_iter().map(|(_, v)| v).collect()
}

/// [`kernel`] together with the free column of each basis vector.
pub fn kernel_with_free(mat: &[Vec<Q>], ncols: usize) -> Vec<(usize, Vec<Q>)> {
    let mut rows = mat.to_vec();
    let pivots = rref(&mut rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push((free, v));
    }
    basis
}

fn clear_denominators(row: &[Q]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Rank by Bareiss fraction-free elimination on integer-cleared rows.
pub fn rank_fraction_free(mat: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = mat.iter().map(|r| clear_denominators(r)).collect();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for i in rank + 1..nrows {
            let lead = m[i][col].clone();
            for j in col..ncols {
                let v = (&pivot * &m[i][j] - &lead * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = pivot.abs();
        if prev.is_zero() {
            prev = BigInt::one();
        }
        rank += 1;
    }
    rank
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>], inner: usize, ncols: usize) -> Vec<Vec<Q>> {
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|j| {
                    (0..inner)
                        .filter(|&k| !row[k].is_zero())
                        .fold(Q::zero(), |acc, k| acc + &row[k] * &b[k][j])
                })
                .collect()
        })
        .collect()
}

/// Outcome of adding an equation to an [`AffineSystem`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Added {
    New,
    Redundant,
    Inconsistent,
}

/// An affine system `A x = b` kept in reduced echelon form, so that the value
/// of any linear form can be queried when it is already determined.
#[derive(Debug, Clone)]
pub struct AffineSystem {
    nvars: usize,
    // each row: coefficients followed by the right-hand side
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl AffineSystem {
    pub fn new(nvars: usize) -> Self {
        AffineSystem { nvars, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    fn reduce(&self, mut v: Vec<Q>) -> Vec<Q> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    /// Adds `form · x = rhs`.
    pub fn add(&mut self, form: &[Q], rhs: &Q) -> Added {
        let mut v = form.to_vec();
        v.push(rhs.clone());
        let v = self.reduce(v);
        let Some(p) = (0..self.nvars).find(|&c| !v[c].is_zero()) else {
            return if v[self.nvars].is_zero() { Added::Redundant } else { Added::Inconsistent };
        };
        let inv = v[p].recip();
        let v: Vec<Q> = v.into_iter().map(|x| x * &inv).collect();
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        Added::New
    }

    /// The value of `form · x` if it is the same on every solution.
    pub fn determined(&self, form: &[Q]) -> Option<Q> {
        let mut v = form.to_vec();
        v.push(Q::zero());
        let v = self.reduce(v);
        if v[..self.nvars].iter().all(Zero::is_zero) {
            Some(-v[self.nvars].clone())
        } else {
            None
        }
    }

    /// The solution obtained by setting every free variable to zero.
    pub fn particular(&self) -> Vec<Q> {
        let mut x = vec![Q::zero(); self.nvars];
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            x[p] = row[self.nvars].clone();
        }
        x
    }

    pub fn free_dimension(&self) -> usize {
        self.nvars - self.rows.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &a {
                let dot = row.iter().zip(v).fold(Q::zero(), |s, (x, y)| s + x * y);
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn bareiss_agrees_with_rref() {
        let a = vec![
            vec![frac(1, 2), q(3), q(0), frac(-7, 3)],
            vec![q(1), q(6), q(0), frac(-14, 3)],
            vec![q(0), q(1), q(5), q(1)],
        ];
        let mut r = a.clone();
        assert_eq!(rref(&mut r, 4).len(), 2);
        assert_eq!(rank_fraction_free(&a), 2);
    }

    #[test]
    fn affine_system_tracks_determined_forms() {
        let mut s = AffineSystem::new(3);
        assert_eq!(s.add(&[q(1), q(-1), q(0)], &q(2)), Added::New);
        assert_eq!(s.determined(&[q(2), q(-2), q(0)]), Some(q(4)));
        assert_eq!(s.determined(&[q(1), q(0), q(0)]), None);
        assert_eq!(s.add(&[q(-1), q(1), q(0)], &q(-2)), Added::Redundant);
        assert_eq!(s.add(&[q(-1), q(1), q(0)], &q(3)), Added::Inconsistent);
        assert_eq!(s.free_dimension(), 2);
    }
}
