//! Dense row-major matrices over a small finite field.
//!
//! Only what subspace arithmetic needs: row reduction to reduced row-echelon
//! form, null spaces, and products against Gram matrices.

use crate::error::{Error, Result};

use super::field::Field;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl Mat {
    pub fn new(rows: usize, cols: usize, data: Vec<u8>) -> Self {
        assert_eq!(rows * cols, data.len());
        Mat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::new(rows, cols, vec![0; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Mat::new(rows.len(), cols, data))
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// In-place reduction to reduced row-echelon form; returns the rank.
    /// Zero rows are removed afterwards, so `self.rows == rank` on return.
    pub fn rref(&mut self, f: &Field) -> usize {
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(src) = (pivot_row..self.rows).find(|&r| self.at(r, col) != 0) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..self.cols {
                    self.data.swap(src * self.cols + c, pivot_row * self.cols + c);
                }
            }
            let scale = f.inv(self.at(pivot_row, col)).unwrap();
            for c in 0..self.cols {
                let v = f.mul(self.at(pivot_row, c), scale);
                self.set(pivot_row, c, v);
            }
            for r in 0..self.rows {
                if r != pivot_row && self.at(r, col) != 0 {
                    let factor = self.at(r, col);
                    for c in 0..self.cols {
                        let v = f.sub(self.at(r, c), f.mul(factor, self.at(pivot_row, c)));
                        self.set(r, c, v);
                    }
                }
            }
            pivot_row += 1;
        }
        self.data.truncate(pivot_row * self.cols);
        self.rows = pivot_row;
        pivot_row
    }

    /// Pivot column of each row; valid after `rref`.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.rows)
            .map(|r| (0..self.cols).find(|&c| self.at(r, c) != 0).unwrap())
            .collect()
    }

    /// Basis of the right null space `{v : self * v^T = 0}`, returned as an
    /// RREF matrix whose rows are the basis vectors.
    pub fn nullspace(&self, f: &Field) -> Mat {
        let mut m = self.clone();
        m.rref(f);
        let pivots = m.pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Mat::zeros(free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            basis.set(i, fc, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                basis.set(i, pc, f.neg(m.at(r, fc)));
            }
        }
        basis.rref(f);
        basis
    }

    /// Row vector times this matrix.
    pub fn vec_mul(&self, f: &Field, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|c| {
                let mut acc = 0u8;
                for (r, &vr) in v.iter().enumerate() {
                    acc = f.add(acc, f.mul(vr, self.at(r, c)));
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c));
            }
        }
        t
    }

    pub fn map(&self, g: impl Fn(u8) -> u8) -> Mat {
        Mat::new(self.rows, self.cols, self.data.iter().map(|&x| g(x)).collect())
    }
}

/// Dot product of two vectors.
pub fn dot(f: &Field, a: &[u8], b: &[u8]) -> u8 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = 0;
    for (&x, &y) in a.iter().zip(b) {
        acc = f.add(acc, f.mul(x, y));
    }
    acc
}

/// Iterate all vectors of GF(q)^dim in ascending base-q counter order.
pub fn all_vectors(q: u16, dim: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = (q as u64).pow(dim as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0u8; dim];
        for slot in v.iter_mut().rev() {
            *slot = (idx % q as u64) as u8;
            idx /= q as u64;
        }
        v
    })
}

/// All vectors in the row space of `m` (coefficients ranging over GF(q)).
pub fn rowspace_vectors(f: &Field, m: &Mat) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for coeffs in all_vectors(f.order(), m.rows) {
        out.push(m.vec_mul(f, &coeffs));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_is_canonical_over_gf2() {
        let f = Field::get(2).unwrap();
        let mut m = Mat::from_rows(3, &[vec![1, 1, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(m.rref(f), 2);
        assert_eq!(m.data, vec![1, 0, 0, 0, 1, 0]);
    }

    #[test]
    fn rref_removes_duplicates() {
        let f = Field::get(2).unwrap();
        let mut m = Mat::from_rows(2, &[vec![1, 0], vec![1, 0]]).unwrap();
        assert_eq!(m.rref(f), 1);
        assert_eq!(m.data, vec![1, 0]);
    }

    #[test]
    fn rref_idempotent_random_gf3() {
        let f = Field::get(3).unwrap();
        // deterministic pseudo-random fill
        let mut state = 1u64;
        for _ in 0..50 {
            let mut data = Vec::new();
            for _ in 0..12 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                data.push((state >> 33) as u8 % 3);
            }
            let mut m = Mat::new(3, 4, data);
            m.rref(f);
            let once = m.clone();
            m.rref(f);
            assert_eq!(m, once);
        }
    }

    #[test]
    fn nullspace_dimension_complements_rank() {
        let f = Field::get(3).unwrap();
        let m = Mat::from_rows(4, &[vec![1, 2, 0, 1], vec![0, 0, 1, 1]]).unwrap();
        let ns = m.nullspace(f);
        assert_eq!(ns.rows, 2);
        for r in 0..ns.rows {
            let v = ns.row(r);
            for mr in 0..m.rows {
                assert_eq!(dot(f, m.row(mr), v), 0);
            }
        }
    }

    #[test]
    fn all_vectors_counts() {
        assert_eq!(all_vectors(2, 4).count(), 16);
        assert_eq!(all_vectors(3, 3).count(), 27);
    }
}
