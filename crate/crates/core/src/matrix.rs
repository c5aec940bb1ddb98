//! Integer exchange matrices with exact rank and exact rational solves.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("direction {k} out of range 0..{n}")]
    Direction { k: usize, n: usize },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
}

/// An `m x n` integer matrix whose top `n x n` block is the mutable part.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExchangeMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl ExchangeMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExchangeMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        ExchangeMatrix { rows: rows.len(), cols, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[i64]>::to_vec).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Top `n x n` block.
    pub fn principal_part(&self) -> ExchangeMatrix {
        let n = self.cols;
        let mut out = ExchangeMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(i, j));
            }
        }
        out
    }

    pub fn is_skew_symmetric_top(&self) -> bool {
        let n = self.cols;
        self.rows >= n && (0..n).all(|i| (0..n).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    /// Matrix mutation in direction `k` (0-based), applied to all rows.
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix, MatrixError> {
        if k >= self.cols {
            return Err(MatrixError::Direction { k, n: self.cols });
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let b = self.get(i, j);
                let v = if i == k || j == k {
                    -b
                } else {
                    let bik = self.get(i, k);
                    let bkj = self.get(k, j);
                    b + bik.signum() * (bik * bkj).max(0)
                };
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    /// Stack the `n x n` identity under a square matrix.
    pub fn extend_principal(&self) -> Result<ExchangeMatrix, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.cols;
        let mut out = ExchangeMatrix::zeros(2 * n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(i, j));
            }
            out.set(n + i, i, 1);
        }
        Ok(out)
    }

    /// Stack arbitrary coefficient rows under a square matrix.
    pub fn extend_with(&self, bottom: &[Vec<i64>]) -> Result<ExchangeMatrix, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut rows = self.to_rows();
        rows.extend(bottom.iter().cloned());
        Ok(ExchangeMatrix::from_rows(&rows))
    }

    /// Exact rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> =
            self.to_rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        let (m, n) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = BigInt::from(1);
        for col in 0..n {
            let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in rank + 1..m {
                for c in col + 1..n {
                    let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                    a[r][c] = v / &prev;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
            if rank == m {
                break;
            }
        }
        rank
    }

    /// The unique rational `c` with `self * c = h`, assuming independent columns.
    pub fn solve(&self, h: &[i64]) -> Option<Vec<BigRational>> {
        let (m, n) = (self.rows, self.cols);
        assert_eq!(h.len(), m);
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        let mut a: Vec<Vec<BigRational>> =
            (0..m).map(|i| (0..n).map(|j| q(self.get(i, j))).chain(std::iter::once(q(h[i]))).collect()).collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let p = (row..m).find(|&r| !a[r][col].is_zero())?;
            a.swap(row, p);
            let piv = a[row][col].clone();
            for c in col..=n {
                a[row][c] = &a[row][c] / &piv;
            }
            for r in 0..m {
                if r != row && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in col..=n {
                        let v = &a[row][c] * &f;
                        a[r][c] -= v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if a[row..].iter().any(|r| !r[n].is_zero()) {
            return None;
        }
        Some((0..n).map(|j| a[j][n].clone()).collect())
    }

    /// Solve and require every coefficient to be non-negative.
    pub fn nonnegative_combination(&self, h: &[i64]) -> Option<Vec<BigRational>> {
        let c = self.solve(h)?;
        if c.iter().any(Signed::is_negative) {
            None
        } else {
            Some(c)
        }
    }
}
