//! Dense exact linear algebra over ℚ(q,t).
//!
//! Sizes here are tiny (basis dimensions of the fixed-point modules), so a
//! plain Gaussian elimination is plenty.  The pivot heuristic prefers the
//! entry with the fewest polynomial terms to keep intermediate fractions
//! small.

use crate::arith::QTFraction;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct FracMat {
    rows: usize,
    cols: usize,
    data: Vec<QTFraction>,
}

impl FracMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FracMat {
            rows,
            cols,
            data: vec![QTFraction::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<QTFraction>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        FracMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &QTFraction {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: QTFraction) {
        self.data[i * self.cols + j] = v;
    }

    /// Weight used to pick pivots: fewer terms first.
    fn pivot_weight(f: &QTFraction) -> usize {
        f.num().num_terms() + f.den().num_terms()
    }

    /// Eliminates in place below/above pivots; returns pivot columns.
    /// `augment` marks how many trailing columns are right-hand sides and
    /// must never be chosen as pivots.
    fn rref(&mut self, augment: usize) -> Vec<usize> {
        let work_cols = self.cols - augment;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..work_cols {
            let best = (row..self.rows)
                .filter(|&i| !self.at(i, col).is_zero())
                .min_by_key(|&i| Self::pivot_weight(self.at(i, col)));
            let Some(best) = best else { continue };
            for j in 0..self.cols {
                self.data.swap(row * self.cols + j, best * self.cols + j);
            }
            let inv = self.at(row, col).clone().inverse().expect("nonzero pivot");
            for j in col..self.cols {
                let v = self.at(row, j) * &inv;
                self.set(row, j, v);
            }
            for i in 0..self.rows {
                if i == row || self.at(i, col).is_zero() {
                    continue;
                }
                let factor = self.at(i, col).clone();
                for j in col..self.cols {
                    let v = self.at(i, j) - &(&factor * self.at(row, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref(0).len()
    }

    /// Solves A·x = b for square A with a unique solution.
    pub fn solve(&self, rhs: &[QTFraction]) -> Result<Vec<QTFraction>> {
        assert_eq!(self.rows, self.cols, "solve needs a square matrix");
        assert_eq!(rhs.len(), self.rows);
        match self.solve_general(rhs)? {
            Some(x) => Ok(x),
            None => unreachable!("square full-rank systems are consistent"),
        }
    }

    /// Inverse of a square matrix, by row-reducing [A | I].
    pub fn inverse(&self) -> Result<FracMat> {
        assert_eq!(self.rows, self.cols, "inverse needs a square matrix");
        let n = self.rows;
        let mut aug = FracMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, QTFraction::one());
        }
        let pivots = aug.rref(n);
        if pivots.len() < n {
            return Err(Error::Singular(format!("rank {} < size {n}", pivots.len())));
        }
        let mut out = FracMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.at(i, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Matrix product A·B.
    pub fn mul(&self, rhs: &FracMat) -> FracMat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = FracMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = QTFraction::zero();
                for l in 0..self.cols {
                    if self.at(i, l).is_zero() || rhs.at(l, j).is_zero() {
                        continue;
                    }
                    acc = &acc + &(self.at(i, l) * rhs.at(l, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Apply the matrix to a column vector.
    pub fn mul_vec(&self, v: &[QTFraction]) -> Vec<QTFraction> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = QTFraction::zero();
                for j in 0..self.cols {
                    if self.at(i, j).is_zero() || v[j].is_zero() {
                        continue;
                    }
                    acc = &acc + &(self.at(i, j) * &v[j]);
                }
                acc
            })
            .collect()
    }

    /// Solves A·x = b for arbitrary A.  Returns `Ok(None)` if inconsistent;
    /// free variables are set to zero.  Square systems must be full rank
    /// (anything else is reported as singular).
    pub fn solve_general(&self, rhs: &[QTFraction]) -> Result<Option<Vec<QTFraction>>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = FracMat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let pivots = aug.rref(1);
        if self.rows == self.cols && pivots.len() < self.cols {
            return Err(Error::Singular(format!(
                "rank {} < size {}",
                pivots.len(),
                self.cols
            )));
        }
        // inconsistent iff a row reads 0 = nonzero
        for i in pivots.len()..self.rows {
            if !aug.at(i, self.cols).is_zero() {
                return Ok(None);
            }
        }
        let mut x = vec![QTFraction::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols).clone();
        }
        Ok(Some(x))
    }
}
