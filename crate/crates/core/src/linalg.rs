//! Exact rational matrices and fraction-free rank.

use num::bigint::BigInt;
use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{denominator_lcm, rat_int, Rat};
use crate::weyl::QVec;

/// A dense rows × cols matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![rat_int(0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = rat_int(1);
        }
        m
    }

    pub fn from_rows(rows: Vec<QVec>) -> Result<Self> {
        if rows.is_empty() {
            return Ok(Self::zeros(0, 0));
        }
        let cols = rows[0].n();
        if rows.iter().any(|r| r.n() != cols) {
            return Err(Error::RaggedMatrix);
        }
        let data = rows
            .iter()
            .flat_map(|r| r.coords().iter().cloned())
            .collect();
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Columns are the given vectors.
    pub fn from_columns(cols: &[QVec]) -> Result<Self> {
        if cols.is_empty() {
            return Ok(Self::zeros(0, 0));
        }
        let rows = cols[0].n();
        if cols.iter().any(|c| c.n() != rows) {
            return Err(Error::RaggedMatrix);
        }
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.coords().iter().enumerate() {
                *m.get_mut(i, j) = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Side-by-side concatenation [self | other].
    pub fn hstack(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.rows != other.rows {
            return Err(Error::SizeMismatch {
                expected: self.rows,
                got: other.rows,
            });
        }
        let mut m = RatMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *m.get_mut(r, c) = self.get(r, c).clone();
            }
            for c in 0..other.cols {
                *m.get_mut(r, self.cols + c) = other.get(r, c).clone();
            }
        }
        Ok(m)
    }

    /// Exact rank by fraction-free (Bareiss) elimination over the integers,
    /// after clearing each row's denominators.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let lcm = denominator_lcm(self.row(r).iter());
                self.row(r)
                    .iter()
                    .map(|v| v.numer() * (&lcm / v.denom().abs()) * v.denom().signum())
                    .collect()
            })
            .collect();
        // clearing denominators scales rows, which preserves rank
        let mut prev = BigInt::from(1);
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(found) = (pivot_row..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(pivot_row, found);
            for r in pivot_row + 1..self.rows {
                for c in col + 1..self.cols {
                    let num = &m[pivot_row][col] * &m[r][c] - &m[r][col] * &m[pivot_row][c];
                    m[r][c] = num / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[pivot_row][col].clone();
            pivot_row += 1;
        }
        pivot_row
    }
}

/// Solve sum_k x_k * cols[k] = target exactly; None when inconsistent.
pub fn solve_columns(cols: &[QVec], target: &QVec) -> Option<Vec<Rat>> {
    let n = target.n();
    let k = cols.len();
    // augmented [cols | target], plain rational elimination
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c.coords()[r].clone()).collect();
            row.push(target.coords()[r].clone());
            row
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut pr = 0;
    for c in 0..k {
        let Some(found) = (pr..n).find(|&r| !aug[r][c].is_zero()) else {
            continue;
        };
        aug.swap(pr, found);
        let inv = aug[pr][c].clone();
        for x in aug[pr].iter_mut() {
            *x = &*x / &inv;
        }
        let pivot_row = aug[pr].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r != pr && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v = &*v - &(&f * p);
                }
            }
        }
        pivots.push((pr, c));
        pr += 1;
    }
    // inconsistent when a zero row has nonzero rhs
    if aug[pr..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut x = vec![rat_int(0); k];
    for &(r, c) in &pivots {
        x[c] = aug[r][k].clone();
    }
    Some(x)
}
