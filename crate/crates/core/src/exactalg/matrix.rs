//! Dense exact matrices with rank, kernel and row reduction.
//!
//! Rank over the rationals goes through fraction-free (Bareiss) elimination
//! on a denominator-cleared integer copy, which keeps intermediate entries
//! as minors of the input. Over F_p plain Gaussian elimination is exact
//! already. Kernels are read off a reduced row echelon form in the field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{FieldScalar, FieldTag};

/// A row-major dense matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldScalar>,
    tag: FieldTag,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize, tag: FieldTag) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![tag.zero(); rows * cols],
            tag,
        }
    }

    pub fn identity(n: usize, tag: FieldTag) -> Self {
        let mut m = Self::zero(n, n, tag);
        for i in 0..n {
            m.set(i, i, tag.one());
        }
        m
    }

    /// Builds a matrix from rows, checking that every entry shares `tag`
    /// and that the rows are rectangular.
    pub fn from_rows(rows: Vec<Vec<FieldScalar>>, cols: usize, tag: FieldTag) -> Result<Self> {
        for row in &rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: row.len() });
            }
            for e in row {
                tag.ensure_same(&e.tag())?;
            }
        }
        Ok(ExactMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
            tag,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>], tag: FieldTag) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().map(|&v| FieldScalar::from_i64(v, tag)))
            .collect();
        ExactMatrix { rows: rows.len(), cols, entries, tag }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldScalar) {
        assert_eq!(v.tag(), self.tag, "entry tag differs from matrix tag");
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldScalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zero(self.cols, self.rows, self.tag);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        self.tag.ensure_same(&rhs.tag)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: rhs.rows });
        }
        let mut out = ExactMatrix::zero(self.rows, rhs.cols, self.tag);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = self.tag.zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(r, k).mul(rhs.get(k, c)));
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[FieldScalar]) -> Result<Vec<FieldScalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut acc = self.tag.zero();
            for c in 0..self.cols {
                acc = acc.add(&self.get(r, c).mul(&v[c]));
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.tag.ensure_same(&other.tag)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.cols });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(ExactMatrix { rows: self.rows + other.rows, cols: self.cols, entries, tag: self.tag })
    }

    /// Rank by exact elimination: Bareiss over Q, Gaussian over F_p.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if self.tag.is_rational() {
            self.rank_bareiss()
        } else {
            let mut work = self.clone();
            work.row_reduce().len()
        }
    }

    fn rank_bareiss(&self) -> usize {
        // Clear denominators row by row; scaling a row does not change rank.
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row.iter().fold(BigInt::one(), |acc, e| {
                    acc.lcm(e.as_rational().expect("rational matrix").denom())
                });
                row.iter()
                    .map(|e| {
                        let q = e.as_rational().unwrap();
                        q.numer() * (&lcm / q.denom())
                    })
                    .collect()
            })
            .collect();

        let mut prev = BigInt::one();
        let mut pivot_row = 0usize;
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
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                    m[r][c] = num / &prev;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[pivot_row][col].clone();
            pivot_row += 1;
        }
        pivot_row
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(found) = (pivot_row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(pivot_row, found);
            let inv = self.get(pivot_row, col).inv().expect("pivot is nonzero");
            for c in col..self.cols {
                let v = self.get(pivot_row, c).mul(&inv);
                self.set(pivot_row, c, v);
            }
            for r in 0..self.rows {
                if r == pivot_row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c).sub(&factor.mul(self.get(pivot_row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of the right kernel `{v : M v = 0}`. The basis is canonical:
    /// it depends only on the row space of the matrix, each vector carries
    /// a 1 in one free column and zeros in the others.
    pub fn kernel(&self) -> Vec<Vec<FieldScalar>> {
        if self.cols == 0 {
            return Vec::new();
        }
        let mut work = self.clone();
        let pivots = work.row_reduce();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![self.tag.zero(); self.cols];
            v[free] = self.tag.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = work.get(row, free).neg();
            }
            basis.push(v);
        }
        basis
    }
}
