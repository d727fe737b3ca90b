//! Dense exact linear algebra: reduced row-echelon form and linear solves.
//!
//! Over the rationals, elimination runs fraction-free on primitive integer rows;
//! only the final pivot normalization produces fractions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::field::{primitive_scale, FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix of shape {rows}x{cols} needs {expected} entries, got {got}")]
    EntryCount { rows: usize, cols: usize, expected: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("entry belongs to {found}, matrix is over {expected}")]
    FieldMismatch { expected: FieldSpec, found: FieldSpec },
}

/// Row-major matrix of exact scalars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::EntryCount { rows, cols, expected: rows * cols, got: entries.len() });
        }
        if let Some(bad) = entries.iter().find(|e| e.field() != field) {
            return Err(LinalgError::FieldMismatch { expected: field, found: bad.field() });
        }
        Ok(Self { field, rows, cols, entries })
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        assert_eq!(value.field(), self.field);
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), x, self.field)).collect())
    }

    /// `y^T · M` for a row vector `y`.
    pub fn left_mul_vec(&self, y: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if y.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector of length {} against {} rows",
                y.len(),
                self.rows
            )));
        }
        Ok((0..self.cols)
            .map(|c| {
                let mut acc = self.field.zero();
                for (r, yr) in y.iter().enumerate() {
                    if !yr.is_zero() {
                        acc += &(yr * self.get(r, c));
                    }
                }
                acc
            })
            .collect())
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Reduced row-echelon form. The pivot in each column is the first nonzero
    /// entry at or below the current row.
    pub fn rref(&self) -> Rref {
        let rows: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let (reduced, pivots) = match self.field {
            FieldSpec::Rationals => rref_rational(rows, self.cols),
            FieldSpec::PrimeField(_) => rref_field(rows, self.cols, self.field),
        };
        let rank = pivots.len();
        let matrix = DenseMatrix::new(self.field, self.rows, self.cols, reduced.into_iter().flatten().collect())
            .expect("rref preserves shape");
        Rref { matrix, pivot_columns: pivots, rank }
    }

    /// Basis of `{x : M x = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.rref().kernel_basis()
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<DenseMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.field.one());
        }
        let reduced = aug.rref();
        if reduced.pivot_columns.iter().take(n).enumerate().any(|(i, &p)| p != i) || reduced.rank < n {
            return None;
        }
        let rows = (0..n).map(|r| reduced.matrix.row(r)[n..].to_vec()).collect();
        Some(DenseMatrix::from_rows(self.field, rows).expect("square"))
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let t = other.transpose();
        let rows = (0..self.rows)
            .map(|r| (0..other.cols).map(|c| dot(self.row(r), t.row(c), self.field)).collect())
            .collect();
        DenseMatrix::from_rows(self.field, rows)
    }

    /// Solves `M x = b`. An inconsistent system yields a certificate rather than an error.
    pub fn solve(&self, b: &[Scalar]) -> Result<Solution, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "right-hand side of length {} against {} rows",
                b.len(),
                self.rows
            )));
        }
        if let Some(bad) = b.iter().find(|e| e.field() != self.field) {
            return Err(LinalgError::FieldMismatch { expected: self.field, found: bad.field() });
        }
        let mut aug = Self::zeros(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let reduced = aug.rref();
        if let Some(row) = reduced.pivot_columns.iter().position(|&p| p == self.cols) {
            // a left kernel vector of M that does not annihilate b
            let left_witness = self
                .transpose()
                .kernel_basis()
                .into_iter()
                .find(|y| !dot(y, b, self.field).is_zero())
                .expect("inconsistent system has a separating left kernel vector");
            return Ok(Solution::Inconsistent { row, left_witness });
        }
        let mut particular = vec![self.field.zero(); self.cols];
        for (i, &p) in reduced.pivot_columns.iter().enumerate() {
            particular[p] = reduced.matrix.get(i, self.cols).clone();
        }
        let coefficient_part = Rref {
            matrix: DenseMatrix::from_rows(
                self.field,
                (0..self.rows).map(|r| reduced.matrix.row(r)[..self.cols].to_vec()).collect(),
            )
            .expect("shape"),
            pivot_columns: reduced.pivot_columns.clone(),
            rank: reduced.rank,
        };
        Ok(Solution::Consistent { particular, kernel: coefficient_part.kernel_basis() })
    }
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar], field: FieldSpec) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: DenseMatrix,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
}

impl Rref {
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let field = self.matrix.field();
        let cols = self.matrix.cols();
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivot_columns {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![field.zero(); cols];
                v[free] = field.one();
                for (i, &p) in self.pivot_columns.iter().enumerate() {
                    v[p] = -self.matrix.get(i, free);
                }
                v
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Consistent { particular: Vec<Scalar>, kernel: Vec<Vec<Scalar>> },
    /// `row` is the row of the reduced augmented system `[M | b]` whose
    /// coefficient part vanishes while its right side does not; `left_witness`
    /// is a vector `y` with `y·M = 0` and `y·b ≠ 0`.
    Inconsistent { row: usize, left_witness: Vec<Scalar> },
}

impl Solution {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Solution::Consistent { .. })
    }
}

fn rref_field(mut rows: Vec<Vec<Scalar>>, cols: usize, field: FieldSpec) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut lead = 0;
    for c in 0..cols {
        let Some(found) = (lead..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(lead, found);
        let inv = rows[lead][c].inverse().expect("nonzero pivot");
        for x in rows[lead].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..rows.len() {
            if r == lead || rows[r][c].is_zero() {
                continue;
            }
            let factor = rows[r][c].clone();
            for k in c..cols {
                if rows[lead][k].is_zero() {
                    continue;
                }
                let delta = &factor * &rows[lead][k];
                rows[r][k] -= &delta;
            }
        }
        debug_assert!(rows.iter().all(|row| row.iter().all(|x| x.field() == field)));
        pivots.push(c);
        lead += 1;
        if lead == rows.len() {
            break;
        }
    }
    (rows, pivots)
}

fn rref_rational(rows: Vec<Vec<Scalar>>, cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let field = FieldSpec::Rationals;
    let mut ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lambda = primitive_scale(field, row.iter());
            row.iter()
                .map(|x| {
                    let v = (x * &lambda).as_rational().unwrap().clone();
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for c in 0..cols {
        let Some(found) = (lead..ints.len()).find(|&r| !ints[r][c].is_zero()) else {
            continue;
        };
        ints.swap(lead, found);
        let p = ints[lead][c].clone();
        for r in 0..ints.len() {
            if r == lead || ints[r][c].is_zero() {
                continue;
            }
            let a = ints[r][c].clone();
            let g = p.gcd(&a);
            let (pm, am) = (&p / &g, &a / &g);
            let pivot_row = std::mem::take(&mut ints[lead]);
            for (x, y) in ints[r].iter_mut().zip(&pivot_row) {
                *x = &pm * &*x - &am * y;
            }
            ints[lead] = pivot_row;
            make_primitive(&mut ints[r]);
        }
        pivots.push(c);
        lead += 1;
        if lead == ints.len() {
            break;
        }
    }
    let reduced = ints
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            let pivot = pivots.get(i).map(|&c| row[c].clone()).unwrap_or_else(BigInt::one);
            row.into_iter()
                .map(|x| Scalar::Rational(BigRational::new(x, pivot.clone())))
                .collect()
        })
        .collect();
    (reduced, pivots)
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return;
    }
    let g = g.abs();
    for x in row.iter_mut() {
        *x = &*x / &g;
    }
}
