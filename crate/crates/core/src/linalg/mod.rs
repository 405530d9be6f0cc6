//! Dense real linear algebra.
//!
//! Everything here works on small-to-moderate dense matrices (a few hundred
//! rows) stored row-major in a flat `Vec<f64>`. The kernels are:
//!
//! - Gram log-determinants by Cholesky and by the method of perpendiculars
//!   (Gram–Schmidt with one re-orthogonalisation pass),
//! - projections onto the orthogonal complement of the row space of
//!   `N·A`, with a Sherman–Morrison style diagonal that shares a single
//!   Cholesky factor across all coordinates,
//! - a cyclic Jacobi eigensolver that reduces a symmetric matrix to its
//!   [`Spectrum`].

mod eigen;
mod logdet;
mod projection;

pub use eigen::jacobi_spectrum;
pub use logdet::{log_det_gram, perpendicular_log_det, PerpendicularDecomposition};
pub use projection::{projection_diagonal, projection_diagonals_nested, projection_matrix};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row-major dense matrix of finite `f64` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|x| !x.is_finite()) {
            return Err(Error::Domain(format!("non-finite matrix entry {bad}")));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.data[i * n + i] = *v;
        }
        m
    }

    /// Builds a matrix from equally long rows.
    ///
    /// Panics if the rows are ragged or contain non-finite values; meant for
    /// literals in tests and examples.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<f64> = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().copied()
            })
            .collect();
        Self::new(rows.len(), cols, data).expect("invalid matrix literal")
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.cols + j] = value;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    /// The leading `k` rows as a new matrix.
    pub fn top_rows(&self, k: usize) -> Self {
        assert!(k <= self.rows);
        Self {
            rows: k,
            cols: self.cols,
            data: self.data[..k * self.cols].to_vec(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0.0 {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `self · selfᵀ`, exploiting symmetry.
    pub fn gram(&self) -> Self {
        let p = self.rows;
        let mut g = Self::zeros(p, p);
        for i in 0..p {
            for j in 0..=i {
                let v = dot(self.row(i), self.row(j));
                g.data[i * p + j] = v;
                g.data[j * p + i] = v;
            }
        }
        g
    }

    /// Multiplies column `k` by `factors[k]`, i.e. `self · diag(factors)`.
    pub fn scale_columns(&self, factors: &[f64]) -> Self {
        assert_eq!(factors.len(), self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            for (x, f) in out.row_mut(i).iter_mut().zip(factors) {
                *x *= f;
            }
        }
        out
    }

    /// Multiplies row `i` by `factors[i]`, i.e. `diag(factors) · self`.
    pub fn scale_rows(&self, factors: &[f64]) -> Self {
        assert_eq!(factors.len(), self.rows);
        let mut out = self.clone();
        for (i, f) in factors.iter().enumerate() {
            for x in out.row_mut(i) {
                *x *= f;
            }
        }
        out
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn diag(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .collect()
    }

    /// Largest absolute entrywise difference; `inf` on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Largest `|a_ij - a_ji|`; `inf` for non-square input.
    pub fn max_asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.max_abs_diff(&self.transpose())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// Positive eigenvalues of `AAᵀ`, sorted descending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
    normalized: bool,
}

impl Spectrum {
    /// Validates and sorts `values` (descending). The normalised flag is set
    /// when the values already sum to their count.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("empty spectrum".into()));
        }
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::NotPositive(*bad));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        let normalized = sums_to_len(&values);
        Ok(Self { values, normalized })
    }

    /// The spectrum of `I_n`.
    pub fn identity(n: usize) -> Self {
        assert!(n > 0);
        Self {
            values: vec![1.0; n],
            normalized: true,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().all(|&v| v == 1.0)
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    pub fn min(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Diagonal of `A = diag(√λ)`.
    pub fn sqrt_values(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.sqrt()).collect()
    }
}

fn sums_to_len(values: &[f64]) -> bool {
    let n = values.len() as f64;
    (values.iter().sum::<f64>() - n).abs() <= 1e-12 * n
}

/// Rescales a spectrum by `n / Σλ` so that it sums to `n` (i.e. `tr(AAᵀ) = n`).
pub fn normalize_spectrum(s: &Spectrum) -> Spectrum {
    if s.normalized {
        return s.clone();
    }
    let factor = s.len() as f64 / s.sum();
    Spectrum {
        values: s.values.iter().map(|v| v * factor).collect(),
        normalized: true,
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// In-place lower Cholesky factor of the symmetric `n×n` matrix `a`
/// (row-major; only the lower triangle is read). A pivot is rejected when it
/// is at most `tol_factor · ε · max diag(a)`. On failure returns
/// `(row, pivot, threshold)`.
pub(crate) fn cholesky_in_place(
    a: &mut [f64],
    n: usize,
    tol_factor: f64,
) -> std::result::Result<(), (usize, f64, f64)> {
    let max_diag = (0..n).map(|i| a[i * n + i]).fold(0.0, f64::max);
    let threshold = tol_factor * f64::EPSILON * max_diag;
    for j in 0..n {
        let (done, rest) = a.split_at_mut((j + 1) * n);
        let row_j = &mut done[j * n..];
        let pivot = row_j[j] - dot(&row_j[..j], &row_j[..j]);
        if !(pivot > threshold) {
            return Err((j, pivot, threshold));
        }
        let ljj = pivot.sqrt();
        row_j[j] = ljj;
        row_j[j + 1..].fill(0.0);
        let row_j: &[f64] = row_j;
        for row_i in rest.chunks_exact_mut(n) {
            let s = row_i[j] - dot(&row_i[..j], &row_j[..j]);
            row_i[j] = s / ljj;
        }
    }
    Ok(())
}

/// Solves `L x = b` in place for lower-triangular row-major `l`.
pub(crate) fn forward_substitute(l: &[f64], n: usize, b: &mut [f64]) {
    for i in 0..n {
        let row = &l[i * n..i * n + i];
        let s = b[i] - dot(row, &b[..i]);
        b[i] = s / l[i * n + i];
    }
}
