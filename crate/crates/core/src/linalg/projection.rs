//! Projections `P_i = I − A N_iᵀ (N_i A² N_iᵀ)⁻¹ N_i A` with `A = diag(√λ)`.
//!
//! `P_i` projects onto the orthogonal complement of the row space of
//! `N_i A`. Its diagonal only needs `L⁻¹ w_k` for every column `w_k` of
//! `N_i`, where `L Lᵀ = N_i A² N_iᵀ`:
//!
//! ```text
//! p_kk = 1 − λ_k ‖L⁻¹ w_k‖²
//! ```
//!
//! Forward substitution is nested in the leading rows, so one factor of the
//! largest Gram matrix serves every `i` at once.

use super::{cholesky_in_place, forward_substitute, DenseMatrix, Spectrum};
use crate::error::{Error, Result};

fn inner_factor(n_i: &DenseMatrix, spectrum: &Spectrum) -> Result<Vec<f64>> {
    let (i, n) = (n_i.rows(), n_i.cols());
    if spectrum.len() != n {
        return Err(Error::Dimension(format!(
            "spectrum of length {} for {n} columns",
            spectrum.len()
        )));
    }
    if i == 0 || i >= n {
        return Err(Error::Dimension(format!(
            "need 1 <= i < n, got i={i}, n={n}"
        )));
    }
    let mut g = n_i.scale_columns(&spectrum.sqrt_values()).gram().into_vec();
    cholesky_in_place(&mut g, i, (i * n) as f64)
        .map_err(|(row, _, _)| Error::SingularInner { row })?;
    Ok(g)
}

/// The full `n×n` projection `P_i` for the `i×n` Gaussian block `n_i`.
pub fn projection_matrix(n_i: &DenseMatrix, spectrum: &Spectrum) -> Result<DenseMatrix> {
    let l = inner_factor(n_i, spectrum)?;
    let (i, n) = (n_i.rows(), n_i.cols());
    // M = L⁻¹ N_i A, then P = I − MᵀM.
    let na = n_i.scale_columns(&spectrum.sqrt_values());
    let mut m = na.transpose().into_vec(); // n×i, row k is column k of N_i A
    for col in m.chunks_exact_mut(i) {
        forward_substitute(&l, i, col);
    }
    let mut p = DenseMatrix::identity(n);
    for k in 0..n {
        let mk = &m[k * i..(k + 1) * i];
        for l_ in 0..=k {
            let v = super::dot(mk, &m[l_ * i..(l_ + 1) * i]);
            p.set(k, l_, p.get(k, l_) - v);
            if l_ != k {
                p.set(l_, k, p.get(l_, k) - v);
            }
        }
    }
    Ok(p)
}

/// Diagonal `(p_{i,11}, …, p_{i,nn})` of `P_i` without forming the matrix.
pub fn projection_diagonal(n_i: &DenseMatrix, spectrum: &Spectrum) -> Result<Vec<f64>> {
    let l = inner_factor(n_i, spectrum)?;
    let (i, n) = (n_i.rows(), n_i.cols());
    let lambda = spectrum.values();
    let mut w = vec![0.0; i];
    Ok((0..n)
        .map(|k| {
            for (r, slot) in w.iter_mut().enumerate() {
                *slot = n_i.get(r, k);
            }
            forward_substitute(&l, i, &mut w);
            1.0 - lambda[k] * w.iter().map(|x| x * x).sum::<f64>()
        })
        .collect())
}

/// Diagonals of `P_1, …, P_m` for every leading block of the `m×n` matrix
/// `n_full`; entry `[i-1][k]` is `p_{i,kk}`.
///
/// Uses a single Cholesky factor of `N A² Nᵀ`; cost `O(m³ + n·m²)`.
pub fn projection_diagonals_nested(
    n_full: &DenseMatrix,
    spectrum: &Spectrum,
) -> Result<Vec<Vec<f64>>> {
    let l = inner_factor(n_full, spectrum)?;
    let (m, n) = (n_full.rows(), n_full.cols());
    let lambda = spectrum.values();
    let mut out = vec![vec![0.0; n]; m];
    let mut w = vec![0.0; m];
    for k in 0..n {
        for (r, slot) in w.iter_mut().enumerate() {
            *slot = n_full.get(r, k);
        }
        forward_substitute(&l, m, &mut w);
        let mut acc = 0.0;
        for (i, x) in w.iter().enumerate() {
            acc += x * x;
            out[i][k] = 1.0 - lambda[k] * acc;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_projection_by_hand() {
        let n1 = DenseMatrix::from_rows(&[&[1.0, 0.0]]);
        let s = Spectrum::identity(2);
        let d = projection_diagonal(&n1, &s).unwrap();
        assert!((d[0] - 0.0).abs() < 1e-15);
        assert!((d[1] - 1.0).abs() < 1e-15);
        let p = projection_matrix(&n1, &s).unwrap();
        assert_eq!(p, DenseMatrix::from_rows(&[&[0.0, 0.0], &[0.0, 1.0]]));
    }

    #[test]
    fn anisotropic_rank_one() {
        // N = [1, 1], λ = (4, 1): row of N A is (2, 1), P = I − vvᵀ/5.
        let n1 = DenseMatrix::from_rows(&[&[1.0, 1.0]]);
        let s = Spectrum::new(vec![4.0, 1.0]).unwrap();
        let d = projection_diagonal(&n1, &s).unwrap();
        assert!((d[0] - 0.2).abs() < 1e-15);
        assert!((d[1] - 0.8).abs() < 1e-15);
        let p = projection_matrix(&n1, &s).unwrap();
        assert!((p.get(0, 1) + 0.4).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_block_sizes() {
        let s = Spectrum::identity(2);
        assert!(matches!(
            projection_diagonal(&DenseMatrix::identity(2), &s),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            projection_diagonal(&DenseMatrix::zeros(1, 3), &s),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn zero_block_is_singular() {
        let s = Spectrum::identity(3);
        assert!(matches!(
            projection_matrix(&DenseMatrix::zeros(1, 3), &s),
            Err(Error::SingularInner { row: 0 })
        ));
    }
}
