use serde::{Deserialize, Serialize};

use super::{cholesky_in_place, dot, DenseMatrix};
use crate::error::{Error, Result};

/// `log det(YYᵀ)` split into squared perpendicular lengths.
///
/// `z_values[i]` is the squared distance from row `i` of `Y` to the span of
/// rows `0..i`, so `log_det = Σ log z_values[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerpendicularDecomposition {
    pub log_det: f64,
    pub z_values: Vec<f64>,
}

impl PerpendicularDecomposition {
    /// Recomputes the log-determinant from the stored lengths in the
    /// `-p log n + Σ log(n·z)` form used by the perpendicular representation.
    pub fn reassemble(&self, n: usize) -> f64 {
        let ln_n = (n as f64).ln();
        -(self.z_values.len() as f64) * ln_n
            + self
                .z_values
                .iter()
                .map(|z| (n as f64 * z).ln())
                .sum::<f64>()
    }
}

fn check_shape(y: &DenseMatrix) -> Result<()> {
    if y.rows() == 0 || y.rows() > y.cols() {
        return Err(Error::Dimension(format!(
            "need 1 <= p <= n, got a {}x{} matrix",
            y.rows(),
            y.cols()
        )));
    }
    Ok(())
}

/// `log det(YYᵀ)` through a Cholesky factorisation of the `p×p` Gram matrix.
pub fn log_det_gram(y: &DenseMatrix) -> Result<f64> {
    check_shape(y)?;
    let (p, n) = (y.rows(), y.cols());
    let mut g = y.gram().into_vec();
    cholesky_in_place(&mut g, p, (p * n) as f64).map_err(|(row, pivot, threshold)| {
        Error::RankDeficient {
            row,
            pivot,
            threshold,
        }
    })?;
    let log_det = 2.0 * (0..p).map(|i| g[i * p + i].ln()).sum::<f64>();
    Ok(log_det)
}

/// `log det(YYᵀ)` by the method of perpendiculars: classical Gram–Schmidt
/// over the rows with a second orthogonalisation pass.
pub fn perpendicular_log_det(y: &DenseMatrix) -> Result<PerpendicularDecomposition> {
    check_shape(y)?;
    let (p, n) = (y.rows(), y.cols());
    let mut basis: Vec<f64> = Vec::with_capacity(p * n);
    let mut z_values = Vec::with_capacity(p);
    let mut v = vec![0.0; n];
    let mut coeffs = vec![0.0; p];
    for i in 0..p {
        let row = y.row(i);
        v.copy_from_slice(row);
        let norm2 = dot(row, row);
        for _pass in 0..2 {
            for (j, q) in basis.chunks_exact(n).enumerate() {
                coeffs[j] = dot(q, &v);
            }
            for (j, q) in basis.chunks_exact(n).enumerate() {
                let c = coeffs[j];
                for (x, qk) in v.iter_mut().zip(q) {
                    *x -= c * qk;
                }
            }
        }
        let z = dot(&v, &v);
        let threshold = n as f64 * f64::EPSILON * norm2;
        if !(z > threshold) {
            return Err(Error::RankDeficient {
                row: i,
                pivot: z,
                threshold,
            });
        }
        let inv = 1.0 / z.sqrt();
        basis.extend(v.iter().map(|x| x * inv));
        z_values.push(z);
    }
    let log_det = z_values.iter().map(|z| z.ln()).sum();
    Ok(PerpendicularDecomposition { log_det, z_values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_zero_log_det() {
        let y = DenseMatrix::identity(2);
        assert_eq!(log_det_gram(&y).unwrap(), 0.0);
        let d = perpendicular_log_det(&y).unwrap();
        assert_eq!(d.log_det, 0.0);
        assert_eq!(d.z_values, vec![1.0, 1.0]);
    }

    #[test]
    fn diagonal_rectangle() {
        let y = DenseMatrix::from_rows(&[&[2.0, 0.0, 0.0], &[0.0, 3.0, 0.0]]);
        let expected = 36f64.ln();
        assert!((log_det_gram(&y).unwrap() - expected).abs() < 1e-14);
        let d = perpendicular_log_det(&y).unwrap();
        assert!((d.log_det - expected).abs() < 1e-14);
        assert!((d.reassemble(3) - expected).abs() < 1e-12);
    }

    #[test]
    fn repeated_row_is_rank_deficient() {
        let y = DenseMatrix::from_rows(&[&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]]);
        assert!(matches!(
            log_det_gram(&y),
            Err(Error::RankDeficient { row: 1, .. })
        ));
        assert!(matches!(
            perpendicular_log_det(&y),
            Err(Error::RankDeficient { row: 1, .. })
        ));
    }

    #[test]
    fn rejects_wide_gram() {
        let y = DenseMatrix::zeros(3, 2);
        assert!(matches!(log_det_gram(&y), Err(Error::Dimension(_))));
    }
}
