use super::{DenseMatrix, Spectrum};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a symmetric positive definite matrix by cyclic Jacobi
/// rotations, returned as a descending [`Spectrum`].
pub fn jacobi_spectrum(s: &DenseMatrix) -> Result<Spectrum> {
    if !s.is_square() {
        return Err(Error::Dimension(format!(
            "eigenvalues of a {}x{} matrix",
            s.rows(),
            s.cols()
        )));
    }
    let asym = s.max_asymmetry();
    if asym > 1e-10 * s.max_abs().max(1.0) {
        return Err(Error::NotSymmetric(asym));
    }
    let n = s.rows();
    let mut a = s.as_slice().to_vec();
    // symmetrise exactly so rotations stay consistent
    for i in 0..n {
        for j in 0..i {
            let m = 0.5 * (a[i * n + j] + a[j * n + i]);
            a[i * n + j] = m;
            a[j * n + i] = m;
        }
    }
    let target = 1e-12 * s.frobenius_norm();
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, n, p, q);
            }
        }
    }
    let values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    if let Some(bad) = values.iter().find(|v| !(**v > 0.0)) {
        return Err(Error::NotPositive(*bad));
    }
    Spectrum::new(values)
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Zeroes `a[p][q]` with a two-sided Givens rotation.
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_input() {
        let s = jacobi_spectrum(&DenseMatrix::diagonal(&[1.0, 4.0])).unwrap();
        assert_eq!(s.values(), &[4.0, 1.0]);
    }

    #[test]
    fn two_by_two() {
        let s = jacobi_spectrum(&DenseMatrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]])).unwrap();
        assert!((s.values()[0] - 3.0).abs() < 1e-14);
        assert!((s.values()[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_asymmetric_and_indefinite() {
        let m = DenseMatrix::from_rows(&[&[1.0, 2.0], &[0.0, 1.0]]);
        assert!(matches!(jacobi_spectrum(&m), Err(Error::NotSymmetric(_))));
        let m = DenseMatrix::from_rows(&[&[1.0, 2.0], &[2.0, 1.0]]);
        assert!(matches!(jacobi_spectrum(&m), Err(Error::NotPositive(_))));
    }
}
