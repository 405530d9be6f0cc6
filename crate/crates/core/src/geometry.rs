//! Volumes of pinned simplices and of linear images of fixed convex bodies,
//! all in log space.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::linalg::{log_det_gram, DenseMatrix};

/// The five bodies with closed-form volume.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BodyShape {
    /// `{x ≥ 0, Σx ≤ 1}`.
    StandardSimplex,
    /// `[0, 1]^p`.
    UnitCube,
    /// `[−1, 1]^p`.
    SymmetricCube,
    /// The `ℓ₁` unit ball.
    CrossPolytope,
    /// The Euclidean unit ball.
    UnitBall,
}

/// A body from the catalog in dimension `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvexBodyKind {
    pub kind: BodyShape,
    pub p: usize,
}

impl ConvexBodyKind {
    pub fn new(kind: BodyShape, p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::Domain("body dimension must be >= 1".into()));
        }
        Ok(Self { kind, p })
    }

    pub fn simplex(p: usize) -> Self {
        Self {
            kind: BodyShape::StandardSimplex,
            p: p.max(1),
        }
    }
}

/// `log p!` via the log-gamma function.
pub fn log_factorial(p: usize) -> f64 {
    ln_gamma(p as f64 + 1.0)
}

/// Log of the `p`-volume of the body.
pub fn body_log_volume(body: ConvexBodyKind) -> f64 {
    let p = body.p as f64;
    match body.kind {
        BodyShape::StandardSimplex => -log_factorial(body.p),
        BodyShape::UnitCube => 0.0,
        BodyShape::SymmetricCube => p * std::f64::consts::LN_2,
        BodyShape::CrossPolytope => p * std::f64::consts::LN_2 - log_factorial(body.p),
        BodyShape::UnitBall => 0.5 * p * std::f64::consts::PI.ln() - ln_gamma(0.5 * p + 1.0),
    }
}

/// `log Vol_p(conv{0, x_1, …, x_p}) = −log p! + ½ log det(XXᵀ)`.
pub fn pinned_simplex_log_volume(x: &DenseMatrix) -> Result<f64> {
    Ok(-log_factorial(x.rows()) + 0.5 * log_det_gram(x)?)
}

/// `log Vol_p(Υ) = ½ log det(YYᵀ) + log Vol_p(Σ)` for the image of the body
/// `Σ` under `t ↦ Σ t_i y_i`.
pub fn upsilon_log_volume(body: ConvexBodyKind, y: &DenseMatrix) -> Result<f64> {
    if body.p != y.rows() {
        return Err(Error::Dimension(format!(
            "body has dimension {} but Y has {} rows",
            body.p,
            y.rows()
        )));
    }
    Ok(0.5 * log_det_gram(y)? + body_log_volume(body))
}

/// `log |det M|` by LU with partial pivoting. Fails with `SingularM` when a
/// pivot falls below `p·ε·max|M|`.
pub fn log_abs_det(m: &DenseMatrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let p = m.rows();
    let tol = p as f64 * f64::EPSILON * m.max_abs();
    let mut a = m.as_slice().to_vec();
    let mut log_det = 0.0;
    for j in 0..p {
        let piv = (j..p)
            .max_by(|&r, &s| a[r * p + j].abs().total_cmp(&a[s * p + j].abs()))
            .expect("non-empty range");
        let pivot = a[piv * p + j];
        if !(pivot.abs() > tol) {
            return Err(Error::SingularM(pivot.abs()));
        }
        if piv != j {
            for c in 0..p {
                a.swap(j * p + c, piv * p + c);
            }
        }
        log_det += pivot.abs().ln();
        for r in j + 1..p {
            let f = a[r * p + j] / pivot;
            if f != 0.0 {
                for c in j..p {
                    a[r * p + c] -= f * a[j * p + c];
                }
            }
        }
    }
    Ok(log_det)
}

/// `log Vol_p(Δ(MY)) = −log p! + ½ log det(YYᵀ) + log|det M|`, checked
/// against a direct evaluation on `M·Y`.
pub fn linear_image_log_volume(m: &DenseMatrix, y: &DenseMatrix) -> Result<f64> {
    if m.rows() != y.rows() {
        return Err(Error::Dimension(format!(
            "M is {}x{} but Y has {} rows",
            m.rows(),
            m.cols(),
            y.rows()
        )));
    }
    let value = pinned_simplex_log_volume(y)? + log_abs_det(m)?;
    let direct = pinned_simplex_log_volume(&m.matmul(y)?)?;
    let gap = (value - direct).abs();
    if gap > 1e-8 * value.abs().max(1.0) {
        return Err(Error::Domain(format!(
            "linear-image volume routes disagree by {gap:e}"
        )));
    }
    Ok(value)
}
