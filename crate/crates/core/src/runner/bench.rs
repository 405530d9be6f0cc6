//! Wall-time comparison of the two log-determinant routes.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{log_det_gram, perpendicular_log_det, Spectrum};
use crate::sampling::{elliptical_sample, EllipticalModel, RadialLaw, RandomStream};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub n: usize,
    pub p: usize,
    pub reps: usize,
    pub perpendicular_secs: f64,
    pub cholesky_secs: f64,
    /// Largest `|a − b| / max(1, |b|)` between the two routes.
    pub max_rel_deviation: f64,
}

/// Times both routes on `reps` identity-spectrum samples.
pub fn run_bench(n: usize, p: usize, reps: usize, seed: u64) -> Result<BenchReport> {
    if reps == 0 {
        return Err(Error::Config("reps must be >= 1".into()));
    }
    let model = EllipticalModel::new(p, &Spectrum::identity(n), RadialLaw::Degenerate1)
        .map_err(|e| Error::Config(e.to_string()))?;
    let ys: Vec<_> = (0..reps as u64)
        .map(|r| elliptical_sample(&model, &mut RandomStream::new(seed, r)).y)
        .collect();
    let t0 = Instant::now();
    let perp = ys
        .iter()
        .map(|y| perpendicular_log_det(y).map(|d| d.log_det))
        .collect::<Result<Vec<_>>>()?;
    let perpendicular_secs = t0.elapsed().as_secs_f64();
    let t1 = Instant::now();
    let chol = ys.iter().map(log_det_gram).collect::<Result<Vec<_>>>()?;
    let cholesky_secs = t1.elapsed().as_secs_f64();
    let max_rel_deviation = perp
        .iter()
        .zip(&chol)
        .map(|(a, b)| (a - b).abs() / b.abs().max(1.0))
        .fold(0.0, f64::max);
    Ok(BenchReport {
        n,
        p,
        reps,
        perpendicular_secs,
        cholesky_secs,
        max_rel_deviation,
    })
}
