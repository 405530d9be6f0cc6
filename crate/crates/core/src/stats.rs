//! Standardisation, Kolmogorov–Smirnov tests, moment diagnostics and the
//! normal / stable / mixed regime classification for log-volumes.

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::linalg::{dot, DenseMatrix};
use crate::sampling::{stable_reference_sample, unit_sphere_vector, RadialLaw, RandomStream};
use crate::theory::beta_moment;

/// Minimum sample size accepted by the KS tests.
pub const MIN_KS_SAMPLES: usize = 20;

/// Lower edge of the window in which `τ = s_n / (σ_n/2)` counts as mixed.
pub const MIXED_TAU_LOW: f64 = 0.1;
/// Upper edge of the mixed window.
pub const MIXED_TAU_HIGH: f64 = 10.0;

/// What a sample was tested against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reference {
    Normal,
    StableTwoSample { alpha: f64 },
    MixedTwoSample { tau: f64, alpha: f64 },
    TwoSample,
}

/// Result of a goodness-of-fit test plus one-pass moments of the tested
/// sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    pub sample_size: usize,
    pub ks_statistic: f64,
    pub ks_p_value: f64,
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    pub reference: Reference,
}

/// Mean, unbiased variance, bias-corrected skewness `G₁` and excess
/// kurtosis `G₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleMoments {
    pub mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
}

pub fn sample_moments(x: &[f64]) -> SampleMoments {
    let m = x.len() as f64;
    let mean = x.iter().sum::<f64>() / m;
    let (mut s2, mut s3, mut s4) = (0.0, 0.0, 0.0);
    for v in x {
        let d = v - mean;
        let d2 = d * d;
        s2 += d2;
        s3 += d2 * d;
        s4 += d2 * d2;
    }
    let (m2, m3, m4) = (s2 / m, s3 / m, s4 / m);
    let variance = if x.len() > 1 {
        s2 / (m - 1.0)
    } else {
        f64::NAN
    };
    let g1 = m3 / m2.powf(1.5);
    let g2 = m4 / (m2 * m2) - 3.0;
    let skewness = if x.len() > 2 {
        g1 * (m * (m - 1.0)).sqrt() / (m - 2.0)
    } else {
        f64::NAN
    };
    let excess_kurtosis = if x.len() > 3 {
        ((m + 1.0) * g2 + 6.0) * (m - 1.0) / ((m - 2.0) * (m - 3.0))
    } else {
        f64::NAN
    };
    SampleMoments {
        mean,
        variance,
        skewness,
        excess_kurtosis,
    }
}

/// `(x − center) / scale`, elementwise.
pub fn standardize(samples: &[f64], center: f64, scale: f64) -> Result<Vec<f64>> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::Domain(format!(
            "scale must be positive, got {scale}"
        )));
    }
    Ok(samples.iter().map(|x| (x - center) / scale).collect())
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Kolmogorov survival function `P(K > λ)`.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.18 {
        // Theta-function form; converges fast for small λ.
        let y = (-std::f64::consts::PI.powi(2) / (8.0 * lambda * lambda)).exp();
        let s: f64 = (0..8).map(|j| y.powi((2 * j + 1) * (2 * j + 1))).sum();
        let cdf = (2.0 * std::f64::consts::PI).sqrt() / lambda * s;
        (1.0 - cdf).clamp(0.0, 1.0)
    } else {
        let s: f64 = (1..=100)
            .map(|j| {
                let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
                sign * (-2.0 * (j * j) as f64 * lambda * lambda).exp()
            })
            .sum();
        (2.0 * s).clamp(0.0, 1.0)
    }
}

/// Asymptotic p-value for KS statistic `d` with effective size `m`.
fn ks_p_value(d: f64, m: f64) -> f64 {
    let sm = m.sqrt();
    kolmogorov_survival((sm + 0.12 + 0.11 / sm) * d)
}

fn sorted(x: &[f64]) -> Vec<f64> {
    let mut v = x.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

fn report(samples: &[f64], d: f64, p: f64, reference: Reference) -> GofReport {
    let mo = sample_moments(samples);
    GofReport {
        sample_size: samples.len(),
        ks_statistic: d,
        ks_p_value: p,
        mean: mo.mean,
        variance: mo.variance,
        skewness: mo.skewness,
        excess_kurtosis: mo.excess_kurtosis,
        reference,
    }
}

fn check_size(x: &[f64]) -> Result<()> {
    if x.len() < MIN_KS_SAMPLES {
        return Err(Error::TooFewSamples {
            got: x.len(),
            need: MIN_KS_SAMPLES,
        });
    }
    if x.iter().any(|v| v.is_nan()) {
        return Err(Error::Domain("sample contains NaN".into()));
    }
    Ok(())
}

/// One-sample KS test against `N(0, 1)`.
pub fn ks_one_sample_normal(samples: &[f64]) -> Result<GofReport> {
    check_size(samples)?;
    let x = sorted(samples);
    let m = x.len() as f64;
    let d = x
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let f = normal_cdf(v);
            ((i + 1) as f64 / m - f).max(f - i as f64 / m)
        })
        .fold(0.0, f64::max);
    Ok(report(samples, d, ks_p_value(d, m), Reference::Normal))
}

/// Two-sample KS statistic `sup |F_a − F_b|` and its p-value with effective
/// size `m_a m_b / (m_a + m_b)`. Moments describe `a`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<GofReport> {
    check_size(a)?;
    check_size(b)?;
    let (xa, xb) = (sorted(a), sorted(b));
    let (na, nb) = (xa.len(), xb.len());
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < na && j < nb {
        let x = xa[i].min(xb[j]);
        while i < na && xa[i] <= x {
            i += 1;
        }
        while j < nb && xb[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na as f64 - j as f64 / nb as f64).abs());
    }
    let m_eff = (na * nb) as f64 / (na + nb) as f64;
    Ok(report(a, d, ks_p_value(d, m_eff), Reference::TwoSample))
}

/// Limit law predicted for the standardised log-volume.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Regime {
    NormalLimit,
    StableLimit { alpha: f64 },
    Mixed { tau: f64, alpha: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeClassification {
    pub regime: Regime,
    /// Centering of `Σ log R_i`.
    pub m_n: f64,
    /// Scale of `Σ log R_i`.
    pub s_n: f64,
    /// `σ_n / 2`.
    pub sigma_half: f64,
}

impl RegimeClassification {
    /// `max(σ_n/2, s_n)`, the divisor of the standardised log-volume.
    pub fn scale(&self) -> f64 {
        self.sigma_half.max(self.s_n)
    }
}

/// Centering `m_n` and scale `s_n` of `Σ_{i≤p} log R_i` for the radial law,
/// with the stability index of the limit (`None` for constant radii).
pub fn radial_norming(law: &RadialLaw, p: usize) -> (f64, f64, Option<f64>) {
    let pf = p as f64;
    match *law {
        RadialLaw::Degenerate1 => (0.0, 0.0, None),
        RadialLaw::LogNormal { mean, sd } => (pf * mean, sd * pf.sqrt(), Some(2.0)),
        RadialLaw::LogCauchy { location, scale } => (pf * location, pf * scale, Some(1.0)),
        RadialLaw::LogPareto { alpha, scale } => (0.0, scale * pf.powf(1.0 / alpha), Some(alpha)),
    }
}

/// Classifies the limit of the standardised log-volume from the ratio
/// `τ = s_n / (σ_n/2)`: `τ ≤ 0.1` normal, `τ ≥ 10` stable, mixed in between.
pub fn classify_regime(law: &RadialLaw, p: usize, sigma_n: f64) -> Result<RegimeClassification> {
    if !(sigma_n > 0.0 && sigma_n.is_finite()) {
        return Err(Error::Domain(format!(
            "sigma_n must be positive, got {sigma_n}"
        )));
    }
    if p == 0 {
        return Err(Error::Domain("p must be positive".into()));
    }
    law.validate()?;
    let (m_n, s_n, alpha) = radial_norming(law, p);
    let sigma_half = sigma_n / 2.0;
    let regime = match alpha {
        Some(alpha) if s_n > 0.0 => {
            let tau = s_n / sigma_half;
            if tau >= MIXED_TAU_HIGH {
                Regime::StableLimit { alpha }
            } else if tau > MIXED_TAU_LOW {
                Regime::Mixed { tau, alpha }
            } else {
                Regime::NormalLimit
            }
        }
        _ => Regime::NormalLimit,
    };
    Ok(RegimeClassification {
        regime,
        m_n,
        s_n,
        sigma_half,
    })
}

/// Draws from `min{1, τ}·S_α + min{1, 1/τ}·N(0, 1)`, the limit of
/// `(s_n S + (σ_n/2) N) / max(σ_n/2, s_n)` when `s_n / (σ_n/2) = τ`.
pub fn mixed_reference_sample(
    tau: f64,
    alpha: f64,
    size: usize,
    stream: &mut RandomStream,
) -> Result<Vec<f64>> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::Domain(format!("tau must be positive, got {tau}")));
    }
    let stable = stable_reference_sample(alpha, size, stream)?;
    let (ws, wn) = (tau.min(1.0), (1.0 / tau).min(1.0));
    Ok(stable
        .into_iter()
        .map(|s| ws * s + wn * stream.standard_normal())
        .collect())
}

/// Reference sample matching a regime: `N(0,1)`, `S_α`, or the mixed law.
pub fn regime_reference_sample(
    regime: &Regime,
    size: usize,
    stream: &mut RandomStream,
) -> Result<Vec<f64>> {
    match *regime {
        Regime::NormalLimit => Ok((0..size).map(|_| stream.standard_normal()).collect()),
        Regime::StableLimit { alpha } => stable_reference_sample(alpha, size, stream),
        Regime::Mixed { tau, alpha } => mixed_reference_sample(tau, alpha, size, stream),
    }
}

/// Empirical vs exact `E[zᵀAz · zᵀBz]` for `z` uniform on the sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticFormCheck {
    pub empirical: f64,
    pub theoretical: f64,
    pub std_error: f64,
    pub z_score: f64,
}

/// Exact `E[zᵀAz · zᵀBz] = β₂,₂(trA·trB + 2tr(AB)) + (β₄ − 3β₂,₂)·tr(A∘B)`
/// for `z` uniform on `S^{n−1}`, with `β` supplied by `beta`.
pub fn quadratic_form_moment_with(
    a: &DenseMatrix,
    b: &DenseMatrix,
    beta: impl Fn(usize, &[u32]) -> Result<f64>,
) -> Result<f64> {
    let n = check_pair(a, b)?;
    let (b4, b22) = if n == 1 {
        (beta(1, &[2])?, 0.0)
    } else {
        (beta(n, &[2])?, beta(n, &[1, 1])?)
    };
    // B symmetric: tr(AB) = Σ a_ij b_ij.
    let tr_ab: f64 = dot(a.as_slice(), b.as_slice());
    let tr_hadamard: f64 = (0..n).map(|i| a.get(i, i) * b.get(i, i)).sum();
    Ok(b22 * (a.trace() * b.trace() + 2.0 * tr_ab) + (b4 - 3.0 * b22) * tr_hadamard)
}

fn check_pair(a: &DenseMatrix, b: &DenseMatrix) -> Result<usize> {
    let n = a.rows();
    if !a.is_square() || !b.is_square() || b.rows() != n {
        return Err(Error::Dimension(
            "A and B must be square of equal size".into(),
        ));
    }
    for m in [a, b] {
        let asym = m.max_asymmetry();
        if asym > 1e-12 * m.max_abs().max(1.0) {
            return Err(Error::NotSymmetric(asym));
        }
    }
    Ok(n)
}

/// Monte Carlo check of the sphere quadratic-form product moment.
pub fn quadratic_form_moment_check(
    a: &DenseMatrix,
    b: &DenseMatrix,
    mc_draws: usize,
    stream: &mut RandomStream,
) -> Result<QuadraticFormCheck> {
    quadratic_form_moment_check_with(a, b, mc_draws, stream, beta_moment)
}

/// [`quadratic_form_moment_check`] with a caller-supplied `β` function.
pub fn quadratic_form_moment_check_with(
    a: &DenseMatrix,
    b: &DenseMatrix,
    mc_draws: usize,
    stream: &mut RandomStream,
    beta: impl Fn(usize, &[u32]) -> Result<f64>,
) -> Result<QuadraticFormCheck> {
    let n = check_pair(a, b)?;
    if mc_draws < 2 {
        return Err(Error::TooFewSamples {
            got: mc_draws,
            need: 2,
        });
    }
    let theoretical = quadratic_form_moment_with(a, b, beta)?;
    let quad =
        |m: &DenseMatrix, z: &[f64]| -> f64 { (0..n).map(|i| z[i] * dot(m.row(i), z)).sum() };
    let (mut mean, mut m2) = (0.0, 0.0);
    for k in 0..mc_draws {
        let z = unit_sphere_vector(n, stream);
        let v = quad(a, &z) * quad(b, &z);
        let d = v - mean;
        mean += d / (k + 1) as f64;
        m2 += d * (v - mean);
    }
    let m = mc_draws as f64;
    let std_error = (m2 / (m - 1.0) / m).sqrt();
    let gap = mean - theoretical;
    let z_score = if std_error > 1e-14 * theoretical.abs().max(1.0) {
        gap / std_error
    } else if gap.abs() <= 1e-12 * theoretical.abs().max(1.0) {
        0.0
    } else {
        f64::INFINITY.copysign(gap)
    };
    Ok(QuadraticFormCheck {
        empirical: mean,
        theoretical,
        std_error,
        z_score,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(&[2.5; 3], 2.5, 0.7).unwrap(), vec![0.0; 3]);
        assert_eq!(standardize(&[1.0, 3.0], 2.0, 1.0).unwrap(), vec![-1.0, 1.0]);
        assert!(standardize(&[1.0], 0.0, 0.0).is_err());
    }

    #[test]
    fn kolmogorov_tail() {
        // Standard 5% and 1% critical values.
        assert!((kolmogorov_survival(1.358) - 0.05).abs() < 1e-3);
        assert!((kolmogorov_survival(1.628) - 0.01).abs() < 1e-3);
        // Both series agree at the switch point.
        let lo = kolmogorov_survival(1.18 - 1e-12);
        let hi = kolmogorov_survival(1.18);
        assert!((lo - hi).abs() < 1e-10);
        assert_eq!(kolmogorov_survival(0.0), 1.0);
    }

    #[test]
    fn ks_perfect_quantiles() {
        let m = 10_000;
        let dist = statrs::distribution::Normal::standard();
        use statrs::distribution::ContinuousCDF;
        let x: Vec<f64> = (0..m)
            .map(|i| dist.inverse_cdf((i as f64 + 0.5) / m as f64))
            .collect();
        let r = ks_one_sample_normal(&x).unwrap();
        assert!(r.ks_statistic <= 0.5 / m as f64 + 1e-9);
        assert!(r.ks_p_value > 0.999);
    }

    #[test]
    fn ks_two_sample_edges() {
        let a: Vec<f64> = (0..50).map(|i| i as f64).collect();
        assert_eq!(ks_two_sample(&a, &a).unwrap().ks_statistic, 0.0);
        let b: Vec<f64> = (100..150).map(|i| i as f64).collect();
        let r = ks_two_sample(&a, &b).unwrap();
        assert_eq!(r.ks_statistic, 1.0);
        assert!(r.ks_p_value < 1e-10);
        assert!(matches!(
            ks_two_sample(&a[..10], &b),
            Err(Error::TooFewSamples { got: 10, need: 20 })
        ));
    }

    #[test]
    fn moments_of_small_sample() {
        let mo = sample_moments(&[1.0, 2.0, 3.0, 4.0, 10.0]);
        assert!((mo.mean - 4.0).abs() < 1e-15);
        assert!((mo.variance - 12.5).abs() < 1e-12);
        assert!(mo.skewness > 0.0);
    }

    #[test]
    fn regimes() {
        let c = classify_regime(&RadialLaw::Degenerate1, 150, 0.6).unwrap();
        assert_eq!(c.regime, Regime::NormalLimit);
        assert_eq!((c.m_n, c.s_n), (0.0, 0.0));
        let cauchy = RadialLaw::LogCauchy {
            location: 0.0,
            scale: 1.0,
        };
        let c = classify_regime(&cauchy, 100, 0.6).unwrap();
        assert_eq!(c.regime, Regime::StableLimit { alpha: 1.0 });
        assert_eq!(c.s_n, 100.0);
        let p = 150;
        let sigma = 0.6;
        let tuned = RadialLaw::LogNormal {
            mean: 0.0,
            sd: sigma / 2.0 / (p as f64).sqrt(),
        };
        match classify_regime(&tuned, p, sigma).unwrap().regime {
            Regime::Mixed { tau, alpha } => {
                assert!((tau - 1.0).abs() < 1e-12);
                assert_eq!(alpha, 2.0);
            }
            r => panic!("unexpected {r:?}"),
        }
        assert!(classify_regime(&cauchy, 100, 0.0).is_err());
    }

    #[test]
    fn quf_exact_values() {
        let id = DenseMatrix::identity(4);
        assert!((quadratic_form_moment_with(&id, &id, beta_moment).unwrap() - 1.0).abs() < 1e-14);
        let a = DenseMatrix::diagonal(&[1.0, 0.0, 0.0]);
        let b = DenseMatrix::diagonal(&[0.0, 1.0, 0.0]);
        assert!(
            (quadratic_form_moment_with(&a, &b, beta_moment).unwrap() - 1.0 / 15.0).abs() < 1e-15
        );
        let asym = DenseMatrix::from_rows(&[&[1.0, 2.0], &[0.0, 1.0]]);
        assert!(matches!(
            quadratic_form_moment_with(&asym, &asym, beta_moment),
            Err(Error::NotSymmetric(_))
        ));
    }

    #[test]
    fn quf_identity_has_zero_spread() {
        let id = DenseMatrix::identity(5);
        let mut s = RandomStream::new(3, 0);
        let c = quadratic_form_moment_check(&id, &id, 100, &mut s).unwrap();
        assert_eq!(c.z_score, 0.0);
    }
}
