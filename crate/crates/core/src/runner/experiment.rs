//! End-to-end log-volume experiments: norming constants, parallel
//! replicates, standardisation and a goodness-of-fit test.

use std::io::{Read, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::derive_replicate_seed;
use crate::error::{Error, Result};
use crate::geometry::{body_log_volume, log_factorial};
use crate::linalg::{perpendicular_log_det, Spectrum};
use crate::sampling::{elliptical_sample, EllipticalModel, RandomStream};
use crate::stats::{
    classify_regime, ks_one_sample_normal, ks_two_sample, regime_reference_sample, GofReport,
    Reference, Regime, RegimeClassification, MIN_KS_SAMPLES,
};
use crate::theory::{
    b2_deficit, condition_bound, estimate_t_matrix_with, norming_constants, t_matrix_identity,
    NormingConstants, TEstimateOptions, TMatrix,
};

/// Stream index reserved for the t-matrix Monte Carlo.
pub const T_MATRIX_STREAM: u64 = u64::MAX - 1;
/// Stream index reserved for stable / mixed reference samples.
pub const REFERENCE_STREAM: u64 = u64::MAX;
/// Reference sample size as a multiple of the replicate count.
pub const REFERENCE_FACTOR: usize = 10;

/// Column order of the samples CSV.
pub const CSV_HEADER: [&str; 6] = [
    "replicate",
    "seed",
    "log_det",
    "sum_log_radii",
    "log_volume",
    "standardized",
];

/// One replicate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub replicate: u64,
    /// Fingerprint of the replicate's random stream.
    pub seed: u64,
    /// `log det(YYᵀ)`.
    pub log_det: f64,
    pub sum_log_radii: f64,
    /// `Σ log R_i + ½ log det(YYᵀ) + log Vol_p(Σ)`.
    pub log_volume: f64,
    /// `(Σ log R_i + ½ log det(YYᵀ) − μ_n/2 − m_n) / max(σ_n/2, s_n)`.
    pub standardized: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TSummary {
    /// Closed form (identity spectrum) rather than Monte Carlo.
    pub exact: bool,
    pub mc_draws: usize,
    /// Largest `|Σ_k t̂_{i,k} − (n − i)|` before row renormalisation.
    pub max_row_residual: f64,
    /// Largest such residual in units of the row standard error.
    pub max_row_residual_z: f64,
    pub max_std_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub theory_secs: f64,
    pub replicates_secs: f64,
    pub total_secs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub b2_deficit: f64,
    pub condition_bound: f64,
    pub timings: Timings,
}

/// Deterministic quantities of an experiment, computed before any replicate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoryReport {
    pub config: ExperimentConfig,
    pub p: usize,
    pub norming: NormingConstants,
    pub t_summary: TSummary,
    pub regime: RegimeClassification,
    /// `log Vol_p(Σ)` of the configured body (standard simplex by default).
    pub body_log_volume: f64,
    pub b2_deficit: f64,
    pub condition_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub p: usize,
    pub norming: NormingConstants,
    pub t_summary: TSummary,
    pub samples: Vec<SampleRecord>,
    /// Absent when there are fewer than 20 replicates.
    pub gof: Option<GofReport>,
    pub regime: RegimeClassification,
    pub body_log_volume: f64,
    pub diagnostics: Diagnostics,
}

impl ExperimentReport {
    pub fn standardized(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.standardized).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

fn with_pool<T: Send>(
    config: &ExperimentConfig,
    f: impl FnOnce() -> Result<T> + Send,
) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads.pool_size())
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(f)
}

fn t_matrix_for(
    config: &ExperimentConfig,
    spectrum: &Spectrum,
    p: usize,
) -> Result<(TMatrix, TSummary)> {
    if spectrum.is_identity() {
        let t = t_matrix_identity(spectrum.len(), p)?;
        let summary = TSummary {
            exact: true,
            mc_draws: 0,
            max_row_residual: 0.0,
            max_row_residual_z: 0.0,
            max_std_error: 0.0,
        };
        return Ok((t, summary));
    }
    let stream = RandomStream::new(config.master_seed, T_MATRIX_STREAM);
    let raw = estimate_t_matrix_with(
        spectrum,
        p,
        TEstimateOptions {
            mc_draws: config.mc_draws,
            renormalize: false,
        },
        &stream,
    )?;
    let n = spectrum.len();
    let max_row_residual_z = (1..p)
        .map(|i| (raw.row_sum(i) - (n - i) as f64).abs() / raw.row_std_error(i))
        .fold(0.0, f64::max);
    let summary = TSummary {
        exact: false,
        mc_draws: raw.mc_draws,
        max_row_residual: raw.max_row_residual(),
        max_row_residual_z,
        max_std_error: raw.max_std_error(),
    };
    Ok((raw.renormalized(), summary))
}

fn theory_in_pool(config: &ExperimentConfig) -> Result<(TheoryReport, Spectrum)> {
    let p = config.resolved_p()?;
    let spectrum = config.spectrum()?;
    let (t, t_summary) = t_matrix_for(config, &spectrum, p)?;
    let norming = norming_constants(&spectrum, p, &t, config.variance_variant)?;
    let regime = classify_regime(&config.radial_spec, p, norming.sigma())?;
    let body_log_volume = config
        .body
        .map(body_log_volume)
        .unwrap_or_else(|| -log_factorial(p));
    let report = TheoryReport {
        config: config.clone(),
        p,
        norming,
        t_summary,
        regime,
        body_log_volume,
        b2_deficit: b2_deficit(&spectrum),
        condition_bound: condition_bound(&spectrum),
    };
    Ok((report, spectrum))
}

/// Norming constants, t-matrix summary and regime, without replicates.
pub fn run_theory(config: &ExperimentConfig) -> Result<TheoryReport> {
    with_pool(config, || theory_in_pool(config).map(|r| r.0))
}

/// Samples one replicate from `derive_replicate_seed(master, index)`.
pub fn run_replicate(
    model: &EllipticalModel,
    theory: &TheoryReport,
    master_seed: u64,
    index: u64,
) -> Result<SampleRecord> {
    let mut stream = derive_replicate_seed(master_seed, index);
    let seed = stream.fingerprint();
    let sample = elliptical_sample(model, &mut stream);
    let log_det = perpendicular_log_det(&sample.y)
        .map_err(|e| Error::Replicate {
            replicate: index,
            seed,
            source: Box::new(e),
        })?
        .log_det;
    let sum_log_radii = sample.sum_log_radii();
    let half = sum_log_radii + 0.5 * log_det;
    let r = &theory.regime;
    Ok(SampleRecord {
        replicate: index,
        seed,
        log_det,
        sum_log_radii,
        log_volume: half + theory.body_log_volume,
        standardized: (half - 0.5 * theory.norming.mu - r.m_n) / r.scale(),
    })
}

/// Goodness of fit of the standardised values against the regime's limit.
pub fn regime_gof(standardized: &[f64], regime: &Regime, master_seed: u64) -> Result<GofReport> {
    match *regime {
        Regime::NormalLimit => ks_one_sample_normal(standardized),
        Regime::StableLimit { alpha } | Regime::Mixed { alpha, .. } => {
            let mut stream = RandomStream::new(master_seed, REFERENCE_STREAM);
            let reference = regime_reference_sample(
                regime,
                REFERENCE_FACTOR * standardized.len(),
                &mut stream,
            )?;
            let mut gof = ks_two_sample(standardized, &reference)?;
            gof.reference = match *regime {
                Regime::Mixed { tau, .. } => Reference::MixedTwoSample { tau, alpha },
                _ => Reference::StableTwoSample { alpha },
            };
            Ok(gof)
        }
    }
}

/// Runs the configured experiment. Replicate `r` draws from stream
/// `(master_seed, r)`, so the samples do not depend on the thread count.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    with_pool(config, || {
        let (theory, spectrum) = theory_in_pool(config)?;
        let theory_secs = start.elapsed().as_secs_f64();
        let model = EllipticalModel::new(theory.p, &spectrum, config.radial_spec)?;
        let samples = (0..config.replicates as u64)
            .into_par_iter()
            .map(|r| run_replicate(&model, &theory, config.master_seed, r))
            .collect::<Result<Vec<_>>>()?;
        let replicates_secs = start.elapsed().as_secs_f64() - theory_secs;
        let standardized: Vec<f64> = samples.iter().map(|s| s.standardized).collect();
        let gof = if samples.len() >= MIN_KS_SAMPLES {
            Some(regime_gof(
                &standardized,
                &theory.regime.regime,
                config.master_seed,
            )?)
        } else {
            None
        };
        Ok(ExperimentReport {
            config: config.clone(),
            p: theory.p,
            diagnostics: Diagnostics {
                b2_deficit: theory.b2_deficit,
                condition_bound: theory.condition_bound,
                timings: Timings {
                    theory_secs,
                    replicates_secs,
                    total_secs: start.elapsed().as_secs_f64(),
                },
            },
            norming: theory.norming,
            t_summary: theory.t_summary,
            samples,
            gof,
            regime: theory.regime,
            body_log_volume: theory.body_log_volume,
        })
    })
}

/// Writes the samples CSV (fixed header, shortest round-trip floats).
pub fn write_samples_csv<W: Write>(samples: &[SampleRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_error)?;
    for s in samples {
        w.write_record([
            s.replicate.to_string(),
            s.seed.to_string(),
            s.log_det.to_string(),
            s.sum_log_radii.to_string(),
            s.log_volume.to_string(),
            s.standardized.to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn samples_csv_string(samples: &[SampleRecord]) -> String {
    let mut buf = Vec::new();
    write_samples_csv(samples, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

/// Reads a samples CSV written by [`write_samples_csv`].
pub fn read_samples_csv<R: Read>(input: R) -> Result<Vec<SampleRecord>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(csv_error)?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Config(format!(
            "unexpected samples header {:?}, expected {}",
            header.iter().collect::<Vec<_>>(),
            CSV_HEADER.join(",")
        )));
    }
    r.deserialize().map(|row| row.map_err(csv_error)).collect()
}

fn csv_error(e: csv::Error) -> Error {
    Error::Config(format!("samples csv: {e}"))
}
