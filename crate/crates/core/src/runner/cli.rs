//! Command-line interface: `theory`, `simulate`, `gof`, `validate`, `bench`.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use super::bench::run_bench;
use super::config::{ExperimentConfig, Threads};
use super::experiment::{read_samples_csv, run_experiment, run_theory, write_samples_csv};
use super::validate::validate;
use crate::error::{Error, Result};
use crate::sampling::{stable_reference_sample, RandomStream};
use crate::stats::{ks_one_sample_normal, ks_two_sample, normal_cdf, GofReport, Reference};

pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;
pub const EXIT_VALIDATION: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "ellipvol",
    version,
    about = "Log-volumes of random elliptical simplices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Norming constants, t-matrix summary and regime for a config.
    Theory {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run replicates and write the samples CSV and JSON report.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_samples: PathBuf,
        #[arg(long)]
        out_report: PathBuf,
        /// Overrides `master_seed`.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides `threads`.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// KS test of the `standardized` column of a samples CSV.
    Gof {
        #[arg(long)]
        samples: PathBuf,
        /// `normal` or `stable:ALPHA`.
        #[arg(long, default_value = "normal")]
        reference: String,
        /// Seed for the stable reference sample.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write `value,ecdf,reference_cdf` rows for plotting.
        #[arg(long)]
        ecdf_out: Option<PathBuf>,
    },
    /// Run the oracle suite.
    Validate,
    /// Compare wall time of the perpendicular and Cholesky log-determinants.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Exit code for an error: 3 for numerical failures, 2 otherwise.
pub fn exit_code(e: &Error) -> u8 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_CONFIG
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Parsed `--reference` argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReferenceArg {
    Normal,
    Stable(f64),
}

pub fn parse_reference(text: &str) -> Result<ReferenceArg> {
    if text == "normal" {
        return Ok(ReferenceArg::Normal);
    }
    text.strip_prefix("stable:")
        .and_then(|a| a.parse::<f64>().ok())
        .filter(|a| *a > 0.0 && *a <= 2.0)
        .map(ReferenceArg::Stable)
        .ok_or_else(|| {
            Error::Config(format!(
                "reference must be normal or stable:ALPHA, got {text}"
            ))
        })
}

/// Runs the KS test for `gof` and optionally writes ECDF rows.
pub fn gof_from_samples(
    values: &[f64],
    reference: ReferenceArg,
    seed: u64,
    ecdf_out: Option<&Path>,
) -> Result<GofReport> {
    let (report, ref_sorted) = match reference {
        ReferenceArg::Normal => (ks_one_sample_normal(values)?, None),
        ReferenceArg::Stable(alpha) => {
            let mut s = RandomStream::new(seed, super::experiment::REFERENCE_STREAM);
            let mut r = stable_reference_sample(alpha, 10 * values.len(), &mut s)?;
            let mut g = ks_two_sample(values, &r)?;
            g.reference = Reference::StableTwoSample { alpha };
            r.sort_by(f64::total_cmp);
            (g, Some(r))
        }
    };
    if let Some(path) = ecdf_out {
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let m = sorted.len() as f64;
        let mut w = csv::Writer::from_writer(create(path)?);
        let err = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(["value", "ecdf", "reference_cdf"])
            .map_err(err)?;
        for (i, v) in sorted.iter().enumerate() {
            let reference_cdf = match &ref_sorted {
                None => normal_cdf(*v),
                Some(r) => r.partition_point(|x| x <= v) as f64 / r.len() as f64,
            };
            w.write_record([
                v.to_string(),
                ((i + 1) as f64 / m).to_string(),
                reference_cdf.to_string(),
            ])
            .map_err(err)?;
        }
        w.flush()?;
    }
    Ok(report)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Theory { config, out } => {
            let cfg = ExperimentConfig::from_path(&config)?;
            let report = run_theory(&cfg)?;
            write_json(&out, &report)?;
            let c = &report.norming;
            println!(
                "n={} p={} mu={} sigma2={} regime={:?}",
                cfg.n, report.p, c.mu, c.sigma2, report.regime.regime
            );
        }
        Command::Simulate {
            config,
            out_samples,
            out_report,
            seed,
            threads,
        } => {
            let mut cfg = ExperimentConfig::from_path(&config)?;
            if let Some(s) = seed {
                cfg.master_seed = s;
            }
            if let Some(t) = threads {
                cfg.threads = Threads::Count(t);
            }
            let report = run_experiment(&cfg)?;
            write_samples_csv(&report.samples, create(&out_samples)?)?;
            write_json(&out_report, &report)?;
            match &report.gof {
                Some(g) => println!(
                    "{} replicates: KS D={:.4} p={:.4} mean={:.4} var={:.4}",
                    report.samples.len(),
                    g.ks_statistic,
                    g.ks_p_value,
                    g.mean,
                    g.variance
                ),
                None => println!(
                    "{} replicates (too few for a KS test)",
                    report.samples.len()
                ),
            }
        }
        Command::Gof {
            samples,
            reference,
            seed,
            ecdf_out,
        } => {
            let reference = parse_reference(&reference)?;
            let file = File::open(&samples)
                .map_err(|e| Error::Io(format!("{}: {e}", samples.display())))?;
            let records = read_samples_csv(BufReader::new(file))?;
            let values: Vec<f64> = records.iter().map(|r| r.standardized).collect();
            let g = gof_from_samples(&values, reference, seed, ecdf_out.as_deref())?;
            println!(
                "{}",
                serde_json::to_string_pretty(&g).expect("report serialises")
            );
        }
        Command::Validate => {
            let report = validate()?;
            print!("{}", report.to_text());
            if !report.passed() {
                return Ok(EXIT_VALIDATION);
            }
        }
        Command::Bench { n, p, reps, seed } => {
            let b = run_bench(n, p, reps, seed)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&b).expect("report serialises")
            );
        }
    }
    Ok(0)
}

/// Entry point used by the binary.
pub fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
