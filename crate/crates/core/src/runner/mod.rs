//! Configured experiments, result files, the validation suite and the
//! command line.

pub mod bench;
pub mod cli;
pub mod config;
pub mod experiment;
pub mod validate;

pub use config::{ExperimentConfig, SpectrumSpec, Threads};
pub use experiment::{
    read_samples_csv, run_experiment, run_theory, write_samples_csv, ExperimentReport,
    SampleRecord, TheoryReport,
};
pub use validate::{validate, ValidationReport};

use crate::sampling::RandomStream;

/// Stream for replicate `index` of an experiment seeded with `master`.
///
/// The ChaCha20 key is four SplitMix64 outputs of `master` (increment
/// `0x9E3779B97F4A7C15`) and the ChaCha stream id is `index`, so the map
/// `(master, index) → stream` is injective. The CSV `seed` column is
/// [`RandomStream::fingerprint`], a 128→64-bit mix of the pair.
pub fn derive_replicate_seed(master: u64, index: u64) -> RandomStream {
    RandomStream::new(master, index)
}
