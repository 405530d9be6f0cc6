//! Same seed, different thread counts: identical samples CSV.
//!
//! `cargo run --release --example determinism`

use ellipvol::runner::experiment::samples_csv_string;
use ellipvol::runner::{run_experiment, ExperimentConfig, SpectrumSpec, Threads};

fn main() -> ellipvol::Result<()> {
    let mut cfg = ExperimentConfig::new(80, 40, 100, 31337);
    cfg.spectrum_spec = SpectrumSpec::NearIdentity { c: 1.0 };
    let mut csvs = Vec::new();
    for t in [1, 4] {
        cfg.threads = Threads::Count(t);
        csvs.push(samples_csv_string(&run_experiment(&cfg)?.samples));
    }
    println!("{}", csvs[0].lines().take(4).collect::<Vec<_>>().join("\n"));
    println!("identical across 1 and 4 threads: {}", csvs[0] == csvs[1]);
    Ok(())
}
