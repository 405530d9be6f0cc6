//! Normal, stable and mixed limits of the log-volume for different radial laws.
//!
//! `cargo run --release --example radial_regimes`

use ellipvol::runner::{run_experiment, run_theory, ExperimentConfig};
use ellipvol::RadialLaw;

fn main() -> ellipvol::Result<()> {
    let (n, p, reps) = (200, 100, 500);
    let sigma = run_theory(&ExperimentConfig::new(n, p, 1, 0))?
        .norming
        .sigma();

    let laws = [
        ("constant radii", RadialLaw::Degenerate1),
        (
            "log-Cauchy",
            RadialLaw::LogCauchy {
                location: 0.0,
                scale: 1.0,
            },
        ),
        (
            "log-normal, tau = 1",
            RadialLaw::LogNormal {
                mean: 0.0,
                sd: sigma / 2.0 / (p as f64).sqrt(),
            },
        ),
        (
            "log-Pareto alpha = 1.5",
            RadialLaw::LogPareto {
                alpha: 1.5,
                scale: 1.0,
            },
        ),
    ];
    for (label, law) in laws {
        let mut cfg = ExperimentConfig::new(n, p, reps, 77);
        cfg.radial_spec = law;
        let r = run_experiment(&cfg)?;
        let g = r.gof.as_ref().expect("enough replicates");
        println!(
            "{label:<24} regime {:?}, s_n = {:.3}, sigma_n/2 = {:.3}, KS p = {:.3}",
            r.regime.regime, r.regime.s_n, r.regime.sigma_half, g.ks_p_value
        );
    }
    Ok(())
}
