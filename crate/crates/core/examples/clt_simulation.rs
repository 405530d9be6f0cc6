//! Standardised log-determinants against N(0, 1).
//!
//! `cargo run --release --example clt_simulation -- [n] [p] [replicates]`

use ellipvol::runner::{run_experiment, ExperimentConfig};

fn main() -> ellipvol::Result<()> {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let n = args.first().copied().unwrap_or(200);
    let p = args.get(1).copied().unwrap_or(n / 2);
    let reps = args.get(2).copied().unwrap_or(500);

    let report = run_experiment(&ExperimentConfig::new(n, p, reps, 2024))?;
    let c = &report.norming;
    println!(
        "n={n} p={p}: mu_n = {:.4}, sigma_n^2 = {:.4}",
        c.mu, c.sigma2
    );
    if let Some(g) = &report.gof {
        println!(
            "KS vs N(0,1): D = {:.4}, p = {:.3}; mean {:.3}, variance {:.3}, skew {:.3}, excess kurtosis {:.3}",
            g.ks_statistic, g.ks_p_value, g.mean, g.variance, g.skewness, g.excess_kurtosis
        );
    }
    println!("{:.2}s", report.diagnostics.timings.total_secs);
    Ok(())
}
