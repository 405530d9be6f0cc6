//! Centering and scaling constants (mu_n, sigma_n^2) against the limit
//! -2 gamma - 2 log(1 - gamma).
//!
//! `cargo run --release --example norming_constants`

use ellipvol::theory::{norming_constants, t_matrix_identity, variance_limit, VarianceVariant};
use ellipvol::Spectrum;

fn main() -> ellipvol::Result<()> {
    let gamma = 0.5;
    println!("limit: {:.6}", variance_limit(gamma)?);
    for n in [20usize, 50, 100, 200, 400, 800] {
        let p = (gamma * n as f64).round() as usize;
        let t = t_matrix_identity(n, p)?;
        let c = norming_constants(&Spectrum::identity(n), p, &t, VarianceVariant::Theorem)?;
        let c0 = norming_constants(&Spectrum::identity(n), p, &t, VarianceVariant::WithI0)?;
        println!(
            "n={n:>4} p={p:>4}  mu={:>12.4}  sigma^2={:.6}  with i=0 term {:.6}",
            c.mu, c.sigma2, c0.sigma2
        );
    }
    match norming_constants(
        &Spectrum::identity(4),
        2,
        &t_matrix_identity(4, 2)?,
        VarianceVariant::Theorem,
    ) {
        Err(e) => println!("n=4, p=2: {e}"),
        Ok(c) => println!("n=4, p=2: sigma^2 = {}", c.sigma2),
    }
    Ok(())
}
