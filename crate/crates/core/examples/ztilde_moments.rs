//! Martingale increments Z~_{i+1}: mean zero and second moment.
//!
//! `cargo run --release --example ztilde_moments`

use ellipvol::theory::simulate_ztilde;
use ellipvol::{RandomStream, Spectrum};

fn main() -> ellipvol::Result<()> {
    let n = 60;
    let spectrum = Spectrum::identity(n);
    for i in [1usize, 10, 29] {
        let sim = simulate_ztilde(
            &spectrum,
            i,
            (n - i) as f64,
            5000,
            &RandomStream::new(60, i as u64),
        )?;
        let pred = sim.predicted_second_moment()?;
        println!(
            "i={i:>2}: mean {:+.5} (SE {:.5})  E[Z^2] {:.5} (SE {:.5}) vs formula {:.5}",
            sim.mean, sim.mean_se, sim.second_moment, sim.second_moment_se, pred.value
        );
    }
    Ok(())
}
