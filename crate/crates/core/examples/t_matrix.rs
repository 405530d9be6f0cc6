//! Monte Carlo estimate of t_{i,k} = E[p_{i,kk}] for a non-identity spectrum.
//!
//! `cargo run --release --example t_matrix`

use ellipvol::runner::config::near_identity_spectrum;
use ellipvol::theory::{estimate_t_matrix_with, t_matrix_identity, TEstimateOptions};
use ellipvol::{RandomStream, Spectrum};

fn main() -> ellipvol::Result<()> {
    let (n, p) = (16, 8);
    let opts = TEstimateOptions {
        mc_draws: 500,
        renormalize: false,
    };

    let t = estimate_t_matrix_with(&Spectrum::identity(n), p, opts, &RandomStream::new(3, 0))?;
    let exact = t_matrix_identity(n, p)?;
    for i in [1, 4, 7] {
        println!(
            "identity  i={i}: t_hat[0] = {:.4} +- {:.4}, exact {:.4}",
            t.row(i)[0],
            t.std_errors[i - 1][0],
            exact.row(i)[0]
        );
    }

    let near = near_identity_spectrum(n, 1.0)?;
    let t = estimate_t_matrix_with(&near, p, opts, &RandomStream::new(4, 0))?;
    for i in [1, 4, 7] {
        println!(
            "near-id   i={i}: row sum {:.10} (n-i = {}), row SE {:.4}",
            t.row_sum(i),
            n - i,
            t.row_std_error(i)
        );
    }
    Ok(())
}
