//! Diagonals of the projections P_i, their bounds and traces.
//!
//! `cargo run --release --example projection_diagonals`

use ellipvol::linalg::{projection_diagonals_nested, projection_matrix};
use ellipvol::sampling::gaussian_matrix;
use ellipvol::{RandomStream, Spectrum};

fn main() -> ellipvol::Result<()> {
    let n = 12;
    let spectrum = Spectrum::new((0..n).map(|k| 0.5 + k as f64 / n as f64).collect())?;
    let spectrum = ellipvol::linalg::normalize_spectrum(&spectrum);
    let g = gaussian_matrix(5, n, &mut RandomStream::new(1, 0));

    let diags = projection_diagonals_nested(&g, &spectrum)?;
    for (idx, d) in diags.iter().enumerate() {
        let i = idx + 1;
        let t_hat: f64 = d.iter().zip(spectrum.values()).map(|(p, l)| p * l).sum();
        println!(
            "i={i}: trace {:.12} (n-i = {}), min diag {:.3}, max diag {:.3}, T_i = {t_hat:.4}",
            d.iter().sum::<f64>(),
            n - i,
            d.iter().cloned().fold(f64::INFINITY, f64::min),
            d.iter().cloned().fold(0.0, f64::max),
        );
    }

    let p3 = projection_matrix(&g.top_rows(3), &spectrum)?;
    let mut off = 0.0f64;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                off = off.max(p3.get(r, c).abs());
            }
        }
    }
    println!("P_3: largest off-diagonal |entry| = {off:.4} (bound 1/2)");
    Ok(())
}
