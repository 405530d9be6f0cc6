//! Gram log-determinant by Cholesky and by the method of perpendiculars.
//!
//! `cargo run --release --example log_det_methods`

use ellipvol::linalg::{log_det_gram, perpendicular_log_det};
use ellipvol::sampling::{elliptical_sample, EllipticalModel};
use ellipvol::{RadialLaw, RandomStream, Spectrum};

fn main() -> ellipvol::Result<()> {
    let (n, p) = (200, 100);
    let model = EllipticalModel::new(p, &Spectrum::identity(n), RadialLaw::Degenerate1)?;
    let sample = elliptical_sample(&model, &mut RandomStream::new(42, 0));

    let chol = log_det_gram(&sample.y)?;
    let perp = perpendicular_log_det(&sample.y)?;
    println!("Cholesky        log det(YY^T) = {chol:.12}");
    println!("perpendiculars  log det(YY^T) = {:.12}", perp.log_det);
    println!(
        "relative gap                  = {:.2e}",
        (chol - perp.log_det).abs() / chol.abs()
    );

    // Squared distances of each row to the span of the previous ones.
    let z = &perp.z_values;
    println!("first distances^2: {:.4?}", &z[..5]);
    println!("last distances^2:  {:.4?}", &z[p - 5..]);
    Ok(())
}
