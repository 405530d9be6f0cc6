//! Volumes of linear images of the standard convex bodies.
//!
//! `cargo run --release --example convex_bodies`

use ellipvol::geometry::{
    body_log_volume, linear_image_log_volume, pinned_simplex_log_volume, upsilon_log_volume,
    BodyShape, ConvexBodyKind,
};
use ellipvol::sampling::{elliptical_sample, gaussian_matrix, EllipticalModel};
use ellipvol::{RadialLaw, RandomStream, Spectrum};

fn main() -> ellipvol::Result<()> {
    let (n, p) = (30, 6);
    let model = EllipticalModel::new(p, &Spectrum::identity(n), RadialLaw::Degenerate1)?;
    let mut s = RandomStream::new(5, 0);
    let y = elliptical_sample(&model, &mut s).y;

    for kind in [
        BodyShape::StandardSimplex,
        BodyShape::UnitCube,
        BodyShape::SymmetricCube,
        BodyShape::CrossPolytope,
        BodyShape::UnitBall,
    ] {
        let body = ConvexBodyKind::new(kind, p)?;
        println!(
            "{kind:?}: log Vol(body) = {:>8.4}, log Vol(image) = {:>8.4}",
            body_log_volume(body),
            upsilon_log_volume(body, &y)?
        );
    }
    println!("pinned simplex: {:.4}", pinned_simplex_log_volume(&y)?);

    let m = gaussian_matrix(p, p, &mut s);
    println!("simplex of M*Y: {:.10}", linear_image_log_volume(&m, &y)?);
    println!(
        "direct:         {:.10}",
        pinned_simplex_log_volume(&m.matmul(&y)?)?
    );
    Ok(())
}
