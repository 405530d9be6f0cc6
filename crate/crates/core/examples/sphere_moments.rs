//! Moments of uniform points on the sphere: closed form vs simulation.
//!
//! `cargo run --release --example sphere_moments`

use ellipvol::sampling::unit_sphere_vector;
use ellipvol::theory::beta_moment;
use ellipvol::RandomStream;

fn main() -> ellipvol::Result<()> {
    let draws = 200_000;
    for n in [3usize, 10, 50] {
        let mut s = RandomStream::new(11, n as u64);
        let (mut u4, mut u2u2) = (0.0, 0.0);
        for _ in 0..draws {
            let u = unit_sphere_vector(n, &mut s);
            u4 += u[0].powi(4);
            u2u2 += u[0] * u[0] * u[1] * u[1];
        }
        let (b4, b22) = (beta_moment(n, &[2])?, beta_moment(n, &[1, 1])?);
        println!(
            "n={n:>3}  E[U1^4] {:.6} vs {b4:.6}   E[U1^2 U2^2] {:.6} vs {b22:.6}   n b4 + n(n-1) b22 = {}",
            u4 / draws as f64,
            u2u2 / draws as f64,
            n as f64 * b4 + (n * (n - 1)) as f64 * b22
        );
    }
    Ok(())
}
