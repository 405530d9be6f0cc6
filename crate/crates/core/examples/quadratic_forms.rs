//! E[z'Az z'Bz] for z uniform on the sphere: formula vs simulation.
//!
//! `cargo run --release --example quadratic_forms`

use ellipvol::runner::validate::quadratic_form_grid;
use ellipvol::stats::quadratic_form_moment_check;
use ellipvol::RandomStream;

fn main() -> ellipvol::Result<()> {
    let mut s = RandomStream::new(8, 0);
    for (j, (a, b)) in quadratic_form_grid().iter().enumerate() {
        let c = quadratic_form_moment_check(a, b, 100_000, &mut s)?;
        println!(
            "pair {j} (n={:>2}): empirical {:>9.5}  exact {:>9.5}  z = {:>6.2}",
            a.rows(),
            c.empirical,
            c.theoretical,
            c.z_score
        );
    }
    Ok(())
}
