//! Log-determinants of random elliptical Gram matrices and the volumes of
//! random simplices and convex bodies they determine.
//!
//! Modules, bottom up:
//!
//! - [`linalg`]: Gram log-determinants (Cholesky and perpendiculars),
//!   projection diagonals, symmetric eigenvalues.
//! - [`sampling`]: seeded streams, sphere and radial draws, stable variates.
//! - [`theory`]: sphere moments, the `t_{i,k}` matrix, norming constants.
//! - [`geometry`]: simplex and convex-body volumes.
//! - [`stats`]: KS tests, moments, regime classification.
//! - [`runner`]: configured experiments, CSV/JSON output, the validation
//!   suite and the command line.

pub mod error;
pub mod geometry;
pub mod linalg;
pub mod runner;
pub mod sampling;
pub mod stats;
pub mod theory;

pub use error::{Error, Result};
pub use linalg::{DenseMatrix, Spectrum};
pub use sampling::{RadialLaw, RandomStream};
