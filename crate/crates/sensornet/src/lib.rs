//! Coverage and connectivity analysis for finite sensor networks deployed on
//! the unit square.
//!
//! Two deployment models are supported:
//!
//! * **Unreliable grids** ([`grid`]): `sqrt(n) x sqrt(n)` lattices where each
//!   sensor is independently active with probability `p`. Provides coverage
//!   and k-coverage bounds, the breakpoint structure that makes every
//!   radius-dependent property piecewise constant, and the asymptotic
//!   coverage thresholds for comparison.
//! * **Uniform random deployments** ([`random`]): `n` i.i.d. uniform nodes
//!   with links up to radius `r` that each succeed with probability `p`.
//!   Provides coverage bounds, disconnectivity bounds and estimates, a
//!   k-disconnectivity estimate, and the double-exponential asymptotic
//!   baseline.
//!
//! All analytic quantities reduce to closed-form clipped-disk areas
//! ([`geometry`]) integrated over the square ([`quadrature`]). The
//! [`sim`] module is the ground truth: a seeded, exactly reproducible
//! Monte Carlo engine with exact coverage and vertex-connectivity decisions.

pub mod error;
pub mod geometry;
pub mod grid;
pub mod quadrature;
pub mod random;
pub mod sim;

pub(crate) mod util;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
