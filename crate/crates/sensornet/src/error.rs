//! Crate error type.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A node or virtual-grid count that must be a perfect square is not.
    NotPerfectSquare(u64),
    /// The deflated virtual-grid radius `r - 1/sqrt(2l)` came out
    /// nonpositive; the caller must raise `l`.
    DeflatedRadiusNonpositive { radius: f64, l: u64 },
    /// Two circles coincide; their boundaries intersect in infinitely many
    /// points.
    CoincidentCircles,
    /// A precondition on a numeric parameter was violated.
    InvalidParameter(String),
    /// An integrand handed to the octant-symmetric integrator is not
    /// invariant under the square's symmetries.
    AsymmetricIntegrand { at: (f64, f64), image: (f64, f64), delta: f64 },
    /// Adaptive quadrature exhausted its evaluation budget before reaching
    /// the requested tolerance. The best estimate achieved is carried along.
    QuadratureNotConverged { value: f64, error_estimate: f64, evaluations: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPerfectSquare(n) => write!(f, "{n} is not a perfect square"),
            Error::DeflatedRadiusNonpositive { radius, l } => write!(
                f,
                "deflated radius {radius} - 1/sqrt(2*{l}) is not positive; raise l"
            ),
            Error::CoincidentCircles => write!(f, "coincident circles intersect everywhere"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::AsymmetricIntegrand { at, image, delta } => write!(
                f,
                "integrand is not square-symmetric: f{at:?} differs from f{image:?} by {delta:e}"
            ),
            Error::QuadratureNotConverged { value, error_estimate, evaluations } => write!(
                f,
                "quadrature did not converge: value {value} with error estimate \
                 {error_estimate:e} after {evaluations} evaluations"
            ),
        }
    }
}

impl std::error::Error for Error {}
