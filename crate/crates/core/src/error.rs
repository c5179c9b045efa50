//! Error types shared by every module of the crate.

use thiserror::Error;

/// Errors produced by grid, fractional-calculus, and boundary-value routines.
///
/// Numeric payloads are stored as `f64` regardless of the scalar type the
/// operation ran with; they exist for diagnostics, not for further arithmetic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `rising(t, nu)` hit a gamma pole with no defined convention:
    /// `t + nu` is a non-positive integer while `t` is not.
    #[error("gamma pole: rising({t}, {order}) has non-positive integer t+nu = {}", .t + .order)]
    Pole { t: f64, order: f64 },

    /// A point fell off the lattice, a domain was too short, or two grid
    /// functions had incompatible domains.
    #[error("domain error: {0}")]
    Domain(String),

    /// An operation's mathematical hypothesis was violated (e.g. the
    /// rho-criterion requires q = 0).
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// A boundary value problem is not uniquely solvable: the 2x2 boundary
    /// determinant is below the singularity threshold.
    #[error("singular BVP: |det D| = {det} <= threshold {threshold}")]
    Singular { det: f64, threshold: f64 },

    /// Dense elimination met a pivot below the singularity threshold,
    /// signalling an unsolvable linear system.
    #[error("singular linear system: pivot {pivot} <= threshold {threshold} at column {column}")]
    SingularSystem {
        pivot: f64,
        threshold: f64,
        column: usize,
    },

    /// A constructor argument failed validation. `field` names the offender.
    #[error("invalid `{field}`: {message}")]
    Invalid {
        field: &'static str,
        message: String,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(field: &'static str, msg: impl Into<String>) -> Self {
        Error::Invalid {
            field,
            message: msg.into(),
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
