//! Comparison tolerances shared by the library, its verification reports,
//! and the test suites.

use crate::scalar::Real;

/// Default relative tolerance: double precision with at most a few thousand
/// accumulation terms at the problem sizes this crate targets.
pub const DEFAULT_REL: f64 = 1e-9;

/// Absolute floor below which differences are treated as zero regardless of
/// scale.
pub const DEFAULT_ABS: f64 = 1e-12;

/// Scale factor for singularity detection: a boundary determinant or an
/// elimination pivot at or below this multiple of the matrix row-norm scale
/// signals an unsolvable problem.
pub const SINGULARITY_FACTOR: f64 = 1e-10;

/// Relative comparison with an absolute floor.
pub fn approx_eq<T: Real>(a: T, b: T, rel: T, abs: T) -> bool {
    let diff = (a - b).abs();
    diff <= abs || diff <= rel * a.abs().max(b.abs())
}

/// `approx_eq` at the crate defaults.
pub fn close<T: Real>(a: T, b: T) -> bool {
    approx_eq(a, b, T::of(DEFAULT_REL), T::of(DEFAULT_ABS))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_and_relative_regimes() {
        assert!(approx_eq(1e-13, 0.0, 1e-9, 1e-12));
        assert!(approx_eq(1.0, 1.0 + 5e-10, 1e-9, 1e-12));
        assert!(!approx_eq(1.0, 1.0 + 5e-9, 1e-9, 1e-12));
        assert!(close(1e6, 1e6 * (1.0 + 1e-10)));
    }
}
