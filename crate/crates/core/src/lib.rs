//! # nabla-frac
//!
//! Discrete nabla (backward-difference) fractional calculus with Caputo
//! differences, on finite integer-offset lattices:
//!
//! * grid functions, the rising function, and its gamma-ratio evaluation
//!   ([`grid`], [`special`]);
//! * fractional sums, Riemann-Liouville and Caputo differences, and the two
//!   discrete Taylor representations ([`frac`]);
//! * the self-adjoint operator `x -> nabla[p D x] + q x` with `D` a Caputo
//!   difference of order `0 < nu <= 1`, solved by an explicit stepping
//!   recursion and by variation of constants over its Cauchy function
//!   ([`selfadjoint`]);
//! * Sturm-Liouville boundary value problems: solvability tests, Green's
//!   functions (constructed and closed-form), a full BVP solver, an
//!   independent dense-matrix oracle, and the Green's-function inequality
//!   margins ([`greens`]).
//!
//! Everything is generic over the scalar type through [`Real`]; the `*64`
//! aliases fix `f64`, the precision all shipped tolerances assume.
//!
//! ```
//! use nabla_frac::{Domain64, GridFunction64, FracOrder64};
//! use nabla_frac::frac::frac_sum;
//!
//! // order-1/2 fractional sum of the constant 1, based at 0
//! let ones = GridFunction64::constant(Domain64::new(1.0, 4), 1.0);
//! let v = frac_sum(&ones, FracOrder64::new(0.5).unwrap(), 0.0, 2.0).unwrap();
//! assert!((v - 1.5).abs() < 1e-14);
//! ```

pub mod error;
pub mod frac;
pub mod greens;
pub mod grid;
mod linsolve;
pub mod scalar;
pub mod selfadjoint;
pub mod special;
pub mod tol;

pub use error::{Error, Result};
pub use frac::FracKernelRow;
pub use greens::{
    GreensTable, InequalityMargins, RightBoundary, SolvabilityReport, SturmLiouvilleBc,
};
pub use grid::{Domain, FracOrder, GridFunction};
pub use scalar::Real;
pub use selfadjoint::{CaputoIvpSpec, InitialData, KernelTable, SelfAdjointProblem};

/// `f64` specializations of the main types.
pub type Domain64 = Domain<f64>;
pub type GridFunction64 = GridFunction<f64>;
pub type FracOrder64 = FracOrder<f64>;
pub type FracKernelRow64 = FracKernelRow<f64>;
pub type InitialData64 = InitialData<f64>;
pub type CaputoIvpSpec64 = CaputoIvpSpec<f64>;
pub type SelfAdjointProblem64 = SelfAdjointProblem<f64>;
pub type KernelTable64 = KernelTable<f64>;
pub type SturmLiouvilleBc64 = SturmLiouvilleBc<f64>;
pub type SolvabilityReport64 = SolvabilityReport<f64>;
pub type GreensTable64 = GreensTable<f64>;
pub type InequalityMargins64 = InequalityMargins<f64>;
