//! Integer-offset lattices and the grid functions living on them.
//!
//! A [`Domain`] is the finite point set `{base, base+1, ..., base+length}`.
//! All point arithmetic happens on integer offsets from the base, so lattice
//! indices never accumulate floating-point drift; the base itself may be any
//! real number.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Slack used when converting a real coordinate to an integer offset. Points
/// are expected to be produced by `base + k`; this only absorbs the rounding
/// of that sum.
const OFFSET_SLACK: f64 = 1e-9;

/// A finite lattice `{base + k : 0 <= k <= length}` with unit step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain<T> {
    base: T,
    length: usize,
}

impl<T: Real> Domain<T> {
    /// Lattice from `base` to `base + length` inclusive.
    pub fn new(base: T, length: usize) -> Self {
        Domain { base, length }
    }

    /// Lattice from `first` to `last` inclusive. Errors unless `last - first`
    /// is a nonnegative integer.
    pub fn from_endpoints(first: T, last: T) -> Result<Self> {
        let span = last - first;
        let k = span.round();
        if (span - k).abs() > T::of(OFFSET_SLACK) || k < T::zero() {
            return Err(Error::domain(format!(
                "endpoints {first} and {last} do not span a nonnegative integer number of steps"
            )));
        }
        Ok(Domain {
            base: first,
            length: k.as_f64() as usize,
        })
    }

    /// First point of the lattice.
    pub fn first(&self) -> T {
        self.base
    }

    /// Last point of the lattice.
    pub fn last(&self) -> T {
        self.point(self.length)
    }

    /// Number of unit steps between first and last point.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Number of lattice points (`length + 1`).
    pub fn num_points(&self) -> usize {
        self.length + 1
    }

    /// The point `base + k`.
    pub fn point(&self, k: usize) -> T {
        self.base + T::of_i64(k as i64)
    }

    /// Offset of `t` on the lattice, allowing positions outside
    /// `[first, last]` as long as `t - base` is an integer.
    pub fn signed_offset_of(&self, t: T) -> Result<i64> {
        let d = t - self.base;
        let k = d.round();
        if (d - k).abs() > T::of(OFFSET_SLACK) {
            return Err(Error::domain(format!(
                "point {t} is not on the lattice based at {}",
                self.base
            )));
        }
        Ok(k.as_f64() as i64)
    }

    /// Offset of `t` within the lattice; errors if `t` lies outside it.
    pub fn offset_of(&self, t: T) -> Result<usize> {
        let k = self.signed_offset_of(t)?;
        if k < 0 || k as usize > self.length {
            return Err(Error::domain(format!(
                "point {t} lies outside the lattice [{}, {}]",
                self.first(),
                self.last()
            )));
        }
        Ok(k as usize)
    }

    /// Whether `t` is a point of this lattice.
    pub fn contains(&self, t: T) -> bool {
        self.offset_of(t).is_ok()
    }

    /// Pointwise compatibility: identical base and length.
    pub fn compatible(&self, other: &Self) -> bool {
        self.base == other.base && self.length == other.length
    }

    /// Iterator over the lattice points in order.
    pub fn points(&self) -> impl Iterator<Item = T> + '_ {
        (0..=self.length).map(move |k| self.point(k))
    }
}

/// A real-valued function on a [`Domain`], stored as one value per point.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T> {
    domain: Domain<T>,
    values: Vec<T>,
}

impl<T: Real> GridFunction<T> {
    /// Wraps explicit values; `values.len()` must equal the number of points.
    pub fn new(domain: Domain<T>, values: Vec<T>) -> Result<Self> {
        if values.len() != domain.num_points() {
            return Err(Error::invalid(
                "values",
                format!(
                    "expected {} values for the lattice [{}, {}], got {}",
                    domain.num_points(),
                    domain.first(),
                    domain.last(),
                    values.len()
                ),
            ));
        }
        Ok(GridFunction { domain, values })
    }

    /// Samples `f` at every lattice point.
    pub fn from_fn(domain: Domain<T>, f: impl Fn(T) -> T) -> Self {
        let values = domain.points().map(f).collect();
        GridFunction { domain, values }
    }

    /// The constant function `c`.
    pub fn constant(domain: Domain<T>, c: T) -> Self {
        GridFunction {
            values: vec![c; domain.num_points()],
            domain,
        }
    }

    pub fn domain(&self) -> &Domain<T> {
        &self.domain
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Value at the lattice point `t`; evaluation off the lattice is an
    /// error, never extrapolation.
    pub fn eval(&self, t: T) -> Result<T> {
        Ok(self.values[self.domain.offset_of(t)?])
    }

    /// Value at offset `k` from the domain base. Panics on out-of-range
    /// offsets; callers own the bound.
    #[inline]
    pub fn at(&self, k: usize) -> T {
        self.values[k]
    }

    /// The backward difference `t -> f(t) - f(t-1)`, defined on the lattice
    /// shortened by one point at the left.
    pub fn nabla(&self) -> Result<GridFunction<T>> {
        if self.domain.length() < 1 {
            return Err(Error::domain(
                "nabla difference needs at least two points".to_string(),
            ));
        }
        let domain = Domain::new(self.domain.point(1), self.domain.length() - 1);
        let values = self
            .values
            .windows(2)
            .map(|w| w[1] - w[0])
            .collect::<Vec<_>>();
        Ok(GridFunction { domain, values })
    }

    /// The definite nabla integral: the sum of `f` over `(c, d]` when
    /// `c < d`, and 0 when `d <= c`. The endpoints must be lattice-aligned
    /// and every summed point must carry a stored value; the sum never
    /// evaluates `f(c)`, so `c` may sit one step below the first point.
    pub fn nabla_integral(&self, c: T, d: T) -> Result<T> {
        let kc = self.domain.signed_offset_of(c)?;
        let kd = self.domain.signed_offset_of(d)?;
        if kd <= kc {
            return Ok(T::zero());
        }
        if kc + 1 < 0 || kd > self.domain.length() as i64 {
            return Err(Error::domain(format!(
                "nabla integral over ({c}, {d}] touches points outside [{}, {}]",
                self.domain.first(),
                self.domain.last()
            )));
        }
        Ok(self.values[(kc + 1) as usize..=kd as usize]
            .iter()
            .fold(T::zero(), |acc, &v| acc + v))
    }

    /// Pointwise combination with another function on a compatible domain.
    pub fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        if !self.domain.compatible(&other.domain) {
            return Err(Error::domain(
                "grid functions live on incompatible domains".to_string(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(GridFunction {
            domain: self.domain,
            values,
        })
    }

    /// Pointwise map.
    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        GridFunction {
            domain: self.domain,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }
}

/// A fractional order `nu > 0` together with its ceiling `N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder<T> {
    nu: T,
    ceil_n: u32,
}

impl<T: Real> FracOrder<T> {
    pub fn new(nu: T) -> Result<Self> {
        if !(nu > T::zero()) || !nu.is_finite() {
            return Err(Error::invalid(
                "nu",
                format!("fractional order must be positive and finite, got {nu}"),
            ));
        }
        let ceil = nu.ceil();
        Ok(FracOrder {
            nu,
            ceil_n: ceil.as_f64() as u32,
        })
    }

    /// The order itself.
    pub fn value(&self) -> T {
        self.nu
    }

    /// `N = ceil(nu)`.
    pub fn ceil_n(&self) -> u32 {
        self.ceil_n
    }

    /// Whether the order is a whole number (`nu == N`).
    pub fn is_whole(&self) -> bool {
        self.nu == T::of_i64(self.ceil_n as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_points_and_offsets() {
        let d = Domain::new(0.5, 4);
        assert_eq!(d.first(), 0.5);
        assert_eq!(d.last(), 4.5);
        assert_eq!(d.num_points(), 5);
        assert_eq!(d.offset_of(2.5).unwrap(), 2);
        assert!(d.offset_of(5.5).is_err());
        assert!(d.offset_of(0.75).is_err());
        assert_eq!(d.signed_offset_of(-1.5).unwrap(), -2);
    }

    #[test]
    fn grid_function_eval_guards() {
        let d = Domain::new(0.0, 3);
        let f = GridFunction::from_fn(d, |t| t * t);
        assert_eq!(f.eval(2.0).unwrap(), 4.0);
        assert!(f.eval(4.0).is_err());
        assert!(f.eval(1.5).is_err());
        assert!(GridFunction::new(d, vec![0.0; 3]).is_err());
    }

    #[test]
    fn nabla_of_constant_is_zero() {
        let d = Domain::new(0.0, 5);
        let f = GridFunction::constant(d, 3.25);
        let df = f.nabla().unwrap();
        assert_eq!(df.domain().first(), 1.0);
        assert_eq!(df.domain().last(), 5.0);
        assert!(df.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn nabla_of_identity_is_one() {
        let d = Domain::new(0.0, 5);
        let f = GridFunction::from_fn(d, |t| t);
        let df = f.nabla().unwrap();
        assert!(df.values().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn nabla_of_example_solution_start() {
        // First two values of the order-0.7 model IVP solution: 2, 3.
        let d = Domain::new(0.0, 1);
        let f = GridFunction::new(d, vec![2.0, 3.0]).unwrap();
        let df = f.nabla().unwrap();
        assert_eq!(df.eval(1.0).unwrap(), 1.0);
    }

    #[test]
    fn nabla_needs_two_points() {
        let d = Domain::new(0.0, 0);
        let f = GridFunction::constant(d, 1.0);
        assert!(f.nabla().is_err());
    }

    #[test]
    fn nabla_integral_counting_and_empty() {
        let d = Domain::new(0.0, 5);
        let ones = GridFunction::constant(d, 1.0);
        assert_eq!(ones.nabla_integral(0.0, 4.0).unwrap(), 4.0);
        assert_eq!(ones.nabla_integral(3.0, 3.0).unwrap(), 0.0);
        assert_eq!(ones.nabla_integral(4.0, 1.0).unwrap(), 0.0);
        let ident = GridFunction::from_fn(d, |t| t);
        assert_eq!(ident.nabla_integral(0.0, 3.0).unwrap(), 6.0);
        // c one step below the first point is fine: the sum starts at c+1
        let tail = GridFunction::new(Domain::new(1.0, 2), vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(tail.nabla_integral(0.0, 3.0).unwrap(), 6.0);
        assert!(tail.nabla_integral(-1.0, 3.0).is_err());
        assert!(ident.nabla_integral(0.5, 3.0).is_err());
    }

    #[test]
    fn frac_order_ceiling() {
        assert_eq!(FracOrder::new(0.7).unwrap().ceil_n(), 1);
        assert_eq!(FracOrder::new(1.0).unwrap().ceil_n(), 1);
        assert_eq!(FracOrder::new(1.3).unwrap().ceil_n(), 2);
        assert!(FracOrder::new(1.0).unwrap().is_whole());
        assert!(!FracOrder::new(0.4).unwrap().is_whole());
        assert!(FracOrder::new(0.0).is_err());
        assert!(FracOrder::new(-0.5).is_err());
    }
}
