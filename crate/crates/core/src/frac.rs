//! Fractional sums, Riemann-Liouville and Caputo fractional differences, and
//! the two discrete Taylor representations.
//!
//! Every operation here takes an explicit summation base `a`: the kernels sum
//! over `(a, t]`, and the Cauchy-function machinery re-bases the same grid
//! data at interior points, so the base cannot be tied to the grid function's
//! own first point.

use crate::error::{Error, Result};
use crate::grid::{FracOrder, GridFunction};
use crate::scalar::Real;
use crate::special::{binomial, factorial, rising};

/// One row of fractional-sum kernel weights for a fixed order.
///
/// `weight(j)` is the coefficient of `f(s)` at lag `j = t - s` in a sum of
/// order `mu`, i.e. `(j+1)^(mu-1) / Gamma(mu)`. The weights are built by the
/// exact ratio recurrence `w_0 = 1`, `w_j = w_{j-1} (mu + j - 1)/j`, which at
/// whole orders degenerates to the right integer table ([1, 0, 0, ...] for
/// `mu = 0`, all ones for `mu = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct FracKernelRow<T> {
    order: T,
    weights: Vec<T>,
}

impl<T: Real> FracKernelRow<T> {
    /// Weights for lags `0..=max_lag` at order `mu >= 0`.
    pub fn new(order: T, max_lag: usize) -> Result<Self> {
        if !(order >= T::zero()) || !order.is_finite() {
            return Err(Error::invalid(
                "order",
                format!("kernel order must be nonnegative and finite, got {order}"),
            ));
        }
        let mut weights = Vec::with_capacity(max_lag + 1);
        weights.push(T::one());
        for j in 1..=max_lag as i64 {
            let prev = weights[(j - 1) as usize];
            weights.push(prev * (order + T::of_i64(j - 1)) / T::of_i64(j));
        }
        Ok(FracKernelRow { order, weights })
    }

    pub fn order(&self) -> T {
        self.order
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    #[inline]
    pub fn weight(&self, lag: usize) -> T {
        self.weights[lag]
    }
}

/// The nabla fractional sum of order `nu` based at `a`, evaluated at `t`:
/// the kernel-weighted sum of `f` over `(a, t]`. Returns 0 at `t = a`.
pub fn frac_sum<T: Real>(f: &GridFunction<T>, nu: FracOrder<T>, a: T, t: T) -> Result<T> {
    frac_sum_raw(f, nu.value(), a, t)
}

/// Fractional sum accepting a raw nonnegative order; order 0 is the identity.
pub(crate) fn frac_sum_raw<T: Real>(f: &GridFunction<T>, order: T, a: T, t: T) -> Result<T> {
    let ka = f.domain().signed_offset_of(a)?;
    let kt = f.domain().signed_offset_of(t)?;
    if kt < ka {
        return Err(Error::domain(format!(
            "fractional sum evaluated at {t}, left of its base {a}"
        )));
    }
    if kt == ka {
        return Ok(T::zero());
    }
    let last = f.domain().length() as i64;
    if ka + 1 < 0 || kt > last {
        return Err(Error::domain(format!(
            "fractional sum over ({a}, {t}] needs values outside the stored lattice"
        )));
    }
    let row = FracKernelRow::new(order, (kt - ka - 1) as usize)?;
    // Sum from s = t down to s = a+1 so the unit-weight leading term enters
    // the accumulator first.
    let mut acc = T::zero();
    for s in (ka + 1..=kt).rev() {
        acc = acc + row.weight((kt - s) as usize) * f.at(s as usize);
    }
    Ok(acc)
}

/// N-fold backward difference of `f` at offset `k` (which must have `n`
/// points of history below it).
fn nabla_n_at<T: Real>(f: &GridFunction<T>, n: u32, k: usize) -> T {
    let mut acc = T::zero();
    let mut sign = T::one();
    for i in 0..=n {
        acc = acc + sign * binomial::<T>(n, i) * f.at(k - i as usize);
        sign = -sign;
    }
    acc
}

/// The Riemann-Liouville fractional difference of order `nu` based at `a`:
/// the `N`-fold nabla difference of the `(N - nu)`-order sum, at `t`.
pub fn rl_frac_diff<T: Real>(f: &GridFunction<T>, nu: FracOrder<T>, a: T, t: T) -> Result<T> {
    let n = nu.ceil_n();
    let ka = f.domain().signed_offset_of(a)?;
    let kt = f.domain().signed_offset_of(t)?;
    if kt < ka + n as i64 {
        return Err(Error::domain(format!(
            "RL difference of order {} needs t >= a + {n}, got t = {t}, a = {a}",
            nu.value()
        )));
    }
    let sum_order = T::of_i64(n as i64) - nu.value();
    // g(u) = (N - nu)-order sum of f at u, needed at t, t-1, ..., t-N.
    let g = |u: i64| -> Result<T> {
        if sum_order == T::zero() {
            if u < 0 || u > f.domain().length() as i64 {
                return Err(Error::domain(
                    "RL difference needs values outside the stored lattice".to_string(),
                ));
            }
            Ok(f.at(u as usize))
        } else {
            frac_sum_raw(f, sum_order, a, f.domain().first() + T::of_i64(u))
        }
    };
    let mut acc = T::zero();
    let mut sign = T::one();
    for i in 0..=n {
        acc = acc + sign * binomial::<T>(n, i) * g(kt - i as i64)?;
        sign = -sign;
    }
    Ok(acc)
}

/// The Caputo fractional difference of order `nu` based at `a`: the
/// `(N - nu)`-order sum of the `N`-fold difference, at `t`. Returns 0 at
/// `t = a` (empty sum). `f` must reach back to `a - N + 1`.
pub fn caputo_diff<T: Real>(f: &GridFunction<T>, nu: FracOrder<T>, a: T, t: T) -> Result<T> {
    let n = nu.ceil_n();
    let ka = f.domain().signed_offset_of(a)?;
    let kt = f.domain().signed_offset_of(t)?;
    if ka - (n as i64 - 1) < 0 {
        return Err(Error::domain(format!(
            "Caputo difference of order {} needs {n} history point(s) before {a}",
            nu.value()
        )));
    }
    if kt < ka {
        return Err(Error::domain(format!(
            "Caputo difference evaluated at {t}, left of its base {a}"
        )));
    }
    if kt > f.domain().length() as i64 {
        return Err(Error::domain(format!(
            "Caputo difference evaluated at {t}, beyond the stored lattice"
        )));
    }
    if kt == ka {
        return Ok(T::zero());
    }
    let sum_order = T::of_i64(n as i64) - nu.value();
    let row = FracKernelRow::new(sum_order, (kt - ka - 1) as usize)?;
    let mut acc = T::zero();
    for s in (ka + 1..=kt).rev() {
        acc = acc + row.weight((kt - s) as usize) * nabla_n_at(f, n, s as usize);
    }
    Ok(acc)
}

/// Whole-order discrete Taylor representation with base `a` and `n >= 1`
/// terms of polynomial part: reproduces `f(t)` for `t >= a` when `f` has
/// `n - 1` history points before `a`.
pub fn taylor_whole<T: Real>(f: &GridFunction<T>, n: u32, a: T, t: T) -> Result<T> {
    if n == 0 {
        return Err(Error::invalid("n", "Taylor order must be at least 1".to_string()));
    }
    let ka = f.domain().signed_offset_of(a)?;
    let kt = f.domain().signed_offset_of(t)?;
    if ka < n as i64 - 1 {
        return Err(Error::domain(format!(
            "whole-order Taylor with N = {n} needs {} history point(s) before {a}",
            n - 1
        )));
    }
    if kt < ka || kt > f.domain().length() as i64 {
        return Err(Error::domain(format!(
            "Taylor representation evaluated at {t} outside [{a}, last]"
        )));
    }
    let span = T::of_i64(kt - ka);
    let mut poly = T::zero();
    for k in 0..n {
        poly = poly
            + nabla_n_at(f, k, ka as usize) * rising(span, T::of_i64(k as i64))?
                / factorial::<T>(k);
    }
    let fact = factorial::<T>(n - 1);
    let mut remainder = T::zero();
    for s in (ka + 1..=kt).rev() {
        let kernel = rising(T::of_i64(kt - s + 1), T::of_i64(n as i64 - 1))? / fact;
        remainder = remainder + kernel * nabla_n_at(f, n, s as usize);
    }
    Ok(poly + remainder)
}

/// Caputo discrete Taylor representation: polynomial part from whole-order
/// differences at `a` plus the `nu`-order sum of the Caputo difference.
/// Reproduces `f(t)` for `t >= a`.
pub fn taylor_caputo<T: Real>(f: &GridFunction<T>, nu: FracOrder<T>, a: T, t: T) -> Result<T> {
    let n = nu.ceil_n();
    let ka = f.domain().signed_offset_of(a)?;
    let kt = f.domain().signed_offset_of(t)?;
    if ka < n as i64 - 1 {
        return Err(Error::domain(format!(
            "Caputo Taylor of order {} needs {n} history point(s) before {a}",
            nu.value()
        )));
    }
    if kt < ka || kt > f.domain().length() as i64 {
        return Err(Error::domain(format!(
            "Taylor representation evaluated at {t} outside [{a}, last]"
        )));
    }
    let span = T::of_i64(kt - ka);
    let mut poly = T::zero();
    for k in 0..n {
        poly = poly
            + nabla_n_at(f, k, ka as usize) * rising(span, T::of_i64(k as i64))?
                / factorial::<T>(k);
    }
    let row = FracKernelRow::new(nu.value(), (kt - ka).max(1) as usize - 1)?;
    let mut frac_part = T::zero();
    for tau in (ka + 1..=kt).rev() {
        let point = f.domain().first() + T::of_i64(tau);
        frac_part = frac_part + row.weight((kt - tau) as usize) * caputo_diff(f, nu, a, point)?;
    }
    Ok(poly + frac_part)
}
