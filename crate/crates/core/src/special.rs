//! Gamma-function machinery and the rising function.
//!
//! The rising function `t^(nu)` = Gamma(t+nu)/Gamma(t) is the kernel of every
//! fractional sum and difference in this crate, so its edge conventions matter:
//!
//! * `t` a non-positive integer, `t+nu` not: the value is 0.
//! * `t+nu` a non-positive integer, `t` not: a genuine pole, reported as
//!   [`Error::Pole`].
//! * both non-positive integers (only possible for integer `nu`): the finite
//!   limit of the ratio, computed by integer products.
//!
//! Evaluation strategy: exact products for integer orders up to
//! [`MAX_PRODUCT_ORDER`], a Lanczos log-gamma ratio otherwise, with negative
//! non-integer arguments shifted into the positive half-line by exact factors.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest integer order evaluated by the exact product; larger integer
/// orders fall back to the log-gamma path.
pub const MAX_PRODUCT_ORDER: i64 = 64;

/// Lanczos coefficients, g = 607/128, 15 terms. Relative accuracy of the
/// resulting gamma values is a few ulps over the positive half-line.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEF: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

const HALF_LN_TWO_PI: f64 = 0.91893853320467274178032973640562;

/// Natural log of the gamma function for `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> T {
    debug_assert!(x > T::zero(), "ln_gamma requires a positive argument");
    // Pull small arguments up with ln Gamma(x) = ln Gamma(x+1) - ln x so the
    // Lanczos sum always sees x >= 0.5 where its accuracy is uniform.
    if x < T::of(0.5) {
        return ln_gamma(x + T::one()) - x.ln();
    }
    let mut series = T::of(LANCZOS_COEF[0]);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series = series + T::of(c) / (x - T::one() + T::of_i64(i as i64));
    }
    let t = x - T::of(0.5) + T::of(LANCZOS_G);
    T::of(HALF_LN_TWO_PI) + (x - T::of(0.5)) * t.ln() - t + series.ln()
}

/// Gamma function for `x > 0`. Integer arguments up to 20 use the exact
/// factorial product.
pub fn gamma<T: Real>(x: T) -> T {
    debug_assert!(x > T::zero(), "gamma requires a positive argument");
    if is_integer(x) {
        let n = x.round().as_f64() as i64;
        if n <= 20 {
            return factorial::<T>((n - 1) as u32);
        }
    }
    ln_gamma(x).exp()
}

/// `n!` as a scalar, by exact product.
pub fn factorial<T: Real>(n: u32) -> T {
    let mut acc = T::one();
    for k in 2..=n as i64 {
        acc = acc * T::of_i64(k);
    }
    acc
}

/// Binomial coefficient C(n, k) as a scalar, by the multiplicative formula.
pub fn binomial<T: Real>(n: u32, k: u32) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k as i64 {
        acc = acc * T::of_i64(n as i64 - i) / T::of_i64(i + 1);
    }
    acc
}

#[inline]
fn is_integer<T: Real>(x: T) -> bool {
    x == x.round()
}

#[inline]
fn is_nonpositive_integer<T: Real>(x: T) -> bool {
    x <= T::zero() && is_integer(x)
}

/// The rising function `t^(nu)` = Gamma(t+nu)/Gamma(t), with the conventions
/// described in the module docs.
pub fn rising<T: Real>(t: T, nu: T) -> Result<T> {
    let sum = t + nu;
    let t_pole = is_nonpositive_integer(t);
    let sum_pole = is_nonpositive_integer(sum);

    if t_pole && sum_pole {
        return Ok(both_poles_limit(t, nu));
    }
    if sum_pole {
        return Err(Error::Pole {
            t: t.as_f64(),
            order: nu.as_f64(),
        });
    }
    if t_pole {
        return Ok(T::zero());
    }

    if is_integer(nu) {
        let n = nu.round().as_f64() as i64;
        if n.abs() <= MAX_PRODUCT_ORDER {
            return Ok(integer_order_product(t, n));
        }
    }
    Ok(gamma_ratio(sum, t))
}

/// Finite limit of Gamma(t+nu+e)/Gamma(t+e) when both arguments sit on poles:
/// (-1)^nu * Gamma(1-t)/Gamma(1-t-nu), evaluated by integer products.
fn both_poles_limit<T: Real>(t: T, nu: T) -> T {
    let m = (-t.round().as_f64()) as i64; // t = -m, m >= 0
    let n = nu.round().as_f64() as i64; // nu = n, n <= m
    let sign = if n.rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    };
    // Gamma(1+m)/Gamma(1+m-n)
    let mut ratio = T::one();
    if n >= 0 {
        for j in (m - n + 1)..=m {
            ratio = ratio * T::of_i64(j);
        }
    } else {
        for j in (m + 1)..=(m - n) {
            ratio = ratio / T::of_i64(j);
        }
    }
    sign * ratio
}

/// Gamma(t+n)/Gamma(t) for integer n, by exact product. `t` must be off the
/// pole set and the product must not cross a pole (guaranteed by the caller's
/// classification).
fn integer_order_product<T: Real>(t: T, n: i64) -> T {
    let mut acc = T::one();
    if n >= 0 {
        for j in 0..n {
            acc = acc * (t + T::of_i64(j));
        }
    } else {
        for j in 1..=(-n) {
            acc = acc / (t - T::of_i64(j));
        }
    }
    acc
}

/// Gamma(x)/Gamma(y) for arguments off the pole set, via the log-gamma
/// difference. Arguments below 1 are first shifted up by exact factors, which
/// also carries the sign for negative non-integer arguments.
fn gamma_ratio<T: Real>(x: T, y: T) -> T {
    let (x_shifted, x_factor) = shift_up(x);
    let (y_shifted, y_factor) = shift_up(y);
    let core = (ln_gamma(x_shifted) - ln_gamma(y_shifted)).exp();
    core * y_factor / x_factor
}

/// Returns `(x + k, product of (x+j) for j < k)` with `x + k >= 1`, so that
/// Gamma(x) = Gamma(x+k) / product.
fn shift_up<T: Real>(x: T) -> (T, T) {
    let mut v = x;
    let mut factor = T::one();
    while v < T::one() {
        factor = factor * v;
        v = v + T::one();
    }
    (v, factor)
}

/// Rising function forced through the log-gamma path, for cross-checking the
/// product path. Only valid when `t` and `t+nu` are off the pole set.
#[cfg(test)]
fn rising_via_ln_gamma<T: Real>(t: T, nu: T) -> T {
    gamma_ratio(t + nu, t)
}
