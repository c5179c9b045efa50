//! The self-adjoint fractional difference operator, its initial value
//! problems, and the Cauchy function.
//!
//! The operator acts on grid functions `x` on `[a, b]` as
//!
//! ```text
//! (L x)(t) = p(t+1) D x(t+1) - p(t) D x(t) + q(t) x(t)
//! ```
//!
//! where `D` is the order-`nu` Caputo difference based at `a` and
//! `0 < nu <= 1`. Two independent solution routes are provided for every
//! problem: an explicit stepping recursion and a closed kernel-sum formula
//! (for the plain fractional IVP) or variation of constants (for the
//! self-adjoint one); they must agree, and the test suites hold them to that.

use crate::error::{Error, Result};
use crate::frac::{caputo_diff, FracKernelRow};
use crate::grid::{Domain, FracOrder, GridFunction};
use crate::scalar::Real;
use crate::special::{binomial, factorial, rising};

/// Initial data for a self-adjoint IVP: the value `x(a)` and the first
/// backward difference `x(a+1) - x(a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialData<T> {
    /// `x(a)`.
    pub value: T,
    /// The nabla difference at `a + 1`.
    pub slope: T,
}

impl<T: Real> InitialData<T> {
    pub fn new(value: T, slope: T) -> Result<Self> {
        if !value.is_finite() || !slope.is_finite() {
            return Err(Error::invalid("init", "initial data must be finite".to_string()));
        }
        Ok(InitialData { value, slope })
    }
}

/// A Caputo fractional IVP: order `nu`, whole-order differences
/// `c_0, ..., c_{N-1}` prescribed at the base `a`, and forcing `h` on
/// `[a+1, b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CaputoIvpSpec<T> {
    a: T,
    nu: FracOrder<T>,
    c: Vec<T>,
    h: GridFunction<T>,
}

impl<T: Real> CaputoIvpSpec<T> {
    pub fn new(a: T, nu: FracOrder<T>, c: Vec<T>, h: GridFunction<T>) -> Result<Self> {
        if c.len() != nu.ceil_n() as usize {
            return Err(Error::invalid(
                "c",
                format!(
                    "order {} needs {} initial difference(s), got {}",
                    nu.value(),
                    nu.ceil_n(),
                    c.len()
                ),
            ));
        }
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("c", "initial differences must be finite".to_string()));
        }
        if h.domain().signed_offset_of(a)? != -1 {
            return Err(Error::invalid(
                "h",
                format!("forcing must start at a + 1 = {}", a + T::one()),
            ));
        }
        Ok(CaputoIvpSpec { a, nu, c, h })
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.h.domain().last()
    }

    pub fn nu(&self) -> FracOrder<T> {
        self.nu
    }

    pub fn c(&self) -> &[T] {
        &self.c
    }

    pub fn h(&self) -> &GridFunction<T> {
        &self.h
    }

    /// Domain of the solution: `[a - N + 1, b]`.
    fn solution_domain(&self) -> Domain<T> {
        let n = self.nu.ceil_n() as i64;
        let steps = self.h.domain().length() as i64 + 1; // b - a
        Domain::new(
            self.a - T::of_i64(n - 1),
            (steps + n - 1) as usize,
        )
    }

    /// History values `f(a - j)` for `j = 0..N-1`, recovered from the
    /// prescribed differences by `f(a-j) = sum_k (-1)^k C(j,k) c_k`.
    fn history(&self) -> Vec<T> {
        let n = self.nu.ceil_n();
        (0..n)
            .map(|j| {
                let mut acc = T::zero();
                let mut sign = T::one();
                for k in 0..=j {
                    acc = acc + sign * binomial::<T>(j, k) * self.c[k as usize];
                    sign = -sign;
                }
                acc
            })
            .collect()
    }
}

/// Solves the Caputo IVP by the forward recursion on the `N`-th whole-order
/// difference. Returns the solution on `[a - N + 1, b]`.
pub fn solve_caputo_ivp_stepping<T: Real>(spec: &CaputoIvpSpec<T>) -> GridFunction<T> {
    let n = spec.nu.ceil_n();
    let domain = spec.solution_domain();
    let steps = spec.h.domain().length() + 1; // b - a
    let mut values = vec![T::zero(); domain.num_points()];
    let idx = |j: i64| (j + n as i64 - 1) as usize; // offset of a + j

    for (j, v) in spec.history().into_iter().enumerate() {
        values[idx(-(j as i64))] = v;
    }

    let mu = T::of_i64(n as i64) - spec.nu.value();
    let row = FracKernelRow::new(mu, steps).expect("kernel order is nonnegative");
    let mut dnf: Vec<T> = Vec::with_capacity(steps); // N-th difference at a+1, a+2, ...
    for j in 1..=steps as i64 {
        let mut tail = T::zero();
        for (i, d) in dnf.iter().enumerate() {
            // dnf[i] sits at a + i + 1; lag = j - (i+1) >= 1
            tail = tail + row.weight((j - 1 - i as i64) as usize) * *d;
        }
        let dn = spec.h.at((j - 1) as usize) - tail;
        dnf.push(dn);
        // f(a+j) from the N-th difference and known history
        let mut f = dn;
        let mut sign = -T::one();
        for i in 1..=n {
            f = f - sign * binomial::<T>(n, i) * values[idx(j - i as i64)];
            sign = -sign;
        }
        values[idx(j)] = f;
    }
    GridFunction::new(domain, values).expect("domain and value lengths agree by construction")
}

/// Solves the Caputo IVP by the closed representation: the initial-difference
/// polynomial plus the order-`nu` kernel sum of the forcing. Returns the
/// solution on `[a - N + 1, b]`.
pub fn solve_caputo_ivp_closed<T: Real>(spec: &CaputoIvpSpec<T>) -> GridFunction<T> {
    let n = spec.nu.ceil_n();
    let domain = spec.solution_domain();
    let steps = spec.h.domain().length() as i64 + 1;
    let row = FracKernelRow::new(spec.nu.value(), steps.max(1) as usize - 1)
        .expect("positive order");
    let values = (0..domain.num_points())
        .map(|i| {
            let j = i as i64 - (n as i64 - 1); // offset from a
            let span = T::of_i64(j);
            let mut acc = T::zero();
            for (k, &ck) in spec.c.iter().enumerate() {
                let weight = rising(span, T::of_i64(k as i64)).expect("integer rising")
                    / factorial::<T>(k as u32);
                acc = acc + weight * ck;
            }
            for tau in (1..=j).rev() {
                acc = acc + row.weight((j - tau) as usize) * spec.h.at((tau - 1) as usize);
            }
            acc
        })
        .collect();
    GridFunction::new(domain, values).expect("domain and value lengths agree by construction")
}

/// A self-adjoint problem `L x = h` on the lattice `[a, b]`: order
/// `0 < nu <= 1`, positive `p` on `[a+1, b]`, and `q`, `h` on `[a+1, b-1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SelfAdjointProblem<T> {
    a: T,
    b: T,
    nu: FracOrder<T>,
    p: GridFunction<T>,
    q: GridFunction<T>,
    h: GridFunction<T>,
}

impl<T: Real> SelfAdjointProblem<T> {
    pub fn new(
        a: T,
        b: T,
        nu: FracOrder<T>,
        p: GridFunction<T>,
        q: GridFunction<T>,
        h: GridFunction<T>,
    ) -> Result<Self> {
        if nu.ceil_n() != 1 {
            return Err(Error::invalid(
                "nu",
                format!("self-adjoint operator needs 0 < nu <= 1, got {}", nu.value()),
            ));
        }
        let span = Domain::from_endpoints(a, b)?;
        let m = span.length();
        if m < 2 {
            return Err(Error::invalid(
                "b",
                format!("need b - a >= 2, got b - a = {m}"),
            ));
        }
        let coeff_domain = Domain::new(a + T::one(), m - 1);
        let interior_domain = Domain::new(a + T::one(), m - 2);
        if !p.domain().compatible(&coeff_domain) {
            return Err(Error::invalid(
                "p",
                format!(
                    "p must live on [{}, {}] ({} values)",
                    coeff_domain.first(),
                    coeff_domain.last(),
                    coeff_domain.num_points()
                ),
            ));
        }
        for (dom_name, g) in [("q", &q), ("h", &h)] {
            if !g.domain().compatible(&interior_domain) {
                return Err(Error::invalid(
                    if dom_name == "q" { "q" } else { "h" },
                    format!(
                        "{dom_name} must live on [{}, {}] ({} values)",
                        interior_domain.first(),
                        interior_domain.last(),
                        interior_domain.num_points()
                    ),
                ));
            }
        }
        if p.values().iter().any(|&v| !(v > T::zero())) {
            return Err(Error::invalid("p", "p must be positive everywhere".to_string()));
        }
        Ok(SelfAdjointProblem { a, b, nu, p, q, h })
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn nu(&self) -> FracOrder<T> {
        self.nu
    }

    /// Number of unit steps `b - a`.
    pub fn m(&self) -> usize {
        self.p.domain().length() + 1
    }

    /// The point `a + j`.
    pub fn point(&self, j: usize) -> T {
        self.a + T::of_i64(j as i64)
    }

    /// `p(a + j)` for `1 <= j <= m`.
    pub fn p_at(&self, j: usize) -> T {
        self.p.at(j - 1)
    }

    /// `q(a + j)` for `1 <= j <= m - 1`.
    pub fn q_at(&self, j: usize) -> T {
        self.q.at(j - 1)
    }

    /// `h(a + j)` for `1 <= j <= m - 1`.
    pub fn h_at(&self, j: usize) -> T {
        self.h.at(j - 1)
    }

    pub fn p(&self) -> &GridFunction<T> {
        &self.p
    }

    pub fn q(&self) -> &GridFunction<T> {
        &self.q
    }

    pub fn h(&self) -> &GridFunction<T> {
        &self.h
    }

    /// Same problem with the forcing replaced.
    pub fn with_forcing(&self, h: GridFunction<T>) -> Result<Self> {
        SelfAdjointProblem::new(self.a, self.b, self.nu, self.p.clone(), self.q.clone(), h)
    }

    /// The solution lattice `[a, b]`.
    pub fn solution_domain(&self) -> Domain<T> {
        Domain::new(self.a, self.m())
    }

    /// Whether `q` vanishes identically (exact zeros).
    pub fn q_is_zero(&self) -> bool {
        self.q.values().iter().all(|&v| v == T::zero())
    }
}

/// Applies the operator to `x` at the interior point `t`, by its exact
/// expansion in Caputo differences.
pub fn apply_l<T: Real>(
    prob: &SelfAdjointProblem<T>,
    x: &GridFunction<T>,
    t: T,
) -> Result<T> {
    if !x.domain().compatible(&prob.solution_domain()) {
        return Err(Error::domain(format!(
            "operator argument must live on [{}, {}]",
            prob.a, prob.b
        )));
    }
    let j = x.domain().offset_of(t)?;
    if j < 1 || j > prob.m() - 1 {
        return Err(Error::domain(format!(
            "operator is defined on the interior [{}, {}]",
            prob.point(1),
            prob.point(prob.m() - 1)
        )));
    }
    let nu = prob.nu;
    let a = prob.a;
    let cap_next = caputo_diff(x, nu, a, prob.point(j + 1))?;
    let cap_cur = caputo_diff(x, nu, a, t)?;
    Ok(prob.p_at(j + 1) * cap_next - prob.p_at(j) * cap_cur + prob.q_at(j) * x.at(j))
}

/// The stepping recursion shared by every solver: starting from
/// `x(a + s0) = value` and `x(a + s0 + 1) - x(a + s0) = slope`, advances the
/// rearranged operator equation with base `a + s0` and forcing `h_at(j)`
/// (problem offsets). Returns values at offsets `s0..=m`.
fn step_from<T: Real>(
    prob: &SelfAdjointProblem<T>,
    s0: usize,
    value: T,
    slope: T,
    h_at: impl Fn(usize) -> T,
) -> Vec<T> {
    let m = prob.m();
    debug_assert!(s0 <= m - 1);
    let mu = T::one() - prob.nu.value();
    let row = FracKernelRow::new(mu, m - s0).expect("kernel order in [0, 1)");
    let mut x = Vec::with_capacity(m - s0 + 1);
    x.push(value);
    x.push(value + slope);
    let mut dx = vec![slope]; // nabla x at offsets s0+1, s0+2, ...
    for t_off in (s0 + 1)..m {
        let j = t_off - s0;
        let mut shifted = T::zero(); // kernel at lag+1, the left-shifted sum
        let mut plain = T::zero(); // kernel at lag
        for (i, d) in dx.iter().enumerate() {
            let lag = j - 1 - i;
            shifted = shifted + row.weight(lag + 1) * *d;
            plain = plain + row.weight(lag) * *d;
        }
        let p_next = prob.p_at(t_off + 1);
        let p_cur = prob.p_at(t_off);
        let x_cur = x[j];
        let forcing = h_at(t_off) - prob.q_at(t_off) * x_cur + p_cur * plain;
        let x_next = x_cur - shifted + forcing / p_next;
        x.push(x_next);
        dx.push(x_next - x_cur);
    }
    x
}

/// Solves `L x = h`, `x(a) = value`, `nabla x(a+1) = slope` by the explicit
/// stepping recursion. The result carries the full history on `[a, b]`.
pub fn solve_selfadjoint_ivp<T: Real>(
    prob: &SelfAdjointProblem<T>,
    init: InitialData<T>,
) -> GridFunction<T> {
    let values = step_from(prob, 0, init.value, init.slope, |j| prob.h_at(j));
    GridFunction::new(prob.solution_domain(), values).expect("lengths agree by construction")
}

/// The canonical homogeneous basis: `x1` with data `(1, 0)` and `x2` with
/// data `(0, 1)`. Their initial-data matrix is the identity, so every
/// homogeneous solution is `c1 x1 + c2 x2` with `c1 = x(a)`,
/// `c2 = nabla x(a+1)`.
pub fn homogeneous_basis<T: Real>(
    prob: &SelfAdjointProblem<T>,
) -> (GridFunction<T>, GridFunction<T>) {
    let zero = |_: usize| T::zero();
    let x1 = step_from(prob, 0, T::one(), T::zero(), zero);
    let x2 = step_from(prob, 0, T::zero(), T::one(), zero);
    let domain = prob.solution_domain();
    (
        GridFunction::new(domain, x1).expect("lengths agree"),
        GridFunction::new(domain, x2).expect("lengths agree"),
    )
}

/// The Cauchy function of the problem as a lower-triangular table: for each
/// base point `s` the column solves the homogeneous equation re-based at `s`
/// with `x(s, s) = 0` and `nabla x(s+1, s) = 1/p(s+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelTable<T> {
    a: T,
    b: T,
    columns: Vec<Vec<T>>,
}

impl<T: Real> KernelTable<T> {
    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    /// Number of unit steps `b - a`.
    pub fn m(&self) -> usize {
        self.columns.len() - 1
    }

    /// Column values for the base offset `s_off`: entries at
    /// `t = a + s_off, ..., b`.
    pub fn column(&self, s_off: usize) -> &[T] {
        &self.columns[s_off]
    }

    /// `x(t, s)` by offsets from `a`; zero for `t < s` (the kernel vanishes
    /// above the diagonal).
    pub fn value_at_offsets(&self, t_off: usize, s_off: usize) -> T {
        if t_off < s_off {
            T::zero()
        } else {
            self.columns[s_off][t_off - s_off]
        }
    }

    /// `x(t, s)` by lattice points; errors when `t < s` or either point is
    /// off the lattice.
    pub fn value(&self, t: T, s: T) -> Result<T> {
        let lattice = Domain::new(self.a, self.m());
        let t_off = lattice.offset_of(t)?;
        let s_off = lattice.offset_of(s)?;
        if t_off < s_off {
            return Err(Error::domain(format!(
                "Cauchy function is defined for t >= s, got t = {t}, s = {s}"
            )));
        }
        Ok(self.columns[s_off][t_off - s_off])
    }
}

/// Builds the Cauchy-function table for `prob`, one IVP per base point.
pub fn cauchy_function<T: Real>(prob: &SelfAdjointProblem<T>) -> KernelTable<T> {
    let m = prob.m();
    let zero = |_: usize| T::zero();
    let mut columns = Vec::with_capacity(m + 1);
    for s0 in 0..m {
        let slope = T::one() / prob.p_at(s0 + 1);
        columns.push(step_from(prob, s0, T::zero(), slope, zero));
    }
    columns.push(vec![T::zero()]); // the single-point column at s = b
    KernelTable {
        a: prob.a(),
        b: prob.b(),
        columns,
    }
}

/// Solves `L y = h` with the given initial data by variation of constants:
/// the homogeneous solution carrying the data plus the Cauchy convolution of
/// the forcing.
pub fn variation_of_constants<T: Real>(
    prob: &SelfAdjointProblem<T>,
    init: InitialData<T>,
) -> GridFunction<T> {
    let zero = |_: usize| T::zero();
    let y0 = step_from(prob, 0, init.value, init.slope, zero);
    let table = cauchy_function(prob);
    let m = prob.m();
    let values = (0..=m)
        .map(|j| {
            let mut acc = y0[j];
            for i in 1..=j.min(m - 1) {
                acc = acc + table.value_at_offsets(j, i) * prob.h_at(i);
            }
            acc
        })
        .collect();
    GridFunction::new(prob.solution_domain(), values).expect("lengths agree")
}
