//! Dense Gaussian elimination with partial pivoting.
//!
//! This is the engine of the independent verification oracle, so it stays
//! deliberately plain: no factorization reuse, no blocking, one pass of
//! forward elimination and one of back substitution.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tol::SINGULARITY_FACTOR;

/// Solves `A x = rhs`, consuming both. A pivot whose magnitude is at or
/// below `SINGULARITY_FACTOR` times the largest initial row norm is treated
/// as a singular system.
pub fn solve_dense<T: Real>(mut a: Vec<Vec<T>>, mut rhs: Vec<T>) -> Result<Vec<T>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n) && rhs.len() == n);

    let scale = a
        .iter()
        .map(|row| row.iter().fold(T::zero(), |m, &v| m.max(v.abs())))
        .fold(T::zero(), |m, v| m.max(v));
    let threshold = T::of(SINGULARITY_FACTOR) * scale;

    for col in 0..n {
        let (pivot_row, pivot_abs) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).expect("finite pivots"))
            .expect("nonempty column");
        if pivot_abs <= threshold {
            return Err(Error::SingularSystem {
                pivot: pivot_abs.as_f64(),
                threshold: threshold.as_f64(),
                column: col,
            });
        }
        a.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        let pivot = a[col][col];
        for r in col + 1..n {
            let factor = a[r][col] / pivot;
            if factor == T::zero() {
                continue;
            }
            for c in col..n {
                let above = a[col][c];
                a[r][c] = a[r][c] - factor * above;
            }
            rhs[r] = rhs[r] - factor * rhs[col];
        }
    }

    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for c in row + 1..n {
            acc = acc - a[row][c] * x[c];
        }
        x[row] = acc / a[row][row];
    }
    Ok(x)
}
