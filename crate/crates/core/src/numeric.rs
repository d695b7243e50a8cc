//! Scalar root finding and quadrature.

use crate::error::{Error, Result};

/// Inverts a continuous, increasing `f` on `[0, 1]` by bisection.
///
/// Returns `x` with `|f(x) - y| <= tol`, or the bisection limit point once the
/// bracket can no longer shrink. `tol = 0` asks for full precision in `x`.
pub fn inverse_monotone<F>(f: F, y: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (f0, f1) = (f(0.0), f(1.0));
    if !(y >= f0 - tol && y <= f1 + tol) {
        return Err(Error::Domain {
            what: "y",
            value: y,
            lo: f0,
            hi: f1,
        });
    }
    Ok(bisect(&f, y, tol, f0, f1))
}

/// As [`inverse_monotone`] but clamps: values below `f(0)` map to 0 and values
/// above `f(1)` map to 1.
pub(crate) fn inverse_clamped<F>(f: F, y: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let (f0, f1) = (f(0.0), f(1.0));
    bisect(&f, y, 0.0, f0, f1)
}

fn bisect<F: Fn(f64) -> f64>(f: &F, y: f64, tol: f64, f0: f64, f1: f64) -> f64 {
    if y <= f0 {
        return 0.0;
    }
    if y >= f1 {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return mid;
        }
        let fm = f(mid);
        if (fm - y).abs() <= tol && tol > 0.0 {
            return mid;
        }
        if fm < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    if b <= a {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}
