//! Adaptive Simpson quadrature with interval halving and a Richardson error
//! estimate.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 50;

/// Integrates `f` over `[a, b]` to absolute accuracy roughly `tol`, returning
/// the value and the accumulated error estimate.
///
/// Fails when the recursion depth budget is exhausted before the local error
/// estimate meets the budget, or when the integrand produces a non-finite
/// value.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("quadrature tol must be positive".into()));
    }
    if a == b {
        return Ok((0.0, 0.0));
    }
    let fa = checked(f, a)?;
    let m = 0.5 * (a + b);
    let fm = checked(f, m)?;
    let fb = checked(f, b)?;
    let whole = simpson(a, b, fa, fm, fb);
    // Width floor: a jump sitting exactly on an endpoint (one-sided piece
    // values) keeps the Richardson ratio constant under halving, so accept
    // once the interval is negligibly narrow and book the residual as error.
    let floor = (b - a).abs() * 1e-13;
    adapt(f, a, b, fa, fm, fb, whole, tol, floor, MAX_DEPTH)
}

/// Integrates piece-by-piece over the sorted breakpoints `a = t_0 < ... <
/// t_k = b`, splitting the tolerance proportionally to piece width.
pub fn integrate_piecewise<F: Fn(f64) -> f64>(
    f: &F,
    pieces: &[f64],
    tol: f64,
) -> Result<(f64, f64)> {
    if pieces.len() < 2 {
        return Err(Error::InvalidArgument("need at least one piece".into()));
    }
    let total_span: f64 = pieces.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    let mut value = 0.0;
    let mut err = 0.0;
    for w in pieces.windows(2) {
        let share = if total_span > 0.0 {
            ((w[1] - w[0]).abs() / total_span).max(1e-6)
        } else {
            1.0
        };
        let (v, e) = integrate(f, w[0], w[1], tol * share)?;
        value += v;
        err += e;
    }
    Ok((value, err))
}

fn checked<F: Fn(f64) -> f64>(f: &F, t: f64) -> Result<f64> {
    let v = f(t);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Quadrature(format!(
            "integrand non-finite at t = {t}"
        )))
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    floor: f64,
    depth: u32,
) -> Result<(f64, f64)> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = checked(f, lm)?;
    let frm = checked(f, rm)?;
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    // Interval collapsed to rounding width, or narrow enough that a residual
    // jump contributes nothing: accept and book the defect.
    if m <= a || b <= m || (b - a) < floor {
        return Ok((left + right, delta.abs()));
    }
    if delta.abs() <= 15.0 * tol {
        return Ok((left + right + delta / 15.0, delta.abs() / 15.0));
    }
    if depth == 0 {
        return Err(Error::Quadrature(format!(
            "depth budget exhausted on [{a}, {b}] (residual {:.3e})",
            delta.abs() / 15.0
        )));
    }
    let (lv, le) = adapt(f, a, m, fa, flm, fm, left, tol / 2.0, floor, depth - 1)?;
    let (rv, re) = adapt(f, m, b, fm, frm, fb, right, tol / 2.0, floor, depth - 1)?;
    Ok((lv + rv, le + re))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn integrates_smooth_functions() {
        let (v, e) = integrate(&|t: f64| t.sin(), 0.0, PI, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-11, "v={v} e={e}");
        let (v, _) = integrate(&|t: f64| t * t, 0.0, 1.0, 1e-14).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn piecewise_handles_kinks_at_breakpoints() {
        let f = |t: f64| t.abs();
        let (v, _) = integrate_piecewise(&f, &[-1.0, 0.0, 1.0], 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_finite_integrand() {
        let f = |t: f64| 1.0 / t;
        assert!(integrate(&f, 0.0, 1.0, 1e-9).is_err());
    }
}
