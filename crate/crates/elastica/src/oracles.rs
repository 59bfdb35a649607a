//! Closed-form reference values for the clamped minimum problems, regular
//! polygons, rhombus smoothings, and corner divergence rates, plus a golden
//! section minimizer used as an independent cross-check.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Angle density `F_p(alpha) = alpha * tan(alpha/2)^(p-1)` for
/// `alpha in (0, pi)`.
pub fn fp(alpha: f64, p: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < PI) {
        return Err(Error::InvalidArgument(format!(
            "alpha must lie in (0, pi), got {alpha}"
        )));
    }
    if !(p >= 1.0) {
        return Err(Error::InvalidArgument(format!("p must be >= 1, got {p}")));
    }
    Ok(alpha * (alpha / 2.0).tan().powf(p - 1.0))
}

/// Minimum p-energy over curves clamped to a two-segment corner: endpoints
/// and tangents of two arms of length `ell/2` with exterior angle `theta`,
/// total curvature `theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClampedMinimum {
    /// `theta * (tan(theta/2) / (ell/2))^(p-1)`, attained by a circular arc.
    pub energy: f64,
    /// Radius of the minimizing arc, `(ell/2) / tan(theta/2)`.
    pub radius: f64,
    /// Open bounds `(ell cos(theta/2), ell)` on the length of any competitor.
    pub length_bounds: (f64, f64),
}

pub fn pmin1(ell: f64, theta: f64, p: f64) -> Result<ClampedMinimum> {
    if !(ell > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "ell must be positive, got {ell}"
        )));
    }
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::InvalidArgument(format!(
            "theta must lie in (0, pi), got {theta}"
        )));
    }
    if !(p > 1.0) {
        return Err(Error::InvalidArgument(format!("p must be > 1, got {p}")));
    }
    let half = ell / 2.0;
    let t = (theta / 2.0).tan();
    Ok(ClampedMinimum {
        energy: theta * (t / half).powf(p - 1.0),
        radius: half / t,
        length_bounds: (ell * (theta / 2.0).cos(), ell),
    })
}

/// Optimal tangency offset for the four-arc curve inscribed in a unit-side
/// rhombus with exterior angles `theta` and `pi - theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhombusSolution {
    pub theta: f64,
    pub p: f64,
    /// Distance of the tangency points from the nearest `theta` vertex:
    /// `(1 + (F_p(pi-theta)/F_p(theta))^(1/p))^(-1)`.
    pub lambda_star: f64,
}

impl RhombusSolution {
    /// Energy of the four-arc curve tangent at offset `lambda in (0, 1)`:
    /// `2 (F_p(theta) lambda^(1-p) + F_p(pi-theta) (1-lambda)^(1-p))`.
    pub fn energy_at(&self, lambda: f64) -> f64 {
        let f1 = self.theta * (self.theta / 2.0).tan().powf(self.p - 1.0);
        let f2 = (PI - self.theta) * ((PI - self.theta) / 2.0).tan().powf(self.p - 1.0);
        2.0 * (f1 * lambda.powf(1.0 - self.p) + f2 * (1.0 - lambda).powf(1.0 - self.p))
    }

    /// Energy at the edge midpoints (`lambda = 1/2`), which is the p-rotation
    /// of the rhombus polygonal.
    pub fn midpoint_energy(&self) -> f64 {
        self.energy_at(0.5)
    }
}

pub fn pmin2_lambda(theta: f64, p: f64) -> Result<RhombusSolution> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::InvalidArgument(format!(
            "theta must lie in (0, pi), got {theta}"
        )));
    }
    if !(p > 1.0) {
        return Err(Error::InvalidArgument(format!("p must be > 1, got {p}")));
    }
    let ratio = fp(PI - theta, p)? / fp(theta, p)?;
    Ok(RhombusSolution {
        theta,
        p,
        lambda_star: 1.0 / (1.0 + ratio.powf(1.0 / p)),
    })
}

/// p-rotation of the unit-side rhombus polygonal itself:
/// `2^p (F_p(theta) + F_p(pi - theta))`.
pub fn rhombus_kp(theta: f64, p: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::InvalidArgument(format!(
            "theta must lie in (0, pi), got {theta}"
        )));
    }
    if !(p > 1.0) {
        return Err(Error::InvalidArgument(format!("p must be > 1, got {p}")));
    }
    Ok(2.0f64.powf(p) * (fp(theta, p)? + fp(PI - theta, p)?))
}

/// p-rotation of the regular n-gon with side `ell`:
/// `2 pi ((2/ell) tan(pi/n))^(p-1)` — the p-energy of its inscribed circle.
pub fn ngon_kp(n: usize, ell: f64, p: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "polygon needs n >= 3 sides, got {n}"
        )));
    }
    if !(ell > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "side must be positive, got {ell}"
        )));
    }
    if !(p >= 1.0) {
        return Err(Error::InvalidArgument(format!("p must be >= 1, got {p}")));
    }
    Ok(2.0 * PI * ((2.0 / ell) * (PI / n as f64).tan()).powf(p - 1.0))
}

/// Divergence-rate reference for corner curves: the p-rotation contribution
/// of a corner vertex whose arms are trimmed to `2 eps`,
/// `eps^(1-p) * theta * tan(theta/2)^(p-1)`.
pub fn corner_rate(theta: f64, p: f64, eps: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::InvalidArgument(format!(
            "theta must lie in (0, pi), got {theta}"
        )));
    }
    if !(p >= 1.0) {
        return Err(Error::InvalidArgument(format!("p must be >= 1, got {p}")));
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "eps must be positive, got {eps}"
        )));
    }
    Ok(eps.powf(1.0 - p) * theta * (theta / 2.0).tan().powf(p - 1.0))
}

/// Golden-section search for the minimum of a unimodal `f` on `[a, b]`,
/// shrinking the bracket to width `tol`. Returns the best evaluated point and
/// its value (more robust than the bracket midpoint once the bracket reaches
/// the rounding floor of `f`).
pub fn minimize_1d<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    if !(a < b) {
        return Err(Error::InvalidArgument(format!(
            "invalid bracket [{a}, {b}]"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }
    let invphi = (5.0f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (a, b);
    let mut c = hi - invphi * (hi - lo);
    let mut d = lo + invphi * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    let (mut best_x, mut best_f) = if fc <= fd { (c, fc) } else { (d, fd) };
    let mut iters = 0usize;
    while hi - lo > tol {
        iters += 1;
        if iters > 400 {
            return Err(Error::RootFind(
                "golden-section iteration budget exceeded".into(),
            ));
        }
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - invphi * (hi - lo);
            fc = f(c);
            if fc < best_f {
                best_x = c;
                best_f = fc;
            }
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + invphi * (hi - lo);
            fd = f(d);
            if fd < best_f {
                best_x = d;
                best_f = fd;
            }
        }
    }
    let mid = 0.5 * (lo + hi);
    let fmid = f(mid);
    if fmid < best_f {
        best_x = mid;
        best_f = fmid;
    }
    Ok((best_x, best_f))
}
