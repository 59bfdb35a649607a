//! Analytic test curves with exact derivatives, arc-length machinery, the
//! continuous p-energy, total curvature, and the planar Euler–Lagrange
//! residual for the length-penalized energy.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad;
use crate::vecn;

/// Descriptor of a built-in test curve; the JSON form is
/// `{"kind": "...", "params": {...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum CurveSpec {
    Circle {
        #[serde(rename = "R")]
        r: f64,
    },
    Ellipse {
        a: f64,
        b: f64,
    },
    Helix {
        r: f64,
        pitch: f64,
    },
    Graph {
        name: GraphName,
    },
    CantorVitali {
        level: u32,
    },
    Corner {
        theta: f64,
        arm: f64,
    },
    Line {
        length: f64,
    },
}

/// Named built-in scalar functions on `[0, 1]` for graph curves
/// `t -> (t, f(t))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphName {
    /// `f(t) = t^2 / 2`
    Parabola,
    /// `f(t) = t^3`
    Cubic,
    /// `f(t) = sin(pi t)`
    Sine,
}

/// A parameter where the tangent jumps, with the exterior angle between the
/// one-sided tangents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerPoint {
    pub t: f64,
    pub exterior_angle: f64,
}

/// Position/derivative contract of a parameterized curve.
pub trait CurveKernel: Send + Sync {
    fn dim(&self) -> usize;
    fn position(&self, t: f64) -> Vec<f64>;
    fn velocity(&self, t: f64) -> Vec<f64>;
    /// Second derivative; at a breakpoint the right-sided limit.
    fn acceleration(&self, t: f64) -> Vec<f64>;
}

/// Quadrature/energy report for a curve.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyReport {
    pub p: f64,
    pub value: f64,
    pub quadrature_error_estimate: f64,
    pub length: f64,
}

/// An evaluatable curve: a kernel plus its domain, closedness flag,
/// smoothness breakpoints, and flagged corner parameters.
pub struct CurveEvaluator {
    kernel: Box<dyn CurveKernel>,
    domain: (f64, f64),
    closed: bool,
    breakpoints: Vec<f64>,
    corners: Vec<CornerPoint>,
    /// Exact total curvature for graph kinds with monotone slope.
    exact_tc: Option<f64>,
}

/// Builds the evaluator for a spec. Shape parameters must be positive,
/// `theta` in `(0, pi)` for corners, and the Cantor–Vitali level at most 20.
pub fn make_curve(spec: &CurveSpec) -> Result<CurveEvaluator> {
    match *spec {
        CurveSpec::Circle { r } => {
            positive(r, "R")?;
            Ok(CurveEvaluator::from_parts(
                Box::new(CircleKernel { r }),
                (0.0, 2.0 * PI),
                true,
                vec![],
                vec![],
                None,
            ))
        }
        CurveSpec::Ellipse { a, b } => {
            positive(a, "a")?;
            positive(b, "b")?;
            Ok(CurveEvaluator::from_parts(
                Box::new(EllipseKernel { a, b }),
                (0.0, 2.0 * PI),
                true,
                vec![],
                vec![],
                None,
            ))
        }
        CurveSpec::Helix { r, pitch } => {
            positive(r, "r")?;
            positive(pitch, "pitch")?;
            Ok(CurveEvaluator::from_parts(
                Box::new(HelixKernel { r, pitch }),
                (0.0, 2.0 * PI),
                false,
                vec![],
                vec![],
                None,
            ))
        }
        CurveSpec::Graph { name } => {
            // Every built-in has a monotone slope, so the total curvature is
            // the exact swing of the tangent angle arctan(f').
            let kernel = GraphKernel { name };
            let tc = (kernel.df(1.0).atan() - kernel.df(0.0).atan()).abs();
            Ok(CurveEvaluator::from_parts(
                Box::new(kernel),
                (0.0, 1.0),
                false,
                vec![],
                vec![],
                Some(tc),
            ))
        }
        CurveSpec::CantorVitali { level } => {
            if level > 20 {
                return Err(Error::InvalidSpec(format!(
                    "cantor_vitali level {level} too deep (max 20)"
                )));
            }
            let kernel = CantorKernel::new(level);
            let breakpoints = kernel.interior_knots();
            // Slope v_m rises monotonically from 0 to 1, so the total
            // curvature is the exact swing of the tangent angle.
            let exact_tc = Some((1.0f64).atan() - (0.0f64).atan());
            Ok(CurveEvaluator::from_parts(
                Box::new(kernel),
                (0.0, 1.0),
                false,
                breakpoints,
                vec![],
                exact_tc,
            ))
        }
        CurveSpec::Corner { theta, arm } => {
            if !(theta > 0.0 && theta < PI) {
                return Err(Error::InvalidSpec(format!(
                    "corner angle must lie in (0, pi), got {theta}"
                )));
            }
            positive(arm, "arm")?;
            Ok(CurveEvaluator::from_parts(
                Box::new(CornerKernel { theta, arm }),
                (0.0, 2.0 * arm),
                false,
                vec![arm],
                vec![CornerPoint {
                    t: arm,
                    exterior_angle: theta,
                }],
                None,
            ))
        }
        CurveSpec::Line { length } => {
            positive(length, "length")?;
            Ok(CurveEvaluator::from_parts(
                Box::new(LineKernel),
                (0.0, length),
                false,
                vec![],
                vec![],
                None,
            ))
        }
    }
}

fn positive(x: f64, name: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("{name} must be positive, got {x}")))
    }
}

impl CurveEvaluator {
    pub fn from_parts(
        kernel: Box<dyn CurveKernel>,
        domain: (f64, f64),
        closed: bool,
        breakpoints: Vec<f64>,
        corners: Vec<CornerPoint>,
        exact_tc: Option<f64>,
    ) -> Self {
        CurveEvaluator {
            kernel,
            domain,
            closed,
            breakpoints,
            corners,
            exact_tc,
        }
    }

    pub fn dim(&self) -> usize {
        self.kernel.dim()
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn closed(&self) -> bool {
        self.closed
    }

    /// Same curve traversed as an open arc (seam identification dropped).
    pub fn into_open(mut self) -> Self {
        self.closed = false;
        self
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn corners(&self) -> &[CornerPoint] {
        &self.corners
    }

    pub fn position(&self, t: f64) -> Vec<f64> {
        self.kernel.position(self.clamp(t))
    }

    pub fn velocity(&self, t: f64) -> Vec<f64> {
        self.kernel.velocity(self.clamp(t))
    }

    pub fn acceleration(&self, t: f64) -> Vec<f64> {
        self.kernel.acceleration(self.clamp(t))
    }

    /// One-sided finite-difference second derivative with step
    /// `h = 1e-6 * (t1 - t0)`; the fallback contract for kinds that are only
    /// piecewise twice-differentiable, kept alongside the exact derivatives
    /// for consistency checks.
    pub fn acceleration_fd(&self, t: f64) -> Vec<f64> {
        let (a, b) = self.domain;
        let h = 1e-6 * (b - a);
        let side = if t + 2.0 * h <= b { 1.0 } else { -1.0 };
        let v0 = self.velocity(t);
        let v1 = self.velocity(t + side * h);
        vecn::scale(&vecn::sub(&v1, &v0), side / h)
    }

    fn clamp(&self, t: f64) -> f64 {
        t.clamp(self.domain.0, self.domain.1)
    }

    /// Scalar curvature at `t` via the orthogonal-projection formula
    /// `|c''_perp| / |c'|^2`, valid in any parameterization.
    pub fn curvature(&self, t: f64) -> f64 {
        let v = self.velocity(t);
        let a = self.acceleration(t);
        let perp = vecn::reject(&a, &v);
        let speed2 = vecn::dot(&v, &v);
        vecn::norm(&perp) / speed2
    }

    /// Sup of the speed over the domain, estimated by dense sampling with a
    /// small headroom factor.
    pub fn max_speed(&self) -> f64 {
        let (a, b) = self.domain;
        let mut best = 0.0f64;
        let n = 2048;
        for k in 0..=n {
            let t = a + (b - a) * (k as f64) / (n as f64);
            best = best.max(vecn::norm(&self.velocity(t)));
        }
        for &t in &self.breakpoints {
            best = best.max(vecn::norm(&self.velocity(t)));
        }
        best * 1.02 + 1e-12
    }

    /// Diameter of the support, estimated from 512 samples.
    pub fn diameter_estimate(&self) -> f64 {
        let (a, b) = self.domain;
        let pts: Vec<Vec<f64>> = (0..512)
            .map(|k| self.position(a + (b - a) * (k as f64) / 511.0))
            .collect();
        let mut d = 0.0f64;
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                d = d.max(vecn::dist(&pts[i], &pts[j]));
            }
        }
        d
    }

    fn pieces(&self, t0: f64, t1: f64) -> Vec<f64> {
        let mut cuts = vec![t0];
        for &bp in &self.breakpoints {
            if bp > t0 && bp < t1 {
                cuts.push(bp);
            }
        }
        cuts.push(t1);
        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cuts
    }

    /// Arc length over the whole domain by adaptive quadrature of the speed.
    pub fn arclength(&self, tol: f64) -> Result<f64> {
        let (a, b) = self.domain;
        self.arclength_between(a, b, tol)
    }

    pub fn arclength_between(&self, t0: f64, t1: f64, tol: f64) -> Result<f64> {
        let f = |t: f64| vecn::norm(&self.kernel.velocity(t));
        let (v, _) = quad::integrate_piecewise(&f, &self.pieces(t0, t1), tol)?;
        Ok(v)
    }

    /// Parameter at which the arc length from the domain start equals `s`.
    pub fn param_at_arclength(&self, s: f64, tol: f64) -> Result<f64> {
        let (a, b) = self.domain;
        let total = self.arclength(tol)?;
        if s < -tol || s > total + tol {
            return Err(Error::OutOfRange(format!(
                "arc length {s} outside [0, {total}]"
            )));
        }
        let s = s.clamp(0.0, total);
        let mut lo = a;
        let mut hi = b;
        // Bisection on the monotone map t -> arclength(a, t).
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if self.arclength_between(a, mid, tol.max(1e-13))? < s {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-14 * (b - a) {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// `int kappa^p ds` by adaptive quadrature in the original parameter with
    /// the arc-length Jacobian; pieces are cut at the smoothness breakpoints.
    pub fn p_energy(&self, p: f64, tol: f64) -> Result<EnergyReport> {
        if p < 1.0 {
            return Err(Error::InvalidArgument(format!(
                "energy exponent must be >= 1, got {p}"
            )));
        }
        let f = |t: f64| {
            let speed = vecn::norm(&self.kernel.velocity(t));
            let k = self.curvature(t);
            if k == 0.0 {
                0.0
            } else {
                k.powf(p) * speed
            }
        };
        let (a, b) = self.domain;
        let (value, err) = quad::integrate_piecewise(&f, &self.pieces(a, b), tol)?;
        let length = self.arclength(tol)?;
        Ok(EnergyReport {
            p,
            value,
            quadrature_error_estimate: err,
            length,
        })
    }

    /// Cross-check route for graph-like parameterizations: integrates
    /// `|c'|^(1-p) |tau'|^p` where `tau = c'/|c'|` is differentiated
    /// explicitly, instead of going through the curvature formula.
    pub fn p_energy_tantrix(&self, p: f64, tol: f64) -> Result<f64> {
        let f = |t: f64| {
            let v = self.kernel.velocity(t);
            let a = self.kernel.acceleration(t);
            let speed = vecn::norm(&v);
            // tau' = a/|v| - v (v.a)/|v|^3
            let coeff = vecn::dot(&v, &a) / (speed * speed * speed);
            let tau_dot = vecn::sub(&vecn::scale(&a, 1.0 / speed), &vecn::scale(&v, coeff));
            let nd = vecn::norm(&tau_dot);
            if nd == 0.0 {
                0.0
            } else {
                speed.powf(1.0 - p) * nd.powf(p)
            }
        };
        let (a, b) = self.domain;
        let (value, _) = quad::integrate_piecewise(&f, &self.pieces(a, b), tol)?;
        Ok(value)
    }

    /// Total curvature: the exact tangent-angle swing for monotone-slope
    /// graph kinds, otherwise `E_1` by quadrature plus the exterior angles at
    /// flagged corner parameters.
    pub fn total_curvature(&self, tol: f64) -> Result<f64> {
        if let Some(tc) = self.exact_tc {
            return Ok(tc);
        }
        let smooth = self.p_energy(1.0, tol)?.value;
        let corner_sum: f64 = self.corners.iter().map(|c| c.exterior_angle).sum();
        Ok(smooth + corner_sum)
    }

    /// Residual of the planar Euler–Lagrange equation of
    /// `eps * L(c) + E_p(c)` at arc length `s`:
    ///
    /// `p |k|^(p-2) k'' + p(p-2) |k|^(p-4) k (k')^2 + k |k|^p - eps k/(p-1)`
    ///
    /// with `k'`, `k''` taken by centered differences of the curvature along
    /// arc length (step `1e-4 * L`). A zero curvature under a negative-power
    /// weight (`p < 4`) is flagged as an error rather than evaluated.
    pub fn el_residual(&self, p: f64, eps: f64, s: f64) -> Result<f64> {
        if self.dim() != 2 {
            return Err(Error::InvalidArgument(
                "Euler-Lagrange residual is defined for planar curves".into(),
            ));
        }
        if !(p > 1.0) {
            return Err(Error::InvalidArgument(format!(
                "exponent must be > 1, got {p}"
            )));
        }
        if !(eps > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "length weight must be > 0, got {eps}"
            )));
        }
        let total = self.arclength(1e-11)?;
        if s < 0.0 || s > total {
            return Err(Error::OutOfRange(format!(
                "arc length {s} outside [0, {total}]"
            )));
        }
        let h = 1e-4 * total;
        let kappa_at = |sv: f64| -> Result<f64> {
            let sv = sv.clamp(0.0, total);
            let t = self.param_at_arclength(sv, 1e-12)?;
            Ok(self.curvature(t))
        };
        let k0 = kappa_at(s)?;
        if k0.abs() < 1e-12 && p < 4.0 {
            return Err(Error::SingularCurvature(format!(
                "curvature vanishes at s = {s} while |k|^(p-4) is singular for p = {p}"
            )));
        }
        let km = kappa_at(s - h)?;
        let kp = kappa_at(s + h)?;
        let kd = (kp - km) / (2.0 * h);
        let kdd = (kp - 2.0 * k0 + km) / (h * h);
        let mut res = p * k0.abs().powf(p - 2.0) * kdd + k0 * k0.abs().powf(p)
            - eps * k0 / (p - 1.0);
        let coeff = p * (p - 2.0);
        if coeff != 0.0 {
            res += coeff * k0.abs().powf(p - 4.0) * k0 * kd * kd;
        }
        Ok(res)
    }
}

// --- kernels ----------------------------------------------------------------

struct CircleKernel {
    r: f64,
}

impl CurveKernel for CircleKernel {
    fn dim(&self) -> usize {
        2
    }
    fn position(&self, t: f64) -> Vec<f64> {
        vec![self.r * t.cos(), self.r * t.sin()]
    }
    fn velocity(&self, t: f64) -> Vec<f64> {
        vec![-self.r * t.sin(), self.r * t.cos()]
    }
    fn acceleration(&self, t: f64) -> Vec<f64> {
        vec![-self.r * t.cos(), -self.r * t.sin()]
    }
}

struct EllipseKernel {
    a: f64,
    b: f64,
}

impl CurveKernel for EllipseKernel {
    fn dim(&self) -> usize {
        2
    }
    fn position(&self, t: f64) -> Vec<f64> {
        vec![self.a * t.cos(), self.b * t.sin()]
    }
    fn velocity(&self, t: f64) -> Vec<f64> {
        vec![-self.a * t.sin(), self.b * t.cos()]
    }
    fn acceleration(&self, t: f64) -> Vec<f64> {
        vec![-self.a * t.cos(), -self.b * t.sin()]
    }
}

struct HelixKernel {
    r: f64,
    pitch: f64,
}

impl CurveKernel for HelixKernel {
    fn dim(&self) -> usize {
        3
    }
    fn position(&self, t: f64) -> Vec<f64> {
        vec![self.r * t.cos(), self.r * t.sin(), self.pitch * t]
    }
    fn velocity(&self, t: f64) -> Vec<f64> {
        vec![-self.r * t.sin(), self.r * t.cos(), self.pitch]
    }
    fn acceleration(&self, t: f64) -> Vec<f64> {
        vec![-self.r * t.cos(), -self.r * t.sin(), 0.0]
    }
}

struct LineKernel;

impl CurveKernel for LineKernel {
    fn dim(&self) -> usize {
        2
    }
    fn position(&self, t: f64) -> Vec<f64> {
        vec![t, 0.0]
    }
    fn velocity(&self, _t: f64) -> Vec<f64> {
        vec![1.0, 0.0]
    }
    fn acceleration(&self, _t: f64) -> Vec<f64> {
        vec![0.0, 0.0]
    }
}

/// Two unit-speed arms of length `arm` meeting at the origin with exterior
/// angle `theta`; parameterized by arc length on `[0, 2*arm]`.
struct CornerKernel {
    theta: f64,
    arm: f64,
}

impl CurveKernel for CornerKernel {
    fn dim(&self) -> usize {
        2
    }
    fn position(&self, t: f64) -> Vec<f64> {
        if t <= self.arm {
            vec![t - self.arm, 0.0]
        } else {
            let u = t - self.arm;
            vec![u * self.theta.cos(), u * self.theta.sin()]
        }
    }
    fn velocity(&self, t: f64) -> Vec<f64> {
        if t < self.arm {
            vec![1.0, 0.0]
        } else {
            vec![self.theta.cos(), self.theta.sin()]
        }
    }
    fn acceleration(&self, _t: f64) -> Vec<f64> {
        vec![0.0, 0.0]
    }
}

struct GraphKernel {
    name: GraphName,
}

impl GraphKernel {
    fn f(&self, t: f64) -> f64 {
        match self.name {
            GraphName::Parabola => 0.5 * t * t,
            GraphName::Cubic => t * t * t,
            GraphName::Sine => (PI * t).sin(),
        }
    }
    fn df(&self, t: f64) -> f64 {
        match self.name {
            GraphName::Parabola => t,
            GraphName::Cubic => 3.0 * t * t,
            GraphName::Sine => PI * (PI * t).cos(),
        }
    }
    fn ddf(&self, t: f64) -> f64 {
        match self.name {
            GraphName::Parabola => 1.0,
            GraphName::Cubic => 6.0 * t,
            GraphName::Sine => -PI * PI * (PI * t).sin(),
        }
    }
}

impl CurveKernel for GraphKernel {
    fn dim(&self) -> usize {
        2
    }
    fn position(&self, t: f64) -> Vec<f64> {
        vec![t, self.f(t)]
    }
    fn velocity(&self, t: f64) -> Vec<f64> {
        vec![1.0, self.df(t)]
    }
    fn acceleration(&self, t: f64) -> Vec<f64> {
        vec![0.0, self.ddf(t)]
    }
}

/// Level-`m` Cantor–Vitali staircase approximation `v_m` (piecewise linear,
/// monotone from 0 to 1) and its primitive `u_m`; the curve is the graph
/// `t -> (t, u_m(t))`.
///
/// `v_0(t) = t`, and `v_{m+1}` equals `v_m(3t)/2` on `[0, 1/3]`, the constant
/// `1/2` on `[1/3, 2/3]`, and `1/2 + v_m(3t-2)/2` on `[2/3, 1]`.
struct CantorKernel {
    /// Per linear piece: (t_start, t_end, value at start, slope).
    segs: Vec<(f64, f64, f64, f64)>,
    /// Integral of v_m from 0 to each piece start.
    prefix: Vec<f64>,
}

impl CantorKernel {
    fn new(level: u32) -> Self {
        let mut segs: Vec<(f64, f64, f64, f64)> = vec![(0.0, 1.0, 0.0, 1.0)];
        for _ in 0..level {
            let mut next = Vec::with_capacity(segs.len() * 2 + 1);
            for &(a, b, va, s) in &segs {
                next.push((a / 3.0, b / 3.0, va / 2.0, 1.5 * s));
            }
            next.push((1.0 / 3.0, 2.0 / 3.0, 0.5, 0.0));
            for &(a, b, va, s) in &segs {
                next.push(((a + 2.0) / 3.0, (b + 2.0) / 3.0, 0.5 + va / 2.0, 1.5 * s));
            }
            segs = next;
        }
        let mut prefix = Vec::with_capacity(segs.len() + 1);
        let mut acc = 0.0;
        for &(a, b, va, s) in &segs {
            prefix.push(acc);
            let w = b - a;
            acc += va * w + 0.5 * s * w * w;
        }
        prefix.push(acc);
        CantorKernel { segs, prefix }
    }

    fn piece(&self, t: f64) -> usize {
        // Rightmost piece whose start is <= t.
        match self
            .segs
            .binary_search_by(|&(a, _, _, _)| a.partial_cmp(&t).unwrap())
        {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) => i - 1,
        }
    }

    fn v(&self, t: f64) -> f64 {
        let (a, _, va, s) = self.segs[self.piece(t)];
        va + s * (t - a)
    }

    fn slope(&self, t: f64) -> f64 {
        self.segs[self.piece(t)].3
    }

    fn u(&self, t: f64) -> f64 {
        let i = self.piece(t);
        let (a, _, va, s) = self.segs[i];
        let dt = t - a;
        self.prefix[i] + va * dt + 0.5 * s * dt * dt
    }

    fn interior_knots(&self) -> Vec<f64> {
        self.segs
            .iter()
            .map(|&(a, _, _, _)| a)
            .filter(|&a| a > 0.0)
            .collect()
    }
}

impl CurveKernel for CantorKernel {
    fn dim(&self) -> usize {
        2
    }
    fn position(&self, t: f64) -> Vec<f64> {
        vec![t, self.u(t)]
    }
    fn velocity(&self, t: f64) -> Vec<f64> {
        vec![1.0, self.v(t)]
    }
    fn acceleration(&self, t: f64) -> Vec<f64> {
        vec![0.0, self.slope(t)]
    }
}
