//! Inscribed polygonals of a curve: uniform-parameter sampling, the greedy
//! equal-chord construction (first parameter where the chord from the
//! previous vertex reaches the target length), the exact equilateral variant
//! that lands on the curve endpoint, and refinement sequences.

use serde::{Deserialize, Serialize};

use crate::curves::CurveEvaluator;
use crate::error::{Error, Result};
use crate::polyline::{modulus, Polygonal};
use crate::vecn;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Uniform,
    EquilateralGreedy,
    EquilateralExact,
}

/// A polygonal inscribed in a curve together with the parameters of its
/// vertices.
#[derive(Debug, Clone)]
pub struct Inscription {
    pub polygonal: Polygonal,
    /// Strictly increasing; one parameter per vertex.
    pub params: Vec<f64>,
    pub scheme: Scheme,
    /// Chord length for the equilateral schemes.
    pub chord: Option<f64>,
    /// Greedy scheme: the trailing edge ran out of curve before reaching the
    /// chord length and is excluded from the equilateral certificate.
    pub partial_last: bool,
}

impl Inscription {
    /// Sidecar JSON: `{"params": [...], "scheme": "...", "chord": l}`.
    pub fn sidecar_json(&self) -> String {
        let sc = Sidecar {
            params: self.params.clone(),
            scheme: self.scheme,
            chord: self.chord,
        };
        serde_json::to_string_pretty(&sc).expect("sidecar serialization cannot fail")
    }

    pub fn sidecar_from_json(text: &str) -> Result<Sidecar> {
        Ok(serde_json::from_str(text)?)
    }

    /// Largest edge length (the mesh of the polygonal).
    pub fn mesh(&self) -> f64 {
        self.polygonal
            .edge_lengths()
            .into_iter()
            .fold(0.0f64, f64::max)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sidecar {
    pub params: Vec<f64>,
    pub scheme: Scheme,
    pub chord: Option<f64>,
}

fn build_inscription(
    c: &CurveEvaluator,
    mut params: Vec<f64>,
    scheme: Scheme,
    chord: Option<f64>,
    partial_last: bool,
) -> Result<Inscription> {
    // Collapse consecutive coincident samples (plateaus, seams), keeping the
    // parameter list aligned with the kept vertices.
    let tol = 1e-14 * (1.0 + c.diameter_estimate());
    let mut verts: Vec<Vec<f64>> = Vec::with_capacity(params.len());
    let mut kept_params = Vec::with_capacity(params.len());
    for &t in &params {
        let pos = c.position(t);
        match verts.last() {
            Some(prev) if vecn::dist(prev, &pos) <= tol => {}
            _ => {
                verts.push(pos);
                kept_params.push(t);
            }
        }
    }
    if c.closed() && verts.len() > 1 {
        let d = vecn::dist(&verts[0], verts.last().unwrap());
        if d <= tol {
            verts.pop();
            kept_params.pop();
        }
    }
    params = kept_params;
    if verts.len() < 2 {
        return Err(Error::InvalidPolygonal(
            "degenerate curve: all sampled vertices coincide".into(),
        ));
    }
    let (polygonal, _) = Polygonal::new(&verts, c.closed(), 0.0)?;
    Ok(Inscription {
        polygonal,
        params,
        scheme,
        chord,
        partial_last,
    })
}

/// Vertices at `n + 1` equispaced parameters (`n` for closed curves, the
/// duplicate seam vertex dropped).
pub fn inscribe_uniform(c: &CurveEvaluator, n: usize) -> Result<Inscription> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "uniform inscription needs n >= 2, got {n}"
        )));
    }
    let (a, b) = c.domain();
    let params: Vec<f64> = (0..=n)
        .map(|k| a + (b - a) * (k as f64) / (n as f64))
        .collect();
    build_inscription(c, params, Scheme::Uniform, None, false)
}

/// First parameter in `(after, limit]` where the chord from `base` reaches
/// `chord`, found by marching with a step that cannot skip a crossing and
/// bisecting the bracket.
fn first_crossing(
    c: &CurveEvaluator,
    base: &[f64],
    after: f64,
    limit: f64,
    chord: f64,
    step: f64,
) -> Result<Option<f64>> {
    let g = |t: f64| vecn::dist(&c.position(t), base) - chord;
    let mut lo = after;
    let mut glo = g(lo);
    if glo >= 0.0 {
        // Marching from the previous vertex keeps g < 0; a non-negative start
        // means the caller's step control failed.
        return Err(Error::RootFind(format!(
            "chord already reached at bracket start t = {lo}"
        )));
    }
    let mut hi;
    loop {
        hi = (lo + step).min(limit);
        let ghi = g(hi);
        if ghi >= 0.0 {
            break;
        }
        if hi >= limit {
            return Ok(None);
        }
        lo = hi;
        glo = ghi;
    }
    debug_assert!(glo < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(hi))
}

/// Greedy equal-chord inscription: iterates the first-crossing construction
/// until the curve runs out. A final partial edge (shorter than the chord) is
/// kept in the polygonal but flagged. For closed curves the final partial
/// edge is the seam.
pub fn inscribe_equilateral_greedy(c: &CurveEvaluator, chord: f64) -> Result<Inscription> {
    if !(chord > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "chord must be positive, got {chord}"
        )));
    }
    if chord >= c.diameter_estimate() {
        return Err(Error::InvalidArgument(format!(
            "chord {chord} is not smaller than the curve diameter"
        )));
    }
    let (a, b) = c.domain();
    let step = chord / (2.0 * c.max_speed());
    let mut params = vec![a];
    let mut partial = false;
    let budget = ((b - a) / step) as usize + 16;
    loop {
        if params.len() > budget {
            return Err(Error::RootFind(
                "greedy inscription exceeded its vertex budget".into(),
            ));
        }
        let base_t = *params.last().unwrap();
        let base = c.position(base_t);
        match first_crossing(c, &base, base_t, b, chord, step)? {
            Some(t) => params.push(t),
            None => {
                // No crossing before the end of the domain: the trailing
                // chord is either a full chord landing on the endpoint (up to
                // root tolerance), a shorter partial edge, or nothing.
                let end_gap = vecn::dist(&c.position(b), &base);
                if end_gap > 1e-12 * (1.0 + chord) {
                    params.push(b);
                    if (end_gap - chord).abs() > 1e-9 * (1.0 + chord) {
                        partial = true;
                    }
                }
                break;
            }
        }
        if *params.last().unwrap() >= b {
            break;
        }
    }
    // For closed curves a flagged partial edge is the seam chord.
    build_inscription(c, params, Scheme::EquilateralGreedy, Some(chord), partial)
}

/// Runs the greedy construction for exactly `n` chords and reports where the
/// n-th vertex lands (or that the curve ended first).
fn landing(c: &CurveEvaluator, chord: f64, n: usize) -> Result<Option<f64>> {
    let (a, b) = c.domain();
    let step = chord / (2.0 * c.max_speed());
    let mut t = a;
    for _ in 0..n {
        let base = c.position(t);
        match first_crossing(c, &base, t, b, chord, step)? {
            Some(next) => t = next,
            None => return Ok(None),
        }
    }
    Ok(Some(t))
}

/// Equilateral inscription with exactly `n` edges ending at the curve
/// endpoint: an outer bisection over the chord length drives the greedy
/// landing point onto the end of the domain.
///
/// For closed curves the n-th chord closes the polygonal, so the seam edge is
/// certified equilateral as well.
pub fn inscribe_equilateral_exact(c: &CurveEvaluator, n: usize) -> Result<Inscription> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "equilateral inscription needs n >= 2, got {n}"
        )));
    }
    let (a, b) = c.domain();
    let diam = c.diameter_estimate();
    let mut lo = 1e-9 * diam / (n as f64);
    let mut hi = 0.999 * diam;
    // Landing gap as a monotone function of the chord: Some(t) with t < b
    // means undershoot, None (curve exhausted) means overshoot.
    let gap = |chord: f64| -> Result<f64> {
        match landing(c, chord, n)? {
            Some(t) => Ok(t - b),
            None => Ok(f64::INFINITY),
        }
    };
    if gap(lo)? > 0.0 {
        return Err(Error::RootFind(
            "failed to bracket the equilateral chord from below".into(),
        ));
    }
    let mut iters = 0;
    while gap(hi)? <= 0.0 {
        hi *= 1.5;
        iters += 1;
        if iters > 60 {
            return Err(Error::RootFind(
                "failed to bracket the equilateral chord from above".into(),
            ));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gap(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * (1.0 + hi) {
            break;
        }
    }
    let chord = 0.5 * (lo + hi);

    // Rebuild the greedy parameters at the solved chord and snap the landing
    // vertex onto the domain end.
    let step = chord / (2.0 * c.max_speed());
    let mut params = vec![a];
    for _ in 0..n {
        let base_t = *params.last().unwrap();
        let base = c.position(base_t);
        match first_crossing(c, &base, base_t, b, chord, step)? {
            Some(t) => params.push(t),
            None => params.push(b),
        }
    }
    *params.last_mut().unwrap() = b;
    let insc = build_inscription(c, params, Scheme::EquilateralExact, Some(chord), false)?;

    // Certificate: every edge (seam included for closed curves) matches the
    // chord.
    let tol = 1e-10 * (1.0 + chord);
    for (i, len) in insc.polygonal.edge_lengths().into_iter().enumerate() {
        if (len - chord).abs() > tol {
            return Err(Error::RootFind(format!(
                "equilateral certificate failed at edge {i}: |{len} - {chord}| > {tol}"
            )));
        }
    }
    Ok(insc)
}

/// One refinement step: an inscription and its sampled modulus.
#[derive(Debug, Clone)]
pub struct RefinementStep {
    pub inscription: Inscription,
    pub modulus: f64,
}

/// A refinement sequence with its modulus-monotonicity certificate.
#[derive(Debug, Clone)]
pub struct RefinementSequence {
    pub steps: Vec<RefinementStep>,
    /// Strictly decreasing moduli along the sequence; a failed certificate is
    /// a warning, not an error.
    pub modulus_decreasing: bool,
}

/// Builds one inscription per count and certifies that the moduli decrease.
/// Greedy counts are translated to a chord of `length / n`.
pub fn refinement_sequence(
    c: &CurveEvaluator,
    scheme: Scheme,
    counts: &[usize],
    modulus_resolution: usize,
) -> Result<RefinementSequence> {
    if counts.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "counts must be strictly increasing".into(),
        ));
    }
    let mut steps = Vec::with_capacity(counts.len());
    for &n in counts {
        let insc = match scheme {
            Scheme::Uniform => inscribe_uniform(c, n)?,
            Scheme::EquilateralExact => inscribe_equilateral_exact(c, n)?,
            Scheme::EquilateralGreedy => {
                let len = c.arclength(1e-9)?;
                inscribe_equilateral_greedy(c, len / (n as f64))?
            }
        };
        let mu = modulus(&insc.polygonal, c, &insc.params, modulus_resolution)?;
        steps.push(RefinementStep {
            inscription: insc,
            modulus: mu,
        });
    }
    let modulus_decreasing = steps.windows(2).all(|w| w[1].modulus < w[0].modulus);
    Ok(RefinementSequence {
        steps,
        modulus_decreasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{make_curve, CurveSpec};
    use std::f64::consts::PI;

    #[test]
    fn uniform_circle_four_is_inscribed_square() {
        let c = make_curve(&CurveSpec::Circle { r: 1.0 }).unwrap();
        let insc = inscribe_uniform(&c, 4).unwrap();
        assert!(insc.polygonal.is_closed());
        assert_eq!(insc.polygonal.vertex_count(), 4);
        for len in insc.polygonal.edge_lengths() {
            assert!((len - 2.0f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn uniform_line_and_corner() {
        let c = make_curve(&CurveSpec::Line { length: 1.0 }).unwrap();
        let insc = inscribe_uniform(&c, 3).unwrap();
        assert_eq!(insc.polygonal.vertex_count(), 4);
        assert_eq!(insc.polygonal.rotation(), 0.0);

        let k = make_curve(&CurveSpec::Corner {
            theta: PI / 2.0,
            arm: 1.0,
        })
        .unwrap();
        let insc = inscribe_uniform(&k, 2).unwrap();
        assert_eq!(insc.polygonal.vertex_count(), 3);
        assert!(vecn::dist(insc.polygonal.vertex(1), &[0.0, 0.0]) < 1e-14);
    }

    #[test]
    fn greedy_on_circle_gives_regular_spacing() {
        let c = make_curve(&CurveSpec::Circle { r: 1.0 }).unwrap();
        let n = 7usize;
        let chord = 2.0 * (PI / n as f64).sin();
        let insc = inscribe_equilateral_greedy(&c, chord).unwrap();
        assert!(!insc.partial_last, "chord divides the circle exactly");
        assert_eq!(insc.polygonal.vertex_count(), n);
        for (i, &t) in insc.params.iter().enumerate() {
            assert!(
                (t - 2.0 * PI * (i as f64) / (n as f64)).abs() < 1e-9,
                "t_{i} = {t}"
            );
        }
    }

    #[test]
    fn greedy_on_line_gives_unit_spacing() {
        let c = make_curve(&CurveSpec::Line { length: 5.0 }).unwrap();
        let insc = inscribe_equilateral_greedy(&c, 1.0).unwrap();
        assert_eq!(insc.polygonal.vertex_count(), 6);
        assert!(!insc.partial_last);
        for (i, &t) in insc.params.iter().enumerate() {
            assert!((t - i as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn greedy_ellipse_certifies_chord_lengths() {
        let c = make_curve(&CurveSpec::Ellipse { a: 2.0, b: 1.0 }).unwrap();
        let insc = inscribe_equilateral_greedy(&c, 0.1).unwrap();
        let lens = insc.polygonal.edge_lengths();
        let m = lens.len();
        for (i, len) in lens.into_iter().enumerate() {
            if i + 1 == m && insc.partial_last {
                assert!(len <= 0.1 + 1e-10);
            } else {
                assert!((len - 0.1).abs() < 1e-10, "edge {i}: {len}");
            }
        }
    }

    #[test]
    fn greedy_rejects_oversized_chord() {
        let c = make_curve(&CurveSpec::Circle { r: 1.0 }).unwrap();
        assert!(inscribe_equilateral_greedy(&c, 2.5).is_err());
    }

    #[test]
    fn exact_on_open_circle_arc_recovers_hexagon_chord() {
        let c = make_curve(&CurveSpec::Circle { r: 1.0 })
            .unwrap()
            .into_open();
        let insc = inscribe_equilateral_exact(&c, 6).unwrap();
        assert!((insc.chord.unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(insc.polygonal.vertex_count(), 7);
    }

    #[test]
    fn exact_on_line_quarters() {
        let c = make_curve(&CurveSpec::Line { length: 1.0 }).unwrap();
        let insc = inscribe_equilateral_exact(&c, 4).unwrap();
        assert!((insc.chord.unwrap() - 0.25).abs() < 1e-10);
    }

    #[test]
    fn exact_on_corner_balances_the_two_chords() {
        let c = make_curve(&CurveSpec::Corner {
            theta: PI / 2.0,
            arm: 1.0,
        })
        .unwrap();
        let insc = inscribe_equilateral_exact(&c, 2).unwrap();
        let lens = insc.polygonal.edge_lengths();
        assert!((lens[0] - lens[1]).abs() < 1e-10);
        // Equal chords from the arm endpoints meet exactly at the corner.
        assert!((insc.chord.unwrap() - 1.0).abs() < 1e-9);
        assert!(vecn::dist(insc.polygonal.vertex(1), &[0.0, 0.0]) < 1e-9);
    }

    #[test]
    fn exact_on_closed_circle_gives_regular_ngon() {
        let c = make_curve(&CurveSpec::Circle { r: 1.0 }).unwrap();
        for n in [5usize, 12] {
            let insc = inscribe_equilateral_exact(&c, n).unwrap();
            assert!(insc.polygonal.is_closed());
            assert_eq!(insc.polygonal.vertex_count(), n);
            let want = 2.0 * (PI / n as f64).sin();
            assert!(
                (insc.chord.unwrap() - want).abs() < 1e-10,
                "n={n}: {} vs {want}",
                insc.chord.unwrap()
            );
        }
    }

    #[test]
    fn refinement_circle_moduli_match_chords() {
        let c = make_curve(&CurveSpec::Circle { r: 1.0 }).unwrap();
        let seq = refinement_sequence(&c, Scheme::Uniform, &[4, 8, 16], 600).unwrap();
        assert!(seq.modulus_decreasing);
        for (step, n) in seq.steps.iter().zip([4usize, 8, 16]) {
            let want = 2.0 * (PI / n as f64).sin();
            assert!(
                (step.modulus - want).abs() < 1e-9,
                "n={n}: {} vs {want}",
                step.modulus
            );
        }
    }

    #[test]
    fn refinement_line_moduli_halve() {
        let c = make_curve(&CurveSpec::Line { length: 1.0 }).unwrap();
        let seq = refinement_sequence(&c, Scheme::Uniform, &[2, 4], 64).unwrap();
        assert!((seq.steps[0].modulus - 0.5).abs() < 1e-12);
        assert!((seq.steps[1].modulus - 0.25).abs() < 1e-12);
    }

    #[test]
    fn refinement_cantor_moduli_strictly_decrease() {
        let c = make_curve(&CurveSpec::CantorVitali { level: 4 }).unwrap();
        let seq = refinement_sequence(&c, Scheme::Uniform, &[64, 128, 256], 65).unwrap();
        assert!(seq.modulus_decreasing);
    }

    #[test]
    fn refinement_rejects_non_increasing_counts() {
        let c = make_curve(&CurveSpec::Line { length: 1.0 }).unwrap();
        assert!(refinement_sequence(&c, Scheme::Uniform, &[8, 8], 64).is_err());
    }

    #[test]
    fn greedy_spacing_respects_chord_over_speed_bound() {
        // Chord <= arc, so parameter gaps are at least chord / max speed.
        for spec in [
            CurveSpec::Circle { r: 1.0 },
            CurveSpec::Ellipse { a: 2.0, b: 1.0 },
            CurveSpec::Helix {
                r: 1.0,
                pitch: 0.5,
            },
        ] {
            let c = make_curve(&spec).unwrap();
            let insc = inscribe_equilateral_greedy(&c, 0.2).unwrap();
            let bound = 0.2 / c.max_speed();
            let m = insc.params.len();
            for (i, w) in insc.params.windows(2).enumerate() {
                if i + 2 == m && insc.partial_last {
                    continue;
                }
                assert!(
                    w[1] - w[0] >= bound * (1.0 - 1e-9),
                    "{spec:?}: gap {} below {bound}",
                    w[1] - w[0]
                );
            }
        }
    }

    #[test]
    fn inscribed_vertices_lie_on_the_curve() {
        let c = make_curve(&CurveSpec::Ellipse { a: 2.0, b: 1.0 }).unwrap();
        let insc = inscribe_equilateral_exact(&c, 9).unwrap();
        for (i, &t) in insc.params.iter().enumerate() {
            assert!(vecn::dist(&c.position(t), insc.polygonal.vertex(i)) <= 1e-10);
        }
    }

    /// Angle estimate on real inscriptions: with sigma the spacing-ratio
    /// excess of the wider interval over the narrower, the chord directions
    /// satisfy |u_wide - (1+sigma) u_narrow|^2 >= 2 (1 - cos theta).
    #[test]
    fn angle_estimate_holds_on_equilateral_inscriptions() {
        for spec in [
            CurveSpec::Circle { r: 1.0 },
            CurveSpec::Ellipse { a: 2.0, b: 1.0 },
            CurveSpec::Helix {
                r: 1.0,
                pitch: 0.5,
            },
        ] {
            let c = make_curve(&spec).unwrap();
            let insc = inscribe_equilateral_greedy(&c, 0.15).unwrap();
            let p = &insc.polygonal;
            let angles = p.turning_angles().angles;
            let last_certified = if insc.partial_last {
                p.edge_count() - 1
            } else {
                p.edge_count()
            };
            for j in 0..angles.len().min(last_certified.saturating_sub(1)) {
                let dt_prev = insc.params[j + 1] - insc.params[j];
                let dt_next = insc.params[j + 2] - insc.params[j + 1];
                let u_prev = vecn::unit(&p.edge(j)).unwrap();
                let u_next = vecn::unit(&p.edge(j + 1)).unwrap();
                let (sigma, scaled, other) = if dt_next >= dt_prev {
                    (dt_next / dt_prev - 1.0, u_prev, u_next)
                } else {
                    (dt_prev / dt_next - 1.0, u_next, u_prev)
                };
                let diff = vecn::axpy(&other, -(1.0 + sigma), &scaled);
                let lhs = vecn::dot(&diff, &diff);
                let rhs = 2.0 * (1.0 - angles[j].cos());
                assert!(
                    lhs >= rhs - 1e-12,
                    "{spec:?} vertex {}: {lhs} < {rhs}",
                    j + 1
                );
            }
        }
    }

    #[test]
    fn sidecar_round_trip() {
        let c = make_curve(&CurveSpec::Line { length: 1.0 }).unwrap();
        let insc = inscribe_equilateral_exact(&c, 4).unwrap();
        let text = insc.sidecar_json();
        let sc = Inscription::sidecar_from_json(&text).unwrap();
        assert_eq!(sc.params, insc.params);
        assert_eq!(sc.scheme, Scheme::EquilateralExact);
        assert_eq!(sc.chord, insc.chord);
    }
}
