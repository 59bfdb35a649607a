//! The arc-segment smoothing of a polygonal and the energies built on it.
//!
//! Every vertex with turning angle `theta < pi` is replaced by a circular arc
//! tangent to the two incident edges at distance `r/2` from the vertex, where
//! `r` is the shorter incident edge length; arcs are chained by straight
//! connector segments. The resulting curve has piecewise-constant scalar
//! curvature, and integrating its p-th power yields the p-rotation of the
//! polygonal.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::polyline::Polygonal;
use crate::vecn;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceKind {
    Arc,
    Segment,
}

/// One piece of an arc-segment curve: a circular arc or a straight segment,
/// described by its start point, unit start tangent, length and scalar
/// curvature. Arcs also carry the in-plane unit normal (orthogonal to the
/// tangent, pointing to the turning side) that spans the arc's plane.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePiece {
    pub kind: PieceKind,
    pub start: Vec<f64>,
    pub tangent: Vec<f64>,
    pub normal: Option<Vec<f64>>,
    pub length: f64,
    pub curvature: f64,
}

impl CurvePiece {
    fn segment(start: Vec<f64>, tangent: Vec<f64>, length: f64) -> Self {
        CurvePiece {
            kind: PieceKind::Segment,
            start,
            tangent,
            normal: None,
            length,
            curvature: 0.0,
        }
    }

    /// Point at arc length `s in [0, length]` along the piece.
    pub fn point_at(&self, s: f64) -> Vec<f64> {
        match self.kind {
            PieceKind::Segment => vecn::axpy(&self.start, s, &self.tangent),
            PieceKind::Arc => {
                let rho = 1.0 / self.curvature;
                let phi = s * self.curvature;
                let n = self.normal.as_ref().expect("arc carries a normal");
                let mut p = self.start.clone();
                for i in 0..p.len() {
                    p[i] += rho * (phi.sin() * self.tangent[i] + (1.0 - phi.cos()) * n[i]);
                }
                p
            }
        }
    }

    /// Unit tangent at arc length `s` along the piece.
    pub fn tangent_at(&self, s: f64) -> Vec<f64> {
        match self.kind {
            PieceKind::Segment => self.tangent.clone(),
            PieceKind::Arc => {
                let phi = s * self.curvature;
                let n = self.normal.as_ref().expect("arc carries a normal");
                vecn::lincomb(phi.cos(), &self.tangent, phi.sin(), n)
            }
        }
    }

    pub fn end_point(&self) -> Vec<f64> {
        self.point_at(self.length)
    }

    pub fn end_tangent(&self) -> Vec<f64> {
        self.tangent_at(self.length)
    }

    /// Total turn of the piece (`length * curvature`; zero for segments).
    pub fn turning(&self) -> f64 {
        self.length * self.curvature
    }
}

/// G1 chain of arcs and segments with cached total length.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcSegmentCurve {
    pieces: Vec<CurvePiece>,
    total_length: f64,
}

impl ArcSegmentCurve {
    pub fn pieces(&self) -> &[CurvePiece] {
        &self.pieces
    }

    pub fn total_length(&self) -> f64 {
        self.total_length
    }

    /// Point at arc length `s in [0, total_length]`.
    pub fn sample(&self, s: f64) -> Result<Vec<f64>> {
        let slack = 1e-12 * (1.0 + self.total_length);
        if s < -slack || s > self.total_length + slack {
            return Err(Error::OutOfRange(format!(
                "arc length {s} outside [0, {}]",
                self.total_length
            )));
        }
        let mut remaining = s.clamp(0.0, self.total_length);
        for piece in &self.pieces {
            if remaining <= piece.length {
                return Ok(piece.point_at(remaining));
            }
            remaining -= piece.length;
        }
        match self.pieces.last() {
            Some(last) => Ok(last.end_point()),
            None => Err(Error::OutOfRange("empty curve".into())),
        }
    }

    /// Worst G1 defect across the joins: maximum end-point/start-point
    /// distance and maximum tangent mismatch (including the closing join for
    /// closed chains, detected by the last end meeting the first start).
    pub fn g1_defect(&self) -> (f64, f64) {
        let mut worst_pos = 0.0f64;
        let mut worst_tan = 0.0f64;
        for w in self.pieces.windows(2) {
            worst_pos = worst_pos.max(vecn::dist(&w[0].end_point(), &w[1].start));
            worst_tan = worst_tan.max(vecn::dist(&w[0].end_tangent(), &w[1].tangent));
        }
        (worst_pos, worst_tan)
    }

    pub fn to_json(&self) -> String {
        let file = ArcSegmentFile {
            pieces: self
                .pieces
                .iter()
                .map(|p| PieceRecord {
                    kind: p.kind,
                    start: p.start.clone(),
                    tangent: p.tangent.clone(),
                    normal: p.normal.clone(),
                    length: p.length,
                    curvature: p.curvature,
                })
                .collect(),
            total_length: self.total_length,
        };
        serde_json::to_string_pretty(&file).expect("arc curve serialization cannot fail")
    }
}

#[derive(Serialize, Deserialize)]
struct PieceRecord {
    kind: PieceKind,
    start: Vec<f64>,
    tangent: Vec<f64>,
    normal: Option<Vec<f64>>,
    length: f64,
    curvature: f64,
}

#[derive(Serialize, Deserialize)]
struct ArcSegmentFile {
    pieces: Vec<PieceRecord>,
    total_length: f64,
}

/// Piecewise-constant curvature as ordered `(length, curvature)` spans.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureProfile {
    pub spans: Vec<(f64, f64)>,
}

impl CurvatureProfile {
    pub fn total_length(&self) -> f64 {
        self.spans.iter().map(|s| s.0).sum()
    }

    /// `int kappa^p ds` over the profile.
    pub fn integral_kappa_p(&self, p: f64) -> f64 {
        self.spans
            .iter()
            .map(|&(len, k)| if k == 0.0 { 0.0 } else { len * k.powf(p) })
            .sum()
    }

    /// CSV emission with header `length,curvature`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("length,curvature\n");
        for &(len, k) in &self.spans {
            out.push_str(&format!("{len},{k}\n"));
        }
        out
    }
}

/// Options for [`build_gamma_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct GammaOptions {
    /// Open polygonals only: also emit the first and last half-edges as
    /// segments, so the smoothing spans the full polygonal. Energy-invariant
    /// (the added pieces have zero curvature).
    pub include_terminal_segments: bool,
}

/// Builds the arc-segment smoothing with default options: open polygonals
/// start at the first tangency point and end at the last one.
pub fn build_gamma(p: &Polygonal) -> Result<ArcSegmentCurve> {
    build_gamma_with(p, GammaOptions::default())
}

pub fn build_gamma_with(p: &Polygonal, opts: GammaOptions) -> Result<ArcSegmentCurve> {
    let angles = p.turning_angles().angles;
    if let Some(idx) = angles.iter().position(|&t| t >= PI) {
        return Err(Error::Cusp { index: idx });
    }
    let lens = p.edge_lengths();
    let n_edges = p.edge_count();
    let nv = p.vertex_count();

    // Unit edge directions.
    let dirs: Vec<Vec<f64>> = (0..n_edges)
        .map(|i| vecn::scale(&p.edge(i), 1.0 / lens[i]))
        .collect();

    let mut pieces: Vec<CurvePiece> = Vec::new();
    let drop_tol = 1e-12 * (1.0 + p.coord_scale());
    let push_segment = |pieces: &mut Vec<CurvePiece>, start: Vec<f64>, dir: &[f64], len: f64| {
        if len > drop_tol {
            pieces.push(CurvePiece::segment(start, dir.to_vec(), len));
        }
    };

    // Arc (or degenerate straight piece) replacing vertex `v` between unit
    // directions `din` and `dout`, with tangency offset `half = r/2`.
    let vertex_piece = |v: &[f64], din: &[f64], dout: &[f64], theta: f64, half: f64| -> CurvePiece {
        let start = vecn::axpy(v, -half, din);
        let kappa = (theta / 2.0).tan() / half;
        if kappa == 0.0 {
            // Collinear edges: the tangency points are joined by a straight
            // piece through the vertex.
            CurvePiece::segment(start, din.to_vec(), 2.0 * half)
        } else {
            // In-plane unit normal on the turning side.
            let rej = vecn::reject(dout, din);
            let normal = vecn::unit(&rej).expect("theta in (0, pi) gives a nonzero rejection");
            CurvePiece {
                kind: PieceKind::Arc,
                start,
                tangent: din.to_vec(),
                normal: Some(normal),
                length: theta / kappa,
                curvature: kappa,
            }
        }
    };

    if p.is_closed() {
        // One arc per vertex and one connector per edge, starting at the
        // tangency point entering vertex 0 and wrapping around.
        let n = nv;
        let halves: Vec<f64> = (0..n)
            .map(|j| 0.5 * lens[(j + n - 1) % n].min(lens[j]))
            .collect();
        for j in 0..n {
            let din = &dirs[(j + n - 1) % n];
            let dout = &dirs[j];
            // Closed turning angles are indexed so that angle j sits between
            // edges j and j+1; the angle at vertex j is angle (j-1) mod n.
            let theta = angles[(j + n - 1) % n];
            pieces.push(vertex_piece(p.vertex(j), din, dout, theta, halves[j]));
            // Connector along edge j to the tangency point of vertex j+1.
            let seg_len = lens[j] - halves[j] - halves[(j + 1) % n];
            let seg_start = vecn::axpy(p.vertex(j), halves[j], dout);
            push_segment(&mut pieces, seg_start, dout, seg_len);
        }
    } else {
        if n_edges == 1 {
            // No interior vertex to smooth: the curve is the edge itself.
            pieces.push(CurvePiece::segment(
                p.vertex(0).to_vec(),
                dirs[0].clone(),
                lens[0],
            ));
        } else {
            let halves: Vec<f64> = (1..nv - 1)
                .map(|j| 0.5 * lens[j - 1].min(lens[j]))
                .collect();
            if opts.include_terminal_segments {
                let len = lens[0] - halves[0];
                push_segment(&mut pieces, p.vertex(0).to_vec(), &dirs[0], len);
            }
            for j in 1..nv - 1 {
                let theta = angles[j - 1];
                let half = halves[j - 1];
                pieces.push(vertex_piece(p.vertex(j), &dirs[j - 1], &dirs[j], theta, half));
                if j + 1 < nv - 1 {
                    let seg_len = lens[j] - half - halves[j];
                    let seg_start = vecn::axpy(p.vertex(j), half, &dirs[j]);
                    push_segment(&mut pieces, seg_start, &dirs[j], seg_len);
                }
            }
            if opts.include_terminal_segments {
                let half = halves[nv - 3];
                let len = lens[n_edges - 1] - half;
                let start = vecn::axpy(p.vertex(nv - 2), half, &dirs[n_edges - 1]);
                push_segment(&mut pieces, start, &dirs[n_edges - 1], len);
            }
        }
    }

    let total_length = pieces.iter().map(|q| q.length).sum();
    Ok(ArcSegmentCurve {
        pieces,
        total_length,
    })
}

/// Extracts the piecewise-constant curvature spans of a smoothing, one per
/// piece in order.
pub fn curvature_profile(gamma: &ArcSegmentCurve) -> CurvatureProfile {
    CurvatureProfile {
        spans: gamma
            .pieces
            .iter()
            .map(|p| (p.length, p.curvature))
            .collect(),
    }
}

/// Energy value extended with the infinite case (cusp vertices under `p > 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Energy {
    Finite(f64),
    Infinite,
}

impl Energy {
    pub fn is_finite(self) -> bool {
        matches!(self, Energy::Finite(_))
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Energy::Finite(v) => v,
            Energy::Infinite => f64::INFINITY,
        }
    }
}

/// The p-rotation `k_p(P)`: the p-energy of the smoothing, integrated from
/// its curvature profile.
///
/// A turning angle of exactly `pi` forces `+inf` for `p > 1`; for `p = 1` the
/// result is the rotation of the polygonal.
pub fn p_rotation(p: &Polygonal, exponent: f64) -> Result<Energy> {
    if !(exponent >= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "p-rotation exponent must be >= 1, got {exponent}"
        )));
    }
    let angles = p.turning_angles();
    if angles.angles.iter().any(|&t| t >= PI) {
        if exponent > 1.0 {
            return Ok(Energy::Infinite);
        }
        return Ok(Energy::Finite(angles.sum()));
    }
    let gamma = build_gamma(p)?;
    let profile = curvature_profile(&gamma);
    Ok(Energy::Finite(profile.integral_kappa_p(exponent)))
}

/// Density of the generalized rotations:
/// `f_{p,alpha}(theta) = 2^alpha theta^(1-alpha) tan(theta/2)^(p-1+alpha)`.
pub fn generalized_density(theta: f64, p: f64, alpha: f64) -> f64 {
    if theta == 0.0 {
        return 0.0;
    }
    2.0f64.powf(alpha) * theta.powf(1.0 - alpha) * (theta / 2.0).tan().powf(p - 1.0 + alpha)
}

/// Generalized rotation `k_{p,alpha}(P) = sum (r_i/2)^(1-p) f_{p,alpha}(theta_i)`.
///
/// The `(r_i/2)^(1-p)` weight makes `alpha = 0` coincide with the p-rotation
/// exactly; `alpha = 1-p` then yields `sum theta_i^p / r_i^(p-1)`, which is
/// `2^(1-p)` times [`kstar_rotation`].
pub fn generalized_rotation(p: &Polygonal, exponent: f64, alpha: f64) -> Result<Energy> {
    if !(exponent > 1.0) {
        return Err(Error::InvalidArgument(format!(
            "generalized rotation requires p > 1, got {exponent}"
        )));
    }
    if alpha < 1.0 - exponent {
        return Err(Error::InvalidArgument(format!(
            "alpha must be >= 1 - p (got alpha = {alpha}, p = {exponent})"
        )));
    }
    let angles = p.turning_angles().angles;
    if let Some(idx) = angles.iter().position(|&t| t >= PI) {
        return Err(Error::Cusp { index: idx });
    }
    let mut sum = 0.0;
    for (j, &theta) in angles.iter().enumerate() {
        let half = 0.5 * p.min_adjacent_edge(j);
        sum += half.powf(1.0 - exponent) * generalized_density(theta, exponent, alpha);
    }
    Ok(Energy::Finite(sum))
}

/// The vertex-concentrated discrete curvature
/// `k*_p(P) = sum theta_i^p / (r_i/2)^(p-1)`, with `r_i` the shorter edge at
/// vertex `i`. For `p = 1` this is the rotation.
pub fn kstar_rotation(p: &Polygonal, exponent: f64) -> Result<Energy> {
    if !(exponent >= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "exponent must be >= 1, got {exponent}"
        )));
    }
    let angles = p.turning_angles().angles;
    let mut sum = 0.0;
    for (j, &theta) in angles.iter().enumerate() {
        if theta == 0.0 {
            continue;
        }
        let half = 0.5 * p.min_adjacent_edge(j);
        sum += theta.powf(exponent) / half.powf(exponent - 1.0);
    }
    Ok(Energy::Finite(sum))
}
