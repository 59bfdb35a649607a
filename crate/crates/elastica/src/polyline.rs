//! Polygonal curves and their first-order discrete geometry: edge lengths,
//! turning angles, rotation, length, modulus relative to a curve, and the
//! discrete Fréchet distance.

use serde::{Deserialize, Serialize};

use crate::curves::CurveEvaluator;
use crate::error::{Error, Result};
use crate::vecn;

/// An ordered list of vertices in `R^d` with an open/closed flag.
///
/// Vertices are stored flat (`d` coordinates per vertex). Construction via
/// [`Polygonal::new`] guarantees a uniform dimension `d >= 2`, finite
/// coordinates, and non-degenerate consecutive edges (for closed polygonals
/// the seam edge included).
#[derive(Debug, Clone, PartialEq)]
pub struct Polygonal {
    coords: Vec<f64>,
    dim: usize,
    closed: bool,
}

/// Turning angles of a polygonal, one per interior vertex (open) or per
/// vertex (closed), each in `[0, pi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TurningData {
    pub angles: Vec<f64>,
}

impl TurningData {
    pub fn sum(&self) -> f64 {
        self.angles.iter().sum()
    }
}

impl Polygonal {
    /// Validates raw vertices and builds a polygonal.
    ///
    /// Consecutive vertices closer than `tolerance` are collapsed (for closed
    /// polygonals the last vertex is also collapsed onto the first); the
    /// second return value is the number of collapsed vertices. Fails on
    /// fewer than 2 distinct vertices, mixed dimensions, dimension below 2,
    /// or non-finite coordinates.
    pub fn new(raw: &[Vec<f64>], closed: bool, tolerance: f64) -> Result<(Polygonal, usize)> {
        if raw.len() < 2 {
            return Err(Error::InvalidPolygonal(format!(
                "fewer than 2 vertices (got {})",
                raw.len()
            )));
        }
        let dim = raw[0].len();
        if dim < 2 {
            return Err(Error::InvalidPolygonal(format!(
                "dimension must be at least 2 (got {dim})"
            )));
        }
        for (i, v) in raw.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch(dim, v.len()));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidPolygonal(format!(
                    "non-finite coordinate at vertex {i}"
                )));
            }
        }

        let mut kept: Vec<&Vec<f64>> = Vec::with_capacity(raw.len());
        let mut collapsed = 0usize;
        for v in raw {
            match kept.last() {
                Some(prev) if vecn::dist(prev, v) <= tolerance => collapsed += 1,
                _ => kept.push(v),
            }
        }
        if closed && kept.len() > 1 && vecn::dist(kept[0], kept[kept.len() - 1]) <= tolerance {
            kept.pop();
            collapsed += 1;
        }
        if kept.len() < 2 {
            return Err(Error::InvalidPolygonal(
                "fewer than 2 distinct vertices after collapsing duplicates".into(),
            ));
        }

        let mut coords = Vec::with_capacity(kept.len() * dim);
        for v in kept {
            coords.extend_from_slice(v);
        }
        Ok((
            Polygonal {
                coords,
                dim,
                closed,
            },
            collapsed,
        ))
    }

    /// Builds from pre-validated flat coordinates. Only exact consecutive
    /// duplicates are rejected.
    pub fn from_flat(coords: Vec<f64>, dim: usize, closed: bool) -> Result<Polygonal> {
        if dim < 2 || coords.len() % dim != 0 {
            return Err(Error::InvalidPolygonal(
                "flat coordinate buffer does not match dimension".into(),
            ));
        }
        let verts: Vec<Vec<f64>> = coords.chunks(dim).map(|c| c.to_vec()).collect();
        Ok(Polygonal::new(&verts, closed, 0.0)?.0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn vertex(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn vertices(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks(self.dim)
    }

    /// Number of segments: `vertices - 1` when open, `vertices` when closed.
    pub fn edge_count(&self) -> usize {
        let n = self.vertex_count();
        if self.closed {
            n
        } else {
            n - 1
        }
    }

    /// Edge vector `i` (from vertex `i` to vertex `i+1`, seam wrapping for
    /// closed polygonals).
    pub fn edge(&self, i: usize) -> Vec<f64> {
        let n = self.vertex_count();
        let a = self.vertex(i % n);
        let b = self.vertex((i + 1) % n);
        vecn::sub(b, a)
    }

    pub fn edge_lengths(&self) -> Vec<f64> {
        (0..self.edge_count())
            .map(|i| {
                let n = self.vertex_count();
                vecn::dist(self.vertex(i % n), self.vertex((i + 1) % n))
            })
            .collect()
    }

    /// Total length, seam edge included for closed polygonals.
    pub fn length(&self) -> f64 {
        self.edge_lengths().iter().sum()
    }

    /// Turning angles between consecutive edges.
    ///
    /// Closed polygonals include the angle at the seam vertex, so the count
    /// equals the edge count; open polygonals have one angle per interior
    /// vertex (edge count minus one). Each angle is in `[0, pi]`, a value of
    /// exactly `pi` marking a cusp.
    pub fn turning_angles(&self) -> TurningData {
        let m = self.edge_count();
        let pairs: Vec<usize> = if self.closed {
            (0..m).collect()
        } else {
            (0..m.saturating_sub(1)).collect()
        };
        let angles = pairs
            .into_iter()
            .map(|i| {
                let a = self.edge(i);
                let b = self.edge((i + 1) % m);
                vecn::angle(&a, &b)
            })
            .collect();
        TurningData { angles }
    }

    /// Rotation `k*(P)`: the sum of the turning angles. Equals the total
    /// curvature of the polygonal.
    pub fn rotation(&self) -> f64 {
        self.turning_angles().sum()
    }

    /// Min of the two edge lengths adjacent to turning angle `j` (the `r_i`
    /// used by the arc smoothing). Indexing matches [`Self::turning_angles`].
    pub fn min_adjacent_edge(&self, j: usize) -> f64 {
        let lens = self.edge_lengths();
        let m = lens.len();
        if self.closed {
            lens[j].min(lens[(j + 1) % m])
        } else {
            lens[j].min(lens[j + 1])
        }
    }

    /// Largest coordinate magnitude; a scale for absolute tolerances.
    pub fn coord_scale(&self) -> f64 {
        self.coords.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    // --- JSON file format ------------------------------------------------

    pub fn to_json(&self) -> String {
        let file = PolygonalFile {
            dimension: self.dim,
            closed: self.closed,
            vertices: self.vertices().map(|v| v.to_vec()).collect(),
        };
        serde_json::to_string_pretty(&file).expect("polygonal serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Polygonal> {
        let file: PolygonalFile = serde_json::from_str(text)?;
        if file.dimension < 2 {
            return Err(Error::InvalidPolygonal(format!(
                "dimension must be at least 2 (got {})",
                file.dimension
            )));
        }
        for v in &file.vertices {
            if v.len() != file.dimension {
                return Err(Error::DimensionMismatch(file.dimension, v.len()));
            }
        }
        // Exact duplicates only; ingestion must not perturb the data.
        Ok(Polygonal::new(&file.vertices, file.closed, 0.0)?.0)
    }
}

#[derive(Serialize, Deserialize)]
struct PolygonalFile {
    dimension: usize,
    closed: bool,
    vertices: Vec<Vec<f64>>,
}

/// Discrete Fréchet distance between the vertex sequences of two polygonals:
/// the minimum over monotone couplings of the maximum pointwise distance.
///
/// Symmetric, non-negative, and an upper bound for the continuous Fréchet
/// distance between the polylines.
pub fn discrete_frechet(p: &Polygonal, q: &Polygonal) -> Result<f64> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(p.dim(), q.dim()));
    }
    let n = p.vertex_count();
    let m = q.vertex_count();
    let d = |i: usize, j: usize| vecn::dist(p.vertex(i), q.vertex(j));

    // Row-rolling DP over the coupling table.
    let mut prev = vec![0.0f64; m];
    let mut curr = vec![0.0f64; m];
    prev[0] = d(0, 0);
    for j in 1..m {
        prev[j] = prev[j - 1].max(d(0, j));
    }
    for i in 1..n {
        curr[0] = prev[0].max(d(i, 0));
        for j in 1..m {
            let reach = prev[j].min(curr[j - 1]).min(prev[j - 1]);
            curr[j] = reach.max(d(i, j));
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    Ok(prev[m - 1])
}

/// Alexandrov–Reshetnyak modulus of an inscribed polygonal, estimated by
/// dense sampling: the maximum over consecutive parameter intervals of the
/// diameter of `resolution` curve samples on the interval.
///
/// The estimate is a lower bound on the true modulus and is monotone
/// non-decreasing in `resolution` (for nested sample grids); it converges to
/// the modulus as `resolution -> inf`.
///
/// `params` must be strictly increasing with one entry per vertex; each
/// vertex must lie on the curve at its parameter. For closed polygonals the
/// seam arc from the last parameter through the domain end back to the first
/// is included.
pub fn modulus(
    p: &Polygonal,
    c: &CurveEvaluator,
    params: &[f64],
    resolution: usize,
) -> Result<f64> {
    if resolution < 2 {
        return Err(Error::InvalidArgument(
            "modulus resolution must be at least 2".into(),
        ));
    }
    if params.len() != p.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "expected one parameter per vertex ({} vs {})",
            params.len(),
            p.vertex_count()
        )));
    }
    if params.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "parameters must be strictly increasing".into(),
        ));
    }
    let (a, b) = c.domain();
    if params[0] < a - 1e-12 || *params.last().unwrap() > b + 1e-12 {
        return Err(Error::OutOfRange(
            "inscription parameters outside curve domain".into(),
        ));
    }
    let tol = 1e-8 * (1.0 + p.coord_scale());
    for (i, &t) in params.iter().enumerate() {
        let pos = c.position(t);
        if vecn::dist(&pos, p.vertex(i)) > tol {
            return Err(Error::InvalidPolygonal(format!(
                "vertex {i} is not on the curve at its parameter (offset {:.3e})",
                vecn::dist(&pos, p.vertex(i))
            )));
        }
    }

    let mut worst = 0.0f64;
    let arc_diameter = |t0: f64, t1: f64| {
        let pts: Vec<Vec<f64>> = (0..resolution)
            .map(|k| {
                let t = t0 + (t1 - t0) * (k as f64) / ((resolution - 1) as f64);
                c.position(t)
            })
            .collect();
        let mut diam = 0.0f64;
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                diam = diam.max(vecn::dist(&pts[i], &pts[j]));
            }
        }
        diam
    };
    for w in params.windows(2) {
        worst = worst.max(arc_diameter(w[0], w[1]));
    }
    if p.is_closed() {
        // Seam arc, possibly wrapping over the domain end.
        let t_last = *params.last().unwrap();
        let span = (b - t_last) + (params[0] - a);
        if span > 0.0 {
            let pts: Vec<Vec<f64>> = (0..resolution)
                .map(|k| {
                    let u = span * (k as f64) / ((resolution - 1) as f64);
                    let t = if t_last + u <= b {
                        t_last + u
                    } else {
                        a + (t_last + u - b)
                    };
                    c.position(t)
                })
                .collect();
            let mut diam = 0.0f64;
            for i in 0..pts.len() {
                for j in (i + 1)..pts.len() {
                    diam = diam.max(vecn::dist(&pts[i], &pts[j]));
                }
            }
            worst = worst.max(diam);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{make_curve, CurveSpec};
    use std::f64::consts::PI;

    fn poly(raw: &[&[f64]], closed: bool) -> Polygonal {
        let v: Vec<Vec<f64>> = raw.iter().map(|r| r.to_vec()).collect();
        Polygonal::new(&v, closed, 1e-12).unwrap().0
    }

    #[test]
    fn validate_collapses_duplicates() {
        let raw = vec![vec![0.0, 0.0], vec![0.0, 0.0], vec![1.0, 0.0]];
        let (p, collapsed) = Polygonal::new(&raw, false, 1e-12).unwrap();
        assert_eq!(collapsed, 1);
        assert_eq!(p.vertex_count(), 2);
        assert_eq!(p.vertex(1), &[1.0, 0.0]);
    }

    #[test]
    fn validate_closed_square() {
        let raw = vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ];
        let (p, collapsed) = Polygonal::new(&raw, true, 1e-12).unwrap();
        assert_eq!(collapsed, 0);
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.edge_count(), 4);
    }

    #[test]
    fn validate_rejects_single_vertex() {
        let raw = vec![vec![0.0, 0.0]];
        let err = Polygonal::new(&raw, false, 1e-12).unwrap_err();
        assert!(err.to_string().contains("fewer than 2 vertices"));
    }

    #[test]
    fn validate_rejects_mixed_dims_and_nonfinite() {
        let raw = vec![vec![0.0, 0.0], vec![1.0, 0.0, 0.0]];
        assert!(Polygonal::new(&raw, false, 0.0).is_err());
        let raw = vec![vec![0.0, 0.0], vec![f64::NAN, 0.0]];
        assert!(Polygonal::new(&raw, false, 0.0).is_err());
    }

    #[test]
    fn turning_angle_right_angle() {
        let p = poly(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0]], false);
        let th = p.turning_angles().angles;
        assert_eq!(th.len(), 1);
        assert!((th[0] - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn turning_angle_collinear_is_zero() {
        let p = poly(&[&[0.0, 0.0], &[1.0, 0.0], &[2.0, 0.0]], false);
        assert_eq!(p.turning_angles().angles, vec![0.0]);
        assert_eq!(p.rotation(), 0.0);
    }

    #[test]
    fn turning_angles_equilateral_triangle() {
        let h = 3.0f64.sqrt() / 2.0;
        let p = poly(&[&[0.0, 0.0], &[1.0, 0.0], &[0.5, h]], true);
        for th in p.turning_angles().angles {
            assert!((th - 2.0 * PI / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rotation_of_closed_square_is_two_pi() {
        let p = poly(
            &[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]],
            true,
        );
        assert!((p.rotation() - 2.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn length_square_and_segment() {
        let p = poly(
            &[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]],
            true,
        );
        assert!((p.length() - 4.0).abs() < 1e-15);
        let q = poly(&[&[0.0, 0.0], &[3.0, 4.0]], false);
        assert!((q.length() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn length_regular_ngon_matches_chord_formula() {
        for n in [3usize, 7, 32] {
            let verts: Vec<Vec<f64>> = (0..n)
                .map(|k| {
                    let t = 2.0 * PI * (k as f64) / (n as f64);
                    vec![t.cos(), t.sin()]
                })
                .collect();
            let p = Polygonal::new(&verts, true, 0.0).unwrap().0;
            let expect = (n as f64) * 2.0 * (PI / n as f64).sin();
            assert!((p.length() - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn frechet_identity_and_translation() {
        let p = poly(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0]], false);
        assert_eq!(discrete_frechet(&p, &p).unwrap(), 0.0);
        let q = poly(&[&[0.0, 0.5], &[1.0, 0.5], &[1.0, 1.5]], false);
        let d = discrete_frechet(&p, &q).unwrap();
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn frechet_dimension_mismatch() {
        let p = poly(&[&[0.0, 0.0], &[1.0, 0.0]], false);
        let q = poly(&[&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0]], false);
        assert!(discrete_frechet(&p, &q).is_err());
    }

    /// Independent oracle: the discrete Fréchet distance is always one of the
    /// pairwise vertex distances, so binary-search the sorted candidates with
    /// a monotone-path reachability check per candidate.
    fn frechet_by_reachability(p: &Polygonal, q: &Polygonal) -> f64 {
        let n = p.vertex_count();
        let m = q.vertex_count();
        let mut cands: Vec<f64> = (0..n)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .map(|(i, j)| vecn::dist(p.vertex(i), q.vertex(j)))
            .collect();
        cands.sort_by(|a, b| a.partial_cmp(b).unwrap());
        cands.dedup();
        let feasible = |eps: f64| -> bool {
            let ok = |i: usize, j: usize| vecn::dist(p.vertex(i), q.vertex(j)) <= eps;
            if !ok(0, 0) {
                return false;
            }
            let mut reach = vec![vec![false; m]; n];
            reach[0][0] = true;
            for i in 0..n {
                for j in 0..m {
                    if reach[i][j] {
                        continue;
                    }
                    if !ok(i, j) {
                        continue;
                    }
                    let from = (i > 0 && reach[i - 1][j])
                        || (j > 0 && reach[i][j - 1])
                        || (i > 0 && j > 0 && reach[i - 1][j - 1]);
                    reach[i][j] = from;
                }
            }
            reach[n - 1][m - 1]
        };
        let mut lo = 0usize;
        let mut hi = cands.len() - 1;
        while lo < hi {
            let mid = (lo + hi) / 2;
            if feasible(cands[mid]) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        cands[lo]
    }

    #[test]
    fn frechet_octagon_vs_hexadecagon_matches_reachability_oracle() {
        let gon = |n: usize| {
            let verts: Vec<Vec<f64>> = (0..n)
                .map(|k| {
                    let t = 2.0 * PI * (k as f64) / (n as f64);
                    vec![t.cos(), t.sin()]
                })
                .collect();
            Polygonal::new(&verts, false, 0.0).unwrap().0
        };
        let p = gon(8);
        let q = gon(16);
        let dp = discrete_frechet(&p, &q).unwrap();
        let oracle = frechet_by_reachability(&p, &q);
        assert!((dp - oracle).abs() < 1e-15, "dp={dp} oracle={oracle}");
        // The extreme coupling pins the value at the odd 16-gon vertices.
        assert!((dp - 2.0 * (PI / 16.0).sin()).abs() < 1e-12);
    }

    #[test]
    fn modulus_regular_ngon_on_unit_circle() {
        let c = make_curve(&CurveSpec::Circle { r: 1.0 }).unwrap();
        for n in [4usize, 16, 64] {
            let params: Vec<f64> = (0..n).map(|k| 2.0 * PI * (k as f64) / (n as f64)).collect();
            let verts: Vec<Vec<f64>> = params.iter().map(|&t| c.position(t)).collect();
            let p = Polygonal::new(&verts, true, 0.0).unwrap().0;
            let mu = modulus(&p, &c, &params, 1000).unwrap();
            let chord = 2.0 * (PI / n as f64).sin();
            assert!(
                (mu - chord).abs() < 1e-9,
                "n={n} modulus={mu} chord={chord}"
            );
        }
    }

    #[test]
    fn modulus_two_vertex_segment_is_its_length() {
        let c = make_curve(&CurveSpec::Line { length: 5.0 }).unwrap();
        let params = vec![0.0, 5.0];
        let verts = vec![c.position(0.0), c.position(5.0)];
        let p = Polygonal::new(&verts, false, 0.0).unwrap().0;
        let mu = modulus(&p, &c, &params, 64).unwrap();
        assert!((mu - 5.0).abs() < 1e-12);
    }

    #[test]
    fn modulus_rejects_off_curve_vertices_and_bad_params() {
        let c = make_curve(&CurveSpec::Circle { r: 1.0 }).unwrap();
        let params = vec![0.0, 1.0, 2.0];
        let verts = vec![vec![2.0, 0.0], c.position(1.0), c.position(2.0)];
        let p = Polygonal::new(&verts, false, 0.0).unwrap().0;
        assert!(modulus(&p, &c, &params, 64).is_err());

        let verts = vec![c.position(0.0), c.position(1.0), c.position(2.0)];
        let p = Polygonal::new(&verts, false, 0.0).unwrap().0;
        assert!(modulus(&p, &c, &[0.0, 2.0, 1.0], 64).is_err());
    }

    #[test]
    fn polygonal_json_round_trip() {
        let p = poly(
            &[&[0.0, 0.0], &[1.0, 0.25], &[1.0, 1.0], &[0.0, 1.0]],
            true,
        );
        let text = p.to_json();
        let q = Polygonal::from_json(&text).unwrap();
        assert_eq!(p, q);
    }
}
