//! Discrete elastic p-energy of polygonal curves.
//!
//! A polygonal curve can be viewed as an approximation to a smooth curve, with
//! its curvature concentrated at the vertices. This crate spreads that
//! curvature out into a smooth density: every vertex is replaced by a circular
//! arc tangent to the two incident edges at half the shorter edge length, and
//! the arcs are joined by straight segments. The p-th power of the scalar
//! curvature integrated along the resulting arc-segment curve is the
//! *p-rotation* of the polygonal; for `p = 1` it reduces to the classical
//! rotation (sum of turning angles).
//!
//! On top of that discrete energy the crate provides:
//!
//! - analytic test curves (circles, ellipses, helices, graphs, corner curves,
//!   Cantor–Vitali staircases) with exact derivatives and adaptive-quadrature
//!   energies ([`curves`]),
//! - inscription schemes producing polygonals inscribed in a curve, including
//!   the greedy equal-chord construction ([`inscribe`]),
//! - closed-form reference values for clamped minimum problems and regular
//!   polygons ([`oracles`]),
//! - an experiment runner that exhibits convergence of the p-rotation to the
//!   curve's bending energy under refinement, and its divergence at corners
//!   ([`lab`]).
//!
//! The `elastica` binary exposes the same functionality on the command line;
//! see the crate README for the file formats involved.

pub mod curves;
pub mod error;
pub mod inscribe;
pub mod lab;
pub mod oracles;
pub mod polyline;
pub mod quad;
pub mod smoothing;
pub mod vecn;

pub use curves::{make_curve, CurveEvaluator, CurveSpec, EnergyReport};
pub use error::{Error, Result};
pub use inscribe::{
    inscribe_equilateral_exact, inscribe_equilateral_greedy, inscribe_uniform,
    refinement_sequence, Inscription, Scheme,
};
pub use polyline::{discrete_frechet, modulus, Polygonal, TurningData};
pub use smoothing::{
    build_gamma, curvature_profile, generalized_rotation, kstar_rotation, p_rotation,
    ArcSegmentCurve, CurvatureProfile, CurvePiece, Energy, PieceKind,
};
