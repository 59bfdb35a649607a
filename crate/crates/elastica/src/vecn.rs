//! Small d-dimensional vector helpers over `&[f64]` slices.
//!
//! Points and directions are plain `Vec<f64>` of runtime dimension `d >= 2`;
//! these free functions keep the hot loops allocation-free.

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// `a + s*b`.
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

/// `x*a + y*b`.
pub fn lincomb(x: f64, a: &[f64], y: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(p, q)| x * p + y * q).collect()
}

pub fn unit(a: &[f64]) -> Option<Vec<f64>> {
    let n = norm(a);
    if n > 0.0 && n.is_finite() {
        Some(scale(a, 1.0 / n))
    } else {
        None
    }
}

/// Angle between two nonzero vectors, in `[0, pi]`.
///
/// Uses the half-angle form `2*atan2(|lb*a - la*b|, |lb*a + la*b|)`, which
/// stays fully accurate where `acos` of a normalized dot product loses
/// precision (nearly parallel and nearly anti-parallel inputs).
pub fn angle(a: &[f64], b: &[f64]) -> f64 {
    let la = norm(a);
    let lb = norm(b);
    let mut d2 = 0.0;
    let mut s2 = 0.0;
    for (x, y) in a.iter().zip(b) {
        let d = lb * x - la * y;
        let s = lb * x + la * y;
        d2 += d * d;
        s2 += s * s;
    }
    2.0 * d2.sqrt().atan2(s2.sqrt())
}

/// Component of `a` orthogonal to the nonzero direction `v`, i.e.
/// `a - v*(a.v)/(v.v)`.
pub fn reject(a: &[f64], v: &[f64]) -> Vec<f64> {
    let vv = dot(v, v);
    if vv == 0.0 {
        return a.to_vec();
    }
    let c = dot(a, v) / vv;
    a.iter().zip(v).map(|(x, y)| x - c * y).collect()
}
