//! Post-processing shared by every solver: Newton polishing of candidate
//! anomaly pairs, Hessian classification, deduplication on the torus, the
//! reliability checks, and MOID extraction.

use crate::orbits::{
    ecc_to_true, norm_angle, true_to_ecc, AnomalyPair, MutualGeometry, Parametrization, TAU,
};
use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum CritError {
    #[error("critical set contains no minimum")]
    NoMinimum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    Minimum,
    Maximum,
    Saddle,
    Degenerate,
}

impl PointKind {
    pub fn label(&self) -> &'static str {
        match self {
            PointKind::Minimum => "MINIMUM",
            PointKind::Maximum => "MAXIMUM",
            PointKind::Saddle => "SADDLE",
            PointKind::Degenerate => "DEGENERATE",
        }
    }
}

/// A polished critical point of the squared distance, carried in both
/// anomaly parametrizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub ecc: AnomalyPair,
    pub tru: AnomalyPair,
    pub d: f64,
    pub kind: PointKind,
    pub grad_residual: f64,
    pub converged: bool,
    /// Local behavior from the Hessian eigenvalues. For non-degenerate
    /// points these mirror `kind`; degenerate points keep their one-sided
    /// behavior so the existence check and the MOID can still use them.
    pub acts_as_minimum: bool,
    pub acts_as_maximum: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorseReport {
    /// False when the set holds a degenerate point: the count identity
    /// assumes non-degenerate critical points only.
    pub applicable: bool,
    pub pass: bool,
    pub total: usize,
    pub maxima: usize,
    pub minima: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DminReport {
    pub pass: bool,
    /// Least distance seen on the sampling grid (au).
    pub floor: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckReport {
    pub weierstrass: bool,
    pub morse: MorseReport,
    pub dmin_sampling: DminReport,
}

impl CheckReport {
    /// True when nothing flags the set: W and the sampled floor hold, and
    /// the count identity holds wherever it applies.
    pub fn all_pass(&self) -> bool {
        self.weierstrass && self.dmin_sampling.pass && (!self.morse.applicable || self.morse.pass)
    }
}

#[derive(Debug, Clone)]
pub struct CriticalSet {
    pub points: Vec<CriticalPoint>,
    pub method: String,
    pub checks: CheckReport,
}

/// Gradient tolerance reached by polishing.
pub fn polish_tolerance(geom: &MutualGeometry) -> f64 {
    1e-12 * geom.a1 * geom.a2
}

/// Largest polished residual still accepted as a critical point.
pub fn accept_tolerance(geom: &MutualGeometry) -> f64 {
    1e-8 * geom.a1 * geom.a2
}

fn grad_norm(geom: &MutualGeometry, pair: &AnomalyPair) -> f64 {
    let g = geom.grad(pair);
    g[0].abs().max(g[1].abs())
}

/// 2D Newton refinement of a candidate pair in its own parametrization.
/// Returns the best iterate seen, its gradient residual, and whether the
/// polish tolerance was reached; a diverging iteration hands back the input.
pub fn polish(geom: &MutualGeometry, pair: &AnomalyPair) -> (AnomalyPair, f64, bool) {
    let tol = polish_tolerance(geom);
    let mut cur = *pair;
    let mut best = cur;
    let mut best_res = grad_norm(geom, &cur);
    for _ in 0..25 {
        if best_res <= tol {
            break;
        }
        let g = geom.grad(&cur);
        let h = geom.hessian(&cur);
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        if !det.is_finite() || det == 0.0 {
            break;
        }
        let mut s1 = -(h[1][1] * g[0] - h[0][1] * g[1]) / det;
        let mut s2 = -(-h[1][0] * g[0] + h[0][0] * g[1]) / det;
        let m = s1.abs().max(s2.abs());
        if !m.is_finite() {
            break;
        }
        // cap the step so a bad Hessian cannot throw the iterate across the torus
        if m > 0.3 {
            s1 *= 0.3 / m;
            s2 *= 0.3 / m;
        }
        cur.v1 += s1;
        cur.v2 += s2;
        let res = grad_norm(geom, &cur);
        if res < best_res {
            best = cur;
            best_res = res;
        }
    }
    best.v1 = norm_angle(best.v1);
    best.v2 = norm_angle(best.v2);
    (best, best_res, best_res <= tol)
}

/// Hessian signature at a polished pair.
pub fn classify(geom: &MutualGeometry, pair: &AnomalyPair) -> PointKind {
    let h = geom.hessian(pair);
    let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    let det_scale = geom.d2_scale() * geom.d2_scale();
    if det.abs() <= 1e-12 * det_scale {
        return PointKind::Degenerate;
    }
    if det < 0.0 {
        PointKind::Saddle
    } else if h[0][0] + h[1][1] > 0.0 {
        PointKind::Minimum
    } else {
        PointKind::Maximum
    }
}

/// One-sided behavior from the eigenvalues, tolerant of a vanishing one.
fn local_behavior(geom: &MutualGeometry, pair: &AnomalyPair) -> (bool, bool) {
    let h = geom.hessian(pair);
    let tr = h[0][0] + h[1][1];
    let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
    let lo = 0.5 * (tr - disc);
    let hi = 0.5 * (tr + disc);
    let eps = 1e-9 * geom.d2_scale();
    let min_like = lo >= -eps && hi > eps;
    let max_like = hi <= eps && lo < -eps;
    let flat = lo.abs() <= eps && hi.abs() <= eps;
    (min_like || flat, max_like || flat)
}

fn build_point(geom: &MutualGeometry, pair: AnomalyPair, residual: f64, converged: bool) -> CriticalPoint {
    let (ecc, tru) = match pair.parametrization {
        Parametrization::Eccentric => (
            pair,
            AnomalyPair::true_anom(
                ecc_to_true(pair.v1, geom.e1),
                ecc_to_true(pair.v2, geom.e2),
            ),
        ),
        Parametrization::True => (
            AnomalyPair::eccentric(
                true_to_ecc(pair.v1, geom.e1),
                true_to_ecc(pair.v2, geom.e2),
            ),
            pair,
        ),
    };
    let d = geom.d2(&pair).max(0.0).sqrt();
    let kind = classify(geom, &pair);
    let (acts_as_minimum, acts_as_maximum) = match kind {
        PointKind::Minimum => (true, false),
        PointKind::Maximum => (false, true),
        PointKind::Saddle => (false, false),
        PointKind::Degenerate => local_behavior(geom, &pair),
    };
    CriticalPoint {
        ecc,
        tru,
        d,
        kind,
        grad_residual: residual,
        converged,
        acts_as_minimum,
        acts_as_maximum,
    }
}

fn wrap_diff(a: f64, b: f64) -> f64 {
    let mut d = (a - b) % TAU;
    if d > std::f64::consts::PI {
        d -= TAU;
    }
    if d < -std::f64::consts::PI {
        d += TAU;
    }
    d
}

/// Torus distance between two pairs in the same parametrization.
pub fn torus_distance(a: &AnomalyPair, b: &AnomalyPair) -> f64 {
    wrap_diff(a.v1, b.v1).hypot(wrap_diff(a.v2, b.v2))
}

/// Keep one representative per cluster of points closer than 1e-6 rad,
/// preferring the smaller gradient residual. Genuinely distinct critical
/// points this close have a merging, near-singular Hessian and classify as
/// degenerate anyway, while polish stragglers can sit a few 1e-7 away from
/// their fully converged twin.
pub fn dedup(points: Vec<CriticalPoint>) -> Vec<CriticalPoint> {
    let mut kept: Vec<CriticalPoint> = Vec::with_capacity(points.len());
    for p in points {
        match kept
            .iter_mut()
            .find(|q| torus_distance(&q.ecc, &p.ecc) <= 1e-6)
        {
            Some(q) => {
                if p.grad_residual < q.grad_residual {
                    *q = p;
                }
            }
            None => kept.push(p),
        }
    }
    kept
}

/// Least distance over an n x n uniform eccentric-anomaly grid.
pub fn grid_min(geom: &MutualGeometry, n: usize) -> (f64, AnomalyPair) {
    let mut best = f64::INFINITY;
    let mut arg = AnomalyPair::eccentric(0.0, 0.0);
    for i in 0..n {
        let u1 = TAU * i as f64 / n as f64;
        for j in 0..n {
            let u2 = TAU * j as f64 / n as f64;
            let d2 = geom.d2_ecc(u1, u2);
            if d2 < best {
                best = d2;
                arg = AnomalyPair::eccentric(u1, u2);
            }
        }
    }
    (best.max(0.0).sqrt(), arg)
}

/// Existence, count, and sampling checks over a deduplicated point list.
pub fn run_checks(geom: &MutualGeometry, points: &[CriticalPoint], k: usize) -> CheckReport {
    let weierstrass = points.iter().any(|p| p.acts_as_minimum)
        && points.iter().any(|p| p.acts_as_maximum);
    let maxima = points.iter().filter(|p| p.kind == PointKind::Maximum).count();
    let minima = points.iter().filter(|p| p.kind == PointKind::Minimum).count();
    let applicable = !points.iter().any(|p| p.kind == PointKind::Degenerate);
    let morse = MorseReport {
        applicable,
        pass: points.len() == 2 * (maxima + minima),
        total: points.len(),
        maxima,
        minima,
    };
    let (floor, _) = grid_min(geom, k);
    let dmin = points
        .iter()
        .filter(|p| p.acts_as_minimum)
        .map(|p| p.d)
        .fold(f64::INFINITY, f64::min);
    let tol = 1e-9 * geom.d2_scale().sqrt();
    let dmin_sampling = DminReport {
        pass: dmin.is_finite() && floor >= dmin - tol,
        floor,
    };
    CheckReport {
        weierstrass,
        morse,
        dmin_sampling,
    }
}

/// Polish, filter, classify, deduplicate, and check a list of raw solver
/// candidates.
pub fn finish(geom: &MutualGeometry, method: &str, candidates: &[AnomalyPair]) -> CriticalSet {
    let accept = accept_tolerance(geom);
    let mut points = Vec::with_capacity(candidates.len());
    for cand in candidates {
        let (pair, residual, converged) = polish(geom, cand);
        if residual <= accept {
            points.push(build_point(geom, pair, residual, converged));
        }
    }
    let points = dedup(points);
    let checks = run_checks(geom, &points, 10);
    CriticalSet {
        points,
        method: method.to_string(),
        checks,
    }
}

/// Least distance over minimum-behaved points and its location.
pub fn moid(set: &CriticalSet) -> Result<(f64, CriticalPoint), CritError> {
    set.points
        .iter()
        .filter(|p| p.acts_as_minimum)
        .min_by(|a, b| a.d.total_cmp(&b.d))
        .map(|p| (p.d, *p))
        .ok_or(CritError::NoMinimum)
}
