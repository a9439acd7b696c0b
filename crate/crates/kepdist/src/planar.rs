//! Coplanar orbits. The critical points split into tangency-type solutions
//! of a degree-5 trigonometric polynomial in the first anomaly and conic
//! intersection points where d = 0; together they number at most 12, at
//! most 6 when one orbit is circular.

use crate::critpoints::{finish, CriticalSet};
use crate::orbits::{
    mutual_geometry, norm_angle, AnomalyPair, KeplerianElements, MutualGeometry,
};
use crate::polyalg::{roots_simultaneous, sylvester_resultant_1cubic, TrigPoly};
use crate::solver_ordinary::{line_circle, push_dedup, SolveError};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PlanarError {
    /// The two orbit planes are not parallel, so the planar reduction does
    /// not apply.
    #[error("orbits are not coplanar")]
    NotCoplanar,
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// A coplanar pair reduced to its intrinsic data: conic parameters and
/// eccentricities plus the pericenter angle of the second orbit measured
/// from the first orbit's pericenter direction.
#[derive(Debug, Clone, Copy)]
pub struct PlanarPair {
    pub p1: f64,
    pub e1: f64,
    pub p2: f64,
    pub e2: f64,
    pub om2: f64,
}

impl PlanarPair {
    pub fn new(p1: f64, e1: f64, p2: f64, e2: f64, om2: f64) -> Self {
        PlanarPair { p1, e1, p2, e2, om2 }
    }

    /// Reduce two arbitrarily oriented but coplanar orbits. The returned
    /// flag is true when the second orbit is traversed opposite to the
    /// first; its point set is then the mirror ellipse and true anomalies
    /// coming out of the planar machinery convert back as f2 -> -f2.
    pub fn from_elements(
        el1: &KeplerianElements,
        el2: &KeplerianElements,
    ) -> Result<(Self, bool), PlanarError> {
        let f1 = crate::orbits::orientation_frame(el1);
        let f2 = crate::orbits::orientation_frame(el2);
        let n1 = f1.normal();
        let n2 = f2.normal();
        if n1.cross(&n2).norm() > 1e-9 {
            return Err(PlanarError::NotCoplanar);
        }
        let flipped = n1.dot(&n2) < 0.0;
        let om2 = n1.dot(&f1.p.cross(&f2.p)).atan2(f1.p.dot(&f2.p));
        Ok((
            PlanarPair::new(el1.semilatus(), el1.e, el2.semilatus(), el2.e, om2),
            flipped,
        ))
    }

    /// The pair embedded back into the reference plane with the first
    /// pericenter on the x-axis, for polishing and classification.
    pub fn geometry(&self) -> MutualGeometry {
        let el1 = KeplerianElements::from_semimajor(
            "",
            self.p1 / (1.0 - self.e1 * self.e1),
            self.e1,
            0.0,
            0.0,
            0.0,
        )
        .expect("valid planar elements");
        let el2 = KeplerianElements::from_semimajor(
            "",
            self.p2 / (1.0 - self.e2 * self.e2),
            self.e2,
            0.0,
            0.0,
            self.om2,
        )
        .expect("valid planar elements");
        mutual_geometry(&el1, &el2)
    }
}

/// Coefficient functions of the first anomaly entering the tangency
/// system; alpha^2 + beta^2 = 1 + e1^2 + 2 e1 cos f1 identically.
#[derive(Debug, Clone, Copy)]
pub struct PlanarCoeffs {
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
    pub delta: f64,
}

struct PlanarTables {
    al: TrigPoly,
    be: TrigPoly,
    mu: TrigPoly,
    delta: TrigPoly,
}

fn planar_tables(pair: &PlanarPair) -> PlanarTables {
    let (p1, e1, p2, e2) = (pair.p1, pair.e1, pair.p2, pair.e2);
    let (so, co) = pair.om2.sin_cos();
    let al = TrigPoly::from_entries(&[(1, 0, so), (0, 1, -co), (0, 0, e1 * so)]);
    let be = TrigPoly::from_entries(&[(1, 0, co), (0, 1, so), (0, 0, e1 * co)]);
    let mu = TrigPoly::from_entries(&[(0, 1, p1 * e1 * e2)]);
    let one_e1x = TrigPoly::from_entries(&[(0, 0, 1.0), (1, 0, e1)]);
    let mut delta = TrigPoly::from_entries(&[(0, 1, p1 * e1)]);
    let mut rot = one_e1x.mul(&al);
    rot = {
        let mut s = TrigPoly::zeros(0, 0);
        s.add_scaled(&rot, p2 * e2);
        s
    };
    delta.add_scaled(&rot, 1.0);
    PlanarTables { al, be, mu, delta }
}

pub fn planar_coeffs(pair: &PlanarPair, f1: f64) -> PlanarCoeffs {
    let t = planar_tables(pair);
    PlanarCoeffs {
        alpha: t.al.eval(f1),
        beta: t.be.eval(f1),
        mu: t.mu.eval(f1),
        delta: t.delta.eval(f1),
    }
}

/// Tangency-type critical points (gradient zero with d > 0 generically):
/// real solutions of the degree-5 trigonometric polynomial in f1, each
/// giving f2 through cos f2 = -delta/mu with the sine recovered from the
/// first gradient equation. Both orbits circular leaves no equation to
/// solve; one circular orbit reduces to apsidal alignments.
pub fn planar_tangency_points(pair: &PlanarPair) -> Result<Vec<AnomalyPair>, SolveError> {
    let tiny = 1e-12;
    if pair.e1 < tiny && pair.e2 < tiny {
        return Err(SolveError::DegenerateSystem(
            "concentric coplanar circles have no isolated critical points",
        ));
    }
    let mut out = Vec::new();
    if pair.e2 < tiny {
        // circle outside: extrema sit on the first orbit's apsidal axis,
        // paired with the near and far points of the circle
        for f1 in [0.0, std::f64::consts::PI] {
            for off in [0.0, std::f64::consts::PI] {
                push_dedup(
                    &mut out,
                    AnomalyPair::true_anom(f1, norm_angle(f1 - pair.om2 + off)),
                );
            }
        }
        return Ok(out);
    }
    if pair.e1 < tiny {
        for f2 in [0.0, std::f64::consts::PI] {
            for off in [0.0, std::f64::consts::PI] {
                push_dedup(
                    &mut out,
                    AnomalyPair::true_anom(norm_angle(pair.om2 + f2 + off), f2),
                );
            }
        }
        return Ok(out);
    }
    let t = planar_tables(pair);
    let al2 = t.al.mul(&t.al);
    let be2 = t.be.mul(&t.be);
    let d2 = t.delta.mul(&t.delta);
    let mut sum = al2.clone();
    sum.add_scaled(&be2, 1.0);
    let mut fineq = sum.mul(&d2);
    fineq.add_scaled(&al2.mul(&t.delta.mul(&t.mu)), -2.0 * pair.e2);
    let mut tail = TrigPoly::zeros(0, 0);
    tail.add_scaled(&al2, pair.e2 * pair.e2);
    tail.add_scaled(&be2, -1.0);
    fineq.add_scaled(&t.mu.mul(&t.mu).mul(&tail), 1.0);
    let (a, b) = fineq.reduce_on_circle();
    let v = sylvester_resultant_1cubic(&a, &b);
    if v.max_abs_coeff() <= 1e-14 * (pair.p1 * pair.p2).powi(4).max(1e-280) {
        return Err(SolveError::DegenerateSystem(
            "tangency polynomial vanishes identically",
        ));
    }
    let roots = roots_simultaneous(&v)?;
    let scale = pair.p1 * pair.p2;
    for z in roots {
        if z.im.abs() > 1e-4 || z.re.abs() > 1.0 + 1e-4 {
            continue;
        }
        let x = z.re.clamp(-1.0, 1.0);
        let av = a.eval(x);
        let bv = b.eval(x);
        // seed the circle intersections generously; polishing discards
        // anything that is not actually critical
        let yroot = (1.0 - x * x).max(0.0).sqrt();
        let mut ys = vec![yroot, -yroot];
        if av.abs() > 1e-12 * bv.abs().max(1e-30) {
            ys.push(-bv / av);
        }
        if yroot > 0.0 && yroot < 1e-2 {
            // a double root split off |x| = 1 reports a spurious tiny sine;
            // the exact apsidal seed lets the mu = 0 branch recover f2
            ys.push(0.0);
        }
        for y in ys {
            let f1 = y.atan2(x);
            let muv = t.mu.eval(f1);
            let dev = t.delta.eval(f1);
            let alv = t.al.eval(f1);
            let bev = t.be.eval(f1);
            if muv.abs() < 1e-12 * dev.abs().max(scale) {
                // the cosine relation degenerates; fall back to the line
                // the first gradient equation cuts on the f2 circle
                for f2 in line_circle(alv, bev, -alv * pair.e2) {
                    push_dedup(&mut out, AnomalyPair::true_anom(norm_angle(f1), norm_angle(f2)));
                }
                continue;
            }
            let c2 = -dev / muv;
            if c2.abs() > 1.0 + 1e-9 {
                continue;
            }
            let c2 = c2.clamp(-1.0, 1.0);
            if bev.abs() < 1e-12 {
                let s = (1.0 - c2 * c2).max(0.0).sqrt();
                for s2 in [s, -s] {
                    push_dedup(
                        &mut out,
                        AnomalyPair::true_anom(norm_angle(f1), norm_angle(s2.atan2(c2))),
                    );
                }
            } else {
                let s2 = -alv * (c2 + pair.e2) / bev;
                push_dedup(
                    &mut out,
                    AnomalyPair::true_anom(norm_angle(f1), norm_angle(s2.atan2(c2))),
                );
            }
        }
    }
    Ok(out)
}

/// Points where the conics cross (d = 0): matching polar angle theta with
/// equal radii gives A cos theta + B sin theta = C.
pub fn planar_intersections(pair: &PlanarPair) -> Vec<AnomalyPair> {
    let (so, co) = pair.om2.sin_cos();
    let a = pair.p2 * pair.e1 - pair.p1 * pair.e2 * co;
    let b = -pair.p1 * pair.e2 * so;
    let c = pair.p1 - pair.p2;
    let r = a.hypot(b);
    if r < 1e-15 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for th in line_circle(a, b, c) {
        out.push(AnomalyPair::true_anom(
            norm_angle(th),
            norm_angle(th - pair.om2),
        ));
    }
    out
}

/// Full planar critical set: tangency and intersection candidates polished
/// and classified on the embedded geometry. Identical conics are flagged
/// degenerate (a continuum of zero-distance pairs).
pub fn planar_critical_set(pair: &PlanarPair) -> Result<CriticalSet, SolveError> {
    let scale = pair.p1 + pair.p2;
    let (so, co) = pair.om2.sin_cos();
    let a = pair.p2 * pair.e1 - pair.p1 * pair.e2 * co;
    let b = -pair.p1 * pair.e2 * so;
    let c = pair.p1 - pair.p2;
    if a.hypot(b) < 1e-13 * scale && c.abs() < 1e-13 * scale && (pair.e1 > 0.0 || pair.e2 > 0.0) {
        return Err(SolveError::DegenerateSystem(
            "conics coincide: every matching angle pair has d = 0",
        ));
    }
    let mut cands = planar_tangency_points(pair)?;
    for p in planar_intersections(pair) {
        push_dedup(&mut cands, p);
    }
    let geom = pair.geometry();
    Ok(finish(&geom, "planar", &cands))
}

/// Census over random coplanar pairs: histogram of critical-point counts.
#[derive(Debug, Clone)]
pub struct CensusSummary {
    pub pairs: usize,
    pub histogram: Vec<(usize, usize)>,
    pub max_count: usize,
}

/// Run `n` random coplanar pairs (circular_second forces e2 = 0) and count
/// polished critical points for each.
pub fn planar_census(n: usize, seed: u64, circular_second: bool) -> CensusSummary {
    use rand::{Rng, SeedableRng};
    let counts: Vec<usize> = (0..n)
        .into_par_iter()
        .map(|k| {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            loop {
                let p1: f64 = rng.gen_range(0.2..2.0);
                let p2: f64 = rng.gen_range(0.2..2.0);
                let e1: f64 = rng.gen_range(0.0..0.95);
                let e2: f64 = if circular_second {
                    0.0
                } else {
                    rng.gen_range(0.0..0.95)
                };
                let om2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                let pair = PlanarPair::new(p1, e1, p2, e2, om2);
                match planar_critical_set(&pair) {
                    Ok(set) => break set.points.len(),
                    Err(_) => continue,
                }
            }
        })
        .collect();
    let max_count = counts.iter().copied().max().unwrap_or(0);
    let mut histogram = vec![0usize; max_count + 1];
    for c in &counts {
        histogram[*c] += 1;
    }
    CensusSummary {
        pairs: n,
        histogram: histogram
            .into_iter()
            .enumerate()
            .filter(|(_, v)| *v > 0)
            .collect(),
        max_count,
    }
}

/// Delimited text form of a census summary (count, pairs per count).
pub fn format_census(summary: &CensusSummary) -> String {
    let mut out = String::from("count\tpairs\n");
    for (count, pairs) in &summary.histogram {
        out.push_str(&format!("{count}\t{pairs}\n"));
    }
    out.push_str(&format!("max\t{}\n", summary.max_count));
    out
}
