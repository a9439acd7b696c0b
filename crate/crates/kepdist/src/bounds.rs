//! Upper bounds on how large the minimum distance can get, and harnesses
//! that stress them empirically. Two regimes: one orbit exactly circular
//! (bound on d_min itself) and two noncoplanar ellipses (bound on the nodal
//! distance, which in turn dominates d_min).

use crate::orbits::{orientation_frame, KeplerianElements, OrbitFrame};
use rayon::prelude::*;
use thiserror::Error;

/// Default extent of the pericenter axis of the harness domain.
pub const Q_MAX: f64 = 1.3;

#[derive(Debug, Error, PartialEq)]
pub enum BoundError {
    /// Mutual inclination below threshold: the nodal line is undefined.
    #[error("orbit planes are coplanar within tolerance")]
    Coplanar,
}

/// Distance from a coplanar-projected worst ellipse to the circle r = r2:
/// the unique real root xi of x^3 + 4q(q + cos w) x - 8 r2 q^2 sin w = 0
/// feeds a closed-form distance. The cubic is monotone increasing on the
/// bracket [0, 2 r2 + 2q] for w in [0, pi/2], so safeguarded Newton with a
/// bisection fallback always lands on the root.
pub fn delta_circular(q: f64, omega: f64, r2: f64) -> f64 {
    if q < 1e-13 {
        return r2;
    }
    let b = 4.0 * q * (q + omega.cos());
    let c = -8.0 * r2 * q * q * omega.sin();
    let mut lo = 0.0f64;
    let mut hi = 2.0 * r2 + 2.0 * q;
    let mut x = 0.5 * hi;
    for _ in 0..200 {
        let f = x * x * x + b * x + c;
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let fp = 3.0 * x * x + b;
        let xn = if fp > 0.0 { x - f / fp } else { 0.5 * (lo + hi) };
        x = if lo < xn && xn < hi { xn } else { 0.5 * (lo + hi) };
        if hi - lo < 1e-15 * (1.0 + hi) {
            break;
        }
    }
    let xi = x;
    let dx = xi - r2 * omega.sin();
    let dy = (xi * xi - 4.0 * q * q) / (4.0 * q) + r2 * omega.cos();
    (dx * dx + dy * dy).sqrt()
}

/// Optimal bound on d_min between an orbit with pericenter q and argument
/// of pericenter omega (any eccentricity, any inclination) and the circle
/// of radius r2 in the reference plane.
pub fn circular_bound(q: f64, omega: f64, r2: f64) -> f64 {
    (r2 - q).max(delta_circular(q, omega, r2))
}

/// Nodal geometry of a noncoplanar pair: mutual pericenter arguments
/// measured from the shared node line, the four nodal radii, and the
/// ascending/descending separations.
#[derive(Debug, Clone, Copy)]
pub struct MutualNodalElements {
    pub omega1: f64,
    pub omega2: f64,
    pub r_asc_1: f64,
    pub r_desc_1: f64,
    pub r_asc_2: f64,
    pub r_desc_2: f64,
    pub d_asc: f64,
    pub d_desc: f64,
    pub delta_nod: f64,
}

/// Nodal radii and separations given each orbit's pericenter, eccentricity
/// and mutual pericenter argument. The ascending node sits at true anomaly
/// -omega_m on each orbit, the descending one half a turn later.
pub fn delta_nodal_at(
    q1: f64,
    e1: f64,
    om1m: f64,
    q2: f64,
    e2: f64,
    om2m: f64,
) -> MutualNodalElements {
    let r_asc_1 = q1 * (1.0 + e1) / (1.0 + e1 * om1m.cos());
    let r_desc_1 = q1 * (1.0 + e1) / (1.0 - e1 * om1m.cos());
    let r_asc_2 = q2 * (1.0 + e2) / (1.0 + e2 * om2m.cos());
    let r_desc_2 = q2 * (1.0 + e2) / (1.0 - e2 * om2m.cos());
    let d_asc = r_asc_2 - r_asc_1;
    let d_desc = r_desc_2 - r_desc_1;
    MutualNodalElements {
        omega1: om1m,
        omega2: om2m,
        r_asc_1,
        r_desc_1,
        r_asc_2,
        r_desc_2,
        d_asc,
        d_desc,
        delta_nod: d_asc.abs().min(d_desc.abs()),
    }
}

/// Mutual nodal elements of two orbits in arbitrary orientation. The node
/// direction is the normalized cross product of the orbit normals; each
/// mutual pericenter argument is the signed angle from that direction to
/// the orbit's pericenter, oriented by the orbit's own normal.
pub fn mutual_nodal(
    el1: &KeplerianElements,
    el2: &KeplerianElements,
) -> Result<MutualNodalElements, BoundError> {
    let f1 = orientation_frame(el1);
    let f2 = orientation_frame(el2);
    mutual_nodal_frames(el1, &f1, el2, &f2)
}

pub fn mutual_nodal_frames(
    el1: &KeplerianElements,
    f1: &OrbitFrame,
    el2: &KeplerianElements,
    f2: &OrbitFrame,
) -> Result<MutualNodalElements, BoundError> {
    let n1 = f1.normal();
    let n2 = f2.normal();
    let node = n1.cross(&n2);
    let len = node.norm();
    if len <= 1e-9 {
        return Err(BoundError::Coplanar);
    }
    let node = node / len;
    let om1m = n1.dot(&node.cross(&f1.p)).atan2(node.dot(&f1.p));
    let om2m = n2.dot(&node.cross(&f2.p)).atan2(node.dot(&f2.p));
    Ok(delta_nodal_at(el1.q, el1.e, om1m, el2.q, el2.e, om2m))
}

fn ratio_or_inf(num: f64, den: f64) -> f64 {
    if den.abs() > 1e-14 {
        num / den
    } else {
        f64::INFINITY
    }
}

/// Optimal bound on the nodal distance between an orbit with pericenter q
/// and mutual pericenter argument omega and a fixed second ellipse given by
/// pericenter q2 and eccentricity e2, maximized over everything else.
pub fn nodal_bound(q: f64, omega: f64, q2: f64, e2: f64) -> f64 {
    let p2 = q2 * (1.0 + e2);
    let big_q2 = q2 * (1.0 + e2) / (1.0 - e2);
    let u_int = p2 - q;
    let (sw, cw) = omega.sin_cos();
    let xi_star = ratio_or_inf(
        4.0 * q * cw,
        p2 * sw * sw + (p2 * p2 * sw.powi(4) + 16.0 * q * q * cw * cw).sqrt(),
    );
    let xi_hat = if xi_star.is_finite() {
        xi_star.min(e2)
    } else {
        e2
    };
    let u_ext = (ratio_or_inf(2.0 * q, 1.0 - cw) - p2 / (1.0 - xi_hat))
        .min(ratio_or_inf(2.0 * q, 1.0 + cw) - q2);
    let pe = q * (1.0 - e2 * e2);
    let den = pe + (pe * pe + 4.0 * p2 * cw * cw * (p2 - pe)).sqrt();
    let e_star = ratio_or_inf(2.0 * (p2 - pe), den);
    let e_hat = if e_star.is_finite() {
        e_star.clamp(0.0, 1.0)
    } else {
        1.0
    };
    let u_link = (big_q2 - q * (1.0 + e_hat) / (1.0 + e_hat * cw))
        .min(ratio_or_inf(2.0 * q, 1.0 - cw) - q2);
    u_int.max(u_ext).max(u_link)
}

/// Exact minimum distance from an elliptic orbit (node along x, given
/// inclination and pericenter argument) to the circle r = r2 in the
/// reference plane. For a fixed orbit point the distance to the circle is
/// closed-form, so this is a 1D minimization: dense scan plus
/// golden-section refinement around the best sample.
pub fn dmin_to_circle(a1: f64, e1: f64, i1: f64, omega: f64, r2: f64) -> f64 {
    let el = match KeplerianElements::from_semimajor("", a1, e1, i1, 0.0, omega) {
        Ok(el) => el,
        Err(_) => return f64::NAN,
    };
    let frame = orientation_frame(&el);
    let w1 = (1.0 - e1 * e1).sqrt();
    let dist = |u: f64| -> f64 {
        let (su, cu) = u.sin_cos();
        let x = frame.p * (a1 * (cu - e1)) + frame.q * (a1 * w1 * su);
        let rho = x.x.hypot(x.y);
        (rho - r2).hypot(x.z)
    };
    let n = 4096;
    let mut best_k = 0;
    let mut best = f64::INFINITY;
    for k in 0..n {
        let d = dist(k as f64 * std::f64::consts::TAU / n as f64);
        if d < best {
            best = d;
            best_k = k;
        }
    }
    let step = std::f64::consts::TAU / n as f64;
    let mut lo = best_k as f64 * step - step;
    let mut hi = best_k as f64 * step + step;
    let gr = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - gr * (hi - lo);
    let mut d = lo + gr * (hi - lo);
    for _ in 0..80 {
        if dist(c) < dist(d) {
            hi = d;
            d = c;
            c = hi - gr * (hi - lo);
        } else {
            lo = c;
            c = d;
            d = lo + gr * (hi - lo);
        }
    }
    dist(0.5 * (lo + hi))
}

/// One harness cell: the analytic bound against the empirical maximum over
/// the sampled family, with margin = bound - empirical_max.
#[derive(Debug, Clone, Copy)]
pub struct BoundRow {
    pub q: f64,
    pub omega: f64,
    pub bound: f64,
    pub empirical_max: f64,
    pub margin: f64,
}

/// Cell centers of an nq x nom grid over [0, q_max] x [0, pi/2].
pub fn domain_cells(nq: usize, nom: usize, q_max: f64) -> Vec<(f64, f64)> {
    let mut cells = Vec::with_capacity(nq * nom);
    for i in 0..nq {
        let q = (i as f64 + 0.5) * q_max / nq as f64;
        for j in 0..nom {
            let om = (j as f64 + 0.5) * std::f64::consts::FRAC_PI_2 / nom as f64;
            cells.push((q, om));
        }
    }
    cells
}

/// Evenly spaced samples including both endpoints.
fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect()
}

/// Circular-orbit harness: for each domain cell, the worst d_min over a
/// grid of eccentricities and inclinations of the first orbit against the
/// circle r = r2.
pub fn circular_harness(nq: usize, nom: usize, r2: f64, ne: usize, ni: usize) -> Vec<BoundRow> {
    let es = linspace(0.0, 0.999, ne);
    let is = linspace(0.0, std::f64::consts::FRAC_PI_2, ni);
    domain_cells(nq, nom, Q_MAX)
        .into_par_iter()
        .map(|(q, om)| {
            let bound = circular_bound(q, om, r2);
            let mut emp = 0.0f64;
            for &e in &es {
                let a1 = q / (1.0 - e);
                for &i in &is {
                    emp = emp.max(dmin_to_circle(a1, e, i, om, r2));
                }
            }
            BoundRow {
                q,
                omega: om,
                bound,
                empirical_max: emp,
                margin: bound - emp,
            }
        })
        .collect()
}

/// Nodal harness: for each domain cell, the worst nodal distance over a
/// grid of first-orbit eccentricities and second-orbit mutual pericenter
/// arguments, against the analytic nodal bound.
pub fn nodal_harness(nq: usize, nom: usize, q2: f64, e2: f64, ne: usize, nom2: usize) -> Vec<BoundRow> {
    let es = linspace(0.0, 0.999, ne);
    let oms = linspace(0.0, std::f64::consts::TAU, nom2);
    domain_cells(nq, nom, Q_MAX)
        .into_par_iter()
        .map(|(q, om)| {
            let bound = nodal_bound(q, om, q2, e2);
            let mut emp = 0.0f64;
            for &e in &es {
                for &om2 in &oms {
                    emp = emp.max(delta_nodal_at(q, e, om, q2, e2, om2).delta_nod);
                }
            }
            BoundRow {
                q,
                omega: om,
                bound,
                empirical_max: emp,
                margin: bound - emp,
            }
        })
        .collect()
}

/// Delimited text form of harness rows, one cell per line.
pub fn format_rows(rows: &[BoundRow]) -> String {
    let mut out = String::from("q\tomega\tbound\tempirical_max\tmargin\n");
    for r in rows {
        out.push_str(&format!(
            "{:.6}\t{:.6}\t{:.9}\t{:.9}\t{:.9}\n",
            r.q, r.omega, r.bound, r.empirical_max, r.margin
        ));
    }
    out
}
