//! Critical points via ordinary bivariate polynomials in the tangent
//! half-angles of the eccentric anomalies. The gradient system becomes a
//! quadratic and a quartic in s = tan(u2/2) with coefficients polynomial in
//! t = tan(u1/2); eliminating s through a 6x6 Sylvester determinant leaves a
//! univariate polynomial of degree at most 16. The shifted variant moves the
//! first anomaly away from parametrization singularities before eliminating.

use crate::orbits::{norm_angle, AnomalyPair, MutualGeometry, TAU};
use crate::polyalg::{
    deflate_one_plus_t2, det_complex, det_real, dft_interpolate, roots_simultaneous, PolyError,
    UniPoly,
};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("degenerate critical point system: {0}")]
    DegenerateSystem(&'static str),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Coefficients of the eliminated gradient system: the quadratic in s is
/// alpha s^2 + beta s + gamma, and the quartic is qa (s^4 - 1) + qb s^3
/// + qd s, everything polynomial in t.
#[derive(Debug, Clone, PartialEq)]
pub struct OePolySystem {
    pub alpha: UniPoly,
    pub beta: UniPoly,
    pub gamma: UniPoly,
    pub qa: UniPoly,
    pub qb: UniPoly,
    pub qd: UniPoly,
}

/// Same system written in the shifted first anomaly v1 = u1 - s1.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedOeSystem {
    pub sys: OePolySystem,
    pub s1: f64,
}

/// Entries of the reduced 6x6 elimination matrix: the first two rows carry
/// the exact quotients by (1 + t^2).
#[derive(Debug, Clone)]
pub struct SigmaBlock {
    pub sigma: [UniPoly; 6],
    pub tilde: [UniPoly; 3],
}

pub fn build_oe_system(geom: &MutualGeometry) -> OePolySystem {
    let a = &geom.a;
    OePolySystem {
        alpha: UniPoly::new(vec![
            a[11] - a[8],
            4.0 * a[1] - 4.0 * a[3] + 2.0 * a[10] - 2.0 * a[12],
            0.0,
            -4.0 * a[1] + 4.0 * a[3] + 2.0 * a[10] - 2.0 * a[12],
            a[8] - a[11],
        ]),
        beta: UniPoly::new(vec![
            2.0 * a[7],
            -4.0 * a[9],
            0.0,
            -4.0 * a[9],
            -2.0 * a[7],
        ]),
        gamma: UniPoly::new(vec![
            a[11] + a[8],
            4.0 * a[1] - 4.0 * a[3] - 2.0 * a[10] - 2.0 * a[12],
            0.0,
            -4.0 * a[1] + 4.0 * a[3] - 2.0 * a[10] - 2.0 * a[12],
            -(a[8] + a[11]),
        ]),
        qa: UniPoly::new(vec![-(a[9] + a[13]), -2.0 * a[7], a[9] - a[13]]),
        qb: UniPoly::new(vec![
            -4.0 * a[4] + 4.0 * a[6] - 2.0 * a[10] - 2.0 * a[14],
            -4.0 * a[8],
            -4.0 * a[4] + 4.0 * a[6] + 2.0 * a[10] - 2.0 * a[14],
        ]),
        qd: UniPoly::new(vec![
            4.0 * a[4] - 4.0 * a[6] - 2.0 * a[10] - 2.0 * a[14],
            -4.0 * a[8],
            4.0 * a[4] - 4.0 * a[6] + 2.0 * a[10] - 2.0 * a[14],
        ]),
    }
}

pub fn build_oes_system(geom: &MutualGeometry, s1: f64) -> ShiftedOeSystem {
    let a = &geom.a;
    let (s, c) = s1.sin_cos();
    let a13 = a[1] - a[3];
    let a46 = a[4] - a[6];
    let sys = OePolySystem {
        alpha: UniPoly::new(vec![
            2.0 * a13 * c * s + a[10] * s + a[11] * c - a[12] * s - a[8] * c,
            8.0 * a13 * c * c + 2.0 * a[10] * c - 2.0 * a[11] * s - 2.0 * a[12] * c
                + 2.0 * a[8] * s
                - 4.0 * a13,
            -12.0 * a13 * s * c,
            -8.0 * a13 * c * c + 2.0 * a[10] * c - 2.0 * a[11] * s - 2.0 * a[12] * c
                + 2.0 * a[8] * s
                + 4.0 * a13,
            2.0 * a13 * c * s - a[10] * s - a[11] * c + a[12] * s + a[8] * c,
        ]),
        beta: UniPoly::new(vec![
            2.0 * a[7] * c - 2.0 * a[9] * s,
            -4.0 * a[7] * s - 4.0 * a[9] * c,
            0.0,
            -4.0 * a[7] * s - 4.0 * a[9] * c,
            -2.0 * a[7] * c + 2.0 * a[9] * s,
        ]),
        gamma: UniPoly::new(vec![
            2.0 * a13 * c * s - a[10] * s + a[11] * c - a[12] * s + a[8] * c,
            8.0 * a13 * c * c - 2.0 * a[10] * c - 2.0 * a[11] * s - 2.0 * a[12] * c
                - 2.0 * a[8] * s
                - 4.0 * a13,
            -12.0 * a13 * s * c,
            -8.0 * a13 * c * c - 2.0 * a[10] * c - 2.0 * a[11] * s - 2.0 * a[12] * c
                - 2.0 * a[8] * s
                + 4.0 * a13,
            2.0 * a13 * c * s + a[10] * s - a[11] * c + a[12] * s - a[8] * c,
        ]),
        qa: UniPoly::new(vec![
            -a[7] * s - a[9] * c - a[13],
            -2.0 * a[7] * c + 2.0 * a[9] * s,
            a[7] * s + a[9] * c - a[13],
        ]),
        qb: UniPoly::new(vec![
            -2.0 * a[10] * c - 2.0 * a[8] * s - 2.0 * a[14] - 4.0 * a46,
            4.0 * a[10] * s - 4.0 * a[8] * c,
            2.0 * a[10] * c + 2.0 * a[8] * s - 2.0 * a[14] - 4.0 * a46,
        ]),
        qd: UniPoly::new(vec![
            -2.0 * a[10] * c - 2.0 * a[8] * s - 2.0 * a[14] + 4.0 * a46,
            4.0 * a[10] * s - 4.0 * a[8] * c,
            2.0 * a[10] * c + 2.0 * a[8] * s - 2.0 * a[14] + 4.0 * a46,
        ]),
    };
    ShiftedOeSystem { sys, s1 }
}

/// The quadratic row entries and their exact quotients by (1 + t^2).
pub fn sigma_block(sys: &OePolySystem) -> Result<SigmaBlock, SolveError> {
    let s1 = sys.alpha.add(&sys.gamma.scale(-1.0));
    let s2 = sys.beta.clone();
    let s3 = sys.qb.add(&sys.qd.scale(-1.0));
    let tilde = [
        deflate_one_plus_t2(&s1)?,
        deflate_one_plus_t2(&s2)?,
        deflate_one_plus_t2(&s3)?,
    ];
    Ok(SigmaBlock {
        sigma: [
            s1,
            s2,
            s3,
            sys.gamma.clone(),
            sys.qd.clone(),
            sys.qa.clone(),
        ],
        tilde,
    })
}

fn shat_matrix_at(block: &SigmaBlock, z: Complex64) -> Vec<Vec<Complex64>> {
    let zero = Complex64::new(0.0, 0.0);
    let t1 = block.tilde[0].eval_c(z);
    let t2 = block.tilde[1].eval_c(z);
    let t3 = block.tilde[2].eval_c(z);
    let s1 = block.sigma[0].eval_c(z);
    let s2 = block.sigma[1].eval_c(z);
    let s3 = block.sigma[2].eval_c(z);
    let s4 = block.sigma[3].eval_c(z);
    let s5 = block.sigma[4].eval_c(z);
    let s6 = block.sigma[5].eval_c(z);
    vec![
        vec![t1, -t2, -t1, t2, zero, -t3],
        vec![t2, t1, -t2, -t1, t3, zero],
        vec![s4, s2, s1, -s2, s6, s3],
        vec![zero, s4, s2, s1, s5, s6],
        vec![zero, zero, s4, s2, -s6, s5],
        vec![zero, zero, zero, s4, zero, -s6],
    ]
}

/// Hadamard-style magnitude of the 6x6 determinant, used to decide whether
/// sampled values are genuinely zero or only cancellation noise.
fn shat_scale(block: &SigmaBlock) -> f64 {
    let st = block
        .tilde
        .iter()
        .fold(0.0f64, |acc, p| acc.max(p.max_abs_coeff()));
    let ss = block
        .sigma
        .iter()
        .fold(0.0f64, |acc, p| acc.max(p.max_abs_coeff()));
    st * st * ss.powi(4)
}

/// The degree <= 16 determinant of the reduced elimination matrix,
/// interpolated from evaluations at roots of unity.
pub fn det_s_hat(sys: &OePolySystem) -> Result<UniPoly, SolveError> {
    let block = sigma_block(sys)?;
    let scale = shat_scale(&block);
    let sample_max = (0..8)
        .map(|k| {
            let th = TAU * (k as f64 + 0.5) / 8.0;
            det_complex(&shat_matrix_at(&block, Complex64::new(th.cos(), th.sin()))).norm()
        })
        .fold(0.0f64, f64::max);
    if sample_max <= 1e-14 * scale {
        return Err(SolveError::DegenerateSystem(
            "elimination determinant vanishes identically",
        ));
    }
    Ok(dft_interpolate(
        |z| det_complex(&shat_matrix_at(&block, z)),
        16,
    )?)
}

/// Direct 6x6 Sylvester determinant of the unreduced system at a real t,
/// kept as the oracle for the factorization identity
/// det S0 = (1 + t^2)^2 det S_hat.
pub fn det_full_at(sys: &OePolySystem, t: f64) -> f64 {
    let (al, be, ga) = (sys.alpha.eval(t), sys.beta.eval(t), sys.gamma.eval(t));
    let qcol = [
        sys.qa.eval(t),
        sys.qb.eval(t),
        0.0,
        sys.qd.eval(t),
        -sys.qa.eval(t),
    ];
    let mut m = vec![vec![0.0; 6]; 6];
    for c in 0..4 {
        m[c][c] = al;
        m[c + 1][c] = be;
        m[c + 2][c] = ga;
    }
    for c in 0..2 {
        for (r, &v) in qcol.iter().enumerate() {
            m[c + r][4 + c] = v;
        }
    }
    det_real(&m)
}

/// Real roots kept from a complex multiset. The band is generous because a
/// double real root under coefficient noise eps splits into a conjugate
/// pair with imaginary parts of order sqrt(eps); accepting a genuinely
/// complex root is harmless since polishing and the gradient-residual
/// filter reject anything that is not a critical point.
fn accepted_real_roots(roots: &[Complex64]) -> Vec<f64> {
    roots
        .iter()
        .filter(|z| z.im.abs() <= 1e-5 * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect()
}

/// Solutions of A cos x + B sin x = C on the circle, empty when the line
/// misses it.
pub(crate) fn line_circle(a: f64, b: f64, c: f64) -> Vec<f64> {
    let r = a.hypot(b);
    if r == 0.0 || c.abs() > r * (1.0 + 1e-9) {
        return Vec::new();
    }
    let phi = b.atan2(a);
    let delta = (c / r).clamp(-1.0, 1.0).acos();
    vec![phi + delta, phi - delta]
}

pub(crate) fn push_dedup(out: &mut Vec<AnomalyPair>, pair: AnomalyPair) {
    let close = |a: f64, b: f64| {
        let d = (a - b).rem_euclid(TAU);
        d.min(TAU - d) <= 1e-7
    };
    if !out
        .iter()
        .any(|q| close(q.v1, pair.v1) && close(q.v2, pair.v2))
    {
        out.push(pair);
    }
}

/// Candidates for u2 = pi (s at infinity) at a fixed u1, from the first
/// gradient equation restricted to cos u1 = -1.
fn pi_row_candidates(geom: &MutualGeometry, u1: f64) -> Vec<f64> {
    let a = &geom.a;
    let (s1, c1) = u1.sin_cos();
    // A7 c1 s2 + A8 c1 c2 - A9 s1 s2 - A10 s1 c2 = -(2(A1-A3)s1c1 + A11 c1 - A12 s1)
    let ca = a[8] * c1 - a[10] * s1;
    let sa = a[7] * c1 - a[9] * s1;
    let rhs = -(2.0 * (a[1] - a[3]) * s1 * c1 + a[11] * c1 - a[12] * s1);
    line_circle(ca, sa, rhs)
}

/// Unshifted elimination: real roots in t give u1, the quadratic in s gives
/// two candidates and the quartic residual picks between them.
pub fn solve_oe(geom: &MutualGeometry) -> Result<Vec<AnomalyPair>, SolveError> {
    let sys = build_oe_system(geom);
    let det = det_s_hat(&sys)?;
    let roots = roots_simultaneous(&det)?;
    let quad_scale = sys
        .alpha
        .max_abs_coeff()
        .max(sys.beta.max_abs_coeff())
        .max(sys.gamma.max_abs_coeff());
    if quad_scale <= 1e-14 * geom.d2_scale() {
        return Err(SolveError::DegenerateSystem(
            "quadratic in s vanishes identically",
        ));
    }
    let mut out = Vec::new();
    for t in accepted_real_roots(&roots) {
        if t.abs() > 1e7 {
            for u2 in pi_row_candidates(geom, std::f64::consts::PI) {
                push_dedup(
                    &mut out,
                    AnomalyPair::eccentric(std::f64::consts::PI, norm_angle(u2)),
                );
            }
            continue;
        }
        let u1 = 2.0 * t.atan();
        let (al, be, ga) = (sys.alpha.eval(t), sys.beta.eval(t), sys.gamma.eval(t));
        let local = quad_scale * (1.0 + t * t) * (1.0 + t * t);
        let mut s_candidates: Vec<f64> = Vec::new();
        if al.abs() <= 1e-13 * local {
            if be.abs() > 1e-13 * local {
                s_candidates.push(-ga / be);
            }
            // the leading coefficient vanished: a root escaped to s infinity
            for u2 in pi_row_candidates(geom, u1) {
                push_dedup(
                    &mut out,
                    AnomalyPair::eccentric(norm_angle(u1), norm_angle(u2)),
                );
            }
        } else {
            let mut disc = be * be - 4.0 * al * ga;
            if disc < 0.0 {
                if disc > -1e-9 * (be * be + (4.0 * al * ga).abs()) {
                    disc = 0.0;
                } else {
                    continue;
                }
            }
            // stable form: the naive formula cancels when one root is near 0
            let sq = disc.sqrt();
            let qv = -0.5 * (be + if be >= 0.0 { sq } else { -sq });
            if qv != 0.0 {
                s_candidates.push(qv / al);
                s_candidates.push(ga / qv);
            } else {
                s_candidates.push(0.0);
            }
        }
        let quartic_residual = |s: f64| {
            let v = sys.qa.eval(t) * (s * s * s * s - 1.0)
                + sys.qb.eval(t) * s * s * s
                + sys.qd.eval(t) * s;
            v.abs() / ((1.0 + s * s) * (1.0 + s * s))
        };
        let best = s_candidates
            .into_iter()
            .min_by(|x, y| quartic_residual(*x).total_cmp(&quartic_residual(*y)));
        if let Some(s) = best {
            push_dedup(
                &mut out,
                AnomalyPair::eccentric(norm_angle(u1), norm_angle(2.0 * s.atan())),
            );
        }
    }
    if det.degree() < 16 {
        // a root at infinity maps to u1 = pi
        for u2 in pi_row_candidates(geom, std::f64::consts::PI) {
            push_dedup(
                &mut out,
                AnomalyPair::eccentric(std::f64::consts::PI, norm_angle(u2)),
            );
        }
    }
    Ok(out)
}

/// Shifted elimination: roots give v1 = u1 - s1; at each u1 the second
/// gradient equation is a line-circle system in v2 = u2 - s2 and the
/// smaller second-equation residual picks the branch.
pub fn solve_oes(geom: &MutualGeometry, s1: f64, s2: f64) -> Result<Vec<AnomalyPair>, SolveError> {
    let shifted = build_oes_system(geom, s1);
    let det = det_s_hat(&shifted.sys)?;
    let roots = roots_simultaneous(&det)?;
    let a = &geom.a;
    let (sin_s2, cos_s2) = s2.sin_cos();
    let mut u1_values: Vec<f64> = accepted_real_roots(&roots)
        .into_iter()
        .map(|z| {
            if z.abs() > 1e7 {
                std::f64::consts::PI + s1
            } else {
                2.0 * z.atan() + s1
            }
        })
        .collect();
    if det.degree() < 16 {
        u1_values.push(std::f64::consts::PI + s1);
    }
    // best (u1, u2) per distinct u1, ranked by the second gradient equation
    let mut best: Vec<(f64, AnomalyPair)> = Vec::new();
    let scale = geom.a1 * geom.a2;
    for u1 in u1_values {
        let u1 = norm_angle(u1);
        let (si1, c1) = u1.sin_cos();
        let ka = (a[8] * c1 - a[10] * si1) * cos_s2 + (a[7] * c1 - a[9] * si1) * sin_s2;
        let kb = -(a[8] * c1 - a[10] * si1) * sin_s2 + (a[7] * c1 - a[9] * si1) * cos_s2;
        let kc = 2.0 * (a[1] - a[3]) * si1 * c1 + a[11] * c1 - a[12] * si1;
        let r = ka.hypot(kb);
        if r < 1e-14 * scale {
            if kc.abs() < 1e-12 * scale {
                return Err(SolveError::DegenerateSystem(
                    "back-substitution line degenerates to the whole circle",
                ));
            }
            continue;
        }
        if kc.abs() > r * (1.0 + 1e-9) {
            continue;
        }
        let phi = kb.atan2(ka);
        let delta = (-kc / r).clamp(-1.0, 1.0).acos();
        for v2 in [phi + delta, phi - delta] {
            let u2 = norm_angle(v2 + s2);
            let res = geom.grad_ecc(u1, u2)[1].abs();
            match best
                .iter_mut()
                .find(|(_, p)| (p.v1 - u1).abs() < 1e-9)
            {
                Some(slot) => {
                    if res < slot.0 {
                        *slot = (res, AnomalyPair::eccentric(u1, u2));
                    }
                }
                None => best.push((res, AnomalyPair::eccentric(u1, u2))),
            }
        }
    }
    let mut out = Vec::new();
    for (_, pair) in best {
        push_dedup(&mut out, pair);
    }
    Ok(out)
}
