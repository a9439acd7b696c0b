//! Critical points via trigonometric polynomials. In eccentric anomalies
//! the gradient system eliminates to a degree-8 trigonometric polynomial g
//! in u2 (methods TE and TEC, differing in the univariate backend); in true
//! anomalies the analogue h lives in f2 and admits an angular shift before
//! elimination (TT and TTS). Reduction on the unit circle turns either into
//! a(x) y + b(x) with x the cosine, and the resultant with x^2 + y^2 = 1 is
//! a univariate polynomial of degree at most 16.

use crate::orbits::{norm_angle, AnomalyPair, MutualGeometry};
use crate::polyalg::{
    colleague_roots, det_real, roots_simultaneous, sylvester_resultant_1cubic, to_chebyshev,
    TrigPoly, UniPoly,
};
use crate::solver_ordinary::{push_dedup, SolveError};
use num_complex::Complex64;

/// Scalar coefficients of the eccentric-anomaly gradient system at a fixed
/// u2: the first equation is lam y1^2 + mu y1 + nu restricted to the circle,
/// written with x1 = cos u1, y1 = sin u1 as al x1 + be y1 + ga = 0 and
/// lam x1 ... (the quartic pairing used by the 4x4 elimination).
#[derive(Debug, Clone, Copy)]
pub struct TrigCoeffsEcc {
    pub lam: f64,
    pub mu: f64,
    pub nu: f64,
    pub al: f64,
    pub be: f64,
    pub ga: f64,
}

struct EccTables {
    lam: TrigPoly,
    mu: TrigPoly,
    nu: TrigPoly,
    al: TrigPoly,
    be: TrigPoly,
    ga: TrigPoly,
}

fn ecc_tables(geom: &MutualGeometry) -> EccTables {
    let (a1, a2, e1, e2) = (geom.a1, geom.a2, geom.e1, geom.e2);
    let (k, l, m, n) = (geom.k, geom.l, geom.m, geom.n);
    let w1 = (1.0 - e1 * e1).sqrt();
    let w2 = (1.0 - e2 * e2).sqrt();
    EccTables {
        lam: TrigPoly::constant(a1 * e1 * e1),
        mu: TrigPoly::from_entries(&[
            (0, 1, a2 * w1 * w2 * n),
            (1, 0, a2 * w1 * l),
            (0, 0, -a2 * w1 * e2 * l),
        ]),
        nu: TrigPoly::from_entries(&[
            (0, 0, a2 * e2 * k - a1 * e1),
            (0, 1, -a2 * w2 * m),
            (1, 0, -a2 * k),
        ]),
        al: TrigPoly::from_entries(&[(1, 0, a1 * w2 * m), (0, 1, -a1 * k)]),
        be: TrigPoly::from_entries(&[(1, 0, a1 * w1 * w2 * n), (0, 1, -a1 * w1 * l)]),
        ga: TrigPoly::from_entries(&[
            (1, 1, a2 * e2 * e2),
            (1, 0, -a1 * e1 * w2 * m),
            (0, 1, a1 * e1 * k - a2 * e2),
        ]),
    }
}

pub fn trig_coeffs_ecc(geom: &MutualGeometry, u2: f64) -> TrigCoeffsEcc {
    let t = ecc_tables(geom);
    TrigCoeffsEcc {
        lam: t.lam.eval(u2),
        mu: t.mu.eval(u2),
        nu: t.nu.eval(u2),
        al: t.al.eval(u2),
        be: t.be.eval(u2),
        ga: t.ga.eval(u2),
    }
}

/// Closed form of the degree-8 trigonometric polynomial left after
/// extracting the be^2 factor from the 4x4 elimination determinant.
pub fn g_of_u2(geom: &MutualGeometry, u2: f64) -> f64 {
    let c = trig_coeffs_ecc(geom, u2);
    let (lam, mu, nu, al, be, ga) = (c.lam, c.mu, c.nu, c.al, c.be, c.ga);
    let (al2, be2, ga2) = (al * al, be * be, ga * ga);
    ga2 * ga2 * lam * lam - be2 * be2 * mu * mu - al2 * al2 * nu * nu
        + 2.0 * mu * lam * ga * be * (be2 - ga2)
        + 2.0 * mu * nu * al * be * (al2 + be2)
        + 2.0 * lam * nu * ga * al * (al2 - ga2)
        + (-lam * lam + mu * mu + nu * nu) * (-al2 * be2 + ga2 * al2 + ga2 * be2)
}

/// Direct 4x4 elimination determinant in eccentric anomalies, the oracle
/// for the identity det = be^2 g.
pub fn det_grad_matrix_ecc(geom: &MutualGeometry, u2: f64) -> f64 {
    let c = trig_coeffs_ecc(geom, u2);
    let (lam, mu, nu, al, be, ga) = (c.lam, c.mu, c.nu, c.al, c.be, c.ga);
    let p2 = al * al + be * be;
    let p1 = 2.0 * al * ga;
    let p0 = ga * ga - be * be;
    let q1 = -al * lam;
    let q0b = be * mu - lam * ga - al * nu;
    let q0c = -ga * nu;
    let m = vec![
        vec![p2, 0.0, q1, 0.0],
        vec![p1, p2, q0b, q1],
        vec![p0, p1, q0c, q0b],
        vec![0.0, p0, 0.0, q0c],
    ];
    det_real(&m)
}

/// The eliminated object in eccentric anomalies: coefficient polynomials
/// g_j(x) of sum g_j(x) y^j, the circle reduction a(x) y + b(x), and the
/// degree <= 16 resultant v.
#[derive(Debug, Clone)]
pub struct GPoly {
    pub g: Vec<UniPoly>,
    pub a: UniPoly,
    pub b: UniPoly,
    pub v: UniPoly,
}

fn build_g_table(geom: &MutualGeometry) -> TrigPoly {
    let t = ecc_tables(geom);
    let al2 = t.al.mul(&t.al);
    let be2 = t.be.mul(&t.be);
    let ga2 = t.ga.mul(&t.ga);
    let mu2 = t.mu.mul(&t.mu);
    let nu2 = t.nu.mul(&t.nu);
    let lam = t.lam.t[0][0];
    let mut acc = ga2.mul(&ga2);
    let mut out = TrigPoly::zeros(0, 0);
    out.add_scaled(&acc, lam * lam);
    acc = be2.mul(&be2).mul(&mu2);
    out.add_scaled(&acc, -1.0);
    acc = al2.mul(&al2).mul(&nu2);
    out.add_scaled(&acc, -1.0);
    let mut diff = be2.clone();
    diff.add_scaled(&ga2, -1.0);
    acc = t.mu.mul(&t.ga).mul(&t.be).mul(&diff);
    out.add_scaled(&acc, 2.0 * lam);
    let mut sum = al2.clone();
    sum.add_scaled(&be2, 1.0);
    acc = t.mu.mul(&t.nu).mul(&t.al).mul(&t.be).mul(&sum);
    out.add_scaled(&acc, 2.0);
    let mut diff2 = al2.clone();
    diff2.add_scaled(&ga2, -1.0);
    acc = t.nu.mul(&t.ga).mul(&t.al).mul(&diff2);
    out.add_scaled(&acc, 2.0 * lam);
    let mut lead = mu2.clone();
    lead.add_scaled(&nu2, 1.0);
    lead.add_scaled(&TrigPoly::constant(lam * lam), -1.0);
    let mut tail = ga2.mul(&al2);
    tail.add_scaled(&ga2.mul(&be2), 1.0);
    tail.add_scaled(&al2.mul(&be2), -1.0);
    acc = lead.mul(&tail);
    out.add_scaled(&acc, 1.0);
    out
}

/// y-coefficient columns of a trig table as polynomials in x = cos.
fn table_columns(table: &TrigPoly, count: usize) -> Vec<UniPoly> {
    (0..count)
        .map(|j| {
            UniPoly::new(
                table
                    .t
                    .iter()
                    .map(|row| row.get(j).copied().unwrap_or(0.0))
                    .collect(),
            )
        })
        .collect()
}

fn reduce_and_resultant(table: &TrigPoly) -> (UniPoly, UniPoly, UniPoly) {
    let (a, b) = table.reduce_on_circle();
    let v = sylvester_resultant_1cubic(&a, &b);
    (a, b, v)
}

pub fn build_g_poly(geom: &MutualGeometry) -> GPoly {
    let table = build_g_table(geom);
    let g = table_columns(&table, 7);
    let (a, b, v) = reduce_and_resultant(&table);
    GPoly { g, a, b, v }
}

/// Scalar coefficients of the true-anomaly gradient system at a fixed f2.
/// The tilde quantities are the parts of the first equation before
/// multiplying through by xi = 1 + e2 cos f2.
#[derive(Debug, Clone, Copy)]
pub struct TrigCoeffsTrue {
    pub al: f64,
    pub be: f64,
    pub ga: f64,
    pub ka: f64,
    pub la: f64,
    pub mu: f64,
    pub nu: f64,
    pub xi: f64,
    pub eta: f64,
    pub ka_tilde: f64,
    pub la_tilde: f64,
    pub al_tilde: f64,
    pub be_tilde: f64,
}

struct TrueTables {
    xi: TrigPoly,
    al_t: TrigPoly,
    be_t: TrigPoly,
    ga: TrigPoly,
    ka_t: TrigPoly,
    la_t: TrigPoly,
    mu: TrigPoly,
    nu: TrigPoly,
    al: TrigPoly,
    be: TrigPoly,
    p1: f64,
}

fn true_tables(geom: &MutualGeometry) -> TrueTables {
    let (e1, e2) = (geom.e1, geom.e2);
    let (k, l, m, n) = (geom.k, geom.l, geom.m, geom.n);
    let p1 = geom.a1 * (1.0 - e1 * e1);
    let p2 = geom.a2 * (1.0 - e2 * e2);
    let xi = TrigPoly::from_entries(&[(0, 0, 1.0), (1, 0, e2)]);
    let al_t = TrigPoly::from_entries(&[(0, 1, p1 * k), (1, 0, -p1 * m), (0, 0, -p1 * m * e2)]);
    let be_t = TrigPoly::from_entries(&[(0, 1, p1 * l), (1, 0, -p1 * n), (0, 0, -p1 * n * e2)]);
    let ga = TrigPoly::from_entries(&[(0, 1, p2 * e2)]);
    let ka_t = TrigPoly::from_entries(&[(1, 0, p2 * l), (0, 1, p2 * n)]);
    let la_t = TrigPoly::from_entries(&[(1, 0, p2 * k), (0, 1, p2 * m)]);
    let mut mu = TrigPoly::zeros(1, 1);
    mu.add_scaled(&ka_t, -(1.0 + e1 * e1));
    let mut nu = la_t.clone();
    nu.add_scaled(&xi, p1 * e1);
    let mut al = xi.mul(&al_t);
    al.add_scaled(&ga, e1);
    let be = xi.mul(&be_t);
    TrueTables {
        xi,
        al_t,
        be_t,
        ga,
        ka_t,
        la_t,
        mu,
        nu,
        al,
        be,
        p1,
    }
}

pub fn trig_coeffs_true(geom: &MutualGeometry, f2: f64) -> TrigCoeffsTrue {
    let t = true_tables(geom);
    let e1 = geom.e1;
    let ka_tilde = t.ka_t.eval(f2);
    let la_tilde = t.la_t.eval(f2);
    TrigCoeffsTrue {
        al: t.al.eval(f2),
        be: t.be.eval(f2),
        ga: t.ga.eval(f2),
        ka: -e1 * ka_tilde,
        la: e1 * la_tilde,
        mu: t.mu.eval(f2),
        nu: t.nu.eval(f2),
        xi: t.xi.eval(f2),
        eta: e1 / (1.0 + e1 * e1),
        ka_tilde,
        la_tilde,
        al_tilde: t.al_t.eval(f2),
        be_tilde: t.be_t.eval(f2),
    }
}

/// Closed form of the degree-8 trigonometric polynomial in f2 left after
/// extracting xi^2 be^2 from the 4x4 elimination determinant.
pub fn h_of_f2(geom: &MutualGeometry, f2: f64) -> f64 {
    let c = trig_coeffs_true(geom, f2);
    let (e1, p1) = (geom.e1, geom.a1 * (1.0 - geom.e1 * geom.e1));
    let eta = c.eta;
    let (al, ga, la, mu, nu, xi) = (c.al, c.ga, c.la, c.mu, c.nu, c.xi);
    let (alt, bet) = (c.al_tilde, c.be_tilde);
    let bet2 = bet * bet;
    let alt2 = alt * alt;
    let (al2, ga2, mu2, xi2) = (al * al, ga * ga, mu * mu, xi * xi);
    let four_eta2_m1 = 4.0 * eta * eta - 1.0;
    let t1 = four_eta2_m1 * bet2 * bet2 * xi2 * mu2;
    let t2 = 2.0 * bet2 * bet * xi * mu * (la * ga + al * nu - 2.0 * eta * (al * la + ga * nu));
    let t3 = bet2 * (al2 - ga2) * (la * la - nu * nu + four_eta2_m1 * mu2);
    let t4 = -2.0
        * mu
        * bet
        * alt2
        * xi2
        * (alt * (eta * la - nu) - 3.0 * eta * e1.powi(3) * p1 * ga);
    let inner5 = (1.0 - 2.0 * eta * e1) * ga - eta * alt * xi;
    let t5 = mu2 * alt2 * inner5 * inner5;
    let t6 = -2.0 * p1 * e1 * (1.0 - e1 * e1) * eta * mu * bet * ga2
        * (3.0 * e1 * alt * xi - (1.0 - e1 * e1) * ga);
    let inner7 = nu * alt + p1 * e1 * e1 * ga;
    let t7 = -(al2 - ga2) * inner7 * inner7;
    t1 + t2 + t3 + t4 + t5 + t6 + t7
}

/// Direct 4x4 elimination determinant in true anomalies, the oracle for
/// det = xi^2 be^2 h.
pub fn det_grad_matrix_true(geom: &MutualGeometry, f2: f64) -> f64 {
    let c = trig_coeffs_true(geom, f2);
    let (al, be, ga, ka, la, mu, nu) = (c.al, c.be, c.ga, c.ka, c.la, c.mu, c.nu);
    let p2 = al * al + be * be;
    let p1 = 2.0 * al * ga;
    let p0 = ga * ga - be * be;
    let q2 = be * ka - al * la;
    let q1 = be * mu - la * ga - al * nu;
    let q0 = be * ka - ga * nu;
    let m = vec![
        vec![p2, 0.0, q2, 0.0],
        vec![p1, p2, q1, q2],
        vec![p0, p1, q0, q1],
        vec![0.0, p0, 0.0, q0],
    ];
    det_real(&m)
}

/// True-anomaly analogue of [`GPoly`], optionally expressed in the shifted
/// angle v2 = f2 - s2.
#[derive(Debug, Clone)]
pub struct HPoly {
    pub h: Vec<UniPoly>,
    pub a: UniPoly,
    pub b: UniPoly,
    pub v: UniPoly,
    pub s2: f64,
}

fn build_h_table(geom: &MutualGeometry) -> TrigPoly {
    let t = true_tables(geom);
    let e1 = geom.e1;
    let p1 = t.p1;
    let eta = e1 / (1.0 + e1 * e1);
    let bet2 = t.be_t.mul(&t.be_t);
    let bet3 = bet2.mul(&t.be_t);
    let bet4 = bet2.mul(&bet2);
    let alt2 = t.al_t.mul(&t.al_t);
    let xi2 = t.xi.mul(&t.xi);
    let al2 = t.al.mul(&t.al);
    let ga2 = t.ga.mul(&t.ga);
    let mu2 = t.mu.mul(&t.mu);
    let four_eta2_m1 = 4.0 * eta * eta - 1.0;
    let mut out = TrigPoly::zeros(0, 0);
    out.add_scaled(&bet4.mul(&xi2).mul(&mu2), four_eta2_m1);
    // t2 = 2 bet^3 xi mu (la ga + al nu - 2 eta (al la + ga nu))
    let la = scaled(&t.la_t, e1);
    let mut t2_inner = la.mul(&t.ga);
    t2_inner.add_scaled(&t.al.mul(&t.nu), 1.0);
    t2_inner.add_scaled(&t.al.mul(&la), -2.0 * eta);
    t2_inner.add_scaled(&t.ga.mul(&t.nu), -2.0 * eta);
    out.add_scaled(&bet3.mul(&t.xi).mul(&t.mu).mul(&t2_inner), 2.0);
    // t3 = bet^2 (al^2 - ga^2) (la^2 - nu^2 + (4 eta^2 - 1) mu^2)
    let mut sq_diff = al2.clone();
    sq_diff.add_scaled(&ga2, -1.0);
    let mut t3_inner = la.mul(&la);
    t3_inner.add_scaled(&t.nu.mul(&t.nu), -1.0);
    t3_inner.add_scaled(&mu2, four_eta2_m1);
    out.add_scaled(&bet2.mul(&sq_diff).mul(&t3_inner), 1.0);
    // t4 = -2 mu bet alt^2 xi^2 (alt (eta la - nu) - 3 eta e1^3 p1 ga)
    let mut t4_inner = la.clone();
    t4_inner = scaled(&t4_inner, eta);
    t4_inner.add_scaled(&t.nu, -1.0);
    let mut t4_core = t.al_t.mul(&t4_inner);
    t4_core.add_scaled(&t.ga, -3.0 * eta * e1.powi(3) * p1);
    out.add_scaled(&t.mu.mul(&t.be_t).mul(&alt2).mul(&xi2).mul(&t4_core), -2.0);
    // t5 = mu^2 alt^2 ((1 - 2 eta e1) ga - eta alt xi)^2
    let mut inner5 = scaled(&t.ga, 1.0 - 2.0 * eta * e1);
    inner5.add_scaled(&t.al_t.mul(&t.xi), -eta);
    out.add_scaled(&mu2.mul(&alt2).mul(&inner5.mul(&inner5)), 1.0);
    // t6 = -2 p1 e1 (1 - e1^2) eta mu bet ga^2 (3 e1 alt xi - (1 - e1^2) ga)
    let mut t6_inner = scaled(&t.al_t.mul(&t.xi), 3.0 * e1);
    t6_inner.add_scaled(&t.ga, -(1.0 - e1 * e1));
    out.add_scaled(
        &t.mu.mul(&t.be_t).mul(&ga2).mul(&t6_inner),
        -2.0 * p1 * e1 * (1.0 - e1 * e1) * eta,
    );
    // t7 = -(al^2 - ga^2) (nu alt + p1 e1^2 ga)^2
    let mut inner7 = t.nu.mul(&t.al_t);
    inner7.add_scaled(&t.ga, p1 * e1 * e1);
    out.add_scaled(&sq_diff.mul(&inner7.mul(&inner7)), -1.0);
    out
}

fn scaled(p: &TrigPoly, s: f64) -> TrigPoly {
    let mut out = TrigPoly::zeros(0, 0);
    out.add_scaled(p, s);
    out
}

pub fn build_h_poly(geom: &MutualGeometry, s2: f64) -> HPoly {
    let mut table = build_h_table(geom);
    if s2 != 0.0 {
        table = table.shift(s2);
    }
    let h = table_columns(&table, 7);
    let (a, b, v) = reduce_and_resultant(&table);
    HPoly { h, a, b, v, s2 }
}

/// Real roots of the resultant that can be cosines: small imaginary part
/// and magnitude at most 1 + 1e-9, clamped onto [-1, 1].
/// Half-width of the window around a root cluster where nearly multiple
/// roots live. The angle-to-cosine map folds at 0 and pi, so critical
/// points straddling the fold collapse to double roots; interior doubles
/// occur when two points share a cosine. Rounding scatters a cluster of
/// multiplicity m by roughly the m-th root of the coefficient noise: a
/// fold pair next to an interval end forms a near-quadruple root, and
/// resultant coefficients carry around 1e-8 of relative noise, so scatter
/// up to about 1e-2 is routine. Anything this close to the real interval
/// is kept as a polish seed. Roots displaced further than this are lost:
/// that is a genuine accuracy failure of the root backend, not noise, and
/// the check suite is supposed to see it.
const CLUSTER_BAND: f64 = 1.5e-2;

fn cosine_roots(roots: &[Complex64]) -> Vec<f64> {
    roots
        .iter()
        .filter(|z| z.im.abs() <= CLUSTER_BAND && z.re.abs() <= 1.0 + CLUSTER_BAND)
        .map(|z| z.re.clamp(-1.0, 1.0))
        .collect()
}

/// Sines compatible with a resultant root x. The reduced line gives
/// y = -b/a, but near a root cluster the line cannot separate the merged
/// points, so both circle intersections are always seeded alongside it;
/// polishing and the residual gate discard whichever is spurious.
fn sines_for_root(a: &UniPoly, b: &UniPoly, x: f64) -> Vec<f64> {
    let av = a.eval(x);
    let bv = b.eval(x);
    let y = (1.0 - x * x).max(0.0).sqrt();
    let mut out = vec![y, -y];
    if av.abs() >= 1e-12 * bv.abs().max(1e-30) {
        out.push(-bv / av);
    }
    out
}

/// Cosine candidates for the first anomaly from the two quadratics it
/// satisfies: the linear combination when well conditioned, plus both roots
/// of the first quadratic. Two critical points that nearly share the second
/// anomaly give a resultant double root, and at such a root the linear
/// elimination can only ever name one of the two first anomalies; the
/// quadratic pair covers the other. Spurious extras die in polishing.
fn common_cosines(a1q: f64, b1q: f64, c1q: f64, a2q: f64, b2q: f64, c2q: f64) -> Vec<f64> {
    let den = a1q * b2q - a2q * b1q;
    let scale = a1q.abs().max(b1q.abs()).max(c1q.abs()) * a2q.abs().max(b2q.abs()).max(c2q.abs());
    let mut out = Vec::new();
    if den.abs() >= 1e-12 * scale.max(1e-300) {
        out.push(((c1q * a2q - c2q * a1q) / den).clamp(-1.0, 1.0));
    }
    let disc = b1q * b1q - 4.0 * a1q * c1q;
    if disc >= 0.0 && a1q != 0.0 {
        let sq = disc.sqrt();
        out.push(((-b1q + sq) / (2.0 * a1q)).clamp(-1.0, 1.0));
        out.push(((-b1q - sq) / (2.0 * a1q)).clamp(-1.0, 1.0));
    }
    out
}

const NEWTON_SEEDS: [f64; 4] = [
    std::f64::consts::FRAC_PI_4,
    3.0 * std::f64::consts::FRAC_PI_4,
    5.0 * std::f64::consts::FRAC_PI_4,
    7.0 * std::f64::consts::FRAC_PI_4,
];

/// Eccentric-anomaly elimination. The univariate backend is simultaneous
/// iteration on the monomial form when `use_chebyshev` is false (TE) and
/// colleague-matrix eigenvalues when true (TEC).
pub fn solve_te(geom: &MutualGeometry, use_chebyshev: bool) -> Result<Vec<AnomalyPair>, SolveError> {
    let tables = ecc_tables(geom);
    let table_scale = [
        &tables.lam,
        &tables.mu,
        &tables.nu,
        &tables.al,
        &tables.be,
        &tables.ga,
    ]
    .iter()
    .fold(0.0f64, |acc, t| acc.max(t.max_abs_coeff()));
    let gp = build_g_poly(geom);
    let g_scale = gp
        .g
        .iter()
        .fold(0.0f64, |acc, p| acc.max(p.max_abs_coeff()));
    if g_scale <= 1e-14 * table_scale.powi(8) {
        return Err(SolveError::DegenerateSystem(
            "eliminated trigonometric polynomial vanishes identically",
        ));
    }
    let roots = if use_chebyshev {
        colleague_roots(&to_chebyshev(&gp.v))?
    } else {
        roots_simultaneous(&gp.v)?
    };
    let mut out = Vec::new();
    for x in cosine_roots(&roots) {
        let near_fold = 1.0 - x.abs() <= CLUSTER_BAND;
        for y in sines_for_root(&gp.a, &gp.b, x) {
            let u2 = norm_angle(y.atan2(x));
            let c = trig_coeffs_ecc(geom, u2);
            if c.be.abs() < 1e-10 * geom.a1 || near_fold {
                // the back-substitution divides by be and amplifies the
                // root displacement a fold cluster carries: hand the fixed
                // u2 to plain Newton seeds as well
                for seed in NEWTON_SEEDS {
                    push_dedup(&mut out, AnomalyPair::eccentric(seed, u2));
                }
                if c.be.abs() < 1e-10 * geom.a1 {
                    continue;
                }
            }
            let a1q = c.al * c.al + c.be * c.be;
            let b1q = 2.0 * c.al * c.ga;
            let c1q = c.ga * c.ga - c.be * c.be;
            let a2q = -c.al * c.lam;
            let b2q = c.be * c.mu - c.lam * c.ga - c.al * c.nu;
            let c2q = -c.ga * c.nu;
            for cos_u1 in common_cosines(a1q, b1q, c1q, a2q, b2q, c2q) {
                let sin_u1 = -(c.al * cos_u1 + c.ga) / c.be;
                push_dedup(
                    &mut out,
                    AnomalyPair::eccentric(norm_angle(sin_u1.atan2(cos_u1)), u2),
                );
                // a displaced cluster root can flip the line's sine sign
                let u1 = cos_u1.acos();
                push_dedup(&mut out, AnomalyPair::eccentric(norm_angle(u1), u2));
                push_dedup(&mut out, AnomalyPair::eccentric(norm_angle(-u1), u2));
            }
        }
    }
    Ok(out)
}

/// True-anomaly elimination with optional shifts in both anomalies; zero
/// shifts is TT, nonzero is TTS.
pub fn solve_tt(geom: &MutualGeometry, s1: f64, s2: f64) -> Result<Vec<AnomalyPair>, SolveError> {
    let tables = true_tables(geom);
    let table_scale = [
        &tables.xi,
        &tables.al_t,
        &tables.be_t,
        &tables.ga,
        &tables.ka_t,
        &tables.la_t,
        &tables.mu,
        &tables.nu,
    ]
    .iter()
    .fold(0.0f64, |acc, t| acc.max(t.max_abs_coeff()));
    let hp = build_h_poly(geom, s2);
    let h_scale = hp
        .h
        .iter()
        .fold(0.0f64, |acc, p| acc.max(p.max_abs_coeff()));
    if h_scale <= 1e-14 * table_scale.powi(8) {
        return Err(SolveError::DegenerateSystem(
            "eliminated trigonometric polynomial vanishes identically",
        ));
    }
    let roots = roots_simultaneous(&hp.v)?;
    let (sin_s1, cos_s1) = s1.sin_cos();
    let mut out = Vec::new();
    for x in cosine_roots(&roots) {
        let near_fold = 1.0 - x.abs() <= CLUSTER_BAND;
        for y in sines_for_root(&hp.a, &hp.b, x) {
            let f2 = norm_angle(y.atan2(x) + s2);
            let c = trig_coeffs_true(geom, f2);
            let big_a = c.al * cos_s1 + c.be * sin_s1;
            let big_b = c.be * cos_s1 - c.al * sin_s1;
            let big_c = c.ga;
            let cos_2 = cos_s1 * cos_s1 - sin_s1 * sin_s1;
            let sin_2 = 2.0 * sin_s1 * cos_s1;
            let big_d = c.ka * cos_2 + c.la * sin_2;
            let big_e = c.la * cos_2 - c.ka * sin_2;
            let big_f = c.mu * cos_s1 + c.nu * sin_s1;
            let big_g = c.nu * cos_s1 - c.mu * sin_s1;
            let big_h = c.ka * sin_s1 * sin_s1 - c.la * sin_s1 * cos_s1 + c.ka;
            if big_b.abs() < 1e-10 * geom.a1 || near_fold {
                for seed in NEWTON_SEEDS {
                    push_dedup(&mut out, AnomalyPair::true_anom(seed, f2));
                }
                if big_b.abs() < 1e-10 * geom.a1 {
                    continue;
                }
            }
            let a1q = big_a * big_a + big_b * big_b;
            let b1q = 2.0 * big_a * big_c;
            let c1q = big_c * big_c - big_b * big_b;
            let a2q = big_d * big_b - big_e * big_a;
            let b2q = big_f * big_b - big_e * big_c - big_g * big_a;
            let c2q = big_h * big_b - big_g * big_c;
            for cos_v1 in common_cosines(a1q, b1q, c1q, a2q, b2q, c2q) {
                let sin_v1 = -(big_a * cos_v1 + big_c) / big_b;
                let f1 = norm_angle(sin_v1.atan2(cos_v1) + s1);
                push_dedup(&mut out, AnomalyPair::true_anom(f1, f2));
                // a displaced cluster root can flip the line's sine sign
                let v1 = cos_v1.acos();
                push_dedup(&mut out, AnomalyPair::true_anom(norm_angle(v1 + s1), f2));
                push_dedup(&mut out, AnomalyPair::true_anom(norm_angle(-v1 + s1), f2));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::critpoints::{finish, torus_distance};
    use crate::orbits::{mutual_geometry, KeplerianElements};
    use rand::{Rng, SeedableRng};

    fn inclined_pair() -> MutualGeometry {
        let el1 = KeplerianElements::from_semimajor(
            "a",
            1.2,
            0.3,
            10f64.to_radians(),
            20f64.to_radians(),
            30f64.to_radians(),
        )
        .unwrap();
        let el2 = KeplerianElements::from_semimajor(
            "b",
            1.0,
            0.2,
            40f64.to_radians(),
            50f64.to_radians(),
            60f64.to_radians(),
        )
        .unwrap();
        mutual_geometry(&el1, &el2)
    }

    #[test]
    fn coefficient_invariants_hold() {
        let geom = inclined_pair();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let f2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let c = trig_coeffs_true(&geom, f2);
            assert!(c.xi > 0.0);
            assert!((c.ka - c.mu * c.eta).abs() <= 1e-12 * c.mu.abs().max(1.0));
            assert!((c.al - (c.xi * c.al_tilde + geom.e1 * c.ga)).abs() <= 1e-12);
            let p1 = geom.a1 * (1.0 - geom.e1 * geom.e1);
            assert!((c.nu - (p1 * geom.e1 * c.xi + c.la_tilde)).abs() <= 1e-12);
            let ce = trig_coeffs_ecc(&geom, f2);
            assert!((ce.lam - geom.a1 * geom.e1 * geom.e1).abs() < 1e-15);
        }
    }

    #[test]
    fn determinant_factorizations() {
        let geom = inclined_pair();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(10);
        for _ in 0..10 {
            let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let ce = trig_coeffs_ecc(&geom, u2);
            if ce.be.abs() < 1e-6 {
                continue;
            }
            let lhs = det_grad_matrix_ecc(&geom, u2);
            let rhs = ce.be * ce.be * g_of_u2(&geom, u2);
            assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(1.0));

            let ct = trig_coeffs_true(&geom, u2);
            if ct.be.abs() < 1e-6 {
                continue;
            }
            let lhs = det_grad_matrix_true(&geom, u2);
            let rhs = ct.xi * ct.xi * ct.be * ct.be * h_of_f2(&geom, u2);
            assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(1.0));
        }
    }

    #[test]
    fn factorization_with_circular_inner_orbit() {
        let el1 = KeplerianElements::from_semimajor("c", 1.0, 0.0, 0.4, 0.3, 0.2).unwrap();
        let el2 = KeplerianElements::from_semimajor(
            "b",
            1.5,
            0.2,
            40f64.to_radians(),
            50f64.to_radians(),
            60f64.to_radians(),
        )
        .unwrap();
        let geom = mutual_geometry(&el1, &el2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for _ in 0..10 {
            let f2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let ct = trig_coeffs_true(&geom, f2);
            assert_eq!(ct.eta, 0.0);
            if ct.be.abs() < 1e-6 {
                continue;
            }
            let lhs = det_grad_matrix_true(&geom, f2);
            let rhs = ct.xi * ct.xi * ct.be * ct.be * h_of_f2(&geom, f2);
            assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(1.0));
        }
    }

    #[test]
    fn g_table_matches_closed_form_and_degrees() {
        let geom = inclined_pair();
        let gp = build_g_poly(&geom);
        let degrees: Vec<usize> = gp.g.iter().map(|p| p.degree()).collect();
        assert_eq!(degrees, vec![6, 6, 6, 5, 4, 3, 2]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10 {
            let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let (y, x) = u2.sin_cos();
            let mut acc = 0.0;
            let mut yj = 1.0;
            for p in &gp.g {
                acc += p.eval(x) * yj;
                yj *= y;
            }
            let want = g_of_u2(&geom, u2);
            assert!((acc - want).abs() <= 1e-10 * want.abs().max(1.0));
            // circle reduction agrees pointwise
            let red = gp.a.eval(x) * y + gp.b.eval(x);
            assert!((red - want).abs() <= 1e-10 * want.abs().max(1.0));
        }
        assert!(gp.v.degree() <= 16);
    }

    #[test]
    fn h_table_matches_closed_form_and_degrees() {
        let geom = inclined_pair();
        let hp = build_h_poly(&geom, 0.0);
        let degrees: Vec<usize> = hp.h.iter().map(|p| p.degree()).collect();
        assert_eq!(degrees, vec![8, 7, 6, 5, 4, 3, 2]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(14);
        for _ in 0..10 {
            let f2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let (y, x) = f2.sin_cos();
            let mut acc = 0.0;
            let mut yj = 1.0;
            for p in &hp.h {
                acc += p.eval(x) * yj;
                yj *= y;
            }
            let want = h_of_f2(&geom, f2);
            assert!((acc - want).abs() <= 1e-10 * want.abs().max(1.0));
        }
        assert!(hp.v.degree() <= 16);
    }

    #[test]
    fn concentric_circles_degenerate() {
        let el1 = KeplerianElements::from_semimajor("c1", 1.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let el2 = KeplerianElements::from_semimajor("c2", 2.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        let geom = mutual_geometry(&el1, &el2);
        for u2 in [0.3, 1.1, 2.9] {
            assert!(g_of_u2(&geom, u2).abs() < 1e-9);
            assert!(h_of_f2(&geom, u2).abs() < 1e-9);
        }
        match solve_te(&geom, false) {
            Err(SolveError::DegenerateSystem(_)) => {}
            other => panic!("expected degenerate, got {other:?}"),
        }
        match solve_tt(&geom, 0.0, 0.0) {
            Err(SolveError::DegenerateSystem(_)) => {}
            other => panic!("expected degenerate, got {other:?}"),
        }
    }

    fn match_sets(a: &[AnomalyPair], b: &[AnomalyPair], tol: f64) {
        assert_eq!(a.len(), b.len(), "set sizes differ: {} vs {}", a.len(), b.len());
        for p in a {
            assert!(
                b.iter().any(|q| torus_distance(p, q) < tol),
                "unmatched point {p:?}"
            );
        }
    }

    #[test]
    fn all_methods_agree_on_generic_pair() {
        let geom = inclined_pair();
        let oe = finish(&geom, "oe", &crate::solver_ordinary::solve_oe(&geom).unwrap());
        let te = finish(&geom, "te", &solve_te(&geom, false).unwrap());
        let tec = finish(&geom, "tec", &solve_te(&geom, true).unwrap());
        let tt = finish(&geom, "tt", &solve_tt(&geom, 0.0, 0.0).unwrap());
        let tts = finish(&geom, "tts", &solve_tt(&geom, 0.9, 0.9).unwrap());
        let oe_pairs: Vec<AnomalyPair> = oe.points.iter().map(|p| p.ecc).collect();
        for set in [&te, &tec] {
            let pairs: Vec<AnomalyPair> = set.points.iter().map(|p| p.ecc).collect();
            match_sets(&oe_pairs, &pairs, 1e-6);
        }
        for set in [&tt, &tts] {
            let pairs: Vec<AnomalyPair> = set.points.iter().map(|p| p.ecc).collect();
            match_sets(&oe_pairs, &pairs, 1e-6);
        }
        assert!(oe.checks.morse.pass && oe.checks.weierstrass);
    }
}
