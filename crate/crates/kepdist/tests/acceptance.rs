//! End-to-end acceptance suite. Each test prints one verdict line
//! (visible with `cargo test -- --nocapture`) and asserts it.

use kepdist::bounds::{circular_harness, mutual_nodal, nodal_harness};
use kepdist::catalog::{run_method, run_pair, Method, MethodChoice};
use kepdist::critpoints::{moid, torus_distance, CriticalSet, PointKind};
use kepdist::orbits::{mutual_geometry, KeplerianElements, MutualGeometry};
use kepdist::planar::planar_census;
use kepdist::polyalg::{colleague_roots, to_chebyshev, ChebPoly, UniPoly};
use kepdist::solver_ordinary::{build_oe_system, det_full_at, det_s_hat};
use kepdist::solver_trig::{
    build_g_poly, build_h_poly, det_grad_matrix_ecc, det_grad_matrix_true, g_of_u2, h_of_f2,
    trig_coeffs_ecc, trig_coeffs_true,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn verdict(n: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {n:2} ({name}): {} {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {n} ({name}) failed: {detail}");
}

fn golden_pair() -> (KeplerianElements, KeplerianElements) {
    let el1 = KeplerianElements::from_pericenter(
        "orb1",
        0.165822752213,
        0.845769258258,
        0.0,
        0.0,
        9.0946634780f64.to_radians(),
    )
    .unwrap();
    let el2 =
        KeplerianElements::from_semimajor("orb2", 1.25, 0.2, 0.0, 0.0, 10f64.to_radians())
            .unwrap();
    (el1, el2)
}

const GOLDEN_ROWS: [(f64, f64, f64, PointKind); 10] = [
    (116.0625325, 153.9899286, 0.0, PointKind::Minimum),
    (243.6382848, 203.6865581, 0.0, PointKind::Minimum),
    (179.8948964, 178.9198966, 0.4845432, PointKind::Saddle),
    (1.6247542, 2.0946456, 0.8341185, PointKind::Minimum),
    (24.0090191, 38.3799855, 0.8401907, PointKind::Saddle),
    (334.2162041, 317.5202237, 0.8445898, PointKind::Saddle),
    (324.5270438, 126.4762243, 1.6264123, PointKind::Saddle),
    (34.8254033, 231.0377067, 1.6334795, PointKind::Saddle),
    (0.9077692, 180.7796090, 1.6658557, PointKind::Maximum),
    (179.9346562, 358.9929507, 2.9845260, PointKind::Maximum),
];

fn wrap_deg(a: f64, b: f64) -> f64 {
    let mut d = (a - b).rem_euclid(360.0);
    if d > 180.0 {
        d = 360.0 - d;
    }
    d
}

fn matches_golden(set: &CriticalSet) -> Result<(), String> {
    if set.points.len() != 10 {
        return Err(format!("{} points instead of 10", set.points.len()));
    }
    for (u1, u2, d, kind) in GOLDEN_ROWS {
        let found = set.points.iter().find(|p| {
            wrap_deg(p.ecc.v1.to_degrees(), u1) < 1e-4 && wrap_deg(p.ecc.v2.to_degrees(), u2) < 1e-4
        });
        let Some(p) = found else {
            return Err(format!("no point near ({u1}, {u2}) deg"));
        };
        if (p.d - d).abs() > 1e-6 {
            return Err(format!("distance at ({u1}, {u2}): {} vs {}", p.d, d));
        }
        if p.kind != kind {
            return Err(format!("type at ({u1}, {u2}): {:?} vs {:?}", p.kind, kind));
        }
    }
    Ok(())
}

fn random_elements(rng: &mut ChaCha8Rng, name: &str, e_max: f64) -> KeplerianElements {
    KeplerianElements::from_semimajor(
        name,
        rng.gen_range(0.3..3.0),
        rng.gen_range(0.0..e_max),
        rng.gen_range(0.0..std::f64::consts::PI),
        rng.gen_range(0.0..std::f64::consts::TAU),
        rng.gen_range(0.0..std::f64::consts::TAU),
    )
    .unwrap()
}

fn random_geometry(rng: &mut ChaCha8Rng, e_max: f64) -> MutualGeometry {
    let el1 = random_elements(rng, "a", e_max);
    let el2 = random_elements(rng, "b", e_max);
    mutual_geometry(&el1, &el2)
}

#[test]
fn acceptance_01_golden_reproduction() {
    let (el1, el2) = golden_pair();
    let geom = mutual_geometry(&el1, &el2);
    let mut detail = String::new();
    let mut pass = true;
    for m in Method::ALL {
        let start = std::time::Instant::now();
        let set = run_method(&geom, m).expect("golden pair must solve");
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let verdict = matches_golden(&set);
        let minima = set
            .points
            .iter()
            .filter(|p| p.kind == PointKind::Minimum)
            .count();
        let maxima = set
            .points
            .iter()
            .filter(|p| p.kind == PointKind::Maximum)
            .count();
        let zeros = set.points.iter().filter(|p| p.d < 1e-6).count();
        let ok =
            verdict.is_ok() && ms < 50.0 && minima == 3 && maxima == 2 && zeros == 2;
        if !ok {
            pass = false;
            detail.push_str(&format!(
                "[{} {:.1}ms {}] ",
                m,
                ms,
                verdict.err().unwrap_or_else(|| format!(
                    "min/max/zero counts {minima}/{maxima}/{zeros}"
                ))
            ));
        } else {
            detail.push_str(&format!("[{m} {ms:.1}ms ok] "));
        }
    }
    verdict(1, "golden table reproduction", pass, detail.trim());
}

#[test]
fn acceptance_02_morse_identity() {
    let (el1, el2) = golden_pair();
    let geom = mutual_geometry(&el1, &el2);
    let set = run_method(&geom, Method::Tts).unwrap();
    let m = set.checks.morse;
    let golden_ok = m.total == 10 && m.maxima == 2 && m.minima == 3 && m.pass;

    let violations: usize = (0..10_000usize)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(1_000 + k as u64);
            let geom = random_geometry(&mut rng, 0.8);
            let mut bad = 0usize;
            for m in Method::ALL {
                let Ok(set) = run_method(&geom, m) else {
                    continue;
                };
                let c = set.checks;
                if c.weierstrass && c.morse.applicable && !c.morse.pass {
                    bad += 1;
                }
            }
            bad
        })
        .sum();
    let pass = golden_ok && violations == 0;
    verdict(
        2,
        "Morse count identity",
        pass,
        &format!(
            "golden N=2(M+m) {}; W-passing outputs violating the identity without a degenerate flag: {violations}",
            if golden_ok { "holds" } else { "fails" }
        ),
    );
}

#[test]
fn acceptance_03_factorization_identities() {
    // error is measured against each pair's determinant magnitude: both
    // sides share every root, so a pointwise quotient at a root is 0/0
    let mut worst = 0.0f64;
    for pair_idx in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(30_000 + pair_idx);
        let geom = random_geometry(&mut rng, 0.9);
        let sys = build_oe_system(&geom);
        let Ok(shat) = det_s_hat(&sys) else {
            continue;
        };
        let probe: Vec<f64> = (0..16).map(|k| -2.0 + 0.25 * k as f64 + 0.11).collect();
        let m_oe = probe
            .iter()
            .fold(0.0f64, |acc, &t| acc.max(det_full_at(&sys, t).abs()));
        let m_te = probe
            .iter()
            .fold(0.0f64, |acc, &t| acc.max(det_grad_matrix_ecc(&geom, t).abs()));
        let m_tt = probe.iter().fold(0.0f64, |acc, &t| {
            acc.max(det_grad_matrix_true(&geom, t).abs())
        });
        for _ in 0..10 {
            let t: f64 = rng.gen_range(-2.0..2.0);
            let lhs = det_full_at(&sys, t);
            let rhs = (1.0 + t * t).powi(2) * shat.eval(t);
            worst = worst.max((lhs - rhs).abs() / m_oe);

            let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let ce = trig_coeffs_ecc(&geom, u2);
            let lhs = det_grad_matrix_ecc(&geom, u2);
            let rhs = ce.be * ce.be * g_of_u2(&geom, u2);
            worst = worst.max((lhs - rhs).abs() / m_te);

            let ct = trig_coeffs_true(&geom, u2);
            let lhs = det_grad_matrix_true(&geom, u2);
            let rhs = ct.xi * ct.xi * ct.be * ct.be * h_of_f2(&geom, u2);
            worst = worst.max((lhs - rhs).abs() / m_tt);
        }
    }
    verdict(
        3,
        "determinant factorizations",
        worst <= 1e-9,
        &format!("worst relative error {worst:.2e} (tolerance 1e-9)"),
    );
}

#[test]
fn acceptance_04_degree_contracts() {
    let mut shat_max = 0usize;
    let mut v_max = 0usize;
    let mut vt_max = 0usize;
    let mut pattern_ok = true;
    let mut attained = 0usize;
    for pair_idx in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(40_000 + pair_idx);
        let geom = random_geometry(&mut rng, 0.9);
        let sys = build_oe_system(&geom);
        let Ok(shat) = det_s_hat(&sys) else {
            pattern_ok = false;
            continue;
        };
        let gp = build_g_poly(&geom);
        let hp = build_h_poly(&geom, 0.0);
        shat_max = shat_max.max(shat.degree());
        v_max = v_max.max(gp.v.degree());
        vt_max = vt_max.max(hp.v.degree());
        if shat.degree() == 16 && gp.v.degree() == 16 && hp.v.degree() == 16 {
            attained += 1;
        }
        let gd: Vec<usize> = gp.g.iter().map(|p| p.degree()).collect();
        let hd: Vec<usize> = hp.h.iter().map(|p| p.degree()).collect();
        if gd != vec![6, 6, 6, 5, 4, 3, 2] || hd != vec![8, 7, 6, 5, 4, 3, 2] {
            pattern_ok = false;
        }
    }
    let pass = shat_max == 16 && v_max == 16 && vt_max == 16 && pattern_ok && attained >= 95;
    verdict(
        4,
        "degree contracts",
        pass,
        &format!(
            "max degrees {shat_max}/{v_max}/{vt_max}, all 16 attained on {attained}/100 pairs, coefficient patterns {}",
            if pattern_ok { "exact" } else { "broken" }
        ),
    );
}

fn sets_match(a: &CriticalSet, b: &CriticalSet, tol: f64) -> bool {
    a.points.len() == b.points.len()
        && a.points.iter().all(|p| {
            b.points
                .iter()
                .any(|q| torus_distance(&p.ecc, &q.ecc) < tol)
        })
}

#[test]
fn acceptance_05_cross_method_consistency() {
    let outcomes: Vec<(bool, bool)> = (0..1000usize)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(50_000 + k as u64);
            let geom = random_geometry(&mut rng, 0.9);
            let oes = run_method(&geom, Method::Oes);
            let tts = run_method(&geom, Method::Tts);
            match (oes, tts) {
                (Ok(a), Ok(b)) => {
                    let matched = sets_match(&a, &b, 1e-6);
                    let flagged = !a.checks.all_pass() || !b.checks.all_pass();
                    (matched, flagged)
                }
                _ => (false, true),
            }
        })
        .collect();
    let matched = outcomes.iter().filter(|(m, _)| *m).count();
    let unexplained = outcomes.iter().filter(|(m, f)| !m && !f).count();
    let pass = matched >= 995 && unexplained == 0;
    verdict(
        5,
        "OES vs TTS consistency",
        pass,
        &format!("{matched}/1000 matched 1-to-1; unexplained mismatches {unexplained}"),
    );
}

#[test]
fn acceptance_06_scaled_error_table() {
    #[derive(Default, Clone, Copy)]
    struct Rates {
        combined: usize,
        morse: usize,
    }
    let totals: Vec<[Rates; 3]> = (0..100_000usize)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(60_000 + k as u64);
            let geom = random_geometry(&mut rng, 0.95);
            let mut out = [Rates::default(); 3];
            for (slot, m) in [Method::Tts, Method::Te, Method::Tec].iter().enumerate() {
                match run_method(&geom, *m) {
                    Ok(set) => {
                        let c = set.checks;
                        if !c.all_pass() {
                            out[slot].combined = 1;
                        }
                        if c.morse.applicable && !c.morse.pass {
                            out[slot].morse = 1;
                        }
                    }
                    Err(_) => {
                        // a solver failure counts against the combined rate but
                        // says nothing about Morse counts
                        out[slot].combined = 1;
                    }
                }
            }
            out
        })
        .collect();
    let mut acc = [Rates::default(); 3];
    for row in &totals {
        for i in 0..3 {
            acc[i].combined += row[i].combined;
            acc[i].morse += row[i].morse;
        }
    }
    let n = totals.len() as f64;
    let tts_rate = 100.0 * acc[0].combined as f64 / n;
    let te_rate = 100.0 * acc[1].combined as f64 / n;
    let tec_morse = acc[2].morse;
    let te_morse = acc[1].morse;
    let pass = tts_rate <= 0.05 && acc[0].combined < acc[1].combined && tec_morse < te_morse;
    verdict(
        6,
        "scaled failure-rate table",
        pass,
        &format!(
            "TTS {:.4}% (n={}), TE {:.4}% (n={}), Morse fails TEC {} vs TE {}",
            tts_rate, acc[0].combined, te_rate, acc[1].combined, tec_morse, te_morse
        ),
    );
}

#[test]
fn acceptance_07_circular_bound_harness() {
    let rows = circular_harness(20, 20, 1.0, 15, 15);
    let violations = rows
        .iter()
        .filter(|r| r.empirical_max > r.bound + 1e-9)
        .count();
    let tight = rows
        .iter()
        .filter(|r| r.empirical_max >= 0.98 * r.bound)
        .count();
    let pass = violations == 0 && tight * 10 >= rows.len() * 9;
    verdict(
        7,
        "circular bound harness",
        pass,
        &format!(
            "{} cells, {violations} violations, {}% within 2% of the bound",
            rows.len(),
            100 * tight / rows.len()
        ),
    );
}

#[test]
fn acceptance_08_nodal_bound_harness() {
    let mut violations = 0usize;
    let mut cells = 0usize;
    for e2 in [0.2, 0.3, 0.4, 0.5] {
        let q2 = 1.0 / (1.0 + e2);
        for row in nodal_harness(20, 20, q2, e2, 15, 24) {
            cells += 1;
            if row.empirical_max > row.bound + 1e-9 {
                violations += 1;
            }
        }
    }
    // nodal distance dominates the true minimum on random spatial pairs
    let bad_pairs: usize = (0..300usize)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(80_000 + k as u64);
            let el1 = random_elements(&mut rng, "a", 0.9);
            let el2 = random_elements(&mut rng, "b", 0.9);
            let Ok(m) = mutual_nodal(&el1, &el2) else {
                return 0;
            };
            let geom = mutual_geometry(&el1, &el2);
            let Ok(set) = run_method(&geom, Method::Tts) else {
                return 0;
            };
            let Ok((dmin, _)) = moid(&set) else {
                return 0;
            };
            usize::from(dmin > m.delta_nod + 1e-7)
        })
        .sum();
    let pass = violations == 0 && bad_pairs == 0;
    verdict(
        8,
        "nodal bound harness",
        pass,
        &format!("{cells} cells, {violations} bound violations; d_min>delta_nod on {bad_pairs}/300 pairs"),
    );
}

#[test]
fn acceptance_09_planar_census() {
    let general = planar_census(10_000, 90_001, false);
    let circular = planar_census(10_000, 90_002, true);
    let pass = general.max_count <= 12 && circular.max_count <= 6;
    verdict(
        9,
        "planar census",
        pass,
        &format!(
            "max counts: general {} (<=12), one-circular {} (<=6); histogram {:?}",
            general.max_count, circular.max_count, general.histogram
        ),
    );
}

#[test]
fn acceptance_10_numerical_kernels() {
    let mut rng = ChaCha8Rng::seed_from_u64(100_000);
    // Chebyshev round trip on random degree-16 polynomials
    let mut cheb_err = 0.0f64;
    for _ in 0..50 {
        let coeffs: Vec<f64> = (0..17).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let p = UniPoly::new(coeffs);
        let back = to_chebyshev(&p).to_monomial();
        for k in 0..=16 {
            let a = p.c.get(k).copied().unwrap_or(0.0);
            let b = back.c.get(k).copied().unwrap_or(0.0);
            cheb_err = cheb_err.max((a - b).abs());
        }
    }
    // colleague eigenvalues of T_16
    let mut t16 = vec![0.0; 17];
    t16[16] = 1.0;
    let mut roots: Vec<f64> = colleague_roots(&ChebPoly { c: t16 })
        .unwrap()
        .iter()
        .map(|z| z.re)
        .collect();
    roots.sort_by(f64::total_cmp);
    let mut want: Vec<f64> = (1..=16)
        .map(|k| ((2 * k - 1) as f64 * std::f64::consts::PI / 32.0).cos())
        .collect();
    want.sort_by(f64::total_cmp);
    let mut col_err = 0.0f64;
    for (a, b) in roots.iter().zip(want.iter()) {
        col_err = col_err.max((a - b).abs());
    }
    // finite-difference gradient and Hessian in both parametrizations;
    // the second difference needs a larger step or roundoff drowns it
    let mut grad_err = 0.0f64;
    let mut hess_err = 0.0f64;
    let hg = 1e-6;
    let h = 1e-4;
    for _ in 0..1000 {
        let geom = random_geometry(&mut rng, 0.9);
        let scale = geom.d2_scale();
        let u1: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        for ecc in [true, false] {
            let f = |a: f64, b: f64| {
                if ecc {
                    geom.d2_ecc(a, b)
                } else {
                    geom.d2_true(a, b)
                }
            };
            let g = if ecc {
                geom.grad_ecc(u1, u2)
            } else {
                geom.grad_true(u1, u2)
            };
            let hm = if ecc {
                geom.hess_ecc(u1, u2)
            } else {
                geom.hess_true(u1, u2)
            };
            let fd_g = [
                (f(u1 + hg, u2) - f(u1 - hg, u2)) / (2.0 * hg),
                (f(u1, u2 + hg) - f(u1, u2 - hg)) / (2.0 * hg),
            ];
            let fd_h00 = (f(u1 + h, u2) - 2.0 * f(u1, u2) + f(u1 - h, u2)) / (h * h);
            let fd_h11 = (f(u1, u2 + h) - 2.0 * f(u1, u2) + f(u1, u2 - h)) / (h * h);
            let fd_h01 = (f(u1 + h, u2 + h) - f(u1 + h, u2 - h) - f(u1 - h, u2 + h)
                + f(u1 - h, u2 - h))
                / (4.0 * h * h);
            grad_err = grad_err
                .max((fd_g[0] - g[0]).abs() / scale)
                .max((fd_g[1] - g[1]).abs() / scale);
            hess_err = hess_err
                .max((fd_h00 - hm[0][0]).abs() / scale)
                .max((fd_h11 - hm[1][1]).abs() / scale)
                .max((fd_h01 - hm[0][1]).abs() / scale);
        }
    }
    let pass = cheb_err <= 1e-12 && col_err <= 1e-10 && grad_err <= 1e-6 && hess_err <= 1e-5;
    verdict(
        10,
        "numerical kernels",
        pass,
        &format!(
            "cheb round-trip {cheb_err:.2e}, colleague {col_err:.2e}, grad FD {grad_err:.2e}, hess FD {hess_err:.2e}"
        ),
    );
}

fn refines_into_set(geom: &MutualGeometry, set: &CriticalSet, u1: f64, u2: f64) -> bool {
    let (mut a, mut b) = (u1, u2);
    for _ in 0..80 {
        let g = geom.grad_ecc(a, b);
        let h = geom.hess_ecc(a, b);
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        if det.abs() < 1e-14 * geom.d2_scale().powi(2) {
            return false;
        }
        let da = (g[0] * h[1][1] - g[1] * h[0][1]) / det;
        let db = (g[1] * h[0][0] - g[0] * h[1][0]) / det;
        let clamp = 0.2f64;
        a -= da.clamp(-clamp, clamp);
        b -= db.clamp(-clamp, clamp);
        if da.abs().max(db.abs()) < 1e-12 {
            break;
        }
    }
    let g = geom.grad_ecc(a, b);
    if g[0].hypot(g[1]) > 1e-8 * geom.d2_scale() {
        return false;
    }
    let refined = kepdist::orbits::AnomalyPair::eccentric(a, b);
    set.points
        .iter()
        .any(|p| torus_distance(&p.ecc, &refined) < 1e-6)
}

#[test]
fn acceptance_11_brute_force_oracle() {
    let n = 720usize;
    let results: Vec<(bool, bool)> = (0..100usize)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(110_000 + k as u64);
            let el1 = random_elements(&mut rng, "a", 0.85);
            let el2 = random_elements(&mut rng, "b", 0.85);
            let geom = mutual_geometry(&el1, &el2);
            let records = run_pair(&el1, &el2, MethodChoice::All);
            let consensus = records.iter().find(|r| r.method.starts_with("consensus"));
            let Some(rec) = consensus else {
                return (false, false);
            };
            let Some(dmin) = rec.d_min else {
                return (false, false);
            };
            let set = rec.set.as_ref().unwrap();
            let minima: Vec<_> = set
                .points
                .iter()
                .filter(|p| p.acts_as_minimum)
                .map(|p| p.ecc)
                .collect();
            // dense squared-distance grid
            let step = std::f64::consts::TAU / n as f64;
            let mut d2 = vec![0.0f64; n * n];
            for i in 0..n {
                for j in 0..n {
                    d2[i * n + j] = geom.d2_ecc(i as f64 * step, j as f64 * step);
                }
            }
            let grid_min = d2.iter().cloned().fold(f64::INFINITY, f64::min);
            let floor_ok = grid_min.max(0.0).sqrt() >= dmin - 1e-9 * geom.d2_scale().sqrt();
            // every local minimum of the grid (strictly below all eight
            // neighbors; four-neighbor tests mislabel diagonal saddles)
            // must sit within two steps of a computed minimum
            let mut locals_ok = true;
            for i in 0..n {
                for j in 0..n {
                    let c = d2[i * n + j];
                    let im = (i + n - 1) % n;
                    let ip = (i + 1) % n;
                    let jm = (j + n - 1) % n;
                    let jp = (j + 1) % n;
                    let neighbors = [
                        d2[im * n + j],
                        d2[ip * n + j],
                        d2[i * n + jm],
                        d2[i * n + jp],
                        d2[im * n + jm],
                        d2[im * n + jp],
                        d2[ip * n + jm],
                        d2[ip * n + jp],
                    ];
                    if neighbors.iter().all(|&v| c < v) {
                        let u1 = i as f64 * step;
                        let u2 = j as f64 * step;
                        let near = minima.iter().any(|m| {
                            let w1 = kepdist::orbits::norm_angle(m.v1 - u1 + std::f64::consts::PI)
                                - std::f64::consts::PI;
                            let w2 = kepdist::orbits::norm_angle(m.v2 - u2 + std::f64::consts::PI)
                                - std::f64::consts::PI;
                            w1.abs() <= 2.0 * step + 1e-12 && w2.abs() <= 2.0 * step + 1e-12
                        });
                        // a flat curved valley produces stencil minima away
                        // from any critical point; those are excused only if
                        // refining them lands exactly on a reported point,
                        // so a genuinely missed minimum still fails
                        if !near && !refines_into_set(&geom, set, u1, u2) {
                            locals_ok = false;
                        }
                    }
                }
            }
            (floor_ok, locals_ok)
        })
        .collect();
    let floor_bad = results.iter().filter(|(f, _)| !f).count();
    let locals_bad = results.iter().filter(|(_, l)| !l).count();
    let pass = floor_bad == 0 && locals_bad == 0;
    verdict(
        11,
        "brute-force grid oracle",
        pass,
        &format!("grid floor violations {floor_bad}/100, unmatched grid minima on {locals_bad}/100 pairs"),
    );
}
