//! Orbit geometry: Keplerian elements, orientation frames, the mutual
//! coefficient block, Cartesian positions, and the squared distance between
//! two confocal elliptic orbits together with its first and second
//! derivatives in both anomaly parametrizations.

use nalgebra::Vector3;
use thiserror::Error;

pub const TAU: f64 = std::f64::consts::TAU;

/// Wrap an angle to [0, 2pi).
pub fn norm_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r == TAU {
        0.0
    } else {
        r
    }
}

#[derive(Debug, Error)]
pub enum ElementsError {
    #[error("eccentricity {0} outside the elliptic range [0, 1)")]
    NonElliptic(f64),
    #[error("orbit size {0} must be positive")]
    NonPositiveSize(f64),
}

/// Size, shape, and orientation of one elliptic orbit.
///
/// The size may be supplied either as the semimajor axis `a` or as the
/// pericenter distance `q`; both are stored, related by `a = q / (1 - e)`.
/// Angles are radians internally and normalized to [0, 2pi).
#[derive(Debug, Clone, PartialEq)]
pub struct KeplerianElements {
    pub name: String,
    pub a: f64,
    pub q: f64,
    pub e: f64,
    pub incl: f64,
    pub node: f64,
    pub arg_peri: f64,
    /// True when `q` was the supplied size (cometary convention).
    pub cometary: bool,
}

const E_MAX: f64 = 1.0 - 1e-12;

impl KeplerianElements {
    pub fn from_semimajor(
        name: &str,
        a: f64,
        e: f64,
        incl: f64,
        node: f64,
        arg_peri: f64,
    ) -> Result<Self, ElementsError> {
        if !(0.0..=E_MAX).contains(&e) {
            return Err(ElementsError::NonElliptic(e));
        }
        if !(a > 0.0) || !a.is_finite() {
            return Err(ElementsError::NonPositiveSize(a));
        }
        Ok(Self {
            name: name.to_string(),
            a,
            q: a * (1.0 - e),
            e,
            incl: norm_angle(incl),
            node: norm_angle(node),
            arg_peri: norm_angle(arg_peri),
            cometary: false,
        })
    }

    pub fn from_pericenter(
        name: &str,
        q: f64,
        e: f64,
        incl: f64,
        node: f64,
        arg_peri: f64,
    ) -> Result<Self, ElementsError> {
        if !(0.0..=E_MAX).contains(&e) {
            return Err(ElementsError::NonElliptic(e));
        }
        if !(q > 0.0) || !q.is_finite() {
            return Err(ElementsError::NonPositiveSize(q));
        }
        Ok(Self {
            name: name.to_string(),
            a: q / (1.0 - e),
            q,
            e,
            incl: norm_angle(incl),
            node: norm_angle(node),
            arg_peri: norm_angle(arg_peri),
            cometary: true,
        })
    }

    /// Conic parameter p = a (1 - e^2).
    pub fn semilatus(&self) -> f64 {
        self.a * (1.0 - self.e * self.e)
    }

    /// Apocenter distance a (1 + e).
    pub fn apocenter(&self) -> f64 {
        self.a * (1.0 + self.e)
    }
}

/// Pericenter unit direction P and the in-plane direction Q orthogonal to it;
/// together with the orbit normal P x Q they form the orbit's frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitFrame {
    pub p: Vector3<f64>,
    pub q: Vector3<f64>,
}

impl OrbitFrame {
    pub fn normal(&self) -> Vector3<f64> {
        self.p.cross(&self.q)
    }
}

/// Unit vectors toward pericenter (P) and advanced 90 degrees in the motion
/// direction (Q), from the 3-1-3 rotation by node, inclination, pericenter.
pub fn orientation_frame(el: &KeplerianElements) -> OrbitFrame {
    let (sn, cn) = el.node.sin_cos();
    let (si, ci) = el.incl.sin_cos();
    let (sw, cw) = el.arg_peri.sin_cos();
    let p = Vector3::new(cn * cw - sn * ci * sw, sn * cw + cn * ci * sw, si * sw);
    let q = Vector3::new(-cn * sw - sn * ci * cw, -sn * sw + cn * ci * cw, si * cw);
    OrbitFrame { p, q }
}

/// Which anomaly a value of [`AnomalyPair`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parametrization {
    Eccentric,
    True,
}

/// A pair of anomalies, one per orbit, in a common parametrization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnomalyPair {
    pub v1: f64,
    pub v2: f64,
    pub parametrization: Parametrization,
}

impl AnomalyPair {
    pub fn new(v1: f64, v2: f64, parametrization: Parametrization) -> Self {
        Self {
            v1: norm_angle(v1),
            v2: norm_angle(v2),
            parametrization,
        }
    }

    pub fn eccentric(v1: f64, v2: f64) -> Self {
        Self::new(v1, v2, Parametrization::Eccentric)
    }

    pub fn true_anom(v1: f64, v2: f64) -> Self {
        Self::new(v1, v2, Parametrization::True)
    }
}

/// True anomaly from eccentric anomaly, in [0, 2pi).
pub fn ecc_to_true(u: f64, e: f64) -> f64 {
    norm_angle(((1.0 - e * e).sqrt() * u.sin()).atan2(u.cos() - e))
}

/// Eccentric anomaly from true anomaly, in [0, 2pi).
pub fn true_to_ecc(f: f64, e: f64) -> f64 {
    norm_angle(((1.0 - e * e).sqrt() * f.sin()).atan2(e + f.cos()))
}

/// Cartesian position on the orbit at the given anomaly.
pub fn position(el: &KeplerianElements, frame: &OrbitFrame, v: f64, par: Parametrization) -> Vector3<f64> {
    let (x, y) = plane_coords(el.a, el.e, v, par);
    frame.p * x + frame.q * y
}

fn plane_coords(a: f64, e: f64, v: f64, par: Parametrization) -> (f64, f64) {
    match par {
        Parametrization::Eccentric => (a * (v.cos() - e), a * (1.0 - e * e).sqrt() * v.sin()),
        Parametrization::True => {
            let p = a * (1.0 - e * e);
            let r = p / (1.0 + e * v.cos());
            (r * v.cos(), r * v.sin())
        }
    }
}

/// Everything the solvers need about a pair of orbits: the four scalar
/// products of the two orientation frames and the 15 coefficients of the
/// squared distance expanded over products of sines and cosines of the
/// eccentric anomalies,
///
/// d^2 = A1 s1^2 + A3 c1^2 + A4 s2^2 + A6 c2^2 + A7 s1 s2 + A8 s1 c2
///     + A9 c1 s2 + A10 c1 c2 + A11 s1 + A12 c1 + A13 s2 + A14 c2 + A15.
///
/// A2 and A5 are identically zero and kept only to preserve numbering.
#[derive(Debug, Clone)]
pub struct MutualGeometry {
    pub k: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
    /// 1-based: a[j] is the coefficient A_j; a[0] is unused.
    pub a: [f64; 16],
    pub a1: f64,
    pub a2: f64,
    pub e1: f64,
    pub e2: f64,
    pub frame1: OrbitFrame,
    pub frame2: OrbitFrame,
}

/// Scalar products of the two frames and the coefficient block of d^2.
pub fn mutual_geometry(el1: &KeplerianElements, el2: &KeplerianElements) -> MutualGeometry {
    let f1 = orientation_frame(el1);
    let f2 = orientation_frame(el2);
    MutualGeometry::from_frames(el1.a, el1.e, f1, el2.a, el2.e, f2)
}

impl MutualGeometry {
    pub fn from_frames(a1: f64, e1: f64, frame1: OrbitFrame, a2: f64, e2: f64, frame2: OrbitFrame) -> Self {
        let k = frame1.p.dot(&frame2.p);
        let l = frame1.q.dot(&frame2.p);
        let m = frame1.p.dot(&frame2.q);
        let n = frame1.q.dot(&frame2.q);
        let w1 = (1.0 - e1 * e1).sqrt();
        let w2 = (1.0 - e2 * e2).sqrt();
        let mut a = [0.0; 16];
        a[1] = a1 * a1 * (1.0 - e1 * e1);
        a[3] = a1 * a1;
        a[4] = a2 * a2 * (1.0 - e2 * e2);
        a[6] = a2 * a2;
        a[7] = -2.0 * a1 * a2 * w1 * w2 * n;
        a[8] = -2.0 * a1 * a2 * w1 * l;
        a[9] = -2.0 * a1 * a2 * w2 * m;
        a[10] = -2.0 * a1 * a2 * k;
        a[11] = 2.0 * a1 * a2 * e2 * w1 * l;
        a[12] = 2.0 * a1 * (a2 * e2 * k - a1 * e1);
        a[13] = 2.0 * a1 * a2 * e1 * w2 * m;
        a[14] = 2.0 * a2 * (a1 * e1 * k - a2 * e2);
        a[15] = a1 * a1 * e1 * e1 + a2 * a2 * e2 * e2 - 2.0 * a1 * a2 * e1 * e2 * k;
        Self {
            k,
            l,
            m,
            n,
            a,
            a1,
            a2,
            e1,
            e2,
            frame1,
            frame2,
        }
    }

    /// Natural magnitude of d^2 for this pair, used to scale tolerances.
    pub fn d2_scale(&self) -> f64 {
        let s = self.a1 * (1.0 + self.e1) + self.a2 * (1.0 + self.e2);
        s * s
    }

    pub fn d2_ecc(&self, u1: f64, u2: f64) -> f64 {
        let a = &self.a;
        let (s1, c1) = u1.sin_cos();
        let (s2, c2) = u2.sin_cos();
        a[1] * s1 * s1
            + a[3] * c1 * c1
            + a[4] * s2 * s2
            + a[6] * c2 * c2
            + a[7] * s1 * s2
            + a[8] * s1 * c2
            + a[9] * c1 * s2
            + a[10] * c1 * c2
            + a[11] * s1
            + a[12] * c1
            + a[13] * s2
            + a[14] * c2
            + a[15]
    }

    pub fn grad_ecc(&self, u1: f64, u2: f64) -> [f64; 2] {
        let a = &self.a;
        let (s1, c1) = u1.sin_cos();
        let (s2, c2) = u2.sin_cos();
        let g1 = 2.0 * (a[1] - a[3]) * s1 * c1 + a[7] * c1 * s2 + a[8] * c1 * c2 - a[9] * s1 * s2
            - a[10] * s1 * c2
            + a[11] * c1
            - a[12] * s1;
        let g2 = 2.0 * (a[4] - a[6]) * s2 * c2 + a[7] * s1 * c2 - a[8] * s1 * s2 + a[9] * c1 * c2
            - a[10] * c1 * s2
            + a[13] * c2
            - a[14] * s2;
        [g1, g2]
    }

    pub fn hess_ecc(&self, u1: f64, u2: f64) -> [[f64; 2]; 2] {
        let a = &self.a;
        let (s1, c1) = u1.sin_cos();
        let (s2, c2) = u2.sin_cos();
        let cross = a[7] * s1 * s2 + a[8] * s1 * c2 + a[9] * c1 * s2 + a[10] * c1 * c2;
        let h11 = 2.0 * (a[1] - a[3]) * (c1 * c1 - s1 * s1) - cross - a[11] * s1 - a[12] * c1;
        let h22 = 2.0 * (a[4] - a[6]) * (c2 * c2 - s2 * s2) - cross - a[13] * s2 - a[14] * c2;
        let h12 = a[7] * c1 * c2 - a[8] * c1 * s2 - a[9] * s1 * c2 + a[10] * s1 * s2;
        [[h11, h12], [h12, h22]]
    }

    /// In-plane coordinates and their first two derivatives at a true anomaly.
    fn true_xy(a: f64, e: f64, f: f64) -> [f64; 6] {
        let p = a * (1.0 - e * e);
        let (s, c) = f.sin_cos();
        let w = 1.0 + e * c;
        let r = p / w;
        let rp = p * e * s / (w * w);
        let rpp = p * e * (c * w + 2.0 * e * s * s) / (w * w * w);
        let x = r * c;
        let y = r * s;
        let xp = rp * c - r * s;
        let yp = rp * s + r * c;
        let xpp = rpp * c - 2.0 * rp * s - r * c;
        let ypp = rpp * s + 2.0 * rp * c - r * s;
        [x, y, xp, yp, xpp, ypp]
    }

    /// Scalar product of in-plane vectors (x1,y1) on orbit 1 and (x2,y2) on
    /// orbit 2 through the frame products.
    fn cross_dot(&self, x1: f64, y1: f64, x2: f64, y2: f64) -> f64 {
        self.k * x1 * x2 + self.m * x1 * y2 + self.l * y1 * x2 + self.n * y1 * y2
    }

    pub fn d2_true(&self, f1: f64, f2: f64) -> f64 {
        let [x1, y1, ..] = Self::true_xy(self.a1, self.e1, f1);
        let [x2, y2, ..] = Self::true_xy(self.a2, self.e2, f2);
        x1 * x1 + y1 * y1 + x2 * x2 + y2 * y2 - 2.0 * self.cross_dot(x1, y1, x2, y2)
    }

    pub fn grad_true(&self, f1: f64, f2: f64) -> [f64; 2] {
        let [x1, y1, x1p, y1p, ..] = Self::true_xy(self.a1, self.e1, f1);
        let [x2, y2, x2p, y2p, ..] = Self::true_xy(self.a2, self.e2, f2);
        let g1 = 2.0 * (x1 * x1p + y1 * y1p - self.cross_dot(x1p, y1p, x2, y2));
        let g2 = 2.0 * (x2 * x2p + y2 * y2p - self.cross_dot(x1, y1, x2p, y2p));
        [g1, g2]
    }

    pub fn hess_true(&self, f1: f64, f2: f64) -> [[f64; 2]; 2] {
        let [x1, y1, x1p, y1p, x1pp, y1pp] = Self::true_xy(self.a1, self.e1, f1);
        let [x2, y2, x2p, y2p, x2pp, y2pp] = Self::true_xy(self.a2, self.e2, f2);
        let h11 = 2.0
            * (x1p * x1p + y1p * y1p + x1 * x1pp + y1 * y1pp - self.cross_dot(x1pp, y1pp, x2, y2));
        let h22 = 2.0
            * (x2p * x2p + y2p * y2p + x2 * x2pp + y2 * y2pp - self.cross_dot(x1, y1, x2pp, y2pp));
        let h12 = -2.0 * self.cross_dot(x1p, y1p, x2p, y2p);
        [[h11, h12], [h12, h22]]
    }

    pub fn d2(&self, pair: &AnomalyPair) -> f64 {
        match pair.parametrization {
            Parametrization::Eccentric => self.d2_ecc(pair.v1, pair.v2),
            Parametrization::True => self.d2_true(pair.v1, pair.v2),
        }
    }

    pub fn grad(&self, pair: &AnomalyPair) -> [f64; 2] {
        match pair.parametrization {
            Parametrization::Eccentric => self.grad_ecc(pair.v1, pair.v2),
            Parametrization::True => self.grad_true(pair.v1, pair.v2),
        }
    }

    pub fn hessian(&self, pair: &AnomalyPair) -> [[f64; 2]; 2] {
        match pair.parametrization {
            Parametrization::Eccentric => self.hess_ecc(pair.v1, pair.v2),
            Parametrization::True => self.hess_true(pair.v1, pair.v2),
        }
    }
}

/// Squared distance and its gradient at an anomaly pair.
pub fn d2_and_grad(geom: &MutualGeometry, pair: &AnomalyPair) -> (f64, [f64; 2]) {
    (geom.d2(pair), geom.grad(pair))
}

/// Analytic 2x2 Hessian of d^2 at an anomaly pair.
pub fn hessian_d2(geom: &MutualGeometry, pair: &AnomalyPair) -> [[f64; 2]; 2] {
    geom.hessian(pair)
}
