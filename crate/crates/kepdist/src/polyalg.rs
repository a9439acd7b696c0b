//! Polynomial infrastructure shared by the solvers: univariate arithmetic,
//! exact deflation by (1 + t^2), DFT interpolation of determinant
//! polynomials, Aberth-Ehrlich simultaneous root finding, Chebyshev basis
//! change with the colleague-matrix eigenvalue solve, and trigonometric
//! coefficient tables with angle shifts.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum PolyError {
    #[error("interpolated coefficients above the declared degree bound are not negligible")]
    DegreeOverflow,
    #[error("polynomial is not divisible by 1 + t^2")]
    NotDivisible,
    #[error("root iteration did not converge")]
    NoConvergence,
    #[error("eigenvalue iteration failed")]
    EigenFailure,
}

const TRIM_REL: f64 = 1e-13;

/// Real univariate polynomial, coefficients in ascending degree order.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly {
    pub c: Vec<f64>,
}

impl UniPoly {
    pub fn new(c: Vec<f64>) -> Self {
        let mut p = Self { c };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self { c: vec![0.0] }
    }

    /// Drop trailing coefficients below 1e-13 of the largest magnitude.
    pub fn trim(&mut self) {
        let m = self.c.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        let tol = TRIM_REL * m;
        while self.c.len() > 1 && self.c.last().unwrap().abs() <= tol {
            self.c.pop();
        }
        if self.c.is_empty() {
            self.c.push(0.0);
        }
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0.0)
    }

    pub fn leading(&self) -> f64 {
        *self.c.last().unwrap()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, &ck| acc * x + ck)
    }

    pub fn eval_c(&self, z: Complex64) -> Complex64 {
        self.c
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &ck| acc * z + ck)
    }

    pub fn deriv(&self) -> UniPoly {
        if self.c.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.c[1..]
                .iter()
                .enumerate()
                .map(|(k, &ck)| (k + 1) as f64 * ck)
                .collect(),
        )
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        let mut out = vec![0.0; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.c.len().max(other.c.len());
        let mut out = vec![0.0; n];
        for (i, &a) in self.c.iter().enumerate() {
            out[i] += a;
        }
        for (i, &b) in other.c.iter().enumerate() {
            out[i] += b;
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, s: f64) -> UniPoly {
        UniPoly::new(self.c.iter().map(|&x| s * x).collect())
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.c.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
    }
}

/// Interpolate a polynomial of known degree bound from values of `eval` at
/// roots of unity: the node count is the smallest power of two that can hold
/// degree_bound + 1 samples, and the coefficients come out of the inverse
/// transform. Coefficients above the bound must be negligible.
pub fn dft_interpolate<F>(eval: F, degree_bound: usize) -> Result<UniPoly, PolyError>
where
    F: Fn(Complex64) -> Complex64,
{
    let mut n = 1usize;
    while n < degree_bound + 2 {
        n *= 2;
    }
    let vals: Vec<Complex64> = (0..n)
        .map(|k| {
            let th = std::f64::consts::TAU * k as f64 / n as f64;
            eval(Complex64::new(th.cos(), th.sin()))
        })
        .collect();
    // c_j = (1/n) sum_k vals_k w^{-jk}
    let mut coeffs = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, v) in vals.iter().enumerate() {
            let th = -std::f64::consts::TAU * (j * k % n) as f64 / n as f64;
            acc += v * Complex64::new(th.cos(), th.sin());
        }
        coeffs.push(acc / n as f64);
    }
    let max_mod = coeffs.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
    let tol = 1e-9 * max_mod;
    if coeffs[degree_bound + 1..].iter().any(|z| z.norm() > tol) {
        return Err(PolyError::DegreeOverflow);
    }
    Ok(UniPoly::new(
        coeffs[..=degree_bound].iter().map(|z| z.re).collect(),
    ))
}

/// Exact quotient p / (1 + t^2), by synthetic division from the top so the
/// result is usable at the unit-circle nodes where 1 + t^2 vanishes.
pub fn deflate_one_plus_t2(p: &UniPoly) -> Result<UniPoly, PolyError> {
    let n = p.degree();
    if n < 2 {
        if p.max_abs_coeff() == 0.0 {
            return Ok(UniPoly::zero());
        }
        return Err(PolyError::NotDivisible);
    }
    let mut q = vec![0.0; n - 1];
    for k in (0..=n - 2).rev() {
        let upper = if k + 2 <= n - 2 { q[k + 2] } else { 0.0 };
        q[k] = p.c[k + 2] - upper;
    }
    let r0 = p.c[0] - q[0];
    let r1 = p.c[1] - if n >= 3 { q[1] } else { 0.0 };
    if r0.abs().max(r1.abs()) > 1e-9 * p.max_abs_coeff() {
        return Err(PolyError::NotDivisible);
    }
    Ok(UniPoly::new(q))
}

/// Deterministic start points on annuli whose radii come from the upper
/// convex hull of (k, ln|c_k|): each hull edge from k1 to k2 predicts
/// k2 - k1 root moduli near |c_k1 / c_k2|^(1/(k2-k1)). A single circle
/// fails badly when the leading coefficient is orders of magnitude below
/// the rest and the root moduli spread over decades.
fn annulus_starts(p: &UniPoly) -> Vec<Complex64> {
    let n = p.degree();
    let logs: Vec<(f64, f64)> = p
        .c
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .map(|(k, c)| (k as f64, c.abs().ln()))
        .collect();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &pt in &logs {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if (b.0 - a.0) * (pt.1 - a.1) - (pt.0 - a.0) * (b.1 - a.1) >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut out = Vec::with_capacity(n);
    for e in hull.windows(2) {
        let count = (e[1].0 - e[0].0).round() as usize;
        let r = ((e[0].1 - e[1].1) / (e[1].0 - e[0].0)).exp();
        for j in 0..count {
            let th = std::f64::consts::TAU * (j as f64 + 0.5) / count as f64
                + 0.376 * (1.0 + e[0].0);
            out.push(Complex64::new(r * th.cos(), r * th.sin()));
        }
    }
    // zero interior coefficients can leave gaps; pad on the unit circle
    let mut k = 0usize;
    while out.len() < n {
        let th = std::f64::consts::TAU * k as f64 / n as f64 + 1.13;
        out.push(Complex64::new(th.cos(), th.sin()));
        k += 1;
    }
    out.truncate(n);
    out
}

/// All complex roots by Aberth-Ehrlich simultaneous iteration; deterministic
/// start points on Newton-polygon annuli.
pub fn roots_simultaneous(p: &UniPoly) -> Result<Vec<Complex64>, PolyError> {
    let mut p = p.clone();
    p.trim();
    let s = p.max_abs_coeff();
    if s == 0.0 || p.degree() == 0 {
        return Ok(Vec::new());
    }
    let p = p.scale(1.0 / s);
    let n = p.degree();
    if n == 1 {
        return Ok(vec![Complex64::new(-p.c[0] / p.c[1], 0.0)]);
    }
    let dp = p.deriv();
    let mut z = annulus_starts(&p);
    // p is normalized, so the residual target scales as max(1,|z|)^n alone.
    let settled = |delta: f64, res: f64, z: Complex64| {
        delta <= 1e-13 * (1.0 + z.norm()) || res <= 1e-13 * z.norm().max(1.0).powi(n as i32)
    };
    for _ in 0..200 {
        let mut all_settled = true;
        for i in 0..n {
            let pv = p.eval_c(z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let dv = dp.eval_c(z[i]);
            let w = if dv.norm() == 0.0 {
                // flat spot: nudge instead of dividing by zero
                Complex64::new(1e-8, 1e-8)
            } else {
                pv / dv
            };
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() < 1e-300 {
                        continue;
                    }
                    sum += diff.inv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * sum;
            let delta = if denom.norm() < 1e-300 { w } else { w / denom };
            z[i] -= delta;
            if !settled(delta.norm(), p.eval_c(z[i]).norm(), z[i]) {
                all_settled = false;
            }
        }
        if all_settled {
            // Newton polish per root: the sweep stop is residual based, so
            // simple roots may still be a digit or two from the floor.
            for zi in &mut z {
                for _ in 0..3 {
                    let dv = dp.eval_c(*zi);
                    if dv.norm() == 0.0 {
                        break;
                    }
                    let step = p.eval_c(*zi) / dv;
                    *zi -= step;
                    if step.norm() <= 1e-15 * (1.0 + zi.norm()) {
                        break;
                    }
                }
            }
            return Ok(z);
        }
    }
    Err(PolyError::NoConvergence)
}

/// Real polynomial over the Chebyshev basis T_0..T_n.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebPoly {
    pub c: Vec<f64>,
}

/// Monomial coefficient rows of T_0..T_n (row j holds T_j, ascending powers).
fn chebyshev_rows(n: usize) -> Vec<Vec<f64>> {
    let mut rows = vec![vec![0.0; n + 1]; n + 1];
    rows[0][0] = 1.0;
    if n >= 1 {
        rows[1][1] = 1.0;
    }
    for j in 1..n {
        let (lo, hi) = rows.split_at_mut(j + 1);
        let prev = &lo[j - 1];
        let cur = &lo[j];
        let next = &mut hi[0];
        for k in 0..=n {
            let shifted = if k == 0 { 0.0 } else { cur[k - 1] };
            next[k] = 2.0 * shifted - prev[k];
        }
    }
    rows
}

/// Change of basis from monomials to Chebyshev via the unit-triangular
/// factorization: with A the T-coefficient matrix and D its inverse diagonal,
/// A~ = D A = I + N is unit lower triangular and its inverse is the finite
/// Neumann sum of powers of -N.
pub fn to_chebyshev(p: &UniPoly) -> ChebPoly {
    let n = p.degree();
    let rows = chebyshev_rows(n);
    let d: Vec<f64> = (0..=n).map(|j| 1.0 / rows[j][j]).collect();
    // N = D A - I, strictly lower triangular
    let mut nmat = vec![vec![0.0; n + 1]; n + 1];
    for j in 0..=n {
        for k in 0..j {
            nmat[j][k] = rows[j][k] * d[j];
        }
    }
    // inv = I + sum_{m>=1} (-N)^m, truncated when the power vanishes
    let mut inv = vec![vec![0.0; n + 1]; n + 1];
    for (j, row) in inv.iter_mut().enumerate() {
        row[j] = 1.0;
    }
    let mut term = inv.clone();
    for _ in 0..=n {
        // term <- term * (-N)
        let mut next = vec![vec![0.0; n + 1]; n + 1];
        let mut any = false;
        for r in 0..=n {
            for m in 0..=n {
                let t = term[r][m];
                if t == 0.0 {
                    continue;
                }
                for k in 0..m {
                    let v = -t * nmat[m][k];
                    if v != 0.0 {
                        next[r][k] += v;
                        any = true;
                    }
                }
            }
        }
        if !any {
            break;
        }
        for r in 0..=n {
            for k in 0..=n {
                inv[r][k] += next[r][k];
            }
        }
        term = next;
    }
    // c = D * inv^T * p
    let mut c = vec![0.0; n + 1];
    for j in 0..=n {
        let mut acc = 0.0;
        for k in 0..=n {
            acc += inv[k][j] * p.c[k];
        }
        c[j] = d[j] * acc;
    }
    ChebPoly { c }
}

impl ChebPoly {
    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    /// Back to monomial coefficients (transpose product with the T rows).
    pub fn to_monomial(&self) -> UniPoly {
        let n = self.degree();
        let rows = chebyshev_rows(n);
        let mut out = vec![0.0; n + 1];
        for (j, &cj) in self.c.iter().enumerate() {
            if cj == 0.0 {
                continue;
            }
            for k in 0..=j {
                out[k] += cj * rows[j][k];
            }
        }
        UniPoly::new(out)
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for &ck in self.c.iter().skip(1).rev() {
            let b0 = ck + 2.0 * x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.c[0] + x * b1 - b2
    }
}

/// Roots of a Chebyshev-basis polynomial as eigenvalues of its colleague
/// matrix (tridiagonal halves plus a first-row correction).
pub fn colleague_roots(cheb: &ChebPoly) -> Result<Vec<Complex64>, PolyError> {
    let mut c = cheb.c.clone();
    let m = c.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if m == 0.0 {
        return Ok(Vec::new());
    }
    for x in &mut c {
        *x /= m;
    }
    while c.len() > 1 && c.last().unwrap().abs() <= 1e-13 {
        c.pop();
    }
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![Complex64::new(-c[0] / c[1], 0.0)]);
    }
    let mut mat = nalgebra::DMatrix::<f64>::zeros(n, n);
    for i in 0..n - 1 {
        mat[(i, i + 1)] = 0.5;
        mat[(i + 1, i)] = 0.5;
    }
    let half_sqrt2 = std::f64::consts::SQRT_2 / 2.0;
    mat[(n - 2, n - 1)] = half_sqrt2;
    mat[(n - 1, n - 2)] = half_sqrt2;
    // first-row correction carrying the coefficients, highest first
    let lead = 2.0 * c[n];
    let mut symmetric = true;
    for k in 0..n - 1 {
        mat[(0, k)] -= c[n - 1 - k] / lead;
        symmetric &= c[n - 1 - k] == 0.0;
    }
    mat[(0, n - 1)] -= std::f64::consts::SQRT_2 * c[0] / lead;
    symmetric &= c[0] == 0.0;
    if symmetric {
        // vanishing correction leaves a symmetric tridiagonal matrix; the
        // nonsymmetric QR path can stall on its zero diagonal
        let eig = nalgebra::linalg::SymmetricEigen::new(mat);
        return Ok(eig
            .eigenvalues
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect());
    }
    if let Some(eigs) = schur_eigenvalues(mat.clone()) {
        return Ok(eigs);
    }
    // balancing perturbs the structure the colleague form relies on, so it is
    // a rescue for stalled QR iterations rather than the default path
    let mut balanced = mat.clone();
    balance(&mut balanced);
    if let Some(eigs) = schur_eigenvalues(balanced) {
        return Ok(eigs);
    }
    // a similarity rotation breaks the cycling pattern without moving the
    // eigenvalues; the QR iteration can stall on unlucky Hessenberg forms
    let n = mat.nrows();
    let mut g = nalgebra::DMatrix::<f64>::identity(n, n);
    let (cs, sn) = (0.8f64, 0.6f64);
    g[(0, 0)] = cs;
    g[(0, n - 1)] = -sn;
    g[(n - 1, 0)] = sn;
    g[(n - 1, n - 1)] = cs;
    let mut rotated = g.transpose() * mat * g;
    balance(&mut rotated);
    schur_eigenvalues(rotated).ok_or(PolyError::EigenFailure)
}

fn schur_eigenvalues(m: nalgebra::DMatrix<f64>) -> Option<Vec<Complex64>> {
    let schur = nalgebra::linalg::Schur::try_new(m, 1e-14, 100_000)?;
    Some(schur.complex_eigenvalues().iter().copied().collect())
}

/// Diagonal similarity scaling by powers of two until every row and column
/// carry comparable off-diagonal mass. QR convergence degrades badly on the
/// unbalanced colleague correction row, whose entries can span many decades.
fn balance(mat: &mut nalgebra::DMatrix<f64>) {
    let n = mat.nrows();
    let radix = 2.0f64;
    for _ in 0..100 {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += mat[(j, i)].abs();
                    r += mat[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            while c < r / radix {
                c *= radix * radix;
                f *= radix;
            }
            while c > r * radix {
                c /= radix * radix;
                f /= radix;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    mat[(i, j)] /= f;
                }
                for j in 0..n {
                    mat[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Resultant of {a(x) y + b(x) = 0, x^2 + y^2 = 1} in x: a^2 (x^2 - 1) + b^2.
pub fn sylvester_resultant_1cubic(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let x2m1 = UniPoly::new(vec![-1.0, 0.0, 1.0]);
    a.mul(a).mul(&x2m1).add(&b.mul(b))
}

/// Trigonometric polynomial as a dense table over cos^i u * sin^j u.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    /// t[i][j] multiplies cos^i sin^j.
    pub t: Vec<Vec<f64>>,
}

impl TrigPoly {
    pub fn zeros(m: usize, n: usize) -> Self {
        Self {
            t: vec![vec![0.0; n + 1]; m + 1],
        }
    }

    pub fn constant(v: f64) -> Self {
        Self { t: vec![vec![v]] }
    }

    /// Build from sparse (cos power, sin power, coefficient) entries.
    pub fn from_entries(entries: &[(usize, usize, f64)]) -> Self {
        let m = entries.iter().map(|e| e.0).max().unwrap_or(0);
        let n = entries.iter().map(|e| e.1).max().unwrap_or(0);
        let mut out = Self::zeros(m, n);
        for &(i, j, v) in entries {
            out.t[i][j] += v;
        }
        out
    }

    pub fn cos_degree(&self) -> usize {
        self.t.len() - 1
    }

    pub fn sin_degree(&self) -> usize {
        self.t[0].len() - 1
    }

    /// Largest i + j over nonzero entries.
    pub fn total_degree(&self) -> usize {
        let mut d = 0;
        for (i, row) in self.t.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0.0 {
                    d = d.max(i + j);
                }
            }
        }
        d
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.t
            .iter()
            .flat_map(|r| r.iter())
            .fold(0.0f64, |acc, x| acc.max(x.abs()))
    }

    pub fn eval(&self, u: f64) -> f64 {
        let (s, c) = u.sin_cos();
        let mut acc = 0.0;
        let mut ci = 1.0;
        for row in &self.t {
            let mut sj = 1.0;
            let mut rowacc = 0.0;
            for &v in row {
                rowacc += v * sj;
                sj *= s;
            }
            acc += rowacc * ci;
            ci *= c;
        }
        acc
    }

    pub fn add_scaled(&mut self, other: &TrigPoly, s: f64) {
        let m = self.t.len().max(other.t.len());
        let n = self.t[0].len().max(other.t[0].len());
        let mut grown = vec![vec![0.0; n]; m];
        for (i, row) in self.t.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                grown[i][j] = v;
            }
        }
        for (i, row) in other.t.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                grown[i][j] += s * v;
            }
        }
        self.t = grown;
    }

    pub fn mul(&self, other: &TrigPoly) -> TrigPoly {
        let mut out = TrigPoly::zeros(
            self.cos_degree() + other.cos_degree(),
            self.sin_degree() + other.sin_degree(),
        );
        for (i, row) in self.t.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v == 0.0 {
                    continue;
                }
                for (k, orow) in other.t.iter().enumerate() {
                    for (l, &w) in orow.iter().enumerate() {
                        out.t[i + k][j + l] += v * w;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> TrigPoly {
        let mut out = TrigPoly::constant(1.0);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Reduce modulo sin^2 = 1 - cos^2 to the normal form a(x) sin + b(x)
    /// with x = cos; returns (a, b).
    pub fn reduce_on_circle(&self) -> (UniPoly, UniPoly) {
        let one_minus_x2 = UniPoly::new(vec![1.0, 0.0, -1.0]);
        let mut a = UniPoly::zero();
        let mut b = UniPoly::zero();
        for j in 0..=self.sin_degree() {
            let col: Vec<f64> = self.t.iter().map(|row| row[j]).collect();
            let col = UniPoly::new(col);
            if col.is_zero() {
                continue;
            }
            let mut w = UniPoly::new(vec![1.0]);
            for _ in 0..j / 2 {
                w = w.mul(&one_minus_x2);
            }
            let piece = col.mul(&w);
            if j % 2 == 0 {
                b = b.add(&piece);
            } else {
                a = a.add(&piece);
            }
        }
        (a, b)
    }

    /// Rewrite in the shifted angle: returns q with
    /// q(cos v, sin v) = p(cos(v + alpha), sin(v + alpha)).
    pub fn shift(&self, alpha: f64) -> TrigPoly {
        let m = self.cos_degree();
        let n = self.sin_degree();
        let (sa, ca) = alpha.sin_cos();
        let deg = m + n;
        let mut q = TrigPoly::zeros(deg, deg);
        for i in 0..=m {
            for j in 0..=n {
                let p = self.t[i][j];
                if p == 0.0 {
                    continue;
                }
                for l in 0..=i + j {
                    let mut csum = 0.0;
                    let h_lo = l.saturating_sub(j);
                    let h_hi = l.min(i);
                    for h in h_lo..=h_hi {
                        let sign = if (i - h) % 2 == 0 { 1.0 } else { -1.0 };
                        csum += binomial(i, h)
                            * binomial(j, l - h)
                            * sign
                            * ca.powi((2 * h + j - l) as i32)
                            * sa.powi((i + l - 2 * h) as i32);
                    }
                    q.t[l][i + j - l] += p * csum;
                }
            }
        }
        q
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for j in 0..k {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc
}

/// Determinant of a small real matrix by Gaussian elimination with partial
/// pivoting; the solvers use it for identity oracles.
pub fn det_real(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))
            .unwrap();
        if a[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[r][k] -= f * a[col][k];
            }
        }
    }
    det
}

/// Complex analogue of [`det_real`], used by the DFT determinant evaluators.
pub fn det_complex(m: &[Vec<Complex64>]) -> Complex64 {
    let n = m.len();
    let mut a: Vec<Vec<Complex64>> = m.to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&r, &s| a[r][col].norm_sqr().total_cmp(&a[s][col].norm_sqr()))
            .unwrap();
        if a[piv][col].norm_sqr() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for k in col..n {
                let sub = f * a[col][k];
                a[r][k] -= sub;
            }
        }
    }
    det
}
