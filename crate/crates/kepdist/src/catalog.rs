//! Catalog ingestion and the batch driver: parse whitespace-delimited
//! element tables, run any of the six methods on orbit pairs, keep
//! per-method check verdicts, and aggregate failure rates.

use crate::critpoints::{finish, moid, CriticalSet};
use crate::orbits::{mutual_geometry, AnomalyPair, ElementsError, KeplerianElements, MutualGeometry};
use crate::solver_ordinary::{solve_oe, solve_oes, SolveError};
use crate::solver_trig::{solve_te, solve_tt};
use rayon::prelude::*;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use thiserror::Error;

/// The six critical-point methods. Ordinary-polynomial methods eliminate
/// through the half-angle substitution (shifted variants move the angle
/// origin first); trigonometric methods eliminate on the circle directly,
/// with a choice of univariate backend for TE vs TEC.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Oe,
    Oes,
    Te,
    Tec,
    Tt,
    Tts,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Oe,
        Method::Oes,
        Method::Te,
        Method::Tec,
        Method::Tt,
        Method::Tts,
    ];

    /// Reliability ranking used to pick the consensus record.
    pub const CONSENSUS_ORDER: [Method; 6] = [
        Method::Tts,
        Method::Oes,
        Method::Tec,
        Method::Tt,
        Method::Oe,
        Method::Te,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Oe => "oe",
            Method::Oes => "oes",
            Method::Te => "te",
            Method::Tec => "tec",
            Method::Tt => "tt",
            Method::Tts => "tts",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "oe" => Ok(Method::Oe),
            "oes" => Ok(Method::Oes),
            "te" => Ok(Method::Te),
            "tec" => Ok(Method::Tec),
            "tt" => Ok(Method::Tt),
            "tts" => Ok(Method::Tts),
            other => Err(format!(
                "unknown method `{other}` (expected oe|oes|te|tec|tt|tts)"
            )),
        }
    }
}

/// Angle-origin shifts tried in turn by the shifted methods; a failed
/// check suite sends the pair back through the next shift.
pub const SHIFT_SCHEDULE: [f64; 3] = [0.9, 2.1, 4.3];

fn raw_candidates(
    geom: &MutualGeometry,
    method: Method,
    shift: f64,
) -> Result<Vec<AnomalyPair>, SolveError> {
    match method {
        Method::Oe => solve_oe(geom),
        Method::Oes => solve_oes(geom, shift, shift),
        Method::Te => solve_te(geom, false),
        Method::Tec => solve_te(geom, true),
        Method::Tt => solve_tt(geom, 0.0, 0.0),
        Method::Tts => solve_tt(geom, shift, shift),
    }
}

/// Run one method on a prepared geometry, retrying shifted methods through
/// the schedule until the check suite passes; the last attempt is returned
/// when none does.
pub fn run_method(geom: &MutualGeometry, method: Method) -> Result<CriticalSet, SolveError> {
    let shifts: &[f64] = match method {
        Method::Oes | Method::Tts => &SHIFT_SCHEDULE,
        _ => &SHIFT_SCHEDULE[..1],
    };
    let mut last: Option<CriticalSet> = None;
    for &s in shifts {
        let set = finish(geom, method.name(), &raw_candidates(geom, method, s)?);
        if set.checks.all_pass() {
            return Ok(set);
        }
        last = Some(set);
    }
    Ok(last.expect("at least one shift attempted"))
}

/// Outcome of one method on one pair.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub name1: String,
    pub name2: String,
    pub method: String,
    pub set: Option<CriticalSet>,
    pub d_min: Option<f64>,
    pub error: Option<String>,
    pub wall_seconds: f64,
}

impl RunRecord {
    pub fn checks_pass(&self) -> bool {
        self.set
            .as_ref()
            .map(|s| s.checks.all_pass())
            .unwrap_or(false)
    }
}

/// Which methods a pair runs through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Single(Method),
    /// Every method, followed by a consensus record from the first entry
    /// of the reliability ranking whose checks all pass.
    All,
}

fn record_for(
    el1: &KeplerianElements,
    el2: &KeplerianElements,
    geom: &MutualGeometry,
    method: Method,
) -> RunRecord {
    let start = std::time::Instant::now();
    let outcome = run_method(geom, method);
    let wall_seconds = start.elapsed().as_secs_f64();
    match outcome {
        Ok(set) => {
            let d_min = moid(&set).ok().map(|(d, _)| d);
            RunRecord {
                name1: el1.name.clone(),
                name2: el2.name.clone(),
                method: method.name().to_string(),
                set: Some(set),
                d_min,
                error: None,
                wall_seconds,
            }
        }
        Err(e) => RunRecord {
            name1: el1.name.clone(),
            name2: el2.name.clone(),
            method: method.name().to_string(),
            set: None,
            d_min: None,
            error: Some(e.to_string()),
            wall_seconds,
        },
    }
}

fn same_orbit(el1: &KeplerianElements, el2: &KeplerianElements) -> bool {
    (el1.a - el2.a).abs() < 1e-14 * el1.a.max(el2.a)
        && (el1.e - el2.e).abs() < 1e-14
        && (el1.incl - el2.incl).abs() < 1e-14
        && (el1.node - el2.node).abs() < 1e-14
        && (el1.arg_peri - el2.arg_peri).abs() < 1e-14
}

/// Run a pair through one or all methods. Identical orbits short-circuit:
/// the whole diagonal is at distance zero, so every method would only
/// report a degenerate continuum.
pub fn run_pair(
    el1: &KeplerianElements,
    el2: &KeplerianElements,
    choice: MethodChoice,
) -> Vec<RunRecord> {
    if same_orbit(el1, el2) {
        let methods: Vec<&str> = match choice {
            MethodChoice::Single(m) => vec![m.name()],
            MethodChoice::All => vec!["consensus"],
        };
        return methods
            .into_iter()
            .map(|m| RunRecord {
                name1: el1.name.clone(),
                name2: el2.name.clone(),
                method: m.to_string(),
                set: None,
                d_min: Some(0.0),
                error: Some("degenerate: identical orbits, d = 0 on the diagonal".to_string()),
                wall_seconds: 0.0,
            })
            .collect();
    }
    let geom = mutual_geometry(el1, el2);
    match choice {
        MethodChoice::Single(m) => vec![record_for(el1, el2, &geom, m)],
        MethodChoice::All => {
            let mut records: Vec<RunRecord> = Method::ALL
                .iter()
                .map(|m| record_for(el1, el2, &geom, *m))
                .collect();
            let consensus = Method::CONSENSUS_ORDER
                .iter()
                .find_map(|m| {
                    records
                        .iter()
                        .find(|r| r.method == m.name() && r.checks_pass())
                })
                .cloned();
            if let Some(mut c) = consensus {
                c.method = format!("consensus:{}", c.method);
                records.push(c);
            }
            records
        }
    }
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read catalog: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line} ({name}): {source}")]
    Domain {
        line: usize,
        name: String,
        source: ElementsError,
    },
}

/// Meaning of the distance column in a catalog row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `x` is the semimajor axis a.
    Keplerian,
    /// `x` is the pericenter distance q.
    Cometary,
}

impl FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "keplerian" => Ok(Convention::Keplerian),
            "cometary" => Ok(Convention::Cometary),
            other => Err(format!(
                "unknown convention `{other}` (expected keplerian|cometary)"
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Catalog {
    pub entries: Vec<KeplerianElements>,
    pub source: String,
    pub convention: Convention,
}

impl Catalog {
    pub fn find(&self, name: &str) -> Option<&KeplerianElements> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// Parse rows `name x e i Omega omega` (x per convention, angles in
/// degrees, distances in au); `#` starts a comment, blank lines skipped.
pub fn parse_catalog_str(
    text: &str,
    convention: Convention,
    source: &str,
) -> Result<Catalog, CatalogError> {
    let mut entries: Vec<KeplerianElements> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 6 {
            return Err(CatalogError::Parse {
                line,
                message: format!("expected 6 columns `name x e i Omega omega`, got {}", fields.len()),
            });
        }
        let name = fields[0];
        let mut nums = [0.0f64; 5];
        for (k, f) in fields[1..].iter().enumerate() {
            nums[k] = f.parse().map_err(|_| CatalogError::Parse {
                line,
                message: format!("column {} is not a number: `{f}`", k + 2),
            })?;
        }
        let [x, e, incl, node, omega] = nums;
        if entries.iter().any(|prev| prev.name == name) {
            return Err(CatalogError::Parse {
                line,
                message: format!("duplicate name `{name}`"),
            });
        }
        let build = match convention {
            Convention::Keplerian => KeplerianElements::from_semimajor(
                name,
                x,
                e,
                incl.to_radians(),
                node.to_radians(),
                omega.to_radians(),
            ),
            Convention::Cometary => KeplerianElements::from_pericenter(
                name,
                x,
                e,
                incl.to_radians(),
                node.to_radians(),
                omega.to_radians(),
            ),
        };
        match build {
            Ok(el) => entries.push(el),
            Err(source) => {
                return Err(CatalogError::Domain {
                    line,
                    name: name.to_string(),
                    source,
                })
            }
        }
    }
    Ok(Catalog {
        entries,
        source: source.to_string(),
        convention,
    })
}

pub fn parse_catalog(path: &Path, convention: Convention) -> Result<Catalog, CatalogError> {
    let text = std::fs::read_to_string(path)?;
    parse_catalog_str(&text, convention, &path.display().to_string())
}

/// Pair selection for a batch run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pairing {
    /// All unordered pairs i < j.
    AllPairs,
    /// The named entry against every other entry.
    VsOne(String),
}

/// Failure percentages for one method over a batch, Table-style: a record
/// counts against a check when the check fails or the solver errored.
#[derive(Debug, Clone, Copy)]
pub struct MethodSummary {
    pub method: Method,
    pub pairs: usize,
    pub w_fail_pct: f64,
    pub m_fail_pct: f64,
    pub dmin_fail_pct: f64,
}

fn summarize(method: Method, records: &[&RunRecord]) -> MethodSummary {
    let pairs = records.len();
    let mut w = 0usize;
    let mut m = 0usize;
    let mut d = 0usize;
    for r in records {
        match &r.set {
            Some(set) => {
                if !set.checks.weierstrass {
                    w += 1;
                }
                if set.checks.morse.applicable && !set.checks.morse.pass {
                    m += 1;
                }
                if !set.checks.dmin_sampling.pass {
                    d += 1;
                }
            }
            None => {
                w += 1;
                m += 1;
                d += 1;
            }
        }
    }
    let pct = |n: usize| {
        if pairs == 0 {
            0.0
        } else {
            100.0 * n as f64 / pairs as f64
        }
    };
    MethodSummary {
        method,
        pairs,
        w_fail_pct: pct(w),
        m_fail_pct: pct(m),
        dmin_fail_pct: pct(d),
    }
}

#[derive(Debug, Clone)]
pub struct BatchResult {
    pub records: Vec<RunRecord>,
    pub summaries: Vec<MethodSummary>,
}

/// Enumerate the requested pairs in deterministic order.
pub fn select_pairs(catalog: &Catalog, pairing: &Pairing) -> Result<Vec<(usize, usize)>, String> {
    match pairing {
        Pairing::AllPairs => {
            let n = catalog.entries.len();
            let mut out = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
            for i in 0..n {
                for j in (i + 1)..n {
                    out.push((i, j));
                }
            }
            Ok(out)
        }
        Pairing::VsOne(name) => {
            let k = catalog
                .entries
                .iter()
                .position(|e| &e.name == name)
                .ok_or_else(|| format!("no catalog entry named `{name}`"))?;
            Ok((0..catalog.entries.len())
                .filter(|&j| j != k)
                .map(|j| (k, j))
                .collect())
        }
    }
}

/// Run every selected pair through the listed methods on `jobs` worker
/// threads. Records come back grouped by pair in input order, so output is
/// byte-identical at any parallelism level.
pub fn batch(
    catalog: &Catalog,
    pairing: &Pairing,
    methods: &[Method],
    jobs: usize,
) -> Result<BatchResult, String> {
    let pairs = select_pairs(catalog, pairing)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| e.to_string())?;
    let nested: Vec<Vec<RunRecord>> = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(i, j)| {
                let el1 = &catalog.entries[i];
                let el2 = &catalog.entries[j];
                methods
                    .iter()
                    .flat_map(|m| run_pair(el1, el2, MethodChoice::Single(*m)))
                    .collect()
            })
            .collect()
    });
    let records: Vec<RunRecord> = nested.into_iter().flatten().collect();
    let summaries = methods
        .iter()
        .map(|m| {
            let of_method: Vec<&RunRecord> =
                records.iter().filter(|r| r.method == m.name()).collect();
            summarize(*m, &of_method)
        })
        .collect();
    Ok(BatchResult { records, summaries })
}

/// Table-shaped text: one row per method with failure percentages.
pub fn format_summaries(summaries: &[MethodSummary]) -> String {
    let mut out = String::from("method\tpairs\tw_fail_pct\tmorse_fail_pct\tdmin_fail_pct\n");
    for s in summaries {
        out.push_str(&format!(
            "{}\t{}\t{:.4}\t{:.4}\t{:.4}\n",
            s.method, s.pairs, s.w_fail_pct, s.m_fail_pct, s.dmin_fail_pct
        ));
    }
    out
}
