//! Resilience sweeps over parameter grids and removed families.

use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use incmat_core::combin::{binomial, gaussian_binomial};
use num_traits::ToPrimitive;
use incmat_core::qlat::QFamily;
use incmat_core::qrank::QResilience;
use incmat_core::sets::{SetFamily, SetResilience};
use incmat_core::{Certificate, FieldCtx, Mode, RankSource, ResilienceReport};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const DEFAULT_ENTRY_BUDGET: u64 = 50_000_000;
/// Cap on the number of families one exhaustive grid point may enumerate.
pub const MAX_FAMILIES: u128 = 10_000_000;
pub const THREADS_ENV: &str = "INCMAT_THREADS";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridPoint {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub q: Option<u64>,
    pub field: String,
}

impl GridPoint {
    /// All combinations, in the order the lists are given.
    pub fn product(mode: Mode, ns: &[usize], rs: &[usize], ss: &[usize], qs: &[u64], fields: &[String]) -> Vec<GridPoint> {
        let qs: Vec<Option<u64>> = match mode {
            Mode::Set => vec![None],
            Mode::Q => qs.iter().map(|&q| Some(q)).collect(),
        };
        let mut out = Vec::new();
        for &n in ns {
            for &r in rs {
                for &s in ss {
                    for &q in &qs {
                        for f in fields {
                            out.push(GridPoint { n, r, s, q, field: f.clone() });
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Removal {
    /// Every family of at most `max_size` rows.
    Exhaustive { max_size: usize },
    /// `count` random families of size `1..=max_size`.
    Sampled { count: usize, max_size: usize },
    /// Fixed families given as canonical row indices.
    Explicit(Vec<Vec<usize>>),
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub grid: Vec<GridPoint>,
    pub removal: Removal,
    pub seed: u64,
    /// Worker threads; falls back to `INCMAT_THREADS`, then rayon's default.
    pub threads: Option<usize>,
    pub entry_budget: u64,
    /// Record per-cell and total timings in reports.
    pub timings: bool,
}

impl ExperimentConfig {
    pub fn new(mode: Mode, grid: Vec<GridPoint>, removal: Removal) -> Self {
        ExperimentConfig { mode, grid, removal, seed: 0, threads: None, entry_budget: DEFAULT_ENTRY_BUDGET, timings: false }
    }
}

#[derive(Clone, Debug)]
pub struct Cell {
    /// Index into the grid.
    pub point: usize,
    pub removed: Vec<usize>,
    pub report: ResilienceReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub params: GridPoint,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct RunSummary {
    pub mode: Mode,
    pub grid: Vec<GridPoint>,
    pub cells: Vec<Cell>,
    pub skipped: Vec<Skipped>,
    pub equal_count: usize,
    pub unequal_count: usize,
    pub counterexamples: usize,
    /// Index into `cells` of the first counterexample.
    pub first_counterexample: Option<usize>,
    pub wall_clock: Duration,
    pub timings: bool,
}

impl RunSummary {
    pub fn passed(&self) -> bool {
        self.counterexamples == 0
    }
}

enum Ctx {
    Set(SetResilience),
    Q(QResilience),
}

impl Ctx {
    fn check(&self, p: &GridPoint, removed: &[usize]) -> Result<ResilienceReport> {
        Ok(match self {
            Ctx::Set(c) => c.check(&SetFamily::new(p.n, p.r, removed.to_vec())?)?,
            Ctx::Q(c) => c.check(&QFamily::new(p.n, p.r, p.q.expect("q mode"), removed.to_vec())?)?,
        })
    }
}

fn big(x: num_bigint::BigUint) -> u128 {
    x.to_u128().unwrap_or(u128::MAX)
}

fn row_and_col_counts(mode: Mode, p: &GridPoint) -> Result<(u128, u128)> {
    Ok(match mode {
        Mode::Set => (big(binomial(p.n as i64, p.r as i64)), big(binomial(p.n as i64, p.s as i64))),
        Mode::Q => {
            let q = p.q.context("q mode needs q")?;
            (big(gaussian_binomial(p.n as i64, p.r as i64, q)), big(gaussian_binomial(p.n as i64, p.s as i64, q)))
        }
    })
}

/// Why a grid point cannot run, if it cannot.
fn precheck(mode: Mode, p: &GridPoint, budget: u64) -> Option<String> {
    if p.s >= p.r || 2 * p.r > p.n {
        return Some(format!("need s < r <= n/2, got n={} r={} s={}", p.n, p.r, p.s));
    }
    if mode == Mode::Q && p.q.is_none_or(|q| incmat_core::qlat::prime_power(q).is_none()) {
        return Some("q must be a prime power".into());
    }
    if mode == Mode::Q && p.n > incmat_core::qlat::MAX_N {
        return Some(format!("n = {} too large for subspace enumeration", p.n));
    }
    if mode == Mode::Set && p.n > incmat_core::sets::MAX_N {
        return Some(format!("n = {} too large", p.n));
    }
    let entries = match row_and_col_counts(mode, p) {
        Ok((r, c)) => r.saturating_mul(c),
        Err(e) => return Some(e.to_string()),
    };
    if entries > budget as u128 {
        return Some(format!("matrix has {} entries, over the budget of {}", entries, budget));
    }
    None
}

pub fn combinations_up_to(total: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 0..=k.min(total) {
        let mut cur: Vec<usize> = (0..size).collect();
        loop {
            out.push(cur.clone());
            let mut i = size;
            while i > 0 && cur[i - 1] == total - (size - i) - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            cur[i - 1] += 1;
            for j in i..size {
                cur[j] = cur[j - 1] + 1;
            }
        }
    }
    out
}

fn family_count(total: usize, k: usize) -> u128 {
    let mut acc: u128 = 0;
    let mut c: u128 = 1;
    for j in 0..=k.min(total) {
        acc += c;
        c = c * (total - j) as u128 / (j + 1) as u128;
        if acc > MAX_FAMILIES {
            break;
        }
    }
    acc
}

/// Sample `i` of grid point `g` is drawn from its own ChaCha stream, so the
/// result does not depend on scheduling.
fn sampled_family(seed: u64, g: usize, i: usize, total: usize, max_size: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((g as u64) << 32) | i as u64);
    let size = rng.random_range(1..=max_size.min(total).max(1)).min(total);
    let mut v = sample(&mut rng, total, size).into_vec();
    v.sort_unstable();
    v
}

fn families_for(cfg: &ExperimentConfig, g: usize, total: usize) -> Result<Vec<Vec<usize>>> {
    Ok(match &cfg.removal {
        Removal::Exhaustive { max_size } => {
            if family_count(total, *max_size) > MAX_FAMILIES {
                bail!("more than {} families of size <= {}", MAX_FAMILIES, max_size);
            }
            combinations_up_to(total, *max_size)
        }
        Removal::Sampled { count, max_size } => {
            (0..*count).map(|i| sampled_family(cfg.seed, g, i, total, *max_size)).collect()
        }
        Removal::Explicit(fams) => fams.clone(),
    })
}

fn thread_count(cfg: &ExperimentConfig) -> Option<usize> {
    cfg.threads.or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok())).filter(|&t| t > 0)
}

pub fn run_sweep(cfg: &ExperimentConfig) -> Result<RunSummary> {
    let start = Instant::now();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = thread_count(cfg) {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().context("building thread pool")?;
    let mut cells = Vec::new();
    let mut skipped = Vec::new();
    for (g, p) in cfg.grid.iter().enumerate() {
        if let Some(reason) = precheck(cfg.mode, p, cfg.entry_budget) {
            skipped.push(Skipped { params: p.clone(), reason });
            continue;
        }
        let field = FieldCtx::parse(&p.field)?;
        let ctx = match cfg.mode {
            Mode::Set => SetResilience::new(p.n, p.r, p.s, &field).map(Ctx::Set),
            Mode::Q => QResilience::new(p.n, p.r, p.s, p.q.expect("checked"), &field).map(Ctx::Q),
        };
        let ctx = match ctx {
            Ok(c) => c,
            Err(e) => {
                skipped.push(Skipped { params: p.clone(), reason: e.to_string() });
                continue;
            }
        };
        let total = row_and_col_counts(cfg.mode, p)?.0 as usize;
        let families = match families_for(cfg, g, total) {
            Ok(f) => f,
            Err(e) => {
                skipped.push(Skipped { params: p.clone(), reason: e.to_string() });
                continue;
            }
        };
        let results: Vec<Result<Cell>> = pool.install(|| {
            families
                .into_par_iter()
                .map(|removed| {
                    let t = Instant::now();
                    let mut report = ctx.check(p, &removed)?;
                    report.elapsed = t.elapsed();
                    Ok(Cell { point: g, removed, report })
                })
                .collect()
        });
        for c in results {
            cells.push(c?);
        }
    }
    let equal_count = cells.iter().filter(|c| c.report.equal).count();
    let first_counterexample = cells.iter().position(|c| c.report.is_counterexample());
    let counterexamples = cells.iter().filter(|c| c.report.is_counterexample()).count();
    Ok(RunSummary {
        mode: cfg.mode,
        grid: cfg.grid.clone(),
        unequal_count: cells.len() - equal_count,
        equal_count,
        counterexamples,
        first_counterexample,
        cells,
        skipped,
        wall_clock: start.elapsed(),
        timings: cfg.timings,
    })
}

#[derive(Serialize)]
struct JsonCell<'a> {
    params: &'a GridPoint,
    removed: &'a [usize],
    computed_rank: u64,
    formula_rank: u64,
    rank_source: &'static str,
    equal: bool,
    in_hypothesis: bool,
    certificate: Option<serde_json::Value>,
    ms: Option<f64>,
}

#[derive(Serialize)]
struct JsonSummary<'a> {
    total: usize,
    equal: usize,
    unequal: usize,
    counterexamples: usize,
    first_counterexample: Option<usize>,
    skipped: &'a [Skipped],
    wall_ms: Option<f64>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    mode: &'static str,
    grid: &'a [GridPoint],
    cells: Vec<JsonCell<'a>>,
    summary: JsonSummary<'a>,
}

pub fn certificate_json(cert: &Certificate) -> serde_json::Value {
    match cert {
        Certificate::Perm(p) => serde_json::json!({ "kind": "sigma", "image": p.image() }),
        Certificate::Gl(g) => {
            let m = g.matrix();
            let f = m.field();
            let rows: Vec<Vec<String>> =
                (0..m.rows()).map(|i| (0..m.cols()).map(|j| f.format(&m.get(i, j))).collect()).collect();
            serde_json::json!({ "kind": "g", "q": g.q(), "matrix": rows })
        }
    }
}

fn rank_source_str(s: RankSource) -> &'static str {
    match s {
        RankSource::Formula => "formula",
        RankSource::Elimination => "elimination",
    }
}

fn ms(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

/// The JSON report. Timings are `null` unless the run recorded them, so
/// reports of a fixed configuration are byte-identical.
pub fn to_json(summary: &RunSummary) -> String {
    let cells = summary
        .cells
        .iter()
        .map(|c| JsonCell {
            params: &summary.grid[c.point],
            removed: &c.removed,
            computed_rank: c.report.computed_rank,
            formula_rank: c.report.formula_rank,
            rank_source: rank_source_str(c.report.rank_source),
            equal: c.report.equal,
            in_hypothesis: c.report.in_hypothesis,
            certificate: c.report.certificate.as_ref().map(certificate_json),
            ms: summary.timings.then(|| ms(c.report.elapsed)),
        })
        .collect();
    let report = JsonReport {
        mode: summary.mode.as_str(),
        grid: &summary.grid,
        cells,
        summary: JsonSummary {
            total: summary.cells.len(),
            equal: summary.equal_count,
            unequal: summary.unequal_count,
            counterexamples: summary.counterexamples,
            first_counterexample: summary.first_counterexample,
            skipped: &summary.skipped,
            wall_ms: summary.timings.then(|| ms(summary.wall_clock)),
        },
    };
    let mut s = serde_json::to_string_pretty(&report).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct CsvRow<'a> {
    n: usize,
    r: usize,
    s: usize,
    q: Option<u64>,
    field: &'a str,
    removed: String,
    computed_rank: u64,
    formula_rank: u64,
    equal: bool,
    in_hypothesis: bool,
    certificate: String,
    ms: Option<f64>,
}

pub fn write_csv<W: std::io::Write>(out: W, summary: &RunSummary) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for c in &summary.cells {
        let p = &summary.grid[c.point];
        let removed: Vec<String> = c.removed.iter().map(|i| i.to_string()).collect();
        w.serialize(CsvRow {
            n: p.n,
            r: p.r,
            s: p.s,
            q: p.q,
            field: &p.field,
            removed: removed.join(" "),
            computed_rank: c.report.computed_rank,
            formula_rank: c.report.formula_rank,
            equal: c.report.equal,
            in_hypothesis: c.report.in_hypothesis,
            certificate: c.report.certificate.as_ref().map_or(String::new(), |x| certificate_json(x).to_string()),
            ms: summary.timings.then(|| ms(c.report.elapsed)),
        })?;
    }
    w.flush()?;
    Ok(())
}
