//! `incmat` subcommands. Exit codes: 0 success, 1 a checked property
//! failed, 2 bad usage or parameters.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use incmat_core::character::default_host_prime;
use incmat_core::linalg::rank;
use incmat_core::qlat::{count_good, enumerate_paths, prime_power, Grassmannian, QFamily};
use incmat_core::qrank::{build_wq, find_g, fy_rank, specht_dimension};
use incmat_core::sets::{bier_basis_matrix, build_w, find_sigma, wilson_rank, SetFamily};
use incmat_core::{ExactMatrix, FieldCtx, Mode};

use crate::formats::{parse_family, parse_remove, parse_subspaces, read_matrix, read_text, write_matrix, RemoveSpec};
use crate::suite;
use crate::sweep::{run_sweep, to_json, write_csv, ExperimentConfig, GridPoint, Removal, DEFAULT_ENTRY_BUDGET};

#[derive(Parser)]
#[command(name = "incmat", version, about = "Ranks of higher inclusion matrices of subsets and subspaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Set,
    Q,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Set => Mode::Set,
            ModeArg::Q => Mode::Q,
        }
    }
}

#[derive(Args)]
struct MatrixArgs {
    #[arg(long, value_enum, default_value = "set")]
    mode: ModeArg,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    /// Order of the subspace field (q mode).
    #[arg(long)]
    q: Option<u64>,
    /// Field of the matrix entries: q0, gf<p> or gf<p>^<t>.
    #[arg(long, default_value = "q0")]
    field: String,
    /// Rows to delete: an index list like `0,5,9` or a family file.
    #[arg(long)]
    remove: Option<String>,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    /// Removed family: row indices like `0,5,9` or a family file.
    #[arg(long)]
    remove: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write W_{r,s} (or W_{r,s}(q)) in sparse text form.
    Build {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank of W_{r,s}, optionally with rows removed, or of a matrix file.
    Rank {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long, conflicts_with_all = ["n", "r", "s", "remove"])]
        matrix: Option<PathBuf>,
    },
    /// Wilson's rank of W_{r,s} in characteristic `char`.
    Wilson {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long = "char")]
        ch: u64,
    },
    /// Rank of W_{r,s}(q) in characteristic `char`, which must differ from that of F_q.
    Fy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        q: u64,
        #[arg(long = "char")]
        ch: u64,
    },
    /// Check that the Bier vectors of S(0), ..., S(r) form a basis.
    Bier {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "q0")]
        field: String,
    },
    /// List the lattice paths with r south steps and their classes.
    Paths {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Number of r-subspaces of F_q^n with a good filling.
    GoodCount {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        q: u64,
    },
    /// Dimension of the Specht module S^{(n-r, r)} over a field of characteristic coprime to q.
    SpechtDim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        q: u64,
        /// Defaults to the smallest prime l with p | l - 1.
        #[arg(long)]
        field: Option<String>,
    },
    /// Find a permutation moving a removed family of r-sets into S(r).
    Sigma {
        #[command(flatten)]
        f: FamilyArgs,
    },
    /// Find g in GL(n, q) moving a removed family of r-subspaces into the PLUS class.
    Gfind {
        #[command(flatten)]
        f: FamilyArgs,
        #[arg(long)]
        q: u64,
    },
    /// Compare ranks after removing rows against the full rank over a parameter grid.
    Resilience(ResilienceArgs),
    /// Run the acceptance criteria and the invariant suite.
    Verify {
        /// Only the acceptance criteria.
        #[arg(long, conflicts_with = "quick")]
        acceptance: bool,
        /// Only the fast invariant checks.
        #[arg(long)]
        quick: bool,
        /// Run only checks with these ids.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
}

#[derive(Args)]
struct ResilienceArgs {
    #[arg(long, value_enum, default_value = "set")]
    mode: ModeArg,
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    r: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    s: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    q: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_value = "q0")]
    field: Vec<String>,
    /// Every family of at most k rows.
    #[arg(long, value_name = "K", conflicts_with_all = ["sample", "remove"])]
    exhaustive: Option<usize>,
    /// N random families per grid point.
    #[arg(long, value_name = "N", conflicts_with = "remove")]
    sample: Option<usize>,
    #[arg(long, default_value_t = 1)]
    max_size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// One family: row indices like `0,5,9` or a family file.
    #[arg(long)]
    remove: Option<String>,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    /// Largest matrix (rows x columns) a grid point may build.
    #[arg(long, default_value_t = DEFAULT_ENTRY_BUDGET)]
    budget: u64,
    /// Record per-cell times in the reports.
    #[arg(long)]
    timings: bool,
}

fn need(v: Option<usize>, name: &str) -> Result<usize> {
    v.with_context(|| format!("--{} is required", name))
}

fn need_q(q: Option<u64>) -> Result<u64> {
    let q = q.context("--q is required in q mode")?;
    if prime_power(q).is_none() {
        bail!("q = {} is not a prime power", q);
    }
    Ok(q)
}

fn set_family(n: usize, r: usize, spec: &str) -> Result<SetFamily> {
    match parse_remove(spec)? {
        RemoveSpec::Indices(idx) => Ok(SetFamily::new(n, r, idx)?),
        RemoveSpec::File(path) => parse_family(&read_text(&path)?, n, r),
    }
}

fn q_family(n: usize, r: usize, q: u64, spec: &str) -> Result<QFamily> {
    let idx = match parse_remove(spec)? {
        RemoveSpec::Indices(idx) => idx,
        RemoveSpec::File(path) => parse_subspaces(&read_text(&path)?, &Grassmannian::new(n, r, q)?)?,
    };
    Ok(QFamily::new(n, r, q, idx)?)
}

fn build_matrix(m: &MatrixArgs) -> Result<ExactMatrix> {
    let (n, r, s) = (need(m.n, "n")?, need(m.r, "r")?, need(m.s, "s")?);
    let field = FieldCtx::parse(&m.field)?;
    Ok(match m.mode {
        ModeArg::Set => {
            let kept = m.remove.as_deref().map(|spec| set_family(n, r, spec)).transpose()?.map(|f| f.complement());
            build_w(n, r, s, &field, kept.as_ref())?
        }
        ModeArg::Q => {
            let q = need_q(m.q)?;
            let kept = m.remove.as_deref().map(|spec| q_family(n, r, q, spec)).transpose()?.map(|f| f.complement());
            build_wq(n, r, s, q, &field, kept.as_ref())?
        }
    })
}

fn grid_removal(a: &ResilienceArgs, grid: &[GridPoint]) -> Result<Removal> {
    if let Some(k) = a.exhaustive {
        return Ok(Removal::Exhaustive { max_size: k });
    }
    if let Some(count) = a.sample {
        if a.max_size == 0 {
            bail!("--max-size must be at least 1");
        }
        return Ok(Removal::Sampled { count, max_size: a.max_size });
    }
    let Some(spec) = &a.remove else {
        return Ok(Removal::Exhaustive { max_size: 1 });
    };
    match parse_remove(spec)? {
        RemoveSpec::Indices(idx) => Ok(Removal::Explicit(vec![idx])),
        RemoveSpec::File(path) => {
            let text = read_text(&path)?;
            let mut shapes: Vec<(usize, usize, Option<u64>)> = grid.iter().map(|p| (p.n, p.r, p.q)).collect();
            shapes.dedup();
            let [(n, r, q)] = shapes[..] else {
                bail!("a family file needs a single choice of n, r and q");
            };
            let members = match q {
                None => parse_family(&text, n, r)?.members().to_vec(),
                Some(q) => parse_subspaces(&text, &Grassmannian::new(n, r, q)?)?,
            };
            Ok(Removal::Explicit(vec![members]))
        }
    }
}

fn write_to(path: &PathBuf, out: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    if path.as_os_str() == "-" {
        return f(out);
    }
    let mut w = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
    f(&mut w)?;
    w.flush()?;
    Ok(())
}

fn resilience(a: &ResilienceArgs, out: &mut dyn Write) -> Result<i32> {
    let mode: Mode = a.mode.into();
    if mode == Mode::Q && a.q.is_empty() {
        bail!("--q is required in q mode");
    }
    let grid = GridPoint::product(mode, &a.n, &a.r, &a.s, &a.q, &a.field);
    for p in &grid {
        FieldCtx::parse(&p.field)?;
    }
    let mut cfg = ExperimentConfig::new(mode, grid.clone(), grid_removal(a, &grid)?);
    cfg.seed = a.seed;
    cfg.threads = a.threads;
    cfg.entry_budget = a.budget;
    cfg.timings = a.timings;
    let summary = run_sweep(&cfg)?;
    if let Some(path) = &a.json {
        let text = to_json(&summary);
        write_to(path, out, |w| Ok(writeln!(w, "{}", text)?))?;
    }
    if let Some(path) = &a.csv {
        write_to(path, out, |w| write_csv(w, &summary))?;
    }
    if a.json.as_ref().is_none_or(|p| p.as_os_str() != "-") {
        for (g, p) in summary.grid.iter().enumerate() {
            let cells: Vec<_> = summary.cells.iter().filter(|c| c.point == g).collect();
            let equal = cells.iter().filter(|c| c.report.equal).count();
            let bad = cells.iter().filter(|c| c.report.is_counterexample()).count();
            let q = p.q.map_or(String::new(), |q| format!(" q={}", q));
            let reference = cells.first().map_or(String::new(), |c| format!(" rank={}", c.report.formula_rank));
            writeln!(
                out,
                "n={} r={} s={}{} field={}{}: {} families, {} equal, {} counterexamples",
                p.n,
                p.r,
                p.s,
                q,
                p.field,
                reference,
                cells.len(),
                equal,
                bad
            )?;
        }
        for sk in &summary.skipped {
            writeln!(out, "skipped n={} r={} s={} field={}: {}", sk.params.n, sk.params.r, sk.params.s, sk.params.field, sk.reason)?;
        }
        if let Some(i) = summary.first_counterexample {
            let c = &summary.cells[i];
            writeln!(out, "first counterexample: removed rows {:?}, rank {} vs {}", c.removed, c.report.computed_rank, c.report.formula_rank)?;
        }
        writeln!(out, "total {} cells, {} counterexamples", summary.cells.len(), summary.counterexamples)?;
    }
    Ok(if summary.passed() { 0 } else { 1 })
}

fn verify(acceptance: bool, quick: bool, only: &[String], out: &mut dyn Write) -> Result<i32> {
    let mut checks = Vec::new();
    if !acceptance {
        checks.extend(suite::invariant_checks());
    }
    if !quick {
        checks.extend(suite::acceptance_checks());
    }
    if !only.is_empty() {
        checks.retain(|c| only.iter().any(|id| id == c.id));
        if checks.is_empty() {
            bail!("no check matches {:?}", only);
        }
    }
    let outcomes = suite::run_checks(&checks, out)?;
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    writeln!(out, "{} of {} checks passed", outcomes.len() - failed, outcomes.len())?;
    Ok(if failed == 0 { 0 } else { 1 })
}

fn dispatch(cmd: Cmd, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Cmd::Build { m, out: path } => {
            let w = build_matrix(&m)?;
            match path {
                Some(p) => write_to(&p, out, |o| write_matrix(o, &w))?,
                None => write_matrix(out, &w)?,
            }
        }
        Cmd::Rank { m, matrix } => {
            let w = match matrix {
                Some(p) => read_matrix(File::open(&p).with_context(|| format!("opening {}", p.display()))?)?,
                None => build_matrix(&m)?,
            };
            writeln!(out, "{}", rank(&w))?;
        }
        Cmd::Wilson { n, r, s, ch } => writeln!(out, "{}", wilson_rank(n, r, s, ch)?)?,
        Cmd::Fy { n, r, s, q, ch } => writeln!(out, "{}", fy_rank(n, r, s, q, ch)?)?,
        Cmd::Bier { n, r, field } => {
            let m = bier_basis_matrix(n, r, &FieldCtx::parse(&field)?)?;
            let rk = rank(&m);
            writeln!(out, "{} vectors in dimension {}, rank {}", m.rows(), m.cols(), rk)?;
            if rk != m.rows() || rk != m.cols() {
                return Ok(1);
            }
        }
        Cmd::Paths { n, r } => {
            for p in enumerate_paths(n, r) {
                writeln!(out, "{} {} boxes={} {}", p, p.to_subset(), p.box_count(), p.classify())?;
            }
        }
        Cmd::GoodCount { n, r, q } => writeln!(out, "{}", count_good(n, r, need_q(Some(q))?)?)?,
        Cmd::SpechtDim { n, r, q, field } => {
            let q = need_q(Some(q))?;
            let f = match field {
                Some(s) => FieldCtx::parse(&s)?,
                None => FieldCtx::prime(default_host_prime(prime_power(q).expect("checked").0))?,
            };
            writeln!(out, "{}", specht_dimension(n, r, q, &f)?)?;
        }
        Cmd::Sigma { f } => {
            let fam = set_family(f.n, f.r, &f.remove)?;
            match find_sigma(&fam) {
                Some(sigma) => {
                    let img: Vec<String> = sigma.image().iter().map(|x| x.to_string()).collect();
                    writeln!(out, "{}", img.join(" "))?;
                    if !sigma.certifies(&fam) {
                        return Ok(1);
                    }
                }
                None => {
                    writeln!(out, "none")?;
                    if fam.len() * f.r < f.n {
                        return Ok(1);
                    }
                }
            }
        }
        Cmd::Gfind { f, q } => {
            let q = need_q(Some(q))?;
            let fam = q_family(f.n, f.r, q, &f.remove)?;
            match find_g(&fam)? {
                Some(g) => {
                    let m = g.matrix();
                    for i in 0..m.rows() {
                        let row: Vec<String> = m.row(i).iter().map(|x| m.field().format(x)).collect();
                        writeln!(out, "{}", row.join(" "))?;
                    }
                    if !g.certifies(&fam)? {
                        return Ok(1);
                    }
                }
                None => writeln!(out, "none")?,
            }
        }
        Cmd::Resilience(a) => return resilience(&a, out),
        Cmd::Verify { acceptance, quick, only } => return verify(acceptance, quick, &only, out),
    }
    Ok(0)
}

/// Parses `args` (program name first) and runs the command, writing normal
/// output to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {:#}", e);
            2
        }
    }
}
