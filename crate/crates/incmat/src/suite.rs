//! Named verification checks: the acceptance criteria and the wider
//! invariant suite run by `incmat verify`.

use std::io::Write;
use std::time::{Duration, Instant};

use anyhow::{ensure, Result};
use incmat_core::character::{default_host_prime, CharacterCtx};
use incmat_core::combin::{binom, binomial, gauss};
use incmat_core::linalg::rank;
use incmat_core::qlat::{
    count_good, decode_subspace, encode_subspace, enumerate_paths, q_field, Grassmannian, PathClass, QFamily,
};
use incmat_core::qrank::{
    build_wq, diagonal_action_check, e_block_matrix, find_g, fy_rank, lemma18_intersection_dim, specht_dimension,
    u_subspace, w_chain_dims,
};
use incmat_core::sets::{
    all_subsets, bier_basis_matrix, bier_identity_residual, build_w, bracket_alternating_residual, diagonal_form_check,
    find_sigma, full_rank_sets, lovasz_x, shadow, wilson_rank, SetFamily, Subset,
};
use incmat_core::{FieldCtx, Mode};
use num_bigint::BigUint;

use crate::sweep::{combinations_up_to, run_sweep, ExperimentConfig, GridPoint, Removal};

pub struct Check {
    pub id: &'static str,
    pub title: &'static str,
    pub budget: Option<Duration>,
    pub run: fn() -> Result<String>,
}

#[derive(Debug)]
pub struct Outcome {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

fn field(s: &str) -> FieldCtx {
    FieldCtx::parse(s).expect("known field")
}

fn char_field(ch: u64) -> FieldCtx {
    if ch == 0 {
        FieldCtx::rationals()
    } else {
        FieldCtx::prime(ch).expect("prime")
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn wilson_agreement() -> Result<String> {
    let mut cases = 0;
    for n in 1..=10 {
        for r in 0..=n / 2 {
            for s in 0..=r {
                if n < r + s {
                    continue;
                }
                for ch in [0u64, 2, 3, 5] {
                    let rk = rank(&build_w(n, r, s, &char_field(ch), None)?);
                    let formula = wilson_rank(n, r, s, ch)?;
                    ensure!(BigUint::from(rk) == formula, "n={} r={} s={} char {}: rank {} vs {}", n, r, s, ch, rk, formula);
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{} (n, r, s, char) cases", cases))
}

const Q_GRID: [(usize, u64); 3] = [(4, 2), (4, 3), (5, 2)];

fn fy_agreement() -> Result<String> {
    let mut cases = 0;
    for (n, q) in Q_GRID {
        let p = incmat_core::qlat::prime_power(q).expect("prime power").0;
        for r in 1..=n / 2 {
            for s in 0..r {
                for ch in [0u64, 3, 5, 7] {
                    if ch == p {
                        continue;
                    }
                    let rk = rank(&build_wq(n, r, s, q, &char_field(ch), None)?);
                    let formula = fy_rank(n, r, s, q, ch)?;
                    ensure!(BigUint::from(rk) == formula, "n={} r={} s={} q={} char {}: rank {} vs {}", n, r, s, q, ch, rk, formula);
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{} (n, r, s, q, char) cases", cases))
}

fn sweep_ok(cfg: &ExperimentConfig, expect_cells: usize) -> Result<String> {
    let s = run_sweep(cfg)?;
    ensure!(s.skipped.is_empty(), "skipped grid points: {:?}", s.skipped);
    ensure!(s.cells.len() == expect_cells, "{} cells, expected {}", s.cells.len(), expect_cells);
    ensure!(s.cells.iter().all(|c| c.report.in_hypothesis), "a family outside the size bound was generated");
    if let Some(i) = s.first_counterexample {
        let c = &s.cells[i];
        anyhow::bail!("counterexample at {:?} removing {:?}: rank {} vs {}", s.grid[c.point], c.removed, c.report.computed_rank, c.report.formula_rank);
    }
    Ok(format!("{} cells, {} equal, 0 counterexamples", s.cells.len(), s.equal_count))
}

fn subset_sweep() -> Result<String> {
    let fields: Vec<String> = ["q0", "gf2", "gf3"].iter().map(|s| s.to_string()).collect();
    let grid = GridPoint::product(Mode::Set, &[7], &[3], &[1, 2], &[], &fields);
    let cfg = ExperimentConfig::new(Mode::Set, grid, Removal::Exhaustive { max_size: 2 });
    sweep_ok(&cfg, 6 * 631)
}

fn subspace_sweep() -> Result<String> {
    let mut grid = GridPoint::product(Mode::Q, &[4], &[2], &[1], &[2], &["gf3".into(), "q0".into()]);
    grid.extend(GridPoint::product(Mode::Q, &[4], &[2], &[1], &[3], &["gf2".into(), "q0".into()]));
    let cfg = ExperimentConfig::new(Mode::Q, grid, Removal::Exhaustive { max_size: 1 });
    let a = sweep_ok(&cfg, 2 * 36 + 2 * 131)?;
    let grid = GridPoint::product(Mode::Q, &[6], &[2], &[1], &[2], &["gf3".into()]);
    let mut cfg = ExperimentConfig::new(Mode::Q, grid, Removal::Sampled { count: 1000, max_size: 2 });
    cfg.seed = 20;
    let b = sweep_ok(&cfg, 1000)?;
    Ok(format!("exhaustive: {}; sampled n=6: {}", a, b))
}

fn bier_bases() -> Result<String> {
    let mut cases = 0;
    for n in 0..=10 {
        for r in 0..=n / 2 {
            for fs in ["q0", "gf2", "gf3"] {
                let m = bier_basis_matrix(n, r, &field(fs))?;
                ensure!(m.rows() == binom(n, r) && rank(&m) == binom(n, r), "n={} r={} over {} singular", n, r, fs);
                cases += 1;
            }
        }
    }
    Ok(format!("{} bases of full rank", cases))
}

fn bier_identity() -> Result<String> {
    let mut cases = 0;
    for fs in ["q0", "gf2"] {
        let f = field(fs);
        for n in 1..=8 {
            for r in 1..=n {
                for j in 0..r {
                    for a in all_subsets(n, j) {
                        for ell in 1..=r - j {
                            let v = bier_identity_residual(&a, r, ell, &f)?;
                            ensure!(v.iter().all(|x| f.is_zero(x)), "residual nonzero: n={} r={} A={} ell={} over {}", n, r, a, ell, fs);
                            cases += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{} (A, r, ell) residuals vanish", cases))
}

/// Coefficients of the Gaussian polynomial `[n k]_x` via
/// `[n k] = [n-1 k-1] + x^k [n-1 k]`.
fn gaussian_poly(n: usize, k: usize) -> Vec<u64> {
    let mut table: Vec<Vec<Vec<u64>>> = vec![vec![Vec::new(); n + 1]; n + 1];
    for m in 0..=n {
        for j in 0..=m {
            table[m][j] = if j == 0 || j == m {
                vec![1]
            } else {
                let a = &table[m - 1][j - 1];
                let b = &table[m - 1][j];
                let mut out = vec![0; a.len().max(b.len() + j)];
                for (i, &c) in a.iter().enumerate() {
                    out[i] += c;
                }
                for (i, &c) in b.iter().enumerate() {
                    out[i + j] += c;
                }
                out
            };
        }
    }
    if k > n {
        return Vec::new();
    }
    table[n][k].clone()
}

fn codec() -> Result<String> {
    let mut codes = 0;
    for q in [2u64, 3] {
        for n in 0..=5 {
            for r in 0..=n {
                let g = Grassmannian::new(n, r, q)?;
                ensure!(g.len() == gauss(n, r, q), "count of {}-subspaces of F_{}^{}", r, q, n);
                for (i, c) in g.iter().enumerate() {
                    let m = decode_subspace(&c, g.field())?;
                    let back = encode_subspace(&m, r)?;
                    ensure!(back == c && g.index(&back) == i, "roundtrip failed for {}", c);
                    codes += 1;
                }
            }
        }
    }
    let mut polys = 0;
    for n in 0..=8 {
        for r in 0..=n {
            let mut poly = vec![0u64; r * (n - r) + 1];
            for p in enumerate_paths(n, r) {
                poly[p.box_count()] += 1;
            }
            ensure!(poly == gaussian_poly(n, r), "box generating polynomial differs for n={} r={}", n, r);
            polys += 1;
        }
    }
    Ok(format!("{} codes round-tripped, {} path polynomials equal [n r]_q", codes, polys))
}

fn host_field(q: u64) -> FieldCtx {
    let p = incmat_core::qlat::prime_power(q).expect("prime power").0;
    FieldCtx::prime(default_host_prime(p)).expect("prime")
}

fn good_count() -> Result<String> {
    let mut cases = Vec::new();
    for q in [2u64, 3] {
        for n in 0..=5 {
            for r in 0..=n / 2 {
                let expect = incmat_core::qlat::gaussian_binomial(n as i64, r as i64, q)
                    - incmat_core::qlat::gaussian_binomial(n as i64, r as i64 - 1, q);
                let good = count_good(n, r, q)?;
                let specht = specht_dimension(n, r, q, &host_field(q))?;
                ensure!(good == expect && specht == expect, "n={} r={} q={}: good {} specht {} expected {}", n, r, q, good, specht, expect);
                if (n, r, q) == (4, 2, 2) {
                    ensure!(good == BigUint::from(20u32), "n=4 r=2 q=2 should give 20");
                }
                cases.push(());
            }
        }
    }
    Ok(format!("{} (n, r, q) cases", cases.len()))
}

fn module_dims() -> Result<String> {
    let mut cases = 0;
    for q in [2u64, 3] {
        for n in 0..=5 {
            for r in 0..=n / 2 {
                let f = host_field(q);
                let u = u_subspace(n, r, q, &f)?.dim();
                let expect = if r == 0 { 0 } else { gauss(n, r - 1, q) };
                ensure!(u == expect, "dim U for n={} r={} q={}: {} vs {}", n, r, q, u, expect);
                let dims = w_chain_dims(n, r, q, &f)?;
                let want: Vec<usize> = (0..=r).map(|j| gauss(n, j, q)).collect();
                ensure!(dims == want, "W chain for n={} r={} q={}: {:?} vs {:?}", n, r, q, dims, want);
                cases += 1;
            }
        }
    }
    Ok(format!("{} (n, r, q) cases", cases))
}

fn plus_intersection() -> Result<String> {
    let mut out = Vec::new();
    for (n, r, q, host) in [(4, 2, 2u64, 3u64), (5, 2, 2, 3), (4, 2, 3, 7)] {
        let ctx = CharacterCtx::with_host(&q_field(q)?, &FieldCtx::prime(host)?)?;
        let d = lemma18_intersection_dim(n, r, &ctx)?;
        ensure!(d == 0, "n={} r={} q={} over F_{}: intersection dimension {}", n, r, q, host, d);
        out.push(format!("({},{},{},F_{})", n, r, q, host));
    }
    Ok(format!("trivial intersection for {}", out.join(" ")))
}

fn certificates() -> Result<String> {
    let mut sigmas = 0;
    for n in 1..=8 {
        for r in 1..=n / 2 {
            let bound = (n - 1) / r;
            for fam in combinations_up_to(binom(n, r), bound) {
                let fam = SetFamily::new(n, r, fam)?;
                let sigma = find_sigma(&fam).ok_or_else(|| anyhow::anyhow!("no sigma for n={} r={} {:?}", n, r, fam.members()))?;
                ensure!(sigma.certifies(&fam), "sigma does not certify {:?}", fam.members());
                sigmas += 1;
            }
        }
    }
    let (mut found, mut refused) = (0, 0);
    for (n, q) in Q_GRID {
        for r in 1..=n / 2 {
            let g = Grassmannian::new(n, r, q)?;
            let pivots: Vec<Vec<usize>> = g.iter().map(|c| c.pivots().to_vec()).collect();
            for fam in combinations_up_to(g.len(), 2) {
                let mut union: Vec<usize> = fam.iter().flat_map(|&i| pivots[i].iter().copied()).collect();
                union.sort_unstable();
                union.dedup();
                let qf = QFamily::new(n, r, q, fam)?;
                match find_g(&qf)? {
                    Some(cert) => {
                        ensure!(cert.certifies(&qf)?, "g fails to certify {:?}", qf.members());
                        for c in qf.codes() {
                            ensure!(cert.apply(&c)?.path().classify() == PathClass::Plus, "g(X) not in S(r)^+");
                        }
                        found += 1;
                    }
                    None => {
                        ensure!(union.len() > n - r, "no g although the pivot union has {} <= n - r columns", union.len());
                        refused += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{} sigma certificates; {} g certificates, {} families beyond the pivot bound", sigmas, found, refused))
}

fn shadow_lovasz() -> Result<String> {
    let q0 = FieldCtx::rationals();
    let n = 8;
    let mut cases = 0;
    for x in 1..=8usize {
        let ground = Subset::prefix(n, x);
        for r in 1..=x {
            let sets: Vec<Subset> = all_subsets(n, r).into_iter().filter(|a| a.is_subset_of(&ground)).collect();
            let fam = SetFamily::from_subsets(n, r, &sets)?;
            let lx = lovasz_x(&binomial(x as i64, r as i64), r)?;
            ensure!((lx - x as f64).abs() < 1e-9, "lovasz_x(C({}, {})) = {}", x, r, lx);
            for s in 0..=r {
                let size = shadow(&fam, s)?.len();
                ensure!(BigUint::from(size) == binomial(x as i64, s as i64), "|shadow| for x={} r={} s={}", x, r, s);
                if x >= r + s {
                    let rk = rank(&build_w(n, r, s, &q0, Some(&fam))?);
                    ensure!(BigUint::from(rk) == binomial(x as i64, s as i64), "rank for x={} r={} s={}: {}", x, r, s, rk);
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{} (x, r, s) cases", cases))
}

pub fn acceptance_checks() -> Vec<Check> {
    vec![
        Check { id: "1", title: "Wilson formula agreement", budget: secs(60), run: wilson_agreement },
        Check { id: "2", title: "q-analogue rank formula agreement", budget: secs(300), run: fy_agreement },
        Check { id: "3", title: "subset resilience sweep (n=7, r=3)", budget: secs(600), run: subset_sweep },
        Check { id: "4", title: "subspace resilience sweep", budget: secs(900), run: subspace_sweep },
        Check { id: "5", title: "Bier bases have full rank", budget: secs(120), run: bier_bases },
        Check { id: "6", title: "Bier identity residuals vanish", budget: secs(120), run: bier_identity },
        Check { id: "7", title: "subspace codec and path polynomials", budget: secs(60), run: codec },
        Check { id: "8", title: "good subspaces = Specht dimension", budget: secs(300), run: good_count },
        Check { id: "9", title: "U_{r-1} and W_j dimensions", budget: None, run: module_dims },
        Check { id: "10", title: "U_{r-1} meets the PLUS blocks trivially", budget: secs(180), run: plus_intersection },
        Check { id: "11", title: "sigma and g certificates", budget: None, run: certificates },
        Check { id: "12", title: "shadow and Lovasz spot checks", budget: secs(30), run: shadow_lovasz },
    ]
}

fn full_rank_counts() -> Result<String> {
    for n in 0..=12 {
        for j in 0..=n / 2 {
            let expect = binom(n, j) - if j == 0 { 0 } else { binom(n, j - 1) };
            ensure!(full_rank_sets(n, j)?.len() == expect, "|S({})| for n={}", j, n);
        }
    }
    Ok("|S(j)| = C(n,j) - C(n,j-1) for n <= 12".into())
}

fn bracket_sums() -> Result<String> {
    let f = field("q0");
    let mut cases = 0;
    for n in 1..=7usize {
        for m in 1..=n.div_ceil(2) {
            for i_set in all_subsets(2 * m - 1, m) {
                let i_set = Subset::from_mask(n, i_set.mask())?;
                for xmask in 0u64..1 << n {
                    let x = Subset::from_mask(n, xmask)?;
                    let legal = x.is_disjoint(&Subset::prefix(n, 2 * m - 1))
                        && x.elements().iter().enumerate().all(|(k, &e)| e >= 2 * (m + k + 1));
                    if !legal {
                        continue;
                    }
                    for r in m + x.len()..=n {
                        let v = bracket_alternating_residual(&i_set, &x, m, r, &f)?;
                        ensure!(v.iter().all(|y| f.is_zero(y)), "bracket sum nonzero for I={} X={} r={}", i_set, x, r);
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{} bracket sums vanish", cases))
}

fn diagonal_forms() -> Result<String> {
    let mut cases = 0;
    for n in 2..=7 {
        for r in 0..=n / 2 {
            for s in 0..=r {
                for fs in ["q0", "gf2", "gf3"] {
                    ensure!(diagonal_form_check(n, r, s, &field(fs))?, "subset diagonal form n={} r={} s={} {}", n, r, s, fs);
                    cases += 1;
                }
            }
        }
    }
    for (n, r, s) in [(4, 2, 1), (5, 2, 1), (5, 3, 2), (5, 2, 0)] {
        ensure!(diagonal_action_check(n, r, s, 2, &field("gf3"))?, "subspace diagonal action n={} r={} s={}", n, r, s);
        cases += 1;
    }
    Ok(format!("{} diagonal-form cases", cases))
}

fn kantor() -> Result<String> {
    let q0 = FieldCtx::rationals();
    let mut cases = 0;
    for (n, q) in Q_GRID {
        for r in 0..=n {
            for s in 0..=r.min(n - r) {
                let rk = rank(&build_wq(n, r, s, q, &q0, None)?);
                ensure!(rk == gauss(n, s, q), "rank_Q W_{},{}({}) for n={}", r, s, q, n);
                cases += 1;
            }
        }
    }
    Ok(format!("{} cases of rank_Q = [n s]_q", cases))
}

fn character_blocks() -> Result<String> {
    let mut cases = 0;
    for q in [2u64, 3] {
        let ctx = CharacterCtx::new(&q_field(q)?)?;
        for n in 0..=4 {
            for r in 0..=n {
                for p in enumerate_paths(n, r) {
                    let m = e_block_matrix(&p, &ctx)?;
                    ensure!(rank(&m) == m.rows(), "e_L block of {} singular", p);
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{} path blocks of full rank", cases))
}

fn q_resilience_small() -> Result<String> {
    let grid = GridPoint::product(Mode::Q, &[4], &[2], &[1], &[2], &["gf3".into()]);
    let cfg = ExperimentConfig::new(Mode::Q, grid, Removal::Exhaustive { max_size: 1 });
    let s = run_sweep(&cfg)?;
    ensure!(s.passed() && s.cells.len() == 36, "q sweep failed");
    ensure!(s.cells.iter().all(|c| c.report.computed_rank == 14), "rank 14 expected");
    Ok("n=4 r=2 s=1 q=2 over F_3: 36 cells, rank 14".into())
}

/// Module invariants beyond the acceptance criteria.
pub fn invariant_checks() -> Vec<Check> {
    vec![
        Check { id: "S1", title: "full-rank set counts", budget: None, run: full_rank_counts },
        Check { id: "S2", title: "bracket alternating sums", budget: None, run: bracket_sums },
        Check { id: "S3", title: "diagonal forms", budget: None, run: diagonal_forms },
        Check { id: "Q1", title: "rational rank of W_{r,s}(q)", budget: None, run: kantor },
        Check { id: "Q2", title: "character block matrices", budget: None, run: character_blocks },
        Check { id: "Q3", title: "single-removal subspace sweep", budget: None, run: q_resilience_small },
    ]
}

pub fn run_check(c: &Check) -> Outcome {
    let t = Instant::now();
    let res = (c.run)();
    let elapsed = t.elapsed();
    let (mut passed, mut detail) = match res {
        Ok(d) => (true, d),
        Err(e) => (false, format!("{:#}", e)),
    };
    if let Some(b) = c.budget {
        if passed && elapsed > b {
            passed = false;
            detail = format!("{} but took {:.1} s, over the {} s budget", detail, elapsed.as_secs_f64(), b.as_secs());
        }
    }
    Outcome { id: c.id, title: c.title, passed, detail, elapsed }
}

/// Runs the checks in order, printing one line per check.
pub fn run_checks<W: Write + ?Sized>(checks: &[Check], out: &mut W) -> std::io::Result<Vec<Outcome>> {
    let mut outcomes = Vec::with_capacity(checks.len());
    for c in checks {
        let o = run_check(c);
        let budget = c.budget.map_or(String::new(), |b| format!(", limit {} s", b.as_secs()));
        writeln!(
            out,
            "{} [{}] {}: {} ({:.2} s{})",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.detail,
            o.elapsed.as_secs_f64(),
            budget
        )?;
        outcomes.push(o);
    }
    Ok(outcomes)
}
