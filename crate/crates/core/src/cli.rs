//! The `weylext` command line: single cells, sweep tables and the
//! verification suites.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::Hook;
use crate::error::{Error, Result};
use crate::extcalc::{expected_ext2, expected_modular_ext1, Coefficients, Engine, ExtQuery, ExtRecord};
use crate::report::{Check, Report};
use crate::resolution::{block_check, diagonal_block, skew_block_check, verify_complex, rational_exactness, MatrixCache};
use crate::tableaux::CoefficientModule;
use crate::zlinalg::{smith_normal_form, AbelianGroup};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "weylext",
    version,
    about = "Integral Ext groups between hook Weyl modules",
    after_help = "TSV output of `table` has the columns a, b, k, computed, expected, match.\n\
                  `expected` and `match` are empty where no closed form is known.\n\
                  The WEYLEXT_CACHE environment variable overrides --cache-dir."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads (0 = one per core)
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Directory for cached differential matrices
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    /// Print passing checks too
    #[arg(long, short, global = true)]
    pub verbose: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute one group Ext^degree(Δ(a,1^b), M)
    Ext(ExtArgs),
    /// Sweep a, b and every shift k <= b
    Table(TableArgs),
    /// Run verification suites
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct ExtArgs {
    #[arg(long)]
    pub a: u32,
    #[arg(long)]
    pub b: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long, default_value_t = 2)]
    pub degree: u32,
    /// Use D_{a+k} ⊗ Λ^{b-k} instead of Δ(h(k))
    #[arg(long)]
    pub skew: bool,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, default_value_t = 1)]
    pub amin: u32,
    #[arg(long)]
    pub amax: u32,
    #[arg(long, default_value_t = 2)]
    pub bmin: u32,
    #[arg(long)]
    pub bmax: u32,
    #[arg(long, default_value_t = 2)]
    pub degree: u32,
    #[arg(long)]
    pub skew: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite to run (default: all)
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    #[arg(long)]
    pub amax: Option<u32>,
    #[arg(long)]
    pub bmax: Option<u32>,
    #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
    pub primes: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Hand-checkable differential matrices
    Fixtures,
    /// Ext^2 with Weyl coefficients against the closed form
    Ext2,
    /// Ext^1 and Ext^2 with coefficients D ⊗ Λ
    Skew,
    /// d∘d = 0 and rational exactness
    Complex,
    /// Block recursions of the differentials
    Blocks,
    /// Orders of the explicit degree-two generators
    Generators,
    /// The induced map φ on generators
    Phi,
    /// Relations among the elements b^(i)_j
    Relations,
    /// Degree-one dichotomy along D_{a+k} ⊗ Λ^{b-k}, for k >= 2
    Dichotomy,
    /// Ext^1 dimensions over prime fields
    Modular,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Fixtures,
        Suite::Ext2,
        Suite::Skew,
        Suite::Complex,
        Suite::Blocks,
        Suite::Generators,
        Suite::Phi,
        Suite::Relations,
        Suite::Dichotomy,
        Suite::Modular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fixtures => "fixtures",
            Suite::Ext2 => "ext2",
            Suite::Skew => "skew",
            Suite::Complex => "complex",
            Suite::Blocks => "blocks",
            Suite::Generators => "generators",
            Suite::Phi => "phi",
            Suite::Relations => "relations",
            Suite::Dichotomy => "dichotomy",
            Suite::Modular => "modular",
        }
    }

    /// The `(a, b)` ranges swept when none are given.
    pub fn default_ranges(self) -> (RangeInclusive<u32>, RangeInclusive<u32>) {
        match self {
            Suite::Fixtures => (1..=1, 1..=6),
            Suite::Blocks => (1..=3, 3..=5),
            Suite::Generators | Suite::Phi | Suite::Relations => (1..=3, 3..=6),
            Suite::Ext2 | Suite::Skew | Suite::Complex | Suite::Dichotomy | Suite::Modular => (1..=4, 2..=6),
        }
    }

    fn min_b(self) -> u32 {
        match self {
            Suite::Blocks | Suite::Generators | Suite::Phi | Suite::Relations => 3,
            _ => 2,
        }
    }
}

/// Ranges and primes for one suite run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub a: RangeInclusive<u32>,
    pub b: RangeInclusive<u32>,
    pub primes: Vec<u64>,
}

impl SuiteConfig {
    pub fn defaults(suite: Suite) -> Self {
        let (a, b) = suite.default_ranges();
        SuiteConfig {
            a,
            b,
            primes: vec![2, 3, 5],
        }
    }

    fn cells(&self) -> Vec<(u32, u32)> {
        self.a
            .clone()
            .flat_map(|a| self.b.clone().map(move |b| (a, b)))
            .collect()
    }

    fn shifted_cells(&self, k_from: u32, strict: bool) -> Vec<(u32, u32, u32)> {
        self.cells()
            .into_iter()
            .flat_map(|(a, b)| {
                let top = if strict { b.saturating_sub(1) } else { b };
                (k_from..=top).map(move |k| (a, b, k))
            })
            .filter(|&(_, b, k)| !strict || k < b)
            .collect()
    }
}

fn gather<T, F>(items: Vec<T>, f: F) -> Result<Report>
where
    T: Send + Sync,
    F: Fn(&T) -> Result<Report> + Send + Sync,
{
    let parts: Vec<Report> = items.par_iter().map(f).collect::<Result<_>>()?;
    let mut report = Report::new();
    for r in parts {
        report.extend(r);
    }
    Ok(report)
}

fn group_check(name: String, got: &AbelianGroup, want: &AbelianGroup) -> Check {
    Check::new(name, got == want, format!("{got} (expected {want})"))
}

fn fixtures(engine: &Engine, cfg: &SuiteConfig) -> Result<Report> {
    let mut report = Report::new();
    let d = |m| CoefficientModule::Skew { m, l: 0 };
    let matrix_check = |name: String, got: &crate::zlinalg::IntMatrix, want: Vec<Vec<i64>>| {
        let want = crate::zlinalg::IntMatrix::from_rows(&want);
        Check::new(name, got.same_entries(&want), format!("{got}"))
    };
    for k in cfg.b.clone().filter(|&k| k >= 1) {
        let e = engine.differential(1, k, 1, &d(k + 1))?;
        let want = (0..k).map(|s| vec![if s % 2 == 0 { 2 } else { -2 }]).collect();
        report.push(matrix_check(format!("e^(1)(1,{k},D_{})", k + 1), &e, want));
    }
    let e = engine.differential(1, 2, 2, &d(3))?;
    report.push(matrix_check("e^(2)(1,2,D_3)".into(), &e, vec![vec![3, 3]]));
    let snf = smith_normal_form(&e);
    report.push(Check::new(
        "invariant factors of e^(2)(1,2,D_3)",
        snf.invariant_factors == crate::zlinalg::int_vec(&[3]),
        format!("{:?}", snf.invariant_factors.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
    ));
    let e = engine.differential(1, 3, 2, &d(4))?;
    report.push(matrix_check(
        "e^(2)(1,3,D_4)".into(),
        &e,
        vec![vec![3, 3, 0], vec![-2, 0, 2], vec![0, -3, -3]],
    ));
    let snf = smith_normal_form(&e);
    report.push(Check::new(
        "invariant factors of e^(2)(1,3,D_4)",
        snf.invariant_factors == crate::zlinalg::int_vec(&[1, 3]),
        format!("{:?}", snf.invariant_factors.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
    ));
    for k in cfg.b.clone().filter(|&k| k >= 2) {
        let bl = diagonal_block(1, k, 2, &d(k + 1))?;
        let n = (k - 1) as usize;
        let want = (0..n)
            .map(|r| (0..n).map(|c| if r != c { 0 } else if r == 0 { 3 } else { 2 }).collect())
            .collect();
        report.push(matrix_check(format!("B^2(1,{k},D_{})", k + 1), &bl, want));
    }
    Ok(report)
}

fn ext2_sweep(engine: &Engine, cfg: &SuiteConfig) -> Result<Report> {
    gather(cfg.shifted_cells(0, false), |&(a, b, k)| {
        let got = engine.ext(&ExtQuery::weyl(a, b, k, 2)?)?.group;
        let mut r = Report::new();
        r.push(group_check(format!("Ext^2 a={a} b={b} k={k}"), &got, &expected_ext2(a, b, k)));
        Ok(r)
    })
}

/// Expected `Ext^degree(Δ(h), D_{a+k} ⊗ Λ^{b-k})` for `k < b` and degree 1 or 2.
pub fn expected_skew(k: u32, degree: u32) -> Option<AbelianGroup> {
    match degree {
        1 if k >= 1 => Some(AbelianGroup::cyclic(2)),
        1 => Some(AbelianGroup::trivial()),
        2 if k == 2 || k == 3 => Some(AbelianGroup::cyclic(3)),
        2 => Some(AbelianGroup::trivial()),
        _ => None,
    }
}

fn skew(engine: &Engine, cfg: &SuiteConfig) -> Result<Report> {
    let cells = cfg.shifted_cells(0, true);
    let per_cell: Vec<(u32, u32, u32, AbelianGroup, AbelianGroup)> = cells
        .par_iter()
        .map(|&(a, b, k)| {
            let e1 = engine.ext(&ExtQuery::skew(a, b, k, 1)?)?.group;
            let e2 = engine.ext(&ExtQuery::skew(a, b, k, 2)?)?.group;
            Ok((a, b, k, e1, e2))
        })
        .collect::<Result<_>>()?;
    let mut report = Report::new();
    let mut seen: BTreeMap<u32, (AbelianGroup, AbelianGroup, usize)> = BTreeMap::new();
    let mut independent = true;
    for (a, b, k, e1, e2) in per_cell {
        for (deg, got) in [(1, &e1), (2, &e2)] {
            let want = expected_skew(k, deg).expect("degrees 1 and 2");
            report.push(group_check(format!("skew Ext^{deg} a={a} b={b} k={k}"), got, &want));
        }
        let entry = seen.entry(k).or_insert_with(|| (e1.clone(), e2.clone(), 0));
        independent &= entry.0 == e1 && entry.1 == e2;
        entry.2 += 1;
    }
    let detail = seen
        .iter()
        .map(|(k, (e1, e2, n))| format!("k={k}: ({e1}, {e2}) x{n}"))
        .collect::<Vec<_>>()
        .join("; ");
    report.push(Check::new("skew groups independent of (a, b)", independent, detail));
    let top = gather(cfg.cells(), |&(a, b)| {
        let weyl = engine.ext(&ExtQuery::weyl(a, b, b, 2)?)?.group;
        let skew = engine.ext(&ExtQuery::skew(a, b, b, 2)?)?.group;
        let mut r = Report::new();
        r.push(group_check(format!("Weyl and skew agree at k=b, a={a} b={b}"), &weyl, &skew));
        Ok(r)
    })?;
    report.extend(top);
    Ok(report)
}

fn modules(a: u32, b: u32, k: u32) -> Result<[CoefficientModule; 2]> {
    Ok([
        CoefficientModule::Weyl(Hook::new(a, b)?.shift(k)?),
        CoefficientModule::Skew { m: a + k, l: b - k },
    ])
}

fn complex(_engine: &Engine, cfg: &SuiteConfig) -> Result<Report> {
    gather(cfg.shifted_cells(0, false), |&(a, b, k)| {
        let mut r = Report::new();
        for m in modules(a, b, k)? {
            r.extend(verify_complex(a, b, &m, b)?);
            // Δ(h) is a rational summand of both modules at k = 0
            if k >= 1 {
                r.extend(rational_exactness(a, b, &m)?);
            }
        }
        Ok(r)
    })
}

fn blocks(_engine: &Engine, cfg: &SuiteConfig) -> Result<Report> {
    gather(cfg.shifted_cells(0, false), |&(a, b, k)| {
        let mut r = Report::new();
        for m in modules(a, b, k)? {
            r.extend(block_check(a, b, 2, &m)?);
        }
        r.extend(skew_block_check(a, b, k, 2)?);
        Ok(r)
    })
}

fn dichotomy(engine: &Engine, cfg: &SuiteConfig) -> Result<Report> {
    gather(cfg.shifted_cells(2, true), |&(a, b, k)| engine.dichotomy_check(a, b, k))
}

fn modular(engine: &Engine, cfg: &SuiteConfig) -> Result<Report> {
    let cells: Vec<(u32, u32, u32, u64)> = cfg
        .shifted_cells(1, false)
        .into_iter()
        .flat_map(|(a, b, k)| cfg.primes.iter().map(move |&p| (a, b, k, p)))
        .collect();
    gather(cells, |&(a, b, k, p)| {
        let got = engine.modular_ext1_dim(a, b, k, p)?;
        let want = expected_modular_ext1(a, b, k, p);
        let mut r = Report::new();
        r.push(Check::new(
            format!("dim Ext^1 over F_{p}, a={a} b={b} k={k}"),
            got == want,
            format!("{got} (expected {want})"),
        ));
        Ok(r)
    })
}

/// Runs one suite; independent cells are evaluated on the current rayon pool
/// and reported in sweep order.
pub fn run_suite(suite: Suite, engine: &Engine, cfg: &SuiteConfig) -> Result<Report> {
    if cfg.a.is_empty() || cfg.b.is_empty() || *cfg.a.start() == 0 {
        return Err(Error::Malformed(format!("empty sweep for suite {}", suite.name())));
    }
    match suite {
        Suite::Fixtures => fixtures(engine, cfg),
        Suite::Ext2 => ext2_sweep(engine, cfg),
        Suite::Skew => skew(engine, cfg),
        Suite::Complex => complex(engine, cfg),
        Suite::Blocks => blocks(engine, cfg),
        Suite::Generators => gather(cfg.cells(), |&(a, b)| engine.check_generators(a, b)),
        Suite::Phi => gather(cfg.cells(), |&(a, b)| engine.phi_check(a, b)),
        Suite::Relations => gather(cfg.cells(), |&(a, b)| engine.relations_check(a, b)),
        Suite::Dichotomy => dichotomy(engine, cfg),
        Suite::Modular => modular(engine, cfg),
    }
}

/// One row of `table`.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    #[serde(flatten)]
    pub record: ExtRecord,
    pub computed: String,
    pub expected: Option<String>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

impl TableRow {
    pub fn tsv(&self) -> String {
        let r = &self.record;
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            r.a,
            r.b,
            r.k,
            self.computed,
            self.expected.as_deref().unwrap_or(""),
            self.matches.map_or(String::new(), |m| m.to_string())
        )
    }
}

pub const TABLE_HEADER: &str = "a\tb\tk\tcomputed\texpected\tmatch";

/// Rows for every `amin <= a <= amax`, `bmin <= b <= bmax`, `0 <= k <= b`.
pub fn table_rows(engine: &Engine, args: &TableArgs) -> Result<Vec<TableRow>> {
    let coefficients = if args.skew { Coefficients::Skew } else { Coefficients::Weyl };
    let mut queries = Vec::new();
    for a in args.amin..=args.amax {
        for b in args.bmin..=args.bmax {
            for k in 0..=b {
                queries.push(ExtQuery::new(a, b, k, args.degree, coefficients)?);
            }
        }
    }
    queries
        .par_iter()
        .map(|q| {
            let res = engine.ext(q)?;
            let expected = match q.coefficients {
                Coefficients::Weyl if q.degree == 2 => Some(expected_ext2(q.a, q.b, q.k)),
                Coefficients::Skew if q.k < q.b => expected_skew(q.k, q.degree),
                _ => None,
            };
            Ok(TableRow {
                record: res.record(),
                computed: res.group.to_string(),
                matches: expected.as_ref().map(|e| *e == res.group),
                expected: expected.map(|e| e.to_string()),
            })
        })
        .collect()
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidHook { .. } | Error::InvalidShift { .. } | Error::NotPrime(_) | Error::Parse(_)
    )
}

fn json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serialises")
}

fn cmd_ext(cli: &Cli, args: &ExtArgs, engine: &Engine, pool: &rayon::ThreadPool, out: &mut dyn Write) -> Result<i32> {
    let coefficients = if args.skew { Coefficients::Skew } else { Coefficients::Weyl };
    let q = ExtQuery::new(args.a, args.b, args.k, args.degree, coefficients)?;
    let res = pool.install(|| engine.ext(&q))?;
    let _ = writeln!(out, "{}", res.group);
    if cli.format == Format::Json {
        let _ = writeln!(out, "{}", res.to_json());
    }
    Ok(EXIT_OK)
}

fn cmd_table(cli: &Cli, args: &TableArgs, engine: &Engine, pool: &rayon::ThreadPool, out: &mut dyn Write) -> Result<i32> {
    if args.amin == 0 || args.amin > args.amax || args.bmin > args.bmax {
        return Err(Error::Parse("need 1 <= amin <= amax and bmin <= bmax".into()));
    }
    let rows = pool.install(|| table_rows(engine, args))?;
    if cli.format == Format::Tsv {
        let _ = writeln!(out, "{TABLE_HEADER}");
    }
    for row in &rows {
        let line = match cli.format {
            Format::Tsv => row.tsv(),
            Format::Json => json_line(row),
        };
        let _ = writeln!(out, "{line}");
    }
    Ok(if rows.iter().all(|r| r.matches != Some(false)) {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

#[derive(Serialize)]
struct SuiteSummary<'a> {
    suite: &'a str,
    checks: usize,
    failed: usize,
    failures: Vec<&'a Check>,
}

fn cmd_verify(
    cli: &Cli,
    args: &VerifyArgs,
    engine: &Engine,
    pool: &rayon::ThreadPool,
    out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    if let Some(&p) = args.primes.iter().find(|&&p| !crate::zlinalg::is_prime(p)) {
        return Err(Error::NotPrime(p));
    }
    let suites: Vec<Suite> = args.suite.map_or(Suite::ALL.to_vec(), |s| vec![s]);
    let mut code = EXIT_OK;
    for suite in suites {
        let mut cfg = SuiteConfig::defaults(suite);
        cfg.primes = args.primes.clone();
        if let Some(amax) = args.amax {
            cfg.a = *cfg.a.start()..=amax;
        }
        if let Some(bmax) = args.bmax {
            let lo = if suite == Suite::Fixtures { 1 } else { suite.min_b() };
            cfg.b = lo.min(bmax)..=bmax;
        }
        if cfg.a.is_empty() || cfg.b.is_empty() {
            return Err(Error::Parse(format!("empty range for suite {}", suite.name())));
        }
        let start = Instant::now();
        let report = pool.install(|| run_suite(suite, engine, &cfg))?;
        let elapsed = start.elapsed();
        let failed = report.failures().count();
        match cli.format {
            Format::Tsv => {
                for check in &report.checks {
                    if cli.verbose || !check.passed {
                        let _ = writeln!(out, "{check}");
                    }
                }
                let status = if failed == 0 { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{status} suite {}: {} checks, {failed} failed", suite.name(), report.len());
            }
            Format::Json => {
                let summary = SuiteSummary {
                    suite: suite.name(),
                    checks: report.len(),
                    failed,
                    failures: report.failures().collect(),
                };
                let _ = writeln!(out, "{}", json_line(&summary));
            }
        }
        let _ = writeln!(err, "suite {} took {:.2}s", suite.name(), elapsed.as_secs_f64());
        if failed > 0 {
            code = EXIT_FAILURE;
        }
    }
    Ok(code)
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let engine = match MatrixCache::from_env_or(cli.cache_dir.clone())? {
        Some(cache) => Engine::with_cache(cache),
        None => Engine::new(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| Error::Malformed(e.to_string()))?;
    match &cli.command {
        Command::Ext(args) => cmd_ext(cli, args, &engine, &pool, out),
        Command::Table(args) => cmd_table(cli, args, &engine, &pool, out),
        Command::Verify(args) => cmd_verify(cli, args, &engine, &pool, out, err),
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code: 0 on success, 1 on a failed check or certificate,
/// 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(e) if usage_error(&e) => {
            let _ = writeln!(err, "error: {e}\n\nFor more information, try '--help'.");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("weylext").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ext_examples() {
        assert_eq!(call(&["ext", "--a", "2", "--b", "3", "--k", "2", "--degree", "2"]).1, "Z_5\n");
        assert_eq!(call(&["ext", "--a", "1", "--b", "2", "--k", "2", "--skew"]).1, "Z_3\n");
        assert_eq!(call(&["ext", "--a", "2", "--b", "4", "--k", "5"]).0, EXIT_USAGE);
        assert_eq!(call(&["ext", "--a", "0", "--b", "4", "--k", "1"]).0, EXIT_USAGE);
        assert_eq!(call(&["ext", "--a", "2"]).0, EXIT_USAGE);
    }

    #[test]
    fn ext_json() {
        let (code, out, _) = call(&["ext", "--a", "2", "--b", "3", "--k", "2", "--format", "json"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "Z_5");
        let v: serde_json::Value = serde_json::from_str(lines[1]).unwrap();
        assert_eq!(v["invariant_factors"], serde_json::json!([5]));
    }

    #[test]
    fn table_shape() {
        let (code, out, _) = call(&["table", "--amax", "1", "--bmax", "2"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], TABLE_HEADER);
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[3], "1\t2\t2\tZ_3\tZ_3\ttrue");

        let (code, out, _) = call(&["table", "--amax", "2", "--bmax", "3", "--degree", "1"]);
        assert_eq!(code, 0);
        assert!(out.lines().skip(1).all(|l| l.ends_with("\t\t")));
    }

    #[test]
    fn bad_ranges_are_usage_errors() {
        assert_eq!(call(&["table", "--amin", "3", "--amax", "2", "--bmax", "3"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "--suite", "modular", "--primes", "4"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "--suite", "nope"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn fixture_suite() {
        let (code, out, _) = call(&["verify", "--suite", "fixtures"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.starts_with("PASS suite fixtures"));
    }

    #[test]
    fn expected_skew_table() {
        assert_eq!(expected_skew(0, 1), Some(AbelianGroup::trivial()));
        assert_eq!(expected_skew(3, 2), Some(AbelianGroup::cyclic(3)));
        assert_eq!(expected_skew(4, 2), Some(AbelianGroup::trivial()));
        assert_eq!(expected_skew(1, 3), None);
    }
}
