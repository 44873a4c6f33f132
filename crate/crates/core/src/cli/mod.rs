//! Command-line front end: `verify`, `construct`, `search`, `bounds`,
//! `stopping`, `simulate` and `table`.
//!
//! Exit codes: 0 success or property holds, 1 property fails (certificate
//! in the report), 2 usage error, 3 budget exceeded. `GENSET_BUDGET`
//! replaces the default budget when `--budget` is absent.

mod codes;
mod report;

pub use codes::{make_code, random_code, CodeFamily, CodeFamilySpec};
pub use report::{RunReport, RunStatus, Timings, DEFAULT_SEED};

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{
    blocking_lower, bounds_f, bounds_g1, consistency_table, rate_bounds,
    stopping_redundancy_bounds, BoundReport, ConsistencyTable,
};
use crate::code::LinearCode;
use crate::construct::{
    exact_minimum_with, greedy_generic_set, greedy_good_set, greedy_parity_check,
    greedy_subspace_union, randomized_search, CoverInstance, ExactOptions, SetKind,
    DEFAULT_NODE_BUDGET, DEFAULT_UNION_WORK, GREEDY_MAX_R,
};
use crate::erasure::{
    apply_generic_set, bec_simulate, min_max_distance, smallest_stopping_set, stopping_distance,
};
use crate::error::{Error, Result};
use crate::gf2::BinMatrix;
use crate::verify::{
    is_covering_array, is_generic_set_capped, is_good_set_capped, is_subspace_blocking,
    is_swise_intersecting_capped, GenericMethod, GoodMethod, VectorSet, Verdict, DEFAULT_WORK_CAP,
};
use report::{aligned, csv_string, flatten, inputs_digest};

#[derive(Parser, Debug)]
#[command(
    name = "genset",
    version,
    about = "Generic erasure-correcting sets and (r,s)-sets over GF(2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Work, node or dimension budget; see each subcommand.
    #[arg(long, global = true)]
    budget: Option<u128>,
    /// Seed for randomized paths (default 20240601).
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a property of a set, code or array. Exit 1 with a certificate
    /// when it fails.
    Verify(VerifyArgs),
    /// Build a set or parity-check matrix and write it with a JSON sidecar.
    Construct(ConstructArgs),
    /// Smallest set by exact branch and bound, or a random set of threshold
    /// size.
    Search(SearchArgs),
    /// Bound values for F, G1, rho, rates or blocking sets.
    Bounds(BoundsArgs),
    /// Stopping distance and smallest stopping set of a check matrix.
    Stopping(StoppingArgs),
    /// Monte Carlo peeling vs maximum-likelihood decoding on the erasure
    /// channel.
    Simulate(SimulateArgs),
    /// Consistency table of F and G1 bounds.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Property {
    Good,
    Generic,
    Intersecting,
    CoveringArray,
    Blocking,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Vector set file (one {0,1} row per vector).
    #[arg(long)]
    set: Option<String>,
    /// Matrix file: generator for `intersecting`, array for `covering-array`.
    #[arg(long)]
    matrix: Option<String>,
    /// Code family such as `simplex:3`, or a generator matrix file.
    #[arg(long)]
    code: Option<String>,
    #[arg(long, value_enum)]
    property: Property,
    /// s, or the strength t for covering arrays.
    #[arg(long)]
    s: usize,
    /// definition|flats for good; matrices|cosets|hyperplanes for generic.
    #[arg(long)]
    method: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConstructKind {
    Good,
    Generic,
    SubspaceUnion,
    ParityCheck,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    kind: ConstructKind,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    /// Code for `parity-check`: a family such as `hamming:3`, or a generator file.
    #[arg(long)]
    code: Option<String>,
    /// Output file; the sidecar goes to `<out>.json`.
    #[arg(long)]
    out: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Exact,
    Random,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    s: usize,
    #[arg(long, value_enum, default_value_t = Strategy::Exact)]
    strategy: Strategy,
    /// Trials for the random strategy.
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// Run the exact search beyond the default dimension guard.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Good,
    Generic,
}

impl From<KindArg> for SetKind {
    fn from(k: KindArg) -> SetKind {
        match k {
            KindArg::Good => SetKind::Good,
            KindArg::Generic => SetKind::Generic,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    #[value(name = "F")]
    F,
    #[value(name = "G1")]
    G1,
    Rho,
    Rate,
    Blocking,
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
struct BoundsArgs {
    #[command(subcommand)]
    sub: Option<BoundsSub>,
    #[arg(long, value_enum)]
    target: Option<Target>,
    /// Comma-separated `name=value` pairs: r,s (F); k,s (G1); n,k,d (rho);
    /// s and optional k (rate); q,k,s (blocking).
    #[arg(long)]
    params: Option<String>,
    /// For rho: take n, k, d from a code instead of `--params`.
    #[arg(long)]
    code: Option<String>,
}

#[derive(Subcommand, Debug)]
enum BoundsSub {
    /// Consistency table of F and G1 bounds.
    Table(TableArgs),
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    kmax: usize,
    #[arg(long)]
    smax: usize,
    /// Run exact searches up to this k (default 4).
    #[arg(long, default_value_t = 4)]
    exact_kmax: usize,
}

#[derive(Args, Debug)]
struct StoppingArgs {
    /// Check matrix file (rows may be redundant).
    #[arg(long)]
    matrix: Option<String>,
    /// Code family or generator file; its parity-check matrix is used.
    #[arg(long)]
    code: Option<String>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    code: String,
    /// Erasure probability.
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Generic set over F^(n-k); adds the strategy with rows aH.
    #[arg(long)]
    set: Option<String>,
}

/// Exit code, report and rendered output of one invocation.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub report: Option<RunReport>,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx {
    budget: Option<u128>,
    seed: u64,
    seed_used: bool,
    files: Vec<(String, Vec<u8>)>,
}

impl Ctx {
    fn read(&mut self, path: &str) -> Result<String> {
        let bytes = std::fs::read(path)
            .map_err(|e| Error::Parameter(format!("cannot read {path}: {e}")))?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|_| Error::Parameter(format!("{path} is not UTF-8")))?;
        self.files.push((path.to_string(), bytes));
        Ok(text)
    }

    fn seed(&mut self) -> u64 {
        self.seed_used = true;
        self.seed
    }

    /// A family spec (`name:params`) or a generator matrix file.
    fn code(&mut self, spec: &str) -> Result<(String, LinearCode)> {
        match spec.parse::<CodeFamilySpec>() {
            Ok(mut fam) => {
                if fam.family == CodeFamily::Random {
                    fam = fam.with_seed(self.seed());
                }
                Ok((fam.to_string(), make_code(&fam)?))
            }
            Err(e) if spec.contains(':') && !std::path::Path::new(spec).exists() => Err(e),
            Err(_) => {
                let g = BinMatrix::parse_text(&self.read(spec)?)?;
                Ok((
                    spec.to_string(),
                    LinearCode::from_spanning_rows(g.ncols(), g.into_rows())?,
                ))
            }
        }
    }
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> RunOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let args: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return RunOutcome {
                exit_code: code,
                report: None,
                stdout,
                stderr,
            };
        }
    };
    let env_budget = match std::env::var("GENSET_BUDGET") {
        Ok(v) => match v.trim().parse::<u128>() {
            Ok(b) => Some(b),
            Err(_) => {
                return RunOutcome {
                    exit_code: 2,
                    report: None,
                    stdout: String::new(),
                    stderr: format!("GENSET_BUDGET must be a nonnegative integer, got {v:?}\n"),
                }
            }
        },
        Err(_) => None,
    };
    let mut ctx = Ctx {
        budget: cli.budget.or(env_budget),
        seed: cli.seed.unwrap_or(DEFAULT_SEED),
        seed_used: cli.seed.is_some(),
        files: Vec::new(),
    };
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
        .expect("thread pool");
    let result = pool.install(|| dispatch(&cli.command, &mut ctx));
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let (status, results, rendered) = match result {
        Ok(out) => (out.status, out.results, out.render),
        Err(e) => {
            let status = match e {
                Error::Budget(_) | Error::Overflow(_) => RunStatus::BudgetExceeded,
                _ => RunStatus::UsageError,
            };
            (status, json!({ "error": e.to_string() }), Rendered::None)
        }
    };
    let report = RunReport {
        inputs_digest: inputs_digest(&args, &ctx.files),
        command: args,
        seed: ctx.seed_used.then_some(ctx.seed),
        version: env!("CARGO_PKG_VERSION").to_string(),
        status,
        results,
        timings: Timings { elapsed_ms },
    };
    let stdout = match render(cli.format, &report, &rendered) {
        Ok(s) => s,
        Err(e) => {
            return RunOutcome {
                exit_code: 2,
                report: Some(report),
                stdout: String::new(),
                stderr: format!("{e}\n"),
            }
        }
    };
    let stderr = match &report.results {
        Value::Object(m) if status != RunStatus::Ok && status != RunStatus::PropertyFails => m
            .get("error")
            .and_then(Value::as_str)
            .map(|s| format!("error: {s}\n"))
            .unwrap_or_default(),
        _ => String::new(),
    };
    RunOutcome {
        exit_code: status.exit_code(),
        report: Some(report),
        stdout,
        stderr,
    }
}

/// Tables for the text and CSV formats, when a command has a natural one.
enum Rendered {
    None,
    Table {
        header: Vec<&'static str>,
        rows: Vec<Vec<String>>,
    },
    Csv(String),
}

struct CmdOut {
    status: RunStatus,
    results: Value,
    render: Rendered,
}

impl CmdOut {
    fn ok(results: Value) -> Self {
        CmdOut {
            status: RunStatus::Ok,
            results,
            render: Rendered::None,
        }
    }
}

fn render(format: Format, report: &RunReport, rendered: &Rendered) -> Result<String> {
    let csv_err = |e: csv::Error| Error::Data(e.to_string());
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report).expect("report serializes") + "\n"),
        Format::Text => {
            let mut out = format!("status: {}\n", status_name(report.status));
            match rendered {
                Rendered::Table { header, rows } => out.push_str(&aligned(header, rows)),
                _ => {
                    let rows: Vec<Vec<String>> = flatten(&report.results)
                        .into_iter()
                        .map(|(k, v)| vec![k, v])
                        .collect();
                    out.push_str(&aligned(&["field", "value"], &rows));
                }
            }
            Ok(out)
        }
        Format::Csv => match rendered {
            Rendered::Csv(s) => Ok(s.clone()),
            Rendered::Table { header, rows } => csv_string(header, rows).map_err(csv_err),
            Rendered::None => {
                let rows: Vec<Vec<String>> = flatten(&report.results)
                    .into_iter()
                    .map(|(k, v)| vec![k, v])
                    .collect();
                csv_string(&["field", "value"], &rows).map_err(csv_err)
            }
        },
    }
}

fn status_name(s: RunStatus) -> &'static str {
    match s {
        RunStatus::Ok => "ok",
        RunStatus::PropertyFails => "property-fails",
        RunStatus::UsageError => "usage-error",
        RunStatus::BudgetExceeded => "budget-exceeded",
    }
}

fn dispatch(cmd: &Command, ctx: &mut Ctx) -> Result<CmdOut> {
    match cmd {
        Command::Verify(a) => verify(a, ctx),
        Command::Construct(a) => construct(a, ctx),
        Command::Search(a) => search(a, ctx),
        Command::Bounds(a) => match &a.sub {
            Some(BoundsSub::Table(t)) => table(t),
            None => bounds(a, ctx),
        },
        Command::Stopping(a) => stopping(a, ctx),
        Command::Simulate(a) => simulate(a, ctx),
        Command::Table(t) => table(t),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}

fn verdict_out(verdict: Verdict, mut results: Value) -> CmdOut {
    let status = if verdict.holds() {
        RunStatus::Ok
    } else {
        RunStatus::PropertyFails
    };
    results["holds"] = json!(verdict.holds());
    results["certificate"] = to_value(&verdict.certificate());
    CmdOut {
        status,
        results,
        render: Rendered::None,
    }
}

fn verify(a: &VerifyArgs, ctx: &mut Ctx) -> Result<CmdOut> {
    let cap = ctx.budget.unwrap_or(DEFAULT_WORK_CAP);
    match a.property {
        Property::Good | Property::Generic | Property::Blocking => {
            let Some(path) = &a.set else {
                return usage("this property needs --set");
            };
            let set = VectorSet::parse_text(&ctx.read(path)?)?;
            let base = json!({
                "property": format!("{:?}", a.property).to_lowercase(),
                "r": set.ambient(),
                "s": a.s,
                "size": set.len(),
            });
            let (verdict, method) = match a.property {
                Property::Good => {
                    let m: GoodMethod = a.method.as_deref().unwrap_or("flats").parse()?;
                    (is_good_set_capped(&set, a.s, m, cap)?, to_value(&m))
                }
                Property::Generic => {
                    let m: GenericMethod = a.method.as_deref().unwrap_or("cosets").parse()?;
                    (is_generic_set_capped(&set, a.s, m, cap)?, to_value(&m))
                }
                _ => {
                    if a.method.is_some() {
                        return usage("blocking has a single method");
                    }
                    (is_subspace_blocking(&set, a.s)?, json!("subspaces"))
                }
            };
            let mut base = base;
            base["method"] = method;
            Ok(verdict_out(verdict, base))
        }
        Property::Intersecting => {
            let (name, g) = match (&a.matrix, &a.code) {
                (Some(p), None) => (p.clone(), BinMatrix::parse_text(&ctx.read(p)?)?),
                (None, Some(c)) => {
                    let (name, code) = ctx.code(c)?;
                    (name, code.generator().clone())
                }
                _ => return usage("intersecting needs exactly one of --matrix or --code"),
            };
            let verdict = is_swise_intersecting_capped(&g, a.s, cap)?;
            Ok(verdict_out(
                verdict,
                json!({"property": "intersecting", "code": name, "n": g.ncols(), "k": g.nrows(), "s": a.s}),
            ))
        }
        Property::CoveringArray => {
            let Some(path) = &a.matrix else {
                return usage("covering-array needs --matrix");
            };
            let m = BinMatrix::parse_text(&ctx.read(path)?)?;
            let verdict = is_covering_array(&m, a.s)?;
            Ok(verdict_out(
                verdict,
                json!({"property": "covering-array", "rows": m.nrows(), "columns": m.ncols(), "t": a.s}),
            ))
        }
    }
}

/// Bound values recorded next to a constructed object.
fn construct_bounds(
    kind: ConstructKind,
    r: usize,
    s: usize,
    size: usize,
    extra: Option<usize>,
) -> Result<Value> {
    let pick = |rep: &BoundReport, name: &str| rep.get(name).map(to_value);
    Ok(match kind {
        ConstructKind::Good => {
            let lemma = CoverInstance::good(r, s).greedy_bound();
            let rep = bounds_g1(r, s)?;
            json!({
                "covering_lemma": lemma,
                "within_covering_lemma": (size as f64) <= lemma,
                "greedy_cover": pick(&rep, "G1.upper.greedy_cover"),
            })
        }
        ConstructKind::Generic => {
            let lemma = CoverInstance::generic(r, s).greedy_bound();
            let rep = bounds_f(r, s)?;
            json!({
                "covering_lemma": lemma,
                "within_covering_lemma": (size as f64) <= lemma,
                "greedy_cover": pick(&rep, "F.upper.greedy_cover"),
            })
        }
        ConstructKind::SubspaceUnion => {
            let count = extra.unwrap_or(0);
            let limit = 4.0 * ((s * (r - s)) as f64 * std::f64::consts::LN_2 + 1.0);
            let rep = bounds_g1(r, s)?;
            json!({
                "subspaces": count,
                "subspace_count_limit": limit,
                "within_subspace_count_limit": (count as f64) < limit,
                "covering_lemma": CoverInstance::subspace_union(r, s).greedy_bound(),
                "subspace_union": pick(&rep, "G1.upper.subspace_union"),
            })
        }
        ConstructKind::ParityCheck => json!(null),
    })
}

fn construct(a: &ConstructArgs, ctx: &mut Ctx) -> Result<CmdOut> {
    let greedy_guard = |r: usize| -> Result<()> {
        if ctx.budget.is_none() && r > GREEDY_MAX_R {
            return Err(Error::Budget(format!(
                "r = {r} exceeds the default greedy guard r <= {GREEDY_MAX_R}; pass --budget to lift it"
            )));
        }
        Ok(())
    };
    let need_rs = || -> Result<(usize, usize)> {
        match (a.r, a.s) {
            (Some(r), Some(s)) => Ok((r, s)),
            _ => usage("this kind needs --r and --s"),
        }
    };
    let (text, sidecar) = match a.kind {
        ConstructKind::Good | ConstructKind::Generic => {
            let (r, s) = need_rs()?;
            greedy_guard(r)?;
            let out = if a.kind == ConstructKind::Good {
                greedy_good_set(r, s)?
            } else {
                greedy_generic_set(r, s)?
            };
            let bounds = construct_bounds(a.kind, r, s, out.size, None)?;
            (
                out.set.to_text(),
                json!({
                    "kind": if a.kind == ConstructKind::Good { "good" } else { "generic" },
                    "r": r, "s": s, "size": out.size, "verified": true, "bounds": bounds,
                }),
            )
        }
        ConstructKind::SubspaceUnion => {
            let (r, s) = need_rs()?;
            greedy_guard(r)?;
            let out = greedy_subspace_union(r, s, ctx.budget.unwrap_or(DEFAULT_UNION_WORK))?;
            let bounds =
                construct_bounds(a.kind, r, s, out.outcome.size, Some(out.subspaces.len()))?;
            (
                out.outcome.set.to_text(),
                json!({
                    "kind": "subspace-union",
                    "r": r, "s": s, "size": out.outcome.size, "verified": true,
                    "exhaustive_greedy": out.exhaustive,
                    "subspaces": out
                        .subspaces
                        .iter()
                        .map(|m| m.to_text().lines().map(str::to_string).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "bounds": bounds,
                }),
            )
        }
        ConstructKind::ParityCheck => {
            let Some(spec) = &a.code else {
                return usage("parity-check needs --code");
            };
            let (name, code) = ctx.code(spec)?;
            let out = greedy_parity_check(&code)?;
            let h = out.matrix();
            let (d, _) = min_max_distance(&code)?;
            let rho = stopping_redundancy_bounds(code.n(), code.k(), d)?;
            let lemma = rho.get("rho.upper.greedy_cover").map(to_value);
            let within = rho
                .get("rho.upper.greedy_cover")
                .map(|b| (h.nrows() as f64) <= b.value.as_f64());
            (
                h.to_text(),
                json!({
                    "kind": "parity-check", "code": name, "n": code.n(), "k": code.k(), "d": d,
                    "rows": h.nrows(), "rank": h.rank(), "stopping_distance": stopping_distance(h)?,
                    "verified": true,
                    "bounds": {"greedy_cover": lemma, "within_greedy_cover": within},
                }),
            )
        }
    };
    std::fs::write(&a.out, &text)
        .map_err(|e| Error::Parameter(format!("cannot write {}: {e}", a.out)))?;
    let side_path = format!("{}.json", a.out);
    let side = serde_json::to_string_pretty(&sidecar).expect("sidecar serializes") + "\n";
    std::fs::write(&side_path, side)
        .map_err(|e| Error::Parameter(format!("cannot write {side_path}: {e}")))?;
    let mut results = sidecar;
    results["out"] = json!(a.out);
    results["sidecar"] = json!(side_path);
    Ok(CmdOut::ok(results))
}

fn search(a: &SearchArgs, ctx: &mut Ctx) -> Result<CmdOut> {
    let kind: SetKind = a.kind.into();
    let out = match a.strategy {
        Strategy::Exact => {
            let opts = ExactOptions {
                node_budget: ctx
                    .budget
                    .map_or(DEFAULT_NODE_BUDGET, |b| b.min(u64::MAX as u128) as u64),
                force: a.force,
            };
            exact_minimum_with(a.r, a.s, kind, opts)?
        }
        Strategy::Random => {
            let seed = ctx.seed();
            randomized_search(a.r, a.s, kind, seed, a.trials)?
        }
    };
    // an exact search cut short by its node budget still reports its best set
    let status = if a.strategy == Strategy::Exact && !out.optimal {
        RunStatus::BudgetExceeded
    } else {
        RunStatus::Ok
    };
    let mut res = CmdOut::ok(json!({
        "kind": kind,
        "strategy": format!("{:?}", a.strategy).to_lowercase(),
        "r": a.r,
        "s": a.s,
        "size": out.size,
        "optimal": out.optimal,
        "nodes_explored": out.nodes_explored,
        "set": out.set.to_text().lines().collect::<Vec<_>>(),
    }));
    res.status = status;
    Ok(res)
}

fn parse_params(text: Option<&str>) -> Result<BTreeMap<String, u64>> {
    let mut out = BTreeMap::new();
    for item in text
        .unwrap_or("")
        .split(',')
        .filter(|s| !s.trim().is_empty())
    {
        let Some((k, v)) = item.split_once('=') else {
            return usage(format!("parameter {item:?} is not name=value"));
        };
        let v: u64 = v
            .trim()
            .parse()
            .map_err(|_| Error::Parameter(format!("parameter {item:?} is not an integer")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

fn report_table(reports: &[&BoundReport]) -> Rendered {
    let mut rows = Vec::new();
    for rep in reports {
        for v in &rep.values {
            rows.push(vec![
                rep.target.clone(),
                v.name.clone(),
                to_value(&v.kind).as_str().unwrap_or("").to_string(),
                v.value.to_string(),
                v.strict.to_string(),
                to_value(&v.status).as_str().unwrap_or("").to_string(),
                v.applicability.clone(),
            ]);
        }
    }
    Rendered::Table {
        header: vec![
            "target",
            "name",
            "kind",
            "value",
            "strict",
            "status",
            "applicability",
        ],
        rows,
    }
}

fn bounds(a: &BoundsArgs, ctx: &mut Ctx) -> Result<CmdOut> {
    let Some(target) = a.target else {
        return usage("bounds needs --target or the `table` subcommand");
    };
    let p = parse_params(a.params.as_deref())?;
    let get = |names: &[&str]| -> Result<usize> {
        names
            .iter()
            .find_map(|n| p.get(*n))
            .map(|&v| v as usize)
            .ok_or_else(|| Error::Parameter(format!("missing parameter {}", names[0])))
    };
    if target == Target::Blocking {
        let (q, k, s) = (get(&["q"])? as u64, get(&["k"])?, get(&["s"])?);
        let value = blocking_lower(q, k, s)?;
        let results = json!({
            "target": "blocking",
            "parameters": {"q": q, "k": k, "s": s},
            "value": value,
            "meaning": "smallest point set meeting every (k-s)-subspace of F_q^k",
        });
        let rows = vec![vec![
            "blocking.lower.subspace".to_string(),
            value.to_string(),
        ]];
        return Ok(CmdOut {
            status: RunStatus::Ok,
            results,
            render: Rendered::Table {
                header: vec!["name", "value"],
                rows,
            },
        });
    }
    let rep = match target {
        Target::F => bounds_f(get(&["r", "k"])?, get(&["s"])?)?,
        Target::G1 => bounds_g1(get(&["k", "r"])?, get(&["s"])?)?,
        Target::Rho => match &a.code {
            Some(spec) => {
                let (_, code) = ctx.code(spec)?;
                let (d, _) = min_max_distance(&code)?;
                stopping_redundancy_bounds(code.n(), code.k(), d)?
            }
            None => stopping_redundancy_bounds(get(&["n"])?, get(&["k"])?, get(&["d"])?)?,
        },
        Target::Rate => rate_bounds(get(&["s"])?, p.get("k").map(|&k| k as usize))?,
        Target::Blocking => unreachable!("handled above"),
    };
    let render = report_table(&[&rep]);
    Ok(CmdOut {
        status: RunStatus::Ok,
        results: to_value(&rep),
        render,
    })
}

fn table(t: &TableArgs) -> Result<CmdOut> {
    let tab: ConsistencyTable = consistency_table(t.kmax, t.smax, t.exact_kmax)?;
    let mut rows = Vec::new();
    for row in &tab.rows {
        let fmt = |x: Option<u128>| x.map_or("-".to_string(), |v| v.to_string());
        rows.push(vec![
            row.k.to_string(),
            row.s.to_string(),
            fmt(row.f.best_lower()),
            fmt(row.f.best_upper()),
            fmt(row.g1.best_lower()),
            fmt(row.g1.best_upper()),
            row.flags.len().to_string(),
            row.flags.join("; "),
        ]);
    }
    let mut results = to_value(&tab);
    results["flag_count"] = json!(tab.flag_count());
    Ok(CmdOut {
        status: RunStatus::Ok,
        results,
        render: Rendered::Table {
            header: vec![
                "k", "s", "F_lower", "F_upper", "G1_lower", "G1_upper", "flags", "notes",
            ],
            rows,
        },
    })
}

fn stopping(a: &StoppingArgs, ctx: &mut Ctx) -> Result<CmdOut> {
    let (name, h) = match (&a.matrix, &a.code) {
        (Some(p), None) => (p.clone(), BinMatrix::parse_text(&ctx.read(p)?)?),
        (None, Some(c)) => {
            let (name, code) = ctx.code(c)?;
            (name, code.parity_check().clone())
        }
        _ => return usage("stopping needs exactly one of --matrix or --code"),
    };
    let n = h.ncols();
    let rank = h.rank();
    let sd = stopping_distance(&h)?;
    let smallest = match sd {
        Some(d) => smallest_stopping_set(&h, d)?,
        None => None,
    };
    let code = LinearCode::from_parity_check(h.row_space_basis())?;
    let mut results = json!({
        "source": name,
        "n": n,
        "rows": h.nrows(),
        "rank": rank,
        "stopping_distance": sd,
        "smallest_stopping_set": smallest,
    });
    if code.k() > 0 {
        let (d, max_d) = min_max_distance(&code)?;
        results["min_distance"] = json!(d);
        results["max_weight"] = json!(max_d);
        results["attains_min_distance"] = json!(sd == Some(d));
        results["redundancy_bounds"] = to_value(&stopping_redundancy_bounds(n, code.k(), d)?);
    }
    Ok(CmdOut::ok(results))
}

fn simulate(a: &SimulateArgs, ctx: &mut Ctx) -> Result<CmdOut> {
    let (name, code) = ctx.code(&a.code)?;
    let seed = ctx.seed();
    let h = code.parity_check().clone();
    let mut strategies = vec![("parity-check".to_string(), h.clone())];
    if code.k() < code.n() {
        let greedy = greedy_parity_check(&code)?;
        strategies.push(("greedy-parity-check".to_string(), greedy.matrix().clone()));
    }
    if let Some(path) = &a.set {
        let set = VectorSet::parse_text(&ctx.read(path)?)?;
        strategies.push(("generic-set".to_string(), apply_generic_set(&set, &h)?));
    }
    let rep = bec_simulate(&name, &strategies, &code, a.p, a.trials, seed)?;
    let csv = rep.to_csv()?;
    Ok(CmdOut {
        status: RunStatus::Ok,
        results: to_value(&rep),
        render: Rendered::Csv(csv),
    })
}
