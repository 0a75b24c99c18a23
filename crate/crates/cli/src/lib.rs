//! Command-line front-end: generators, checks, solvers, the brute-force
//! oracle and the acceptance suite.
//!
//! Exit codes: 0 success, 1 verified negative (infeasible, not linked, failed
//! check, stage failure), 2 usage or format error, 3 hypothesis violated,
//! 4 search budget exceeded.

pub mod acceptance;
pub mod format;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use klinkage::composition::solve_composition;
use klinkage::connectivity::{kappa, kappa_capped, menger_set_paths, MengerOutcome};
use klinkage::dominators::{is_in_king, nearly_in_dominating_vertex, verify_nearly_in_dominating};
use klinkage::generators::{self, PartKind};
use klinkage::lqt::{build_auxiliary, f_threshold, solve_lqt, LqtConfig};
use klinkage::oracle::{brute_force_disjoint_paths, brute_force_k_linked, verify_linkage, BruteForceOutcome, KLinkedOutcome};
use klinkage::report::{Failure, KappaMode};
use klinkage::semicomplete::solve_semicomplete;
use klinkage::{Digraph, LinkageInstance, Outcome, SolveOptions, SolveReport, Vertex};

use format::{DigraphFile, FormatError, PathSystemFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "klinkage", version, about = "Disjoint-path linkages in semicomplete digraphs and their generalizations")]
pub struct Cli {
    /// Seed for generators; echoed into every artifact.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a digraph.
    Gen(GenArgs),
    /// Report structural properties of a digraph.
    Check(CheckArgs),
    /// Link terminal pairs.
    Solve(SolveArgs),
    /// Certify a path system against a digraph.
    Verify(VerifyArgs),
    /// Exhaustive search on small instances.
    Oracle(OracleArgs),
    /// Run a benchmark suite.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Tournament,
    Circulant,
    Semicomplete,
    Digraph,
    Complete,
    Transitive,
    Cycle,
    Path,
    Composition,
    /// Strong tournament blown up with arcless parts (2-quasi-transitive).
    Qt,
    /// Non-k-linked composition with a directed 4-cycle core.
    Prop2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PartsKind {
    Arcless,
    Random,
    Transitive,
}

#[derive(Debug, clap::Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: Option<usize>,
    /// Arc (or 2-cycle) probability.
    #[arg(long)]
    pub p: Option<f64>,
    /// Number of parts.
    #[arg(long)]
    pub h: Option<usize>,
    /// Comma-separated part sizes (defaults to `h` parts of `--part-size`).
    #[arg(long)]
    pub sizes: Option<String>,
    #[arg(long)]
    pub part_size: Option<usize>,
    #[arg(long, value_enum, default_value = "arcless")]
    pub parts_kind: PartsKind,
    #[arg(long)]
    pub k: Option<usize>,
    /// Extra parameters as `key=value,...` (n, p, h, part_size, k).
    #[arg(long)]
    pub params: Option<String>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Also write a DOT rendering here.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct CheckArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    /// Exact vertex connectivity.
    #[arg(long)]
    pub kappa: bool,
    /// Only decide `κ ≥ CAP`.
    #[arg(long)]
    pub kappa_cap: Option<usize>,
    /// In-kings of the spanning tournament.
    #[arg(long)]
    pub king: bool,
    /// Nearly in-dominating vertex and its verification.
    #[arg(long)]
    pub nid: bool,
    #[arg(long)]
    pub cmax: Option<usize>,
    /// Test l-quasi-transitivity.
    #[arg(long)]
    pub qt: Option<usize>,
    /// Dump the auxiliary semicomplete digraph for `--l`, `--threshold`, `--pairs`.
    #[arg(long)]
    pub aux: bool,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub threshold: Option<usize>,
    #[arg(long)]
    pub pairs: Option<String>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Class {
    Semicomplete,
    Composition,
    Lqt,
    Menger,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KappaArg {
    Exact,
    Capped,
    Skip,
}

#[derive(Debug, clap::Args)]
pub struct SolveArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub class: Class,
    /// Terminal pairs `x1:y1,x2:y2`; defaults to the pairs stored in the input.
    #[arg(long)]
    pub pairs: Option<String>,
    /// Shorthand for `--class menger`.
    #[arg(long)]
    pub menger: bool,
    #[arg(long, default_value_t = 2)]
    pub l: usize,
    /// Available-path pool size for lqt (default f(k, l)).
    #[arg(long)]
    pub threshold: Option<usize>,
    #[arg(long, default_value_t = 200_000)]
    pub anchor_budget: u64,
    /// Record but do not enforce the solver hypotheses.
    #[arg(long)]
    pub no_enforce: bool,
    #[arg(long, value_enum, default_value = "capped")]
    pub kappa_mode: KappaArg,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Write the path system here.
    #[arg(long)]
    pub paths_out: Option<PathBuf>,
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long)]
    pub paths: PathBuf,
    /// Pairs to certify against; defaults to the pairs in the path file.
    #[arg(long)]
    pub pairs: Option<String>,
}

#[derive(Debug, clap::Args)]
pub struct OracleArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    /// Decide k-linkedness.
    #[arg(long)]
    pub k: Option<usize>,
    /// Search for a linkage of these pairs instead.
    #[arg(long)]
    pub pairs: Option<String>,
    #[arg(long, default_value_t = 10_000_000)]
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Acceptance,
}

#[derive(Debug, clap::Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Only these criteria (comma-separated ids).
    #[arg(long)]
    pub only: Option<String>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] klinkage::Error),
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
}

type CliResult = Result<i32, CliError>;

/// Runs the command line `args` (including the program name), writing to
/// `out` and `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
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
    let seed = cli.seed;
    let result = match cli.command {
        Command::Gen(a) => gen(&a, seed, out),
        Command::Check(a) => check(&a, seed, out),
        Command::Solve(a) => solve(&a, seed, out),
        Command::Verify(a) => verify(&a, seed, out),
        Command::Oracle(a) => oracle(&a, seed, out),
        Command::Bench(a) => bench(&a, seed, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn parse_pairs(s: &str) -> Result<Vec<(Vertex, Vertex)>, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t.split_once(':').ok_or_else(|| format!("pair `{t}` is not of the form x:y"))?;
            let a = a.trim().parse().map_err(|_| format!("bad vertex `{a}`"))?;
            let b = b.trim().parse().map_err(|_| format!("bad vertex `{b}`"))?;
            Ok((a, b))
        })
        .collect()
}

fn pairs_arg(arg: Option<&str>, stored: Option<&Vec<(Vertex, Vertex)>>) -> Result<Vec<(Vertex, Vertex)>, CliError> {
    match (arg, stored) {
        (Some(s), _) => parse_pairs(s).map_err(CliError::Usage),
        (None, Some(p)) => Ok(p.clone()),
        (None, None) => Err(CliError::Usage("no terminal pairs given (use --pairs)".into())),
    }
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => format::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load(path: &PathBuf) -> Result<(DigraphFile, Digraph), CliError> {
    let file: DigraphFile = format::read(path)?;
    let d = file.digraph(&path.display().to_string())?;
    Ok((file, d))
}

struct GenParams {
    n: Option<usize>,
    p: Option<f64>,
    h: Option<usize>,
    part_size: Option<usize>,
    k: Option<usize>,
}

fn gen_params(a: &GenArgs) -> Result<GenParams, CliError> {
    let mut g = GenParams { n: a.n, p: a.p, h: a.h, part_size: a.part_size, k: a.k };
    for kv in a.params.iter().flat_map(|s| s.split(',')).filter(|t| !t.trim().is_empty()) {
        let (key, value) =
            kv.split_once('=').ok_or_else(|| CliError::Usage(format!("--params entry `{kv}` is not key=value")))?;
        let bad = || CliError::Usage(format!("--params: bad value for `{key}`"));
        match key.trim() {
            "n" => g.n = Some(value.trim().parse().map_err(|_| bad())?),
            "p" => g.p = Some(value.trim().parse().map_err(|_| bad())?),
            "h" => g.h = Some(value.trim().parse().map_err(|_| bad())?),
            "part_size" => g.part_size = Some(value.trim().parse().map_err(|_| bad())?),
            "k" => g.k = Some(value.trim().parse().map_err(|_| bad())?),
            other => return Err(CliError::Usage(format!("--params: unknown key `{other}`"))),
        }
    }
    Ok(g)
}

fn gen(a: &GenArgs, seed: Option<u64>, out: &mut dyn Write) -> CliResult {
    let g = gen_params(a)?;
    let s = seed.unwrap_or(0);
    let need_n = || g.n.ok_or_else(|| CliError::Usage("--n is required for this family".into()));
    let sizes = || -> Result<Vec<usize>, CliError> {
        if let Some(list) = &a.sizes {
            return list
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| CliError::Usage(format!("bad part size `{t}`"))))
                .collect();
        }
        let h = g.h.ok_or_else(|| CliError::Usage("--h or --sizes is required".into()))?;
        Ok(vec![g.part_size.unwrap_or(1); h])
    };
    let mut file = match a.family {
        Family::Tournament => DigraphFile::from_digraph(&generators::random_tournament(need_n()?, s)),
        Family::Circulant => DigraphFile::from_digraph(&generators::circulant_tournament(need_n()?)?),
        Family::Semicomplete => {
            DigraphFile::from_digraph(&generators::random_semicomplete(need_n()?, g.p.unwrap_or(0.5), s)?)
        }
        Family::Digraph => DigraphFile::from_digraph(&generators::random_digraph(need_n()?, g.p.unwrap_or(0.5), s)?),
        Family::Complete => DigraphFile::from_digraph(&Digraph::complete(need_n()?)),
        Family::Transitive => DigraphFile::from_digraph(&Digraph::transitive_tournament(need_n()?)),
        Family::Cycle => DigraphFile::from_digraph(&Digraph::cycle(need_n()?)),
        Family::Path => DigraphFile::from_digraph(&Digraph::path(need_n()?)),
        Family::Composition => {
            let sizes = sizes()?;
            let kind = match a.parts_kind {
                PartsKind::Arcless => PartKind::Arcless,
                PartsKind::Random => PartKind::Random(0.5),
                PartsKind::Transitive => PartKind::Transitive,
            };
            let spec = generators::random_composition(sizes.len(), &sizes, g.p.unwrap_or(0.5), kind, s)?;
            DigraphFile::from_spec(&spec)?
        }
        Family::Qt => {
            let sizes = sizes()?;
            let spec = (s..s.saturating_add(1000))
                .map(|t| generators::random_composition(sizes.len(), &sizes, 0.0, PartKind::Arcless, t))
                .find(|r| r.as_ref().map_or(true, |spec| spec.outer.is_strong()))
                .ok_or_else(|| CliError::Usage("no strong outer tournament found".into()))??;
            DigraphFile::from_spec(&spec)?
        }
        Family::Prop2 => {
            let k = g.k.ok_or_else(|| CliError::Usage("--k is required for prop2".into()))?;
            let (spec, bad) = generators::prop2_family(k, &Digraph::cycle(4), None)?;
            let mut f = DigraphFile::from_spec(&spec)?;
            f.pairs = Some(bad);
            f
        }
    };
    file.seed = seed;
    file.family = Some(format!("{:?}", a.family).to_lowercase());
    emit(out, a.out.as_ref(), &format::to_json(&file))?;
    if let Some(dot) = &a.dot {
        let d = file.digraph("generated")?;
        format::write(dot, &format::to_dot(&d, file.parts.as_deref(), &[]))?;
    }
    Ok(EXIT_OK)
}

fn check(a: &CheckArgs, seed: Option<u64>, out: &mut dyn Write) -> CliResult {
    let (file, d) = load(&a.input)?;
    let mut report: BTreeMap<&str, Value> = BTreeMap::new();
    report.insert("seed", json!(seed));
    report.insert("n", json!(d.order()));
    report.insert("arcs", json!(d.arc_count()));
    report.insert("semicomplete", json!(d.is_semicomplete()));
    report.insert("tournament", json!(d.is_tournament()));
    report.insert("strong", json!(d.is_strong()));
    report.insert("min_out_degree", json!(d.min_out_degree()));
    if a.kappa {
        report.insert("kappa", json!(kappa(&d)));
    }
    if let Some(cap) = a.kappa_cap {
        let v = kappa_capped(&d, cap);
        report.insert("kappa_at_least", json!({ "cap": cap, "value": v, "holds": v >= cap }));
    }
    if let Some(l) = a.qt {
        let witness = d.l_quasi_transitive_witness(l);
        report.insert("quasi_transitive", json!({ "l": l, "holds": witness.is_none(), "witness": witness }));
    }
    if a.king || a.nid {
        let t = d.spanning_tournament()?;
        if a.king {
            let kings: Vec<Vertex> = t.vertices().filter(|&v| is_in_king(&t, v).unwrap_or(false)).collect();
            report.insert("in_kings", json!(kings));
        }
        if a.nid {
            let u = nearly_in_dominating_vertex(&d)?;
            let verdict = verify_nearly_in_dominating(&d, u, a.cmax.unwrap_or(d.order()))?;
            report.insert("nid", json!({ "vertex": u, "verdict": verdict }));
        }
    }
    if a.aux {
        let l = a.l.unwrap_or(2);
        let pairs = pairs_arg(a.pairs.as_deref(), file.pairs.as_ref())?;
        let xs: Vec<Vertex> = pairs.iter().map(|p| p.0).collect();
        let ys: Vec<Vertex> = pairs.iter().map(|p| p.1).collect();
        let threshold = match a.threshold {
            Some(t) => t,
            None => f_threshold(pairs.len(), l)?,
        };
        let value = match build_auxiliary(&d, &xs, &ys, l, threshold) {
            Ok(aux) => json!({
                "threshold": threshold,
                "new_arcs": aux.available.iter().map(|(arc, pool)| json!({ "arc": arc, "pool": pool.len() })).collect::<Vec<_>>(),
                "terminal_arcs": aux.terminal_arcs.len(),
                "key_checks": aux.key_checks,
            }),
            Err(f) => json!({ "threshold": threshold, "failure": f }),
        };
        report.insert("auxiliary", value);
    }
    emit(out, a.out.as_ref(), &format::to_json(&report))?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SolveArtifact<'a> {
    seed: Option<u64>,
    summary: String,
    report: &'a SolveReport,
}

fn summary(report: &SolveReport) -> String {
    match &report.outcome {
        Outcome::Linked { paths } => format!("linked ({} paths)", paths.len()),
        Outcome::HypothesisViolated { violations } => {
            let v: Vec<String> = violations.iter().map(|h| h.to_string()).collect();
            format!("hypothesis violated: {}", v.join("; "))
        }
        Outcome::StageFailed { stage, failure } => format!("stage {stage} failed: {failure:?}"),
    }
}

pub fn exit_code(outcome: &Outcome) -> i32 {
    match outcome {
        Outcome::Linked { .. } => EXIT_OK,
        Outcome::HypothesisViolated { .. } => EXIT_HYPOTHESIS,
        Outcome::StageFailed { failure: Failure::BudgetExceeded { .. }, .. } => EXIT_BUDGET,
        Outcome::StageFailed { .. } => EXIT_NEGATIVE,
    }
}

fn solve(a: &SolveArgs, seed: Option<u64>, out: &mut dyn Write) -> CliResult {
    let (file, d) = load(&a.input)?;
    let name = a.input.display().to_string();
    let pairs = pairs_arg(a.pairs.as_deref(), file.pairs.as_ref())?;
    let class = if a.menger { Class::Menger } else { a.class };
    let kappa = match a.kappa_mode {
        KappaArg::Exact => KappaMode::Exact,
        KappaArg::Capped => KappaMode::Capped,
        KappaArg::Skip => KappaMode::Skip,
    };
    let opts = SolveOptions { enforce_hypotheses: !a.no_enforce, kappa };
    if class == Class::Menger {
        let from: Vec<Vertex> = pairs.iter().map(|p| p.0).collect();
        let to: Vec<Vertex> = pairs.iter().map(|p| p.1).collect();
        let outcome = menger_set_paths(&d, &from, &to, &[])?;
        let code = if matches!(outcome, MengerOutcome::Linked { .. }) { EXIT_OK } else { EXIT_NEGATIVE };
        emit(out, a.out.as_ref(), &format::to_json(&json!({ "seed": seed, "menger": outcome })))?;
        if let MengerOutcome::Linked { paths } = &outcome {
            write_paths(a, seed, &d, file.parts.as_deref(), paths)?;
        }
        return Ok(code);
    }
    let report = match class {
        Class::Semicomplete => solve_semicomplete(&LinkageInstance::new(d.clone(), pairs.clone())?, opts),
        Class::Composition => solve_composition(&file.composition(&name)?, &pairs, opts)?,
        Class::Lqt => {
            let config = LqtConfig { threshold: a.threshold, anchor_budget: a.anchor_budget, options: opts };
            solve_lqt(&d, &pairs, a.l, config)?
        }
        Class::Menger => unreachable!(),
    };
    let artifact = SolveArtifact { seed, summary: summary(&report), report: &report };
    emit(out, a.out.as_ref(), &format::to_json(&artifact))?;
    if let Some(ps) = report.outcome.paths() {
        write_paths(a, seed, &d, file.parts.as_deref(), ps)?;
    } else if let Some(dot) = &a.dot {
        format::write(dot, &format::to_dot(&d, file.parts.as_deref(), &[]))?;
    }
    Ok(exit_code(&report.outcome))
}

fn write_paths(
    a: &SolveArgs,
    seed: Option<u64>,
    d: &Digraph,
    parts: Option<&[Vec<Vertex>]>,
    ps: &klinkage::PathSystem,
) -> Result<(), CliError> {
    if let Some(p) = &a.paths_out {
        format::write(p, &format::to_json(&PathSystemFile::from_system(ps, seed)))?;
    }
    if let Some(dot) = &a.dot {
        format::write(dot, &format::to_dot(d, parts, &ps.paths))?;
    }
    Ok(())
}

fn verify(a: &VerifyArgs, seed: Option<u64>, out: &mut dyn Write) -> CliResult {
    let (_, d) = load(&a.input)?;
    let file: PathSystemFile = format::read(&a.paths)?;
    let pairs = pairs_arg(a.pairs.as_deref(), Some(&file.pairs))?;
    let verdict = verify_linkage(&d, &pairs, &file.system());
    emit(out, None, &format::to_json(&json!({ "seed": seed, "verdict": verdict })))?;
    Ok(if verdict.pass { EXIT_OK } else { EXIT_NEGATIVE })
}

fn oracle(a: &OracleArgs, seed: Option<u64>, out: &mut dyn Write) -> CliResult {
    let (file, d) = load(&a.input)?;
    if let Some(k) = a.k {
        let outcome = brute_force_k_linked(&d, k, a.budget)?;
        let (value, code) = match &outcome {
            KLinkedOutcome::Linked => (json!({ "linked": true }), EXIT_OK),
            KLinkedOutcome::NotLinked { witness } => (json!({ "linked": false, "witness": witness }), EXIT_NEGATIVE),
            KLinkedOutcome::BudgetExceeded => (json!({ "budget_exceeded": a.budget }), EXIT_BUDGET),
        };
        emit(out, None, &format::to_json(&json!({ "seed": seed, "k": k, "oracle": value })))?;
        return Ok(code);
    }
    let pairs = pairs_arg(a.pairs.as_deref(), file.pairs.as_ref())?;
    let (value, code) = match brute_force_disjoint_paths(&d, &pairs, a.budget)? {
        BruteForceOutcome::Found(ps) => (json!({ "found": ps.paths }), EXIT_OK),
        BruteForceOutcome::Infeasible => (json!({ "infeasible": true }), EXIT_NEGATIVE),
        BruteForceOutcome::BudgetExceeded => (json!({ "budget_exceeded": a.budget }), EXIT_BUDGET),
    };
    emit(out, None, &format::to_json(&json!({ "seed": seed, "pairs": pairs, "oracle": value })))?;
    Ok(code)
}

fn bench(a: &BenchArgs, seed: Option<u64>, out: &mut dyn Write) -> CliResult {
    let Suite::Acceptance = a.suite;
    let only: Option<Vec<u8>> = match &a.only {
        Some(s) => Some(
            s.split(',')
                .map(|t| t.trim().parse().map_err(|_| CliError::Usage(format!("bad criterion id `{t}`"))))
                .collect::<Result<_, _>>()?,
        ),
        None => None,
    };
    let exe = std::env::current_exe()?;
    let results = acceptance::run_suite(&exe, seed.unwrap_or(0), only.as_deref());
    out.write_all(acceptance::table(&results).as_bytes())?;
    Ok(if results.iter().all(|r| r.pass) { EXIT_OK } else { EXIT_NEGATIVE })
}
