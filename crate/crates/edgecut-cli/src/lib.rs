//! Command-line front end: generators, min cut, sparsification, flow
//! runs, oracle verification and benchmarks.

pub mod bench;

use bench::Suite;
use clap::{Args, Parser, Subcommand, ValueEnum};
use edgecut::audit::audit_run;
use edgecut::excess_scaling::{excess_scaling, ScalingCase, ScalingParams};
use edgecut::generate::GraphSpec;
use edgecut::io::{parse_graph, parse_supply, write_graph, Format};
use edgecut::kt_framework::{kt_sparsify, run_framework, KtParams, Profile};
use edgecut::mincut_pipeline::{min_cut, stoer_wagner, MinCutAnswer, Mode};
use edgecut::oracles::{brute_edge_connectivity, exact_edge_connectivity, verify_preflow, MAX_CONDUCTANCE_VERTICES, MAX_CUT_ENUM_VERTICES};
use edgecut::report::{AnswerSummary, InputSummary, RunReport};
use edgecut::unit_flow::{unit_flow, FlowCase, FlowCounters, FlowParams, SweepMode};
use edgecut::{MultiGraph, VertexKind};
use serde_json::json;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "edgecut", version, about = "Deterministic minimum cuts and local flow tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph.
    Gen(GenArgs),
    /// Global minimum cut.
    Mincut(MincutArgs),
    /// Contract a graph while keeping its small non-trivial cuts.
    Sparsify(SparsifyArgs),
    /// Capped push-relabel from a supply file.
    Unitflow(UnitflowArgs),
    /// Excess-scaling local cut search from a supply file.
    Localcut(LocalcutArgs),
    /// Compare results against the reference oracles.
    Verify(VerifyArgs),
    /// Operation-count scaling table on planted graphs.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct GraphInput {
    file: PathBuf,
    /// edgelist or dimacs; guessed from the extension when absent.
    #[arg(long)]
    format: Option<Format>,
}

impl GraphInput {
    fn load(&self) -> Result<MultiGraph, String> {
        let format = self.format.unwrap_or_else(|| Format::from_path(&self.file));
        parse_graph(&self.file, format).map_err(|e| format!("{}: {e}", self.file.display()))
    }
}

#[derive(Args, Debug)]
struct ReportOpts {
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Print the JSON report instead of the summary line.
    #[arg(long)]
    json: bool,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Cycle,
    Clique,
    Barbell,
    Grid,
    Planted,
    Random,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    rows: Option<usize>,
    #[arg(long)]
    cols: Option<usize>,
    #[arg(long = "d-in")]
    d_in: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "edgelist")]
    format: Format,
}

#[derive(Args, Debug)]
struct MincutArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, default_value = "auto")]
    mode: Mode,
    #[arg(long, default_value = "desk")]
    profile: Profile,
    /// Write the witness side, one vertex per line.
    #[arg(long)]
    witness: Option<PathBuf>,
    #[command(flatten)]
    report: ReportOpts,
}

#[derive(Args, Debug)]
struct SparsifyArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "desk")]
    profile: Profile,
    #[command(flatten)]
    report: ReportOpts,
}

#[derive(Args, Debug)]
struct UnitflowArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Supply file: `v units [origin]` per line.
    #[arg(long)]
    delta: PathBuf,
    #[arg(long = "U")]
    capacity: u64,
    #[arg(long)]
    h: u32,
    #[arg(long)]
    w: u64,
    /// Use the fine sweep bound.
    #[arg(long)]
    fine: bool,
    /// `m′` in the fine bound; defaults to the edge count.
    #[arg(long)]
    mprime: Option<u64>,
    #[command(flatten)]
    report: ReportOpts,
}

#[derive(Args, Debug)]
struct LocalcutArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long)]
    delta: PathBuf,
    #[arg(long)]
    tau: f64,
    #[arg(long = "U")]
    capacity: u64,
    #[arg(long)]
    h: u32,
    #[arg(long, default_value_t = 3)]
    w: u64,
    #[command(flatten)]
    report: ReportOpts,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Check {
    Mincut,
    Sparsifier,
    Cluster,
    Strong,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, value_enum)]
    check: Check,
    #[arg(long, default_value = "desk")]
    profile: Profile,
    /// Cut-size parameter for cluster and strength checks; defaults to the
    /// minimum degree.
    #[arg(long = "cut-size")]
    cut_size: Option<u64>,
    #[command(flatten)]
    report: ReportOpts,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, default_value = "small")]
    suite: Suite,
    /// CSV output path.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    report: ReportOpts,
}

type CmdResult = Result<i32, String>;

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Mincut(a) => cmd_mincut(a, out),
        Command::Sparsify(a) => cmd_sparsify(a, out),
        Command::Unitflow(a) => cmd_unitflow(a, out),
        Command::Localcut(a) => cmd_localcut(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Bench(a) => cmd_bench(a, out),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), String> {
    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn summary(g: &MultiGraph) -> InputSummary {
    InputSummary { n: g.vertex_count(), m: g.edge_count(), delta: g.min_degree() }
}

fn flow_counters(report: &mut RunReport, c: &FlowCounters) {
    report.counters.insert("pushes".into(), c.pushes);
    report.counters.insert("relabels".into(), c.relabels);
    report.counters.insert("relabel_work".into(), c.relabel_work);
    report.counters.insert("units_moved".into(), c.units_moved);
}

/// Seals the report, writes it where requested, and prints either the JSON
/// or `line`.
fn emit(mut report: RunReport, opts: &ReportOpts, line: &str, out: &mut dyn Write) -> Result<(), String> {
    if !opts.timings {
        report.timings.clear();
    }
    let report = report.seal();
    let text = report.to_json();
    if let Some(path) = &opts.report {
        write_file(path, &format!("{text}\n"))?;
    }
    let printed = if opts.json { writeln!(out, "{text}") } else { writeln!(out, "{line}") };
    printed.map_err(|e| e.to_string())
}

fn need<T>(v: Option<T>, flag: &str, kind: &str) -> Result<T, String> {
    v.ok_or_else(|| format!("--{flag} is required for kind {kind}"))
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write) -> CmdResult {
    let spec = match a.kind {
        Kind::Cycle => GraphSpec::Cycle { n: need(a.n, "n", "cycle")? },
        Kind::Clique => GraphSpec::Clique { n: need(a.n, "n", "clique")? },
        Kind::Barbell => GraphSpec::Barbell { q: need(a.q, "q", "barbell")?, b: need(a.b, "b", "barbell")? },
        Kind::Grid => GraphSpec::Grid { rows: need(a.rows, "rows", "grid")?, cols: need(a.cols, "cols", "grid")? },
        Kind::Planted => GraphSpec::Planted {
            n: need(a.n, "n", "planted")?,
            d_in: need(a.d_in, "d-in", "planted")?,
            b: need(a.b, "b", "planted")?,
        },
        Kind::Random => GraphSpec::Random { n: need(a.n, "n", "random")?, p: need(a.p, "p", "random")? },
    };
    let g = spec.generate(a.seed).map_err(|e| e.to_string())?;
    write_file(&a.out, &write_graph(&g, a.format))?;
    writeln!(out, "n={} m={}", g.vertex_count(), g.edge_count()).map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

fn mincut_report(g: &MultiGraph, ans: &MinCutAnswer, mode: Mode, profile: Profile) -> RunReport {
    let s = &ans.stats;
    let mut r = RunReport::new("mincut", summary(g));
    r.mode = Some(format!("{mode:?}").to_lowercase());
    r.profile = Some(format!("{profile:?}").to_lowercase());
    r.answer = Some(AnswerSummary { lambda: ans.value, witness_size: ans.witness.len() });
    flow_counters(&mut r, &s.flow);
    r.counters.insert("iterations".into(), s.iterations as u64);
    r.counters.insert("inner_local_cut".into(), s.inner_calls.local_cut);
    r.counters.insert("inner_strong_subset".into(), s.inner_calls.strong_subset);
    r.counters.insert("inner_whole_strong".into(), s.inner_calls.whole_strong);
    r.counters.insert("inner_inconclusive".into(), s.inner_calls.inconclusive);
    r.counters.insert("gbar_vertices".into(), s.gbar_vertices as u64);
    r.counters.insert("gbar_edges".into(), s.gbar_edges);
    r.details = json!({
        "path_taken": ans.path_taken,
        "fallback": s.fallback,
        "exit": s.exit,
        "final_cut_algorithm": s.final_cut_algorithm,
        "final_cut_value": s.final_cut_value,
        "trivial_cut_won": s.trivial_cut_won,
        "witness": ans.witness,
        "iterations": s.log.as_ref().map(|l| &l.iterations),
    });
    r.timings.insert("sparsify_ms".into(), s.timings.sparsify_ms);
    r.timings.insert("final_cut_ms".into(), s.timings.final_cut_ms);
    r
}

fn cmd_mincut(a: MincutArgs, out: &mut dyn Write) -> CmdResult {
    let g = a.input.load()?;
    let ans = min_cut(&g, a.profile, a.mode).map_err(|e| e.to_string())?;
    if let Some(path) = &a.witness {
        let text: String = ans.witness.iter().map(|v| format!("{v}\n")).collect();
        write_file(path, &text)?;
    }
    let report = mincut_report(&g, &ans, a.mode, a.profile);
    emit(report, &a.report, &format!("lambda={}", ans.value), out)?;
    Ok(EXIT_OK)
}

/// Edge list of `Ḡ` with `# super v: members` comments for supervertices.
fn write_contracted(g: &MultiGraph) -> String {
    let mut text = String::new();
    for v in 0..g.vertex_count() {
        if g.kind(v) == VertexKind::Super {
            let members: Vec<String> = g.members(v).iter().map(ToString::to_string).collect();
            text.push_str(&format!("# super {v}: {}\n", members.join(" ")));
        }
    }
    text.push_str(&write_graph(g, Format::EdgeList));
    text
}

fn cmd_sparsify(a: SparsifyArgs, out: &mut dyn Write) -> CmdResult {
    let g = a.input.load()?;
    let params = KtParams::for_profile(a.profile, g.min_degree(), g.edge_count());
    let t = Instant::now();
    let (gbar, log) = kt_sparsify(&g, params).map_err(|e| e.to_string())?;
    let ms = t.elapsed().as_secs_f64() * 1e3;
    write_file(&a.out, &write_contracted(&gbar))?;
    let mut r = RunReport::new("sparsify", summary(&g));
    r.profile = Some(format!("{:?}", a.profile).to_lowercase());
    let mut flow = FlowCounters::default();
    for it in &log.iterations {
        flow.absorb(&it.flow);
    }
    flow_counters(&mut r, &flow);
    r.counters.insert("iterations".into(), log.iterations.len() as u64);
    r.counters.insert("gbar_vertices".into(), gbar.vertex_count() as u64);
    r.counters.insert("gbar_edges".into(), gbar.edge_count());
    // edge target m·ln m/δ, logged for comparison only
    let m = g.edge_count() as f64;
    r.details = json!({
        "exit": log.exit,
        "edge_target": m * m.ln() / g.min_degree().max(1) as f64,
        "iterations": log.iterations,
    });
    r.timings.insert("sparsify_ms".into(), ms);
    let line = format!("vertices={} edges={}", gbar.vertex_count(), gbar.edge_count());
    emit(r, &a.report, &line, out)?;
    Ok(EXIT_OK)
}

fn load_supply(path: &Path, n: usize) -> Result<edgecut::supply::SourceFunction, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_supply(&text, n).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_unitflow(a: UnitflowArgs, out: &mut dyn Write) -> CmdResult {
    let g = a.input.load()?;
    let supply = load_supply(&a.delta, g.vertex_count())?;
    let params = FlowParams { capacity: a.capacity, height: a.h, width: a.w };
    let mode = if a.fine { SweepMode::fine(a.mprime.unwrap_or(g.edge_count())) } else { SweepMode::Coarse };
    let t = Instant::now();
    let res = unit_flow(&g, &supply, params, mode).map_err(|e| e.to_string())?;
    let ms = t.elapsed().as_secs_f64() * 1e3;
    let st = &res.state;
    let preflow_ok = verify_preflow(&g, st.source_totals(), a.capacity, &st.entry_flows(), st.supplies()).is_ok();
    let post_ok = res.check(&g);
    let mut r = RunReport::new("unitflow", summary(&g));
    flow_counters(&mut r, &st.counters);
    let cut = match &res.case {
        FlowCase::Cut(c) => Some(json!({
            "side_size": c.cut.side.len(),
            "boundary": c.cut.boundary,
            "vol_side": c.cut.vol_side,
            "vol_rest": c.cut.vol_rest,
            "phi": c.cut.phi(),
            "level": c.level,
            "bound": c.bound,
            "side": c.cut.side,
        })),
        _ => None,
    };
    r.details = json!({
        "params": params,
        "mode": mode,
        "case": res.case.name(),
        "total_supply": supply.total(),
        "total_excess": st.total_excess(&g),
        "preflow_valid": preflow_ok,
        "postconditions": post_ok.as_ref().err(),
        "cut": cut,
    });
    r.timings.insert("flow_ms".into(), ms);
    emit(r, &a.report, &format!("case={} excess={}", res.case.name(), st.total_excess(&g)), out)?;
    Ok(if preflow_ok && post_ok.is_ok() { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_localcut(a: LocalcutArgs, out: &mut dyn Write) -> CmdResult {
    let g = a.input.load()?;
    let supply = load_supply(&a.delta, g.vertex_count())?;
    let params = ScalingParams { width: a.w, ..ScalingParams::new(a.tau, a.capacity, a.h) };
    let t = Instant::now();
    let res = excess_scaling(&g, &supply, params).map_err(|e| e.to_string())?;
    let ms = t.elapsed().as_secs_f64() * 1e3;
    let mut r = RunReport::new("localcut", summary(&g));
    flow_counters(&mut r, &res.counters);
    r.counters.insert("phases".into(), u64::from(res.phases));
    r.counters.insert("sweep_fallbacks".into(), u64::from(res.sweep_fallbacks));
    let (case, line) = match &res.case {
        ScalingCase::Routed => ("routed", format!("case=routed routed={} of {}", res.routed_total(), res.initial_total)),
        ScalingCase::Cut(c) => ("cut", format!("case=cut size={} boundary={} phi={:.6}", c.side.len(), c.boundary, c.phi())),
    };
    r.details = json!({
        "params": params,
        "case": case,
        "cut": match &res.case { ScalingCase::Cut(c) => Some(c), ScalingCase::Routed => None },
        "initial_total": res.initial_total,
        "routed": res.routed_total(),
        "discarded": res.discarded_total(),
        "residue": res.residue_total(),
        "scale": res.scale,
        "final_unit": res.final_unit,
    });
    r.timings.insert("scaling_ms".into(), ms);
    emit(r, &a.report, &line, out)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let g = a.input.load()?;
    let mut r = RunReport::new("verify", summary(&g));
    r.profile = Some(format!("{:?}", a.profile).to_lowercase());
    r.mode = Some(format!("{:?}", a.check).to_lowercase());
    let mut diffs: Vec<String> = Vec::new();
    match a.check {
        Check::Mincut => {
            let (expected, _) = exact_edge_connectivity(&g).map_err(|e| e.to_string())?;
            if g.vertex_count() <= MAX_CONDUCTANCE_VERTICES {
                let brute = brute_edge_connectivity(&g).map_err(|e| e.to_string())?;
                if brute != expected {
                    diffs.push(format!("oracles disagree: flow {expected}, enumeration {brute}"));
                }
            }
            let mut got = serde_json::Map::new();
            for mode in [Mode::Auto, Mode::Direct, Mode::Kt] {
                let ans = min_cut(&g, a.profile, mode).map_err(|e| e.to_string())?;
                let name = format!("{mode:?}").to_lowercase();
                if ans.value != expected {
                    diffs.push(format!("{name}: lambda {} != oracle {expected}", ans.value));
                }
                let recount = g.cut_stats(&ans.witness).map_err(|e| e.to_string())?.boundary;
                if recount != ans.value {
                    diffs.push(format!("{name}: witness boundary {recount} != {}", ans.value));
                }
                got.insert(name, json!({ "lambda": ans.value, "path": ans.path_taken }));
            }
            r.answer = Some(AnswerSummary { lambda: expected, witness_size: 0 });
            r.details = json!({ "oracle": expected, "modes": got });
        }
        Check::Sparsifier => {
            let delta = g.min_degree();
            let params = KtParams::for_profile(a.profile, delta, g.edge_count());
            let (gbar, log) = kt_sparsify(&g, params).map_err(|e| e.to_string())?;
            gbar.check_invariants().map_err(|e| format!("contracted graph invalid: {e}"))?;
            let via_gbar = if gbar.vertex_count() >= 2 {
                stoer_wagner(&gbar).map_err(|e| e.to_string())?.0.min(delta)
            } else {
                delta
            };
            let (expected, _) = exact_edge_connectivity(&g).map_err(|e| e.to_string())?;
            if via_gbar != expected {
                diffs.push(format!("min(delta, mincut(gbar)) = {via_gbar} != oracle {expected}"));
            }
            r.answer = Some(AnswerSummary { lambda: via_gbar, witness_size: 0 });
            r.counters.insert("gbar_vertices".into(), gbar.vertex_count() as u64);
            r.counters.insert("gbar_edges".into(), gbar.edge_count());
            r.details = json!({ "oracle": expected, "exit": log.exit });
        }
        Check::Cluster | Check::Strong => {
            if g.vertex_count() > MAX_CUT_ENUM_VERTICES {
                return Err(format!(
                    "{:?} check enumerates cuts; limited to {MAX_CUT_ENUM_VERTICES} vertices",
                    a.check
                ));
            }
            let delta = a.cut_size.unwrap_or_else(|| g.min_degree());
            let mut params = KtParams::for_profile(a.profile, delta, g.edge_count());
            params.trace = true;
            let (_, log) = run_framework(g.clone(), params).map_err(|e| e.to_string())?;
            let audit = audit_run(&g, &log, &params).map_err(|e| e.to_string())?;
            if matches!(a.check, Check::Strong) {
                diffs.extend(audit.strength_violations.iter().cloned());
            } else {
                diffs.extend(audit.cluster_violations.iter().cloned());
                diffs.extend(audit.core_violations.iter().cloned());
            }
            r.counters.insert("strength_certificates".into(), audit.strength_certificates as u64);
            r.counters.insert("clusters".into(), audit.clusters as u64);
            r.counters.insert("cores".into(), audit.cores as u64);
            r.details = json!({ "cut_size": delta, "audit": audit });
        }
    }
    r.details["mismatches"] = json!(diffs);
    let line = if diffs.is_empty() { "ok".to_string() } else { format!("mismatch:\n{}", diffs.join("\n")) };
    emit(r, &a.report, &line, out)?;
    Ok(if diffs.is_empty() { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write) -> CmdResult {
    let rows = bench::run_suite(a.suite)?;
    write_file(&a.out, &bench::to_csv(&rows, a.report.timings))?;
    let exponent = bench::work_exponent(&rows);
    let mut r = RunReport::new("bench", InputSummary::default());
    r.mode = Some(format!("{:?}", a.suite).to_lowercase());
    r.counters.insert("instances".into(), rows.len() as u64);
    r.counters.insert("total_work".into(), rows.iter().map(|x| x.work).sum());
    r.details = json!({ "work_exponent": exponent, "rows": rows });
    for row in &rows {
        r.timings.insert(format!("k{}_ms", row.k), row.millis);
    }
    let wrong: Vec<u32> = rows.iter().filter(|x| x.lambda != bench::BENCH_CROSS_EDGES as u64).map(|x| x.k).collect();
    emit(r, &a.report, &format!("work_exponent={exponent:.4}"), out)?;
    if !wrong.is_empty() {
        return Err(format!("unexpected lambda for k in {wrong:?}"));
    }
    if rows.iter().any(|x| !x.sparsified) {
        return Err("some bench instance skipped sparsification".into());
    }
    Ok(EXIT_OK)
}
