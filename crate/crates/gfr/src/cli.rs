//! `gfr` subcommands. [`run`] takes its streams as arguments so tests can
//! drive it without spawning a process.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use gfr_core::catalog;
use gfr_core::distinguish::{distinguish, Evidence, Verdict};
use gfr_core::factor::{decompose, is_quasi_strongly_solid, simplify_with, FactorExpr, RewriteTrace};
use gfr_core::families::FamilySpec;
use gfr_core::internal::{
    internal_graph, internal_sets_bruteforce, internal_vertices, is_h_rigid, AnalysisError, HRigidityReport,
    BRUTE_FORCE_LIMIT,
};
use gfr_core::Graph;
use serde_json::{json, Value};

use crate::expr::parse_expression;
use crate::format::{parse_graph, write_dot, write_edge_list};
use crate::json;
use crate::source::{self, SourceError};
use crate::verify::{self, Options, Suite, SuiteReport};

pub mod exit {
    pub const OK: i32 = 0;
    pub const PROPERTY_FAILURE: i32 = 1;
    pub const INPUT_ERROR: i32 = 2;
    pub const ORACLE_DISAGREEMENT: i32 = 3;
    pub const WHITELIST_MISMATCH: i32 = 4;
}

#[derive(Parser, Debug)]
#[command(name = "gfr", version, about = "Internal graphs, H-rigidity and factor expressions of graph products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Links, internal vertices, internal graph, H-rigidity and radius.
    Analyze {
        /// family:<tag>:<params>, file:<path>, a path, or - for stdin
        source: String,
        /// Cross-check the fast paths against subset enumeration.
        #[arg(long)]
        oracle: bool,
        /// Allow the oracle beyond 20 vertices.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        json: bool,
    },
    /// Verdict on whether two graphs give isomorphic factors.
    Distinguish {
        first: String,
        second: String,
        #[arg(long)]
        json: bool,
    },
    /// Normal form of a graph's factor expression, or of an expression.
    Simplify {
        /// A graph source, `expr:<expression>`, or an expression such as F[R,R]
        input: String,
        /// Skip the rules that go beyond integer parameters.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print a family member or every graph of a catalog order.
    Generate {
        /// <tag>:<params> (optionally prefixed with family:) or catalog:<n>
        spec: String,
        #[arg(long, value_enum, default_value_t = Format::Edges)]
        format: Format,
    },
    /// Run property sweeps.
    Verify {
        /// Suite to run; repeat for several. Default: all.
        #[arg(long, value_enum)]
        suite: Vec<SuiteArg>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        max_n: Option<usize>,
        /// Worker threads (0: one per core).
        #[arg(long, env = "GFR_JOBS", default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Edges,
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    ExternalAdjacency,
    RadiusBound,
    RigidPairs,
    Oracle,
    Classification,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::ExternalAdjacency => Suite::ExternalAdjacency,
            SuiteArg::RadiusBound => Suite::RadiusBound,
            SuiteArg::RigidPairs => Suite::RigidPairs,
            SuiteArg::Oracle => Suite::Oracle,
            SuiteArg::Classification => Suite::Classification,
        }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn fail(&mut self, code: i32, msg: impl std::fmt::Display) -> i32 {
        let _ = writeln!(self.err, "gfr: {msg}");
        code
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return e.exit_code();
        }
    };
    let mut io = Io { stdin, out, err };
    match cli.command {
        Command::Analyze {
            source,
            oracle,
            force,
            json,
        } => analyze(&mut io, &source, oracle, force, json),
        Command::Distinguish { first, second, json } => cmd_distinguish(&mut io, &first, &second, json),
        Command::Simplify {
            input,
            strict,
            trace,
            json,
        } => cmd_simplify(&mut io, &input, strict, trace, json),
        Command::Generate { spec, format } => generate(&mut io, &spec, format),
        Command::Verify {
            suite,
            samples,
            seed,
            max_n,
            jobs,
            json,
        } => cmd_verify(&mut io, &suite, Options { samples, seed, max_n }, jobs, json),
    }
}

fn load(io: &mut Io<'_>, arg: &str) -> Result<Graph, i32> {
    source::load(arg, io.stdin).map_err(|e| io.fail(exit::INPUT_ERROR, e))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

// ---------------------------------------------------------------------------
// analyze

struct OracleCheck {
    internal_sets: usize,
    h_rigid: bool,
    disagreement: Option<String>,
}

fn run_oracle(g: &Graph, force: bool) -> Result<OracleCheck, AnalysisError> {
    let sets = internal_sets_bruteforce(g, None, force)?;
    let report = gfr_core::internal::is_h_rigid_bruteforce(g, force)?;
    let mut disagreement = verify::oracle_disagreement(g);
    if disagreement.is_none() && report.h_rigid != is_h_rigid(g).h_rigid {
        disagreement = Some("H-rigidity verdicts differ".into());
    }
    Ok(OracleCheck {
        internal_sets: sets.total,
        h_rigid: report.h_rigid,
        disagreement,
    })
}

fn rigidity_lines(out: &mut dyn Write, r: &HRigidityReport) -> std::io::Result<()> {
    writeln!(out, "condition 1 (locally finite): {}", yes(r.locally_finite))?;
    write!(out, "condition 2 (internal sets are vertices): {}", yes(r.internal_sets_are_vertices))?;
    match &r.internal_set_witness {
        Some(w) => writeln!(out, ", witness {w}")?,
        None => writeln!(out)?,
    }
    write!(out, "condition 3 (link condition): {}", yes(r.link_condition))?;
    match &r.link_witness {
        Some(w) => writeln!(out, ", witness hub {} with induced path {} (middle {})", w.hub, w.set, w.middle)?,
        None => writeln!(out)?,
    }
    writeln!(out, "h-rigid: {}", yes(r.h_rigid))?;
    for n in &r.notes {
        writeln!(out, "note: {n}")?;
    }
    Ok(())
}

/// The analysis report as JSON.
pub fn analysis_json(g: &Graph) -> Value {
    let report = is_h_rigid(g);
    let int = internal_graph(g);
    let mut v = json::rigidity(&report);
    v["schema"] = json!(json::SCHEMA);
    v["graph"] = json::graph(g);
    v["int_vertices"] = json::set(&internal_vertices(g));
    v["int_graph"] = json::graph(&int);
    v["radius"] = json::ext(g.radius());
    v["int_radius"] = json::ext(int.radius());
    v["quasi_strongly_solid"] = json!(is_quasi_strongly_solid(g));
    v["expression"] = json::expression(&gfr_core::factor::graph_to_expression(g));
    v["links"] = Value::Array(
        (0..g.order())
            .map(|i| {
                json!({
                    "vertex": json::label(g.label(i)),
                    "link": json::set(&g.to_labels(g.neighbors(i))),
                    "complete": g.is_complete(g.neighbors(i)),
                })
            })
            .collect(),
    );
    v
}

fn analyze(io: &mut Io<'_>, arg: &str, oracle: bool, force: bool, as_json: bool) -> i32 {
    let g = match load(io, arg) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let check = if oracle {
        match run_oracle(&g, force) {
            Ok(c) => Some(c),
            Err(e @ AnalysisError::TooLarge { .. }) => {
                return io.fail(
                    exit::INPUT_ERROR,
                    format!("{e}; pass --force to run the oracle anyway (limit {BRUTE_FORCE_LIMIT})"),
                )
            }
            Err(e) => return io.fail(exit::INPUT_ERROR, e),
        }
    } else {
        None
    };

    if as_json {
        let mut v = analysis_json(&g);
        if let Some(c) = &check {
            v["oracle"] = json!({
                "agree": c.disagreement.is_none(),
                "internal_sets": c.internal_sets,
                "h_rigid": c.h_rigid,
                "disagreement": c.disagreement,
            });
        }
        let _ = io.out.write_all(json::render(&v).as_bytes());
    } else {
        let _ = write_analysis(io.out, &g, check.as_ref());
    }
    match check.and_then(|c| c.disagreement) {
        Some(d) => io.fail(exit::ORACLE_DISAGREEMENT, format!("oracle disagreement: {d}")),
        None => exit::OK,
    }
}

fn write_analysis(out: &mut dyn Write, g: &Graph, check: Option<&OracleCheck>) -> std::io::Result<()> {
    let report = is_h_rigid(g);
    let int = internal_graph(g);
    writeln!(out, "graph: {}", g.to_edge_list("; "))?;
    writeln!(out, "vertices: {}, edges: {}, connected: {}", g.order(), g.size(), yes(g.is_connected()))?;
    writeln!(out, "links:")?;
    for i in 0..g.order() {
        let nb = g.neighbors(i);
        let tag = if g.is_complete(nb) { "complete" } else { "not complete" };
        writeln!(out, "  {}: {} {}", g.label(i), g.to_labels(nb), tag)?;
    }
    writeln!(out, "internal vertices: {}", internal_vertices(g))?;
    writeln!(out, "internal graph: {}", int.to_edge_list("; "))?;
    if !report.int_graph_well_defined() {
        writeln!(out, "internal graph caveat: some internal set is not a single vertex")?;
    }
    rigidity_lines(out, &report)?;
    writeln!(out, "radius: {}", g.radius())?;
    writeln!(out, "internal radius: {}", int.radius())?;
    writeln!(out, "quasi-strongly solid: {}", yes(is_quasi_strongly_solid(g)))?;
    writeln!(out, "expression: {}", gfr_core::factor::graph_to_expression(g))?;
    if let Some(c) = check {
        match &c.disagreement {
            None => writeln!(
                out,
                "oracle: agrees ({} internal sets, h-rigid {})",
                c.internal_sets,
                yes(c.h_rigid)
            )?,
            Some(d) => writeln!(out, "oracle: DISAGREES: {d}")?,
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// distinguish

fn write_trace(out: &mut dyn Write, indent: &str, t: &RewriteTrace) -> std::io::Result<()> {
    for (i, s) in t.steps.iter().enumerate() {
        let ext = if s.extension { " [extension]" } else { "" };
        let detail = match &s.rule {
            gfr_core::factor::Rule::Amplify { ratio, .. } => format!(" r={ratio}"),
            _ => String::new(),
        };
        writeln!(
            out,
            "{indent}{}. {}{detail} at {:?}: {} -> {}{ext}",
            i + 1,
            s.rule.name(),
            s.path,
            s.before,
            s.after
        )?;
    }
    Ok(())
}

fn write_verdict(out: &mut dyn Write, v: &Verdict) -> std::io::Result<()> {
    writeln!(out, "verdict: {}", v.kind.as_str())?;
    writeln!(out, "basis: {}", v.basis.as_str())?;
    match &v.evidence {
        Evidence::Mapping(m) => {
            let pairs: Vec<String> = m.iter().map(|(a, b)| format!("{a}->{b}")).collect();
            writeln!(out, "evidence: graph isomorphism {}", pairs.join(" "))?;
        }
        Evidence::Certificate(c) => {
            writeln!(out, "evidence: factor certificate (replays: {})", yes(c.replays()))?;
            for i in 0..2 {
                writeln!(out, "  g{}: {} => {}", i + 1, c.raw[i], c.normal[i])?;
                write_trace(out, "    ", &c.simplification[i])?;
            }
            writeln!(out, "  bridge: {} => {}", c.normal[0], c.normal[1])?;
            write_trace(out, "    ", &c.bridge)?;
        }
        Evidence::InternalGraphs {
            internal,
            fingerprints_differ,
        } => {
            let how = if *fingerprints_differ {
                "invariants differ"
            } else {
                "exhaustive search found no isomorphism"
            };
            writeln!(out, "evidence: internal graphs are not isomorphic ({how})")?;
            writeln!(out, "  Int(g1): {}", internal[0].to_edge_list("; "))?;
            writeln!(out, "  Int(g2): {}", internal[1].to_edge_list("; "))?;
        }
        Evidence::Radii { radius, .. } => {
            writeln!(out, "evidence: radii {} and {} differ by two or more", radius[0], radius[1])?;
        }
        Evidence::Hypotheses { failures } => {
            writeln!(out, "evidence: no rule applies")?;
            if failures.is_empty() {
                writeln!(out, "  both graphs meet the hypotheses, but nothing separates or equates them")?;
            }
            for f in failures {
                writeln!(out, "  {f}")?;
            }
        }
    }
    for (i, r) in v.reports.iter().enumerate() {
        writeln!(
            out,
            "g{}: h-rigid {}, connected {}",
            i + 1,
            yes(r.h_rigid),
            yes(r.connected)
        )?;
    }
    Ok(())
}

fn cmd_distinguish(io: &mut Io<'_>, first: &str, second: &str, as_json: bool) -> i32 {
    if first == "-" && second == "-" {
        return io.fail(exit::INPUT_ERROR, "only one graph can come from stdin");
    }
    let g1 = match load(io, first) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let g2 = match load(io, second) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let v = distinguish(&g1, &g2);
    if as_json {
        let _ = io.out.write_all(json::render(&json::verdict(&v)).as_bytes());
    } else {
        let _ = write_verdict(io.out, &v);
    }
    exit::OK
}

// ---------------------------------------------------------------------------
// simplify

enum SimplifyInput {
    Graph(Graph),
    Expr(FactorExpr),
}

fn simplify_input(io: &mut Io<'_>, input: &str) -> Result<SimplifyInput, i32> {
    if let Some(e) = input.strip_prefix("expr:") {
        return parse_expression(e)
            .map(SimplifyInput::Expr)
            .map_err(|e| io.fail(exit::INPUT_ERROR, format!("expression:{e}")));
    }
    if input == "-" {
        let mut text = String::new();
        if let Err(e) = io.stdin.read_to_string(&mut text) {
            return Err(io.fail(exit::INPUT_ERROR, e));
        }
        if let Ok(e) = parse_expression(text.trim()) {
            return Ok(SimplifyInput::Expr(e));
        }
        return parse_graph(&text)
            .map(SimplifyInput::Graph)
            .map_err(|e| io.fail(exit::INPUT_ERROR, SourceError::Parse { origin: "<stdin>".into(), error: e }));
    }
    if input.starts_with("family:") || input.starts_with("file:") {
        return load(io, input).map(SimplifyInput::Graph);
    }
    match parse_expression(input) {
        Ok(e) => Ok(SimplifyInput::Expr(e)),
        Err(pe) if std::path::Path::new(input).exists() => {
            let _ = pe;
            load(io, input).map(SimplifyInput::Graph)
        }
        Err(pe) => Err(io.fail(exit::INPUT_ERROR, format!("expression:{pe}"))),
    }
}

fn cmd_simplify(io: &mut Io<'_>, input: &str, strict: bool, trace: bool, as_json: bool) -> i32 {
    let raw = match simplify_input(io, input) {
        Ok(SimplifyInput::Graph(g)) => decompose(&g),
        Ok(SimplifyInput::Expr(e)) => e,
        Err(code) => return code,
    };
    let s = simplify_with(&raw, strict);
    if as_json {
        let v = json!({
            "schema": json::SCHEMA,
            "input": json::expression(&raw),
            "expression": json::expression(&s.expr),
            "strict": strict,
            "trace": json::trace(&s.trace),
            "uses_extension": s.trace.uses_extension(),
        });
        let _ = io.out.write_all(json::render(&v).as_bytes());
    } else {
        if trace {
            let _ = writeln!(io.out, "input: {raw}");
            let _ = write_trace(io.out, "", &s.trace);
        }
        let _ = writeln!(io.out, "{}", s.expr);
    }
    exit::OK
}

// ---------------------------------------------------------------------------
// generate

fn render_graph(g: &Graph, format: Format, name: &str) -> String {
    match format {
        Format::Edges => write_edge_list(g),
        Format::Dot => write_dot(g, name),
        Format::Json => json::render(&json!({ "schema": json::SCHEMA, "graph": json::graph(g) })),
    }
}

fn generate(io: &mut Io<'_>, spec: &str, format: Format) -> i32 {
    let spec = spec.strip_prefix("family:").unwrap_or(spec);
    if let Some(n) = spec.strip_prefix("catalog:") {
        let n: usize = match n.parse() {
            Ok(n) if n <= catalog::MAX_ORDER => n,
            _ => return io.fail(exit::INPUT_ERROR, format!("catalog order must be 0..={}", catalog::MAX_ORDER)),
        };
        let graphs = catalog::graphs_of_order(n);
        if let Format::Json = format {
            let v = json!({
                "schema": json::SCHEMA,
                "graphs": graphs.iter().map(json::graph).collect::<Vec<_>>(),
            });
            let _ = io.out.write_all(json::render(&v).as_bytes());
        } else {
            for (i, g) in graphs.iter().enumerate() {
                if i > 0 {
                    let _ = writeln!(io.out);
                }
                let _ = io.out.write_all(render_graph(g, format, &format!("G{i}")).as_bytes());
            }
        }
        return exit::OK;
    }
    let g = match spec.parse::<FamilySpec>().map_err(SourceError::from).and_then(|f| Ok(f.build()?)) {
        Ok(g) => g,
        Err(e) => return io.fail(exit::INPUT_ERROR, e),
    };
    let name = spec.split(':').next().unwrap_or("G");
    let _ = io.out.write_all(render_graph(&g, format, name).as_bytes());
    exit::OK
}

// ---------------------------------------------------------------------------
// verify

fn suite_json(r: &SuiteReport) -> Value {
    json!({
        "suite": r.suite.name(),
        "cases": r.cases,
        "skipped": r.skipped,
        "passed": r.passed(),
        "counterexamples": r.counterexamples.iter().map(|c| json!({
            "index": c.index,
            "message": c.message,
            "graphs": c.graphs.iter().map(|g| g.to_edge_list("; ")).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "whitelisted": r.whitelisted,
        "whitelist_mismatches": r.whitelist_mismatches,
    })
}

fn cmd_verify(io: &mut Io<'_>, suites: &[SuiteArg], opts: Options, jobs: usize, as_json: bool) -> i32 {
    let chosen: Vec<Suite> = if suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        suites.iter().map(|&s| s.into()).collect()
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p,
        Err(e) => return io.fail(exit::INPUT_ERROR, e),
    };
    let reports: Vec<SuiteReport> = pool.install(|| chosen.iter().map(|&s| verify::run(s, &opts)).collect());
    if as_json {
        let v = json!({
            "schema": json::SCHEMA,
            "seed": opts.seed,
            "suites": reports.iter().map(suite_json).collect::<Vec<_>>(),
        });
        let _ = io.out.write_all(json::render(&v).as_bytes());
    } else {
        for r in &reports {
            let _ = writeln!(io.out, "{r}");
        }
    }
    if reports.iter().any(|r| !r.counterexamples.is_empty()) {
        exit::PROPERTY_FAILURE
    } else if reports.iter().any(|r| !r.whitelist_mismatches.is_empty()) {
        exit::WHITELIST_MISMATCH
    } else {
        exit::OK
    }
}
