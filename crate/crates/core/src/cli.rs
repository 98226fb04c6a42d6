//! The `gdom` command line: argument parsing, report rendering, the JSONL
//! run log and counterexample bundles.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::counting::{
    count_independent_sets, count_matchings, count_spanning_trees, tutte_polynomial,
};
use crate::error::{Error, Result};
use crate::format::{parse_graph, to_json as graph_json, Format};
use crate::graph::{parse_rational, Multigraph, Rational, VertexSet};
use crate::harness::{
    check, hunt, CheckParams, CheckReport, CountFamily, HuntResult, Hypothesis, InequalityId,
    PairGenerator, Quantity, Strategy, Verdict,
};
use crate::relations::{
    check_domination, check_fractional_edge_tiling, check_fractional_tiling, check_tiling,
    Certificate, Decision,
};
use crate::spectral::{heat_trace_of, spectrum, FunctionalSpec};
use crate::symmetry::is_transitive;

/// Version of the run-log and bundle layout.
pub const SCHEMA: u32 = 1;
pub const LOG_FILE: &str = "runs.jsonl";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_HYPOTHESIS_FAILED: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "gdom", version, about = "Compare graphs of different sizes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Directory holding runs.jsonl and archived counterexamples.
    #[arg(long, global = true, default_value = "gdom-runs")]
    pub log_dir: PathBuf,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Input graph format: edge_list, graph6 or json (default: from the
    /// file extension).
    #[arg(long, global = true)]
    pub format: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants of one graph.
    Analyze {
        graph: String,
        #[arg(long)]
        t_grid: Option<String>,
    },
    /// Which relations hold between G and H.
    Relate { g: String, h: String },
    /// Evaluate one inequality. ID may carry a family, e.g.
    /// `vertex_counting:colorings:4`.
    Check {
        id: String,
        g: String,
        h: Option<String>,
        #[command(flatten)]
        opts: CheckOpts,
    },
    /// Search generated pairs for violations.
    Hunt {
        id: String,
        #[arg(long)]
        strategy: Option<String>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long)]
        h_min: Option<usize>,
        #[arg(long)]
        h_max: Option<usize>,
        /// Relation the generated pairs satisfy (default: the id's).
        #[arg(long)]
        relation: Option<String>,
        /// Fixed pattern graph (file or named graph).
        #[arg(long)]
        pattern: Option<String>,
        /// Shorthand for `--functional hinge:C`.
        #[arg(long)]
        hinge: Option<String>,
        #[command(flatten)]
        opts: CheckOpts,
    },
    /// Summarise the run log.
    Report {
        /// Show only the last N records.
        #[arg(long)]
        last: Option<usize>,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct CheckOpts {
    /// Comma-separated positive rationals.
    #[arg(long)]
    pub t_grid: Option<String>,
    /// Comma-separated axis values for the (x, y) grid.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long)]
    pub family: Option<String>,
    /// `family:param`, e.g. `hinge:4` or `shifted_log:1/2`.
    #[arg(long)]
    pub functional: Option<String>,
    /// Vertex sets like `0,1;1,2`.
    #[arg(long)]
    pub sets: Option<String>,
    /// Override such as `h_transitive+domination`.
    #[arg(long)]
    pub hypothesis: Option<String>,
    #[arg(long)]
    pub piece_weight_scale: Option<String>,
}

/// One line of the run log.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunRecord {
    pub schema: u32,
    pub timestamp: String,
    pub elapsed_ms: u64,
    pub command: Vec<String>,
    pub seed: Option<u64>,
    pub version: String,
    /// SHA-256 of each input argument's bytes.
    pub inputs: Vec<InputDigest>,
    pub exit_code: i32,
    pub outcome: String,
    pub payload: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

struct Loaded {
    graph: Multigraph,
    digest: InputDigest,
}

/// Runs the CLI on `args` (program name first), writing to `out` and `err`.
/// Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let command: Vec<String> = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let start = Instant::now();
    let mut inputs = Vec::new();
    let mut seed = None;
    let result = dispatch(&cli, &mut inputs, &mut seed, out);
    let (code, outcome, payload) = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            (
                EXIT_INCONCLUSIVE,
                "error".to_string(),
                json!({ "error": e.to_string() }),
            )
        }
    };
    let record = RunRecord {
        schema: SCHEMA,
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
        elapsed_ms: start.elapsed().as_millis() as u64,
        command,
        seed,
        version: env!("CARGO_PKG_VERSION").to_string(),
        inputs,
        exit_code: code,
        outcome,
        payload,
    };
    if !matches!(cli.command, Command::Report { .. }) {
        if let Err(e) = append_record(&cli.log_dir, &record) {
            let _ = writeln!(err, "warning: could not write run log: {e}");
        }
    }
    code
}

type Dispatched = (i32, String, Value);

fn dispatch(
    cli: &Cli,
    inputs: &mut Vec<InputDigest>,
    seed: &mut Option<u64>,
    out: &mut dyn Write,
) -> Result<Dispatched> {
    let format = cli
        .format
        .as_deref()
        .map(str::parse::<Format>)
        .transpose()?;
    let mut load = |spec: &str| -> Result<Multigraph> {
        let l = load_graph(spec, format)?;
        inputs.push(l.digest);
        Ok(l.graph)
    };
    match &cli.command {
        Command::Analyze { graph, t_grid } => {
            let g = load(graph)?;
            let grid = match t_grid {
                Some(s) => parse_rational_list(s)?,
                None => crate::harness::default_t_grid(),
            };
            let payload = analyze(&g, &grid);
            emit(out, cli.json, &payload, || render_analysis(&payload))?;
            Ok((EXIT_OK, "analyzed".into(), payload))
        }
        Command::Relate { g, h } => {
            let (g, h) = (load(g)?, load(h)?);
            let payload = relate(&g, &h);
            emit(out, cli.json, &payload, || render_relations(&payload))?;
            Ok((EXIT_OK, "related".into(), payload))
        }
        Command::Check { id, g, h, opts } => {
            let (id, family) = split_id(id)?;
            let g = load(g)?;
            let h = h.as_deref().map(&mut load).transpose()?;
            let mut params = build_params(opts)?;
            if params.family.is_none() {
                params.family = family;
            }
            let report = check(id, &g, h.as_ref(), &params)?;
            let payload = serde_json::to_value(&report).expect("report serializes");
            emit(out, cli.json, &payload, || render_report(&report))?;
            Ok((
                exit_code(report.verdict),
                report.verdict.name().into(),
                payload,
            ))
        }
        Command::Hunt {
            id,
            strategy,
            trials,
            seed: s,
            max_n,
            h_min,
            h_max,
            relation,
            pattern,
            hinge,
            opts,
        } => {
            *seed = Some(*s);
            let (id, family) = split_id(id)?;
            let mut params = build_params(opts)?;
            if params.family.is_none() {
                params.family = family;
            }
            if let Some(c) = hinge {
                let c = parse_rational(c)
                    .ok_or_else(|| Error::Param(format!("bad hinge constant `{c}`")))?;
                params.functional = Some(FunctionalSpec::Hinge { c });
            }
            let hyp = params.hypothesis.unwrap_or_else(|| id.default_hypothesis());
            let strategy = match strategy {
                Some(s) => s.parse()?,
                None if hyp.g_transitive => Strategy::TransitiveCatalog,
                None => Strategy::OverlayCopies,
            };
            let mut gen = PairGenerator::new(strategy, *s);
            gen.max_n = *max_n;
            if let Some(x) = h_min {
                gen.h_min = *x;
            }
            if let Some(x) = h_max {
                gen.h_max = *x;
            }
            gen.relation = match relation {
                Some(r) => r.parse::<Hypothesis>()?.relation,
                None => hyp.relation,
            };
            gen.pattern = pattern.as_deref().map(&mut load).transpose()?;
            let start = Instant::now();
            let result = hunt(id, &gen, *trials, &params);
            let elapsed = start.elapsed();
            let archive = cli.log_dir.join("counterexamples");
            let mut bundles = Vec::new();
            for v in &result.violations {
                bundles.push(write_bundle(&archive, &result, v)?);
            }
            let payload = serde_json::to_value(&result).expect("hunt serializes");
            if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&payload).unwrap())
                    .map_err(io_err)?;
            } else {
                for (v, path) in result.violations.iter().zip(&bundles) {
                    writeln!(
                        out,
                        "violation at trial {}: G = {} | H = {} -> {}",
                        v.trial,
                        edge_list_of(&v.report.g),
                        v.report.h.as_ref().map(edge_list_of).unwrap_or_default(),
                        path.display()
                    )
                    .map_err(io_err)?;
                }
                writeln!(out, "{}", hunt_summary(&result, elapsed.as_secs_f64()))
                    .map_err(io_err)?;
            }
            let code = if result.violations.is_empty() {
                EXIT_OK
            } else {
                EXIT_VIOLATED
            };
            let outcome = format!(
                "{} violations in {} trials",
                result.violations.len(),
                result.trials
            );
            Ok((code, outcome, payload))
        }
        Command::Report { last } => {
            let records = read_records(&cli.log_dir)?;
            let skip = last.map_or(0, |n| records.len().saturating_sub(n));
            let shown = &records[skip..];
            if cli.json {
                for r in shown {
                    writeln!(out, "{}", serde_json::to_string(r).unwrap()).map_err(io_err)?;
                }
            } else {
                for r in shown {
                    writeln!(
                        out,
                        "{}  exit {}  {}  [{}]",
                        r.timestamp,
                        r.exit_code,
                        r.outcome,
                        r.command
                            .iter()
                            .skip(1)
                            .cloned()
                            .collect::<Vec<_>>()
                            .join(" ")
                    )
                    .map_err(io_err)?;
                }
                writeln!(
                    out,
                    "{} records in {}",
                    shown.len(),
                    cli.log_dir.join(LOG_FILE).display()
                )
                .map_err(io_err)?;
            }
            Ok((EXIT_OK, "reported".into(), Value::Null))
        }
    }
}

fn io_err(e: io::Error) -> Error {
    Error::Io(e.to_string())
}

fn emit(
    out: &mut dyn Write,
    as_json: bool,
    payload: &Value,
    text: impl FnOnce() -> String,
) -> Result<()> {
    if as_json {
        writeln!(out, "{}", serde_json::to_string_pretty(payload).unwrap()).map_err(io_err)
    } else {
        write!(out, "{}", text()).map_err(io_err)
    }
}

pub fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Holds | Verdict::HoldsWithEquality => EXIT_OK,
        Verdict::Violated => EXIT_VIOLATED,
        Verdict::HypothesisFailed => EXIT_HYPOTHESIS_FAILED,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

/// `vertex_counting:colorings:4` gives the id and the family.
fn split_id(s: &str) -> Result<(InequalityId, Option<CountFamily>)> {
    match s.split_once(':') {
        Some((id, fam)) => Ok((id.parse()?, Some(fam.parse()?))),
        None => Ok((s.parse()?, None)),
    }
}

fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| {
            parse_rational(x.trim())
                .ok_or_else(|| Error::Param(format!("`{x}` is not a rational number")))
        })
        .collect()
}

fn build_params(o: &CheckOpts) -> Result<CheckParams> {
    let sets = match &o.sets {
        Some(s) => Some(
            s.split(';')
                .map(|set| {
                    let items = set
                        .split(',')
                        .filter(|x| !x.trim().is_empty())
                        .map(|x| {
                            x.trim()
                                .parse::<usize>()
                                .map_err(|_| Error::Param(format!("bad vertex `{x}`")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    VertexSet::new(items, usize::MAX)
                })
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    Ok(CheckParams {
        t_grid: o.t_grid.as_deref().map(parse_rational_list).transpose()?,
        xy_grid: o.grid.as_deref().map(parse_rational_list).transpose()?,
        functional: o.functional.as_deref().map(str::parse).transpose()?,
        family: o.family.as_deref().map(str::parse).transpose()?,
        sets,
        hypothesis: o.hypothesis.as_deref().map(str::parse).transpose()?,
        piece_weight_scale: o
            .piece_weight_scale
            .as_deref()
            .map(|s| parse_rational(s).ok_or_else(|| Error::Param(format!("bad scale `{s}`"))))
            .transpose()?,
    })
}

/// Reads a graph from a file (`-` is stdin) or, failing that, a named
/// graph: `K4`, `C6`, `P3`, `S4` (star with 4 leaves), `Q3`, `G2x3`.
fn load_graph(spec: &str, format: Option<Format>) -> Result<Loaded> {
    let path = Path::new(spec);
    let (text, name) = if spec == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        (s, "<stdin>".to_string())
    } else if path.exists() {
        (
            fs::read_to_string(path).map_err(|e| Error::Io(format!("{spec}: {e}")))?,
            spec.to_string(),
        )
    } else if let Some(g) = named_graph(spec) {
        let text = g.to_string();
        return Ok(Loaded {
            digest: InputDigest {
                name: spec.to_string(),
                sha256: sha256_hex(text.as_bytes()),
            },
            graph: g,
        });
    } else {
        return Err(Error::Io(format!("{spec}: no such file or named graph")));
    };
    let format = format.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some("g6") | Some("graph6") => Format::Graph6,
        Some("json") => Format::Json,
        _ => Format::EdgeList,
    });
    let graph = parse_graph(&text, format).map_err(|e| match e {
        Error::Syntax { position, message } => Error::Syntax {
            position,
            message: format!("{name}: {message}"),
        },
        other => other,
    })?;
    Ok(Loaded {
        digest: InputDigest {
            name,
            sha256: sha256_hex(text.as_bytes()),
        },
        graph,
    })
}

pub fn named_graph(spec: &str) -> Option<Multigraph> {
    let (head, rest) = spec.split_at(spec.find(|c: char| c.is_ascii_digit())?);
    let num = |s: &str| s.parse::<usize>().ok();
    match head {
        "K" => num(rest).filter(|&n| n >= 1).map(Multigraph::complete),
        "C" => num(rest).filter(|&n| n >= 3).map(Multigraph::cycle),
        "P" => num(rest).filter(|&n| n >= 1).map(Multigraph::path),
        "S" => num(rest).filter(|&n| n >= 1).map(Multigraph::star),
        "Q" => num(rest).filter(|&n| n <= 6).map(Multigraph::hypercube),
        "G" => {
            let (r, c) = rest.split_once('x')?;
            Some(Multigraph::grid(num(r)?.max(1), num(c)?.max(1)))
        }
        _ => None,
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

fn field<T: Serialize>(r: Result<T>) -> Value {
    match r {
        Ok(v) => serde_json::to_value(v).expect("serializable"),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

/// Invariants of `g`; fields that hit a bound carry an `error` object.
pub fn analyze(g: &Multigraph, t_grid: &[Rational]) -> Value {
    let spec = spectrum(g);
    let heat: Result<Vec<Value>> = spec.clone().map(|s| {
        t_grid
            .iter()
            .map(|t| json!({"t": t.to_string(), "value": heat_trace_of(&s, crate::linalg::rational_to_f64(t))}))
            .collect()
    });
    json!({
        "graph": graph_json(g),
        "vertices": g.n(),
        "edge_units": g.edge_units(),
        "simple": g.is_simple(),
        "transitive": field(is_transitive(g)),
        "cut_edge": g.has_cut_edge(),
        "spanning_trees": count_spanning_trees(g).to_string(),
        "tutte": field(tutte_polynomial(g).map(|p| p.to_string())),
        "matchings": field(count_matchings(g).map(|x| x.to_string())),
        "independent_sets": field(count_independent_sets(g).map(|x| x.to_string())),
        "spectrum": field(spec.map(|s| s.values)),
        "heat_trace": field(heat),
    })
}

fn render_analysis(a: &Value) -> String {
    let show = |v: &Value| match v {
        Value::String(s) => s.clone(),
        Value::Object(o) if o.contains_key("error") => {
            format!("unavailable ({})", o["error"].as_str().unwrap_or(""))
        }
        other => other.to_string(),
    };
    let mut s = String::new();
    for key in [
        "vertices",
        "edge_units",
        "simple",
        "transitive",
        "cut_edge",
        "spanning_trees",
        "tutte",
        "matchings",
        "independent_sets",
    ] {
        s += &format!("{key}: {}\n", show(&a[key]));
    }
    match a["spectrum"].as_array() {
        Some(vals) => {
            let v: Vec<String> = vals
                .iter()
                .map(|x| x.as_f64().unwrap_or(f64::NAN))
                .map(|x| format!("{:.6}", if x.abs() < 5e-7 { 0.0 } else { x }))
                .collect();
            s += &format!("spectrum: {}\n", v.join(" "));
        }
        None => s += &format!("spectrum: {}\n", show(&a["spectrum"])),
    }
    if let Some(rows) = a["heat_trace"].as_array() {
        s += "heat_trace:\n";
        for r in rows {
            s += &format!(
                "  t={} {:.12}\n",
                r["t"].as_str().unwrap_or(""),
                r["value"].as_f64().unwrap_or(f64::NAN)
            );
        }
    }
    s
}

fn decision_json<C>(d: Decision<C>, cert: impl FnOnce(C) -> Certificate) -> Value {
    match d {
        Decision::Holds(c) => json!({"holds": true, "certificate": cert(c).to_json()}),
        Decision::Fails { explored } => json!({"holds": false, "explored": explored}),
        Decision::Inconclusive { copies_considered } => {
            json!({"holds": Value::Null, "inconclusive": true, "copies_considered": copies_considered})
        }
    }
}

/// Tiling, fractional tilings and domination between `g` and `h`.
pub fn relate(g: &Multigraph, h: &Multigraph) -> Value {
    let frac = check_fractional_tiling(g, h);
    let m = frac.certificate().map(|c| c.coverage.to_string());
    json!({
        "g": graph_json(g),
        "h": graph_json(h),
        "tiling": decision_json(check_tiling(g, h), Certificate::Tiling),
        "fractional_tiling": {
            "m": m,
            "decision": decision_json(frac, Certificate::FractionalTiling),
        },
        "fractional_edge_tiling": decision_json(check_fractional_edge_tiling(g, h), Certificate::FractionalTiling),
        "domination": decision_json(check_domination(g, h), Certificate::Coupling),
    })
}

fn render_relations(r: &Value) -> String {
    let word = |d: &Value| match d["holds"].as_bool() {
        Some(true) => "yes",
        Some(false) => "no",
        None => "inconclusive",
    };
    let mut s = format!("tiling: {}\n", word(&r["tiling"]));
    s += &format!(
        "fractional_tiling: {}",
        word(&r["fractional_tiling"]["decision"])
    );
    if let Some(m) = r["fractional_tiling"]["m"].as_str() {
        s += &format!(" (m={m})");
    }
    s += "\n";
    s += &format!(
        "fractional_edge_tiling: {}\n",
        word(&r["fractional_edge_tiling"])
    );
    s += &format!("domination: {}\n", word(&r["domination"]));
    s
}

fn quantity(q: &Quantity) -> String {
    match q {
        Quantity::Exact {
            value,
            approx: Some(a),
        } if value.parse::<num_bigint::BigInt>().is_err() => {
            format!("{value} ~ {a:.12}")
        }
        Quantity::Exact { value, .. } => value.clone(),
        Quantity::Float { value, error } => format!("{value:.15} +/- {error:.1e}"),
    }
}

pub fn render_report(r: &CheckReport) -> String {
    let mut s = format!(
        "id: {} ({})\n",
        r.id,
        serde_json::to_value(r.status).unwrap().as_str().unwrap()
    );
    s += &format!(
        "hypothesis: {} {} ({})\n",
        r.hypothesis.required,
        if r.hypothesis.satisfied {
            "satisfied"
        } else {
            "not satisfied"
        },
        r.hypothesis.detail
    );
    s += &format!("lhs: {}\n", quantity(&r.lhs));
    s += &format!("rhs: {}\n", quantity(&r.rhs));
    s += &format!("claim: lhs {} rhs\n", r.direction.symbol());
    if r.points.len() > 1 {
        for p in &r.points {
            s += &format!("  {}: {}\n", p.at, p.verdict.name());
        }
    }
    if let Some(note) = &r.strictness {
        s += &format!("strictness: {note}\n");
    }
    if r.verdict != r.raw_verdict {
        s += &format!("raw comparison: {}\n", r.raw_verdict.name());
    }
    s += &format!("verdict: {}\n", r.verdict.name());
    s
}

fn edge_list_of(v: &Value) -> String {
    crate::format::graph_from_json(v)
        .map(|g| g.to_string())
        .unwrap_or_else(|_| v.to_string())
}

pub fn hunt_summary(r: &HuntResult, elapsed: f64) -> String {
    format!(
        "{}: {} trials, {} checked, {} violations, {} hypothesis_failed, {} inconclusive, {} generation failures, {} errors, {:.2}s",
        r.id,
        r.trials,
        r.checked,
        r.violations.len(),
        r.hypothesis_failed,
        r.inconclusive,
        r.generation_failures,
        r.errors,
        elapsed
    )
}

fn write_bundle(dir: &Path, r: &HuntResult, v: &crate::harness::Violation) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(io_err)?;
    let path = dir.join(format!("{}-seed{}-trial{}.json", r.id, v.seed, v.trial));
    let bundle = json!({
        "schema": SCHEMA,
        "id": r.id,
        "seed": v.seed,
        "trial": v.trial,
        "generator": r.generator,
        "g": edge_list_of(&v.report.g),
        "h": v.report.h.as_ref().map(edge_list_of),
        "certificate": v.certificate,
        "report": v.report,
    });
    fs::write(&path, serde_json::to_string_pretty(&bundle).unwrap() + "\n").map_err(io_err)?;
    Ok(path)
}

fn append_record(dir: &Path, record: &RunRecord) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut f = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(dir.join(LOG_FILE))?;
    writeln!(
        f,
        "{}",
        serde_json::to_string(record).expect("record serializes")
    )
}

pub fn read_records(dir: &Path) -> Result<Vec<RunRecord>> {
    let path = dir.join(LOG_FILE);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(io_err(e)),
    };
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| {
            serde_json::from_str(l)
                .map_err(|e| Error::Io(format!("{}:{}: {e}", path.display(), i + 1)))
        })
        .collect()
}
