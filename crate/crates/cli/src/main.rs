//! `sqc`: batch front end. Reports go to stdout as JSON, a one-line summary
//! goes to stderr, and the exit code tells CI what kind of failure occurred.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use sqc_core::classify::{analyze_components, classify_vertices, support_graph, ClassificationReport};
use sqc_core::colorer::{check_coloring, color, ColorError, Coloring, ListAssignment, Mode};
use sqc_core::configurations::{detect, detect_any, ConfigError, ConfigKind, KParameter};
use sqc_core::density::{mad_exact, DensityError};
use sqc_core::discharging::discharge;
use sqc_core::gen::{gen_gadget, gen_sparse, random_lists, GadgetKind, GenError, GenSpec};
use sqc_core::oracle::{chi2_exact, list_color_exact, OracleError};
use sqc_core::graph::Girth;
use sqc_core::{Graph, GraphError, Rational};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{message}")]
    NoReducible { message: String, report: Value },
    #[error("{message}")]
    Verification { message: String, report: Value },
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 1,
            CliError::Precondition(_) => 2,
            CliError::NoReducible { .. } => 3,
            CliError::Verification { .. } => 4,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<DensityError> for CliError {
    fn from(e: DensityError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<ColorError> for CliError {
    fn from(e: ColorError) -> Self {
        match &e {
            ColorError::NoReducibleConfiguration { vertices, edges } => CliError::NoReducible {
                message: e.to_string(),
                report: json!({ "error": "no_reducible_configuration", "vertices": vertices, "edges": edges }),
            },
            ColorError::BadK(_) | ColorError::BadInput(_) => CliError::Precondition(e.to_string()),
            ColorError::ExtensionFailure { .. } => CliError::Verification {
                message: e.to_string(),
                report: json!({ "error": "extension_failure", "detail": e.to_string() }),
            },
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "sqc", version, about = "List 2-distance and injective coloring of sparse graphs")]
struct Cli {
    /// Worker threads for commands that take several input files.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact maximum average degree with a densest-subgraph witness.
    Mad(Inputs),
    /// Girth (null for forests).
    Girth(Inputs),
    /// The square graph.
    Square {
        graph: PathBuf,
        /// Write the square as an edge list here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Weak, support, positive, negative and locked vertices.
    Classify(Inputs),
    /// Reducible configuration matches.
    Detect {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        k: Option<usize>,
        /// Only the first match in priority order.
        #[arg(long)]
        any: bool,
        /// Restrict to one kind (C1..C11, Structural).
        #[arg(long)]
        kind: Option<ConfigKind>,
    },
    /// Discharging ledger and final-charge report.
    Discharge(Inputs),
    /// Color from lists by reduction and extension.
    Color {
        graph: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value = "2distance")]
        mode: Mode,
        /// Lists JSON; defaults to the same smallest admissible list everywhere.
        #[arg(long)]
        lists: Option<PathBuf>,
        /// Write the coloring JSON array here.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Leave the trace out of the report.
        #[arg(long)]
        no_trace: bool,
    },
    /// Re-check a coloring file.
    Verify {
        graph: PathBuf,
        coloring: PathBuf,
        #[arg(long, default_value = "2distance")]
        mode: Mode,
        #[arg(long)]
        lists: Option<PathBuf>,
    },
    /// Exact chromatic number of the square, and list colorability if lists are given.
    Oracle {
        graph: PathBuf,
        #[arg(long, default_value = "2distance")]
        mode: Mode,
        #[arg(long)]
        lists: Option<PathBuf>,
    },
    /// Write certified instances, gadgets or random lists.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
}

#[derive(Args)]
struct Inputs {
    #[arg(required = true)]
    graphs: Vec<PathBuf>,
}

#[derive(Args)]
struct SeedArg {
    /// Overridden by the SQC_SEED environment variable.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SeedArg {
    fn value(&self) -> CliResult<u64> {
        match std::env::var("SQC_SEED") {
            Ok(s) => s.trim().parse().map_err(|_| CliError::Parse(format!("SQC_SEED: bad seed `{s}`"))),
            Err(_) => Ok(self.seed),
        }
    }
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random graphs with maximum degree `delta` and certified mad below the bound.
    Sparse {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value = "3/1")]
        mad_bound: Rational,
        #[command(flatten)]
        seed: SeedArg,
        /// Number of instances; instance i uses seed + i.
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Edge-list path for one instance, or a directory when count > 1.
        #[arg(long)]
        output: PathBuf,
    },
    /// A gadget graph plus its role map (written next to it as `.roles.json`).
    Gadget {
        kind: GadgetKind,
        #[arg(long, default_value_t = 17)]
        k: usize,
        #[arg(long)]
        output: PathBuf,
    },
    /// Random lists for a graph.
    Lists {
        graph: PathBuf,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        universe: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        output: PathBuf,
    },
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> CliResult<Graph> {
    Graph::parse_edge_list(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_lists(path: &Path, n: usize) -> CliResult<ListAssignment> {
    ListAssignment::from_json(&read(path)?, n).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Runs `f` on every input, in parallel with `jobs` threads. A single input
/// yields its report directly, several yield an array of `{file, report}`.
fn per_file<F>(inputs: &Inputs, jobs: usize, f: F) -> CliResult<Value>
where
    F: Fn(&Graph) -> CliResult<Value> + Sync,
{
    let run = |p: &PathBuf| load_graph(p).and_then(|g| f(&g));
    if let [single] = inputs.graphs.as_slice() {
        return run(single);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Io(e.to_string()))?;
    let results: Vec<CliResult<Value>> = pool.install(|| inputs.graphs.par_iter().map(run).collect());
    let mut out = Vec::new();
    for (p, r) in inputs.graphs.iter().zip(results) {
        out.push(json!({ "file": p.display().to_string(), "report": r? }));
    }
    Ok(Value::Array(out))
}

fn cmd_mad(g: &Graph) -> CliResult<Value> {
    let cert = mad_exact(g)?;
    Ok(json!({ "mad": cert.value, "witness": cert.witness }))
}

fn cmd_girth(g: &Graph) -> CliResult<Value> {
    let girth = match g.girth() {
        Girth::Finite(l) => json!(l),
        Girth::Infinite => Value::Null,
    };
    Ok(json!({ "girth": girth }))
}

fn cmd_classify(g: &Graph) -> CliResult<Value> {
    let cls = classify_vertices(g);
    let h = support_graph(g, &cls);
    Ok(json!({
        "classification": to_value(&ClassificationReport::from(&cls)),
        "support_components": to_value(&analyze_components(&h, &cls)),
    }))
}

fn cmd_detect(g: &Graph, k: Option<usize>, any: bool, kind: Option<ConfigKind>) -> CliResult<Value> {
    let k = KParameter::for_graph(g, k)?;
    let matches = if any {
        detect_any(g, k)?.into_iter().collect()
    } else {
        let kinds = kind.map_or(ConfigKind::ALL.to_vec(), |kd| vec![kd]);
        let mut all = Vec::new();
        for kd in kinds {
            all.extend(detect(g, k, kd)?);
        }
        all
    };
    Ok(json!({ "k": k.get(), "matches": to_value(&matches) }))
}

fn cmd_discharge(g: &Graph) -> CliResult<Value> {
    let cls = classify_vertices(g);
    let h = support_graph(g, &cls);
    let (cs, report) = discharge(g, &cls, &h);
    Ok(json!({ "ok": report.ok(), "report": to_value(&report), "charges": to_value(&cs) }))
}

fn run(cli: Cli) -> CliResult<(Value, String)> {
    let jobs = cli.jobs;
    match cli.command {
        Command::Mad(inputs) => Ok((per_file(&inputs, jobs, cmd_mad)?, "mad computed".into())),
        Command::Girth(inputs) => Ok((per_file(&inputs, jobs, cmd_girth)?, "girth computed".into())),
        Command::Square { graph, output } => {
            let sq = load_graph(&graph)?.square();
            if let Some(out) = output {
                write(&out, &sq.to_edge_list())?;
            }
            let summary = format!("square has {} vertices and {} edges", sq.n(), sq.m());
            Ok((json!({ "n": sq.n(), "m": sq.m(), "max_degree": sq.max_degree(), "edges": sq.edges() }), summary))
        }
        Command::Classify(inputs) => Ok((per_file(&inputs, jobs, cmd_classify)?, "classified".into())),
        Command::Detect { inputs, k, any, kind } => {
            let v = per_file(&inputs, jobs, |g| cmd_detect(g, k, any, kind))?;
            Ok((v, "detection done".into()))
        }
        Command::Discharge(inputs) => Ok((per_file(&inputs, jobs, cmd_discharge)?, "discharged".into())),
        Command::Color { graph, k, mode, lists, output, no_trace } => {
            let g = load_graph(&graph)?;
            let k = KParameter::for_graph(&g, k)?;
            let la = match lists {
                Some(p) => load_lists(&p, g.n())?,
                None => ListAssignment::uniform(g.n(), 0..mode.min_list_size(k.get()) as u32),
            };
            let out = color(&g, &la, k, mode)?;
            if let Some(p) = output {
                write(&p, &serde_json::to_string(&out.coloring).expect("coloring serializes"))?;
            }
            let summary = format!(
                "colored {} vertices in {} reduction steps ({} fallback)",
                g.n(),
                out.trace.steps.len(),
                out.trace.fallback_steps()
            );
            let mut report = json!({ "k": k.get(), "mode": mode, "coloring": out.coloring });
            if !no_trace {
                report["trace"] = to_value(&out.trace);
            }
            Ok((report, summary))
        }
        Command::Verify { graph, coloring, mode, lists } => {
            let g = load_graph(&graph)?;
            let c: Coloring = serde_json::from_str(&read(&coloring)?)
                .map_err(|e| CliError::Parse(format!("{}: {e}", coloring.display())))?;
            if c.len() != g.n() {
                return Err(CliError::Parse(format!("coloring has {} entries for {} vertices", c.len(), g.n())));
            }
            let la = lists.map(|p| load_lists(&p, g.n())).transpose()?;
            let check = check_coloring(&g, &c, la.as_ref(), mode);
            let report = to_value(&check);
            if check.valid {
                Ok((report, "coloring is valid".into()))
            } else {
                Err(CliError::Verification {
                    message: format!("{} violations", check.violations.len()),
                    report,
                })
            }
        }
        Command::Oracle { graph, mode, lists } => {
            let g = load_graph(&graph)?;
            let mut report = json!({ "chi2": chi2_exact(&g)? });
            if let Some(p) = lists {
                let la = load_lists(&p, g.n())?;
                report["list_coloring"] = to_value(&list_color_exact(&g, &la, mode)?);
            }
            Ok((report, "oracle done".into()))
        }
        Command::Gen { what } => run_gen(what, jobs),
    }
}

fn run_gen(what: GenCommand, jobs: usize) -> CliResult<(Value, String)> {
    match what {
        GenCommand::Sparse { n, delta, mad_bound, seed, count, output } => {
            let seed = seed.value()?;
            let make = |i: u64| -> CliResult<Value> {
                let s = seed + i;
                let g = gen_sparse(&GenSpec { n, delta, seed: s, mad_bound: mad_bound.clone() })?;
                let path = if count == 1 { output.clone() } else { output.join(format!("sparse_{s}.edges")) };
                write(&path, &g.to_edge_list())?;
                let mad = mad_exact(&g)?.value;
                Ok(json!({ "path": path.display().to_string(), "seed": s, "n": g.n(), "m": g.m(), "max_degree": g.max_degree(), "mad": mad }))
            };
            if count > 1 {
                fs::create_dir_all(&output).map_err(|e| CliError::Io(format!("{}: {e}", output.display())))?;
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .map_err(|e| CliError::Io(e.to_string()))?;
            let results: Vec<CliResult<Value>> = pool.install(|| (0..count).into_par_iter().map(make).collect());
            let instances = results.into_iter().collect::<CliResult<Vec<_>>>()?;
            Ok((json!({ "instances": instances }), format!("wrote {count} certified instances")))
        }
        GenCommand::Gadget { kind, k, output } => {
            let gad = gen_gadget(kind, k)?;
            write(&output, &gad.graph.to_edge_list())?;
            let roles_path = output.with_extension("roles.json");
            write(&roles_path, &serde_json::to_string_pretty(&gad.roles).expect("roles serialize"))?;
            let report = json!({
                "path": output.display().to_string(),
                "roles_path": roles_path.display().to_string(),
                "n": gad.graph.n(),
                "m": gad.graph.m(),
                "roles": gad.roles,
            });
            Ok((report, format!("wrote {kind} gadget")))
        }
        GenCommand::Lists { graph, size, universe, seed, output } => {
            let g = load_graph(&graph)?;
            let la = random_lists(seed.value()?, g.n(), size, universe)?;
            write(&output, &la.to_json())?;
            Ok((json!({ "path": output.display().to_string(), "n": g.n(), "size": size }), "wrote lists".into()))
        }
    }
}

/// Prints a report; a closed stdout (e.g. piped into `head`) is not an error.
fn emit(report: &Value) {
    let text = serde_json::to_string_pretty(report).expect("report serializes");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok((report, summary)) => {
            emit(&report);
            eprintln!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::NoReducible { report, .. } | CliError::Verification { report, .. } = &e {
                emit(report);
            }
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
