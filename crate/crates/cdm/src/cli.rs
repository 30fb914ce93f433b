//! The `cdm` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use cdm_core::codec::{decode_labeled, decode_structured, encode};
use cdm_core::lemmas::{default_instances, parse_instances, Instance, LabConfig, LemmaId, Scale, Status};
use cdm_core::logic::{builtin, evaluate, parse_formula, solutions, Formula};
use cdm_core::subgroups::{enumerate_normal, frattini, iso_tag};
use cdm_core::width::{Width, WidthAlgebra};
use cdm_core::{Error, FiniteGroup, Graph, Params, StructuredGroup, System};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::export::{dot, system_from_json, system_json, SystemJson};
use crate::graph_file::GraphFile;
use crate::report::{run_timed, table_header, table_row, Envelope, ParamsEcho, ReportJson};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "cdm", version, about = "Graphs coded into finite groups and their complete systems")]
pub struct Cli {
    /// The odd prime of the dihedral vertex groups.
    #[arg(long, global = true, default_value_t = 3)]
    pub p: u32,
    /// The odd prime of the edge kernels.
    #[arg(long, global = true, default_value_t = 5)]
    pub q: u32,
    /// Largest group order for which normal subgroups are enumerated.
    #[arg(long, global = true, default_value_t = cdm_core::subgroups::DEFAULT_MAX_ORDER)]
    pub max_order: usize,
    /// Largest group order for which the full subgroup lattice is searched.
    #[arg(long, global = true, default_value_t = cdm_core::subgroups::DEFAULT_FRATTINI_GUARD)]
    pub frattini_guard: usize,
    /// Echoed in reports; no command currently samples.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the group of a graph and report its order and shape.
    Encode {
        graph: PathBuf,
        /// Number of extra C2 factors (overrides the file).
        #[arg(long)]
        c2: Option<usize>,
    },
    /// Read a graph back from a group (graph file) or a system export.
    Decode {
        input: PathBuf,
        /// Decode through the enumerated system instead of the coordinates.
        #[arg(long)]
        oracle: bool,
    },
    /// List the normal subgroups.
    Nsubs { graph: PathBuf },
    /// Vertex width of the C2 classes.
    Width {
        graph: PathBuf,
        /// Include classes of infinite width.
        #[arg(long)]
        all: bool,
    },
    /// Graph closure of a set of element ids.
    Gcl {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        elements: Vec<usize>,
    },
    /// The Frattini subgroup.
    Frattini { graph: PathBuf },
    /// Evaluate a formula over the system of a graph.
    Eval {
        graph: PathBuf,
        #[arg(short = 'f', long = "formula")]
        formula: PathBuf,
    },
    /// Run lemma verifiers.
    Verify {
        /// A lemma id or `all`.
        lemma: String,
        /// `small`, `full`, or `;`-separated instances such as `a-b;a,b+1`.
        #[arg(long, default_value = "small")]
        instances: String,
    },
    /// Export the system as JSON (default) or as a DOT class poset.
    Export {
        graph: PathBuf,
        #[arg(long)]
        dot: bool,
    },
}

/// Parses `args`, runs the command and returns the exit code: 0 success,
/// 1 verification failure, 2 usage or input error, 3 budget exceeded.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.text.as_bytes());
            if outcome.failed {
                1
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "{} {e}", e.prefix());
            e.exit_code()
        }
    }
}

struct Outcome {
    text: String,
    failed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, failed: false }
    }
}

fn params_echo(cli: &Cli) -> ParamsEcho {
    ParamsEcho {
        p: cli.p,
        q: cli.q,
        max_order: cli.max_order,
        frattini_guard: cli.frattini_guard,
        seed: cli.seed,
    }
}

fn envelope<T: Serialize>(cli: &Cli, command: &str, results: Vec<T>) -> String {
    let env = Envelope {
        command: command.into(),
        params: params_echo(cli),
        results,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("serializable");
    s.push('\n');
    s
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_graph(path: &Path) -> Result<GraphFile, CliError> {
    GraphFile::parse(&read(path)?)
}

fn group_of(cli: &Cli, file: &GraphFile) -> Result<StructuredGroup, CliError> {
    Ok(encode(&file.graph, file.c2, cli.p, cli.q)?)
}

fn system_of(cli: &Cli, file: &GraphFile) -> Result<System<StructuredGroup>, CliError> {
    let g = group_of(cli, file)?;
    let ns = enumerate_normal(&g, cli.max_order)?;
    Ok(System::build(g, cli.p, cli.q, ns)?)
}

/// A formula file holds either a formula or just the name of a builtin.
fn load_formula(cli: &Cli, path: &Path) -> Result<Formula, CliError> {
    let text = read(path)?;
    let body: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    if let [name] = body.as_slice() {
        if let Ok(f) = builtin(name, cli.p, cli.q) {
            return Ok(f);
        }
    }
    Ok(parse_formula(&text)?)
}

fn graph_output(cli: &Cli, command: &str, graph: Graph) -> String {
    let file = GraphFile { graph, c2: 0 };
    if cli.json {
        envelope(cli, command, vec![file.to_json()])
    } else {
        file.to_text()
    }
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    // Rejects bad primes before any command runs.
    Params::new::<&str>(cli.p, cli.q, &[], &[], &[])?;
    match &cli.command {
        Command::Encode { graph, c2 } => {
            let mut file = load_graph(graph)?;
            if let Some(k) = c2 {
                file.c2 = *k;
            }
            let g = group_of(cli, &file)?;
            let tag = iso_tag(&g, cli.p, cli.q);
            let params = g.params();
            let edges: Vec<String> = file.graph.edges().map(|(a, b)| format!("{a}-{b}")).collect();
            if cli.json {
                let r = json!({
                    "order": g.order(),
                    "iso_tag": tag.name(),
                    "vertices": params.vertices(),
                    "edges": edges,
                    "c2": file.c2,
                    "generators": g.generators(),
                });
                return Ok(Outcome::ok(envelope(cli, "encode", vec![r])));
            }
            Ok(Outcome::ok(format!(
                "order {}\niso_tag {tag}\nvertices {}\nedges {}\nc2 {}\n",
                g.order(),
                params.vertices().join(" "),
                edges.join(" "),
                file.c2
            )))
        }
        Command::Decode { input, oracle } => {
            let text = read(input)?;
            let value: Option<Value> = text
                .trim_start()
                .starts_with('{')
                .then(|| serde_json::from_str(&text).ok())
                .flatten();
            if let Some(v) = value.filter(|v| v.get("params").is_some()) {
                let doc: SystemJson = serde_json::from_value(v).map_err(|e| CliError::Parse {
                    line: 1,
                    msg: e.to_string(),
                })?;
                let (sys, _) = system_from_json(doc, cli.max_order)?;
                return Ok(Outcome::ok(graph_output(cli, "decode", decode_labeled(&sys)?)));
            }
            let file = GraphFile::parse(&text)?;
            let graph = if *oracle {
                decode_labeled(&system_of(cli, &file)?)?
            } else {
                decode_structured(&group_of(cli, &file)?)?
            };
            Ok(Outcome::ok(graph_output(cli, "decode", graph)))
        }
        Command::Nsubs { graph } => {
            let g = group_of(cli, &load_graph(graph)?)?;
            let ns = enumerate_normal(&g, cli.max_order)?;
            if cli.json {
                let rs: Vec<Value> = ns
                    .iter()
                    .map(|n| json!({"index": n.index, "order": n.order, "gens": n.gens}))
                    .collect();
                return Ok(Outcome::ok(envelope(cli, "nsubs", rs)));
            }
            Ok(Outcome::ok(ns.iter().map(|n| n.golden_line() + "\n").collect()))
        }
        Command::Width { graph, all } => {
            let sys = system_of(cli, &load_graph(graph)?)?;
            let alg = WidthAlgebra::new(&sys)?;
            let mut rows = Vec::new();
            for s in alg.c2_classes() {
                let r = alg.vertex_width(s)?;
                if r.width == Width::Infinite && !all {
                    continue;
                }
                let width = match r.width {
                    Width::Finite(n) => json!(n),
                    Width::Infinite => json!("inf"),
                };
                rows.push((s, width, r.witnesses));
            }
            if cli.json {
                let rs: Vec<Value> = rows
                    .into_iter()
                    .map(|(s, w, wit)| json!({"class": s, "width": w, "witnesses": wit}))
                    .collect();
                return Ok(Outcome::ok(envelope(cli, "width", rs)));
            }
            let text = rows
                .into_iter()
                .map(|(s, w, wit)| {
                    let w = w.as_u64().map_or("inf".to_string(), |n| n.to_string());
                    format!("class {s} width {w} witnesses {}\n", wit.join(","))
                })
                .collect();
            Ok(Outcome::ok(text))
        }
        Command::Gcl { graph, elements } => {
            let sys = system_of(cli, &load_graph(graph)?)?;
            if let Some(&bad) = elements.iter().find(|&&id| id >= sys.element_count()) {
                return Err(CliError::Input(format!(
                    "element id {bad} out of range (the system has {} elements)",
                    sys.element_count()
                )));
            }
            let alg = WidthAlgebra::new(&sys)?;
            let closure = alg.gcl(elements)?;
            let classes: Vec<usize> = closure.class_ids().collect();
            let g = sys.group();
            let keep: Vec<String> = (0..g.params().vertices().len())
                .filter(|&v| closure.contains_class(alg.vertex_class(v)))
                .map(|v| g.params().vertices()[v].clone())
                .collect();
            let induced = GraphFile {
                graph: Graph::from_params(g.params()).induced(&keep),
                c2: 0,
            };
            if cli.json {
                let r = json!({"classes": classes, "graph": induced.to_json()});
                return Ok(Outcome::ok(envelope(cli, "gcl", vec![r])));
            }
            let list: Vec<String> = classes.iter().map(usize::to_string).collect();
            Ok(Outcome::ok(format!("classes {}\n{}", list.join(","), induced.to_text())))
        }
        Command::Frattini { graph } => {
            let g = group_of(cli, &load_graph(graph)?)?;
            let phi = frattini(&g, cli.frattini_guard)?;
            if cli.json {
                let r = json!({"index": phi.index, "order": phi.order, "gens": phi.gens});
                return Ok(Outcome::ok(envelope(cli, "frattini", vec![r])));
            }
            Ok(Outcome::ok(phi.golden_line() + "\n"))
        }
        Command::Eval { graph, formula } => {
            let f = load_formula(cli, formula)?;
            let sys = system_of(cli, &load_graph(graph)?)?;
            let free = f.free_vars();
            if free.is_empty() {
                let value = evaluate(&sys, &f, &[])?;
                if cli.json {
                    return Ok(Outcome::ok(envelope(cli, "eval", vec![json!({"value": value})])));
                }
                return Ok(Outcome::ok(format!("{value}\n")));
            }
            let vars: Vec<&str> = free.iter().map(String::as_str).collect();
            let sols = solutions(&sys, &f, &vars)?;
            if cli.json {
                let r = json!({"free": free, "solutions": sols});
                return Ok(Outcome::ok(envelope(cli, "eval", vec![r])));
            }
            let mut text = format!("{} ({} solutions)\n", free.join(" "), sols.len());
            for t in sols {
                let cols: Vec<String> = t
                    .iter()
                    .map(|&id| {
                        let e = sys.element(id);
                        format!("{id}[class {} rep {}]", e.subgroup, e.rep)
                    })
                    .collect();
                text.push_str(&cols.join(" "));
                text.push('\n');
            }
            Ok(Outcome::ok(text))
        }
        Command::Verify { lemma, instances } => verify_command(cli, lemma, instances),
        Command::Export { graph, dot: as_dot } => {
            let file = load_graph(graph)?;
            let sys = system_of(cli, &file)?;
            if *as_dot {
                return Ok(Outcome::ok(dot(&sys)));
            }
            let mut s = serde_json::to_string_pretty(&system_json(&sys, &file)).expect("serializable");
            s.push('\n');
            Ok(Outcome::ok(s))
        }
    }
}

#[derive(Serialize)]
struct SkipJson {
    lemma_id: String,
    instance: String,
    status: &'static str,
    reason: String,
}

fn verify_command(cli: &Cli, lemma: &str, instances: &str) -> Result<Outcome, CliError> {
    let ids: Vec<LemmaId> = if lemma == "all" {
        LemmaId::ALL.to_vec()
    } else {
        vec![lemma.parse()?]
    };
    let custom: Option<Vec<Instance>> = match instances {
        "small" | "full" => None,
        text => Some(parse_instances(text)?),
    };
    let scale = if instances == "full" { Scale::Full } else { Scale::Small };
    let cfg = LabConfig {
        p: cli.p,
        q: cli.q,
        max_order: cli.max_order,
        frattini_guard: cli.frattini_guard,
    };
    let mut rows = Vec::new();
    let mut text = table_header() + "\n";
    let mut failed = false;
    for &id in &ids {
        let list = custom.clone().unwrap_or_else(|| default_instances(id, scale));
        for inst in list {
            match run_timed(id, &inst, &cfg) {
                Ok(r) => {
                    failed |= r.status == Status::Fail;
                    text.push_str(&table_row(&r));
                    text.push('\n');
                    rows.push(serde_json::to_value(ReportJson::from(&r)).expect("serializable"));
                }
                // Running every lemma on a user-chosen instance skips the
                // lemmas whose hypotheses exclude it.
                Err(Error::Contract(reason)) if lemma == "all" && custom.is_some() => {
                    text.push_str(&format!("{:<20} {:<14} SKIP   {reason}\n", id.name(), inst.to_string()));
                    let skip = SkipJson {
                        lemma_id: id.name().into(),
                        instance: inst.to_string(),
                        status: "SKIP",
                        reason,
                    };
                    rows.push(serde_json::to_value(skip).expect("serializable"));
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    if cli.json {
        text = envelope(cli, "verify", rows);
    }
    Ok(Outcome { text, failed })
}
