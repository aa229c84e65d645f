use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use glider_core::embedding::{describe_collisions, embedding_element_count_formula, Embedding, EmbeddingSpec};
use glider_core::glider::{ClassifyOutput, GliderSpec, Verdict, VerifyOutput, DEFAULT_DEGREE_BOUND};
use glider_core::orbits::{hasse, orbit_labels, parse_coeffs, reachability, EmpiricalConfig};
use glider_core::roots::{AlgebraKind, Family, RootSystem};
use glider_core::Error;
use serde_json::{json, Value};

const DEFAULT_SEED: u64 = 20240601;

#[derive(Parser)]
#[command(name = "gliders", version, about = "Verma gliders, embedding elements and nilpotent orbits")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit JSON (the default).
    #[arg(long, global = true)]
    json: bool,

    /// Emit Graphviz DOT where supported.
    #[arg(long, global = true)]
    dot: bool,

    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_BOUND)]
    degree_bound: usize,

    /// Comma-separated coefficient set for reachability, e.g. "-1,0,1".
    #[arg(long, global = true, allow_hyphen_values = true)]
    coeffs: Option<String>,

    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Sample count when enumeration is too large.
    #[arg(long, global = true, default_value_t = 100_000)]
    samples: usize,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Root data of a classical algebra.
    Roots { family: Family, rank: usize },
    /// Condition (1) and embedding elements.
    Embed {
        #[command(subcommand)]
        action: EmbedAction,
    },
    /// Verma glider specs.
    Glider {
        #[command(subcommand)]
        action: GliderAction,
    },
    /// Nilpotent orbit labels and reachability.
    Orbits {
        #[command(subcommand)]
        action: OrbitAction,
    },
}

#[derive(Args)]
struct EmbedTarget {
    family: Option<Family>,
    n: Option<usize>,
    m: Option<usize>,
    #[arg(long)]
    diagonal_sl2_so4: bool,
    /// JSON embedding description.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum EmbedAction {
    Check(EmbedTarget),
    Elements(EmbedTarget),
}

#[derive(Subcommand)]
enum GliderAction {
    Verify { file: PathBuf },
    Classify { file: PathBuf },
}

#[derive(Subcommand)]
enum OrbitAction {
    List { family: Family, rank: usize },
    Hasse { family: Family, rank: usize },
    Reachable { family: Family, n: usize, m: usize },
}

enum Failure {
    Usage(String),
    Spec(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidRank { .. } | Error::RankOrder { .. } | Error::FamilyMismatch(..) | Error::InadmissibleLabel(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Spec(e.to_string()),
        }
    }
}

enum Output {
    Json { payload: Value, diagnostics: Vec<String> },
    Text(String),
}

fn kind(family: Family, rank: usize) -> Result<AlgebraKind, Failure> {
    Ok(AlgebraKind::new(family, rank)?)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Spec(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Spec(format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable payload")
}

fn cmd_roots(family: Family, rank: usize) -> Result<Output, Failure> {
    let sys = RootSystem::build(kind(family, rank)?);
    let positive: Vec<Value> = sys
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(i, r)| json!({ "root": r, "name": r.describe(), "height": sys.height(i).to_string() }))
        .collect();
    let simple: Vec<Value> = sys.simple_roots().iter().map(|r| json!({ "root": r, "name": r.describe() })).collect();
    Ok(Output::Json {
        payload: json!({
            "algebra": sys.kind().name(),
            "rank": rank.to_string(),
            "positive_root_count": sys.positive_roots().len().to_string(),
            "simple_roots": simple,
            "positive_roots": positive,
            "rho": sys.rho(),
        }),
        diagnostics: vec![],
    })
}

fn embedding_from(t: &EmbedTarget) -> Result<Embedding, Failure> {
    if t.diagonal_sl2_so4 {
        return Ok(Embedding::diagonal_sl2_in_so4());
    }
    if let Some(path) = &t.file {
        let spec: EmbeddingSpec = read_json(path)?;
        return spec.build().map_err(|e| Failure::Spec(e.to_string()));
    }
    match (t.family, t.n, t.m) {
        (Some(f), Some(n), Some(m)) => Ok(Embedding::canonical_ranks(f, n, m)?),
        _ => Err(Failure::Usage("give FAMILY N M, --diagonal-sl2-so4 or --file".into())),
    }
}

fn cmd_embed(action: &EmbedAction) -> Result<Output, Failure> {
    match action {
        EmbedAction::Check(t) => {
            let e = embedding_from(t)?;
            let rep = e.check_condition_one();
            let diagnostics = if rep.holds { vec![] } else { vec![format!("collisions: {}", describe_collisions(&rep))] };
            Ok(Output::Json {
                payload: json!({ "embedding": e.describe(), "holds": rep.holds, "collisions": rep.collisions }),
                diagnostics,
            })
        }
        EmbedAction::Elements(t) => {
            let e = embedding_from(t)?;
            let elements = e.embedding_elements()?;
            let names: Vec<String> = elements.iter().map(|r| r.describe()).collect();
            let mut payload = json!({
                "embedding": e.describe(),
                "count": elements.len().to_string(),
                "elements": elements,
                "names": names,
            });
            let mut diagnostics = vec![];
            if let (Some(f), Some(n), Some(m), true) = (t.family, t.n, t.m, e.is_canonical()) {
                let formula = embedding_element_count_formula(f, n, m);
                payload["formula"] = json!(formula.to_string());
                payload["formula_agrees"] = json!(formula == elements.len());
                if formula != elements.len() {
                    diagnostics.push(format!("closed form gives {formula}, enumeration gives {}", elements.len()));
                }
            }
            Ok(Output::Json { payload, diagnostics })
        }
    }
}

fn cmd_glider(action: &GliderAction, bound: usize) -> Result<Output, Failure> {
    match action {
        GliderAction::Verify { file } => {
            let spec: GliderSpec = read_json(file)?;
            let g = spec.build().map_err(|e| Failure::Spec(e.to_string()))?;
            let report = g.verify(bound)?;
            let diagnostics = report.notes.clone();
            Ok(Output::Json { payload: to_value(&VerifyOutput { spec: &spec, degree_bound: bound, report }), diagnostics })
        }
        GliderAction::Classify { file } => {
            let spec: GliderSpec = read_json(file)?;
            let g = spec.build().map_err(|e| Failure::Spec(e.to_string()))?;
            let classification = g.classify()?;
            let witness = if g.len() == 2 && classification.verdict != Verdict::Irreducible {
                g.subfragment_witness(bound)?
            } else {
                None
            };
            let mut payload = to_value(&ClassifyOutput { spec: &spec, classification: classification.clone() });
            payload["subfragment_witness"] = to_value(&witness);
            Ok(Output::Json { payload, diagnostics: classification.reasons })
        }
    }
}

fn cmd_orbits(action: &OrbitAction, cli: &Cli) -> Result<Output, Failure> {
    match action {
        OrbitAction::List { family, rank } => {
            let labels = orbit_labels(kind(*family, *rank)?);
            let names: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
            Ok(Output::Json { payload: json!({ "labels": labels, "names": names }), diagnostics: vec![] })
        }
        OrbitAction::Hasse { family, rank } => {
            let poset = hasse(kind(*family, *rank)?);
            if cli.dot {
                return Ok(Output::Text(poset.to_dot()));
            }
            let names: Vec<String> = poset.labels.iter().map(|l| l.to_string()).collect();
            Ok(Output::Json { payload: json!({ "labels": poset.labels, "names": names, "covers": poset.covers }), diagnostics: vec![] })
        }
        OrbitAction::Reachable { family, n, m } => {
            let coeffs = match &cli.coeffs {
                Some(s) => parse_coeffs(s).map_err(|e| Failure::Usage(e.to_string()))?,
                None => EmpiricalConfig::default().coeffs,
            };
            let cfg = EmpiricalConfig { coeffs, samples: cli.samples, seed: cli.seed, ..Default::default() };
            let rep = reachability(*family, *n, *m, &cfg)?;
            let mut diagnostics = Vec::new();
            if !rep.unexpected.is_empty() {
                diagnostics.push(format!("observed beyond the prediction: {}", join(&rep.unexpected)));
            }
            if !rep.missing.is_empty() {
                diagnostics.push(format!("predicted but not observed: {}", join(&rep.missing)));
            }
            let mut payload = to_value(&rep);
            payload["seed"] = json!(cli.seed.to_string());
            payload["coeffs"] = json!(cfg.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>());
            Ok(Output::Json { payload, diagnostics })
        }
    }
}

fn join(v: &[glider_core::orbits::OrbitLabel]) -> String {
    v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Roots { family, rank } => cmd_roots(*family, *rank),
        Command::Embed { action } => cmd_embed(action),
        Command::Glider { action } => cmd_glider(action, cli.degree_bound),
        Command::Orbits { action } => cmd_orbits(action, cli),
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(status: &str, payload: Value, diagnostics: Vec<String>) {
    let doc = json!({ "status": status, "payload": payload, "diagnostics": diagnostics });
    out(&format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                out(&e.to_string());
                return ExitCode::SUCCESS;
            }
            emit("error", Value::Null, vec![e.to_string().trim().to_string()]);
            return ExitCode::from(1);
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("warning: {e}");
        }
    }
    match run(&cli) {
        Ok(Output::Json { payload, diagnostics }) => {
            emit("ok", payload, diagnostics);
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            out(&t);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            emit("error", Value::Null, vec![msg]);
            ExitCode::from(1)
        }
        Err(Failure::Spec(msg)) => {
            emit("error", Value::Null, vec![msg]);
            ExitCode::from(2)
        }
    }
}
