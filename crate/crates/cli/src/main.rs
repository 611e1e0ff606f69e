//! Thin command-line surface binding scenario files and built-in fixtures to
//! the analysis and simulation operations, emitting machine-readable reports.
//!
//! Exit codes: 0 on success (including a Proceed decision), 2 when a protocol
//! run aborts, 1 on configuration errors.

mod report;
mod scenario;

use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use dqis_core::attack::{violation_under_attack, ViolationSample};
use dqis_core::bell::{degenerate_signatures, lr_bound, quantum_value, BellOperator};
use dqis_core::dqis::{check_divergence, encode, run_teleportation, CodeSpace, Secret, TeleportConfig};
use dqis_core::fixtures::{cluster4, fiveq, ghz_negative, reproduce_tables, shor, steane};
use dqis_core::graph::{canonical_state, generators, linear_cluster, Graph};
use dqis_core::harness::{run_protocol, transcript_summary, Announcer, Decision, ScenarioConfig};
use dqis_core::pauli::PauliString;

use report::{OutputTarget, Report};
use scenario::ScenarioFile;

const VALUE_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "dqis", version, about = "Dual quantum information splitting toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output target: `json` (stdout), `csv` (stdout, where supported), or a
    /// file path (format chosen by extension, JSON by default).
    #[arg(long, global = true, default_value = "json")]
    out: String,
}

#[derive(Subcommand)]
enum Command {
    /// Graph-state construction: generators, canonical state, expectations.
    Graph(GraphArgs),
    /// Bell operators: local-realist bounds and quantum values.
    Bell(SelectorArgs),
    /// Bell-degenerate signature enumeration.
    Degeneracy(SelectorArgs),
    /// Divergence check and exhaustive teleportation run.
    Dqis(DqisArgs),
    /// Eavesdropping sweep over the interaction angle.
    Attack(AttackArgs),
    /// Full multi-party protocol run with the Bell-test phase.
    Protocol(ProtocolArgs),
}

#[derive(Args)]
struct GraphArgs {
    /// Path-graph shortcut: number of vertices.
    #[arg(long, conflicts_with = "file")]
    cluster: Option<usize>,
    /// Graph JSON file: `{"n": 4, "edges": [[1,2], ...]}`.
    #[arg(long)]
    file: Option<String>,
}

#[derive(Args)]
struct SelectorArgs {
    /// Built-in fixture: cluster4, fiveq, steane, shor.
    #[arg(long)]
    fixture: Option<String>,
    /// Operator JSON file: `{"generators": [...], "recipe": [[...]], "terms": [...]?}`.
    #[arg(long, conflicts_with = "fixture")]
    file: Option<String>,
}

#[derive(Args)]
struct DqisArgs {
    /// Built-in scenario: cluster4, fiveq, fiveq_tables, ghz_negative.
    #[arg(long, default_value = "cluster4")]
    scenario: String,
    /// Secret amplitudes as re,im,re,im (defaults to a fixed probe).
    #[arg(long)]
    secret: Option<String>,
    /// Also reproduce the tabulated branch tables.
    #[arg(long)]
    tables: bool,
}

#[derive(Args)]
struct AttackArgs {
    /// Single interaction angle in radians.
    #[arg(long)]
    theta: Option<f64>,
    /// Number of grid points over [0, pi/2] when no single angle is given.
    #[arg(long, default_value_t = 17)]
    grid: usize,
    /// Secret amplitudes as re,im,re,im.
    #[arg(long)]
    secret: Option<String>,
}

#[derive(Args)]
struct ProtocolArgs {
    /// Scenario id (cluster4 or fiveq) or a scenario JSON file path.
    #[arg(long, default_value = "cluster4")]
    scenario: String,
    /// Number of distributed copies N.
    #[arg(long, default_value_t = 1025)]
    n: usize,
    /// Attack angle applied to every copy (fiveq only).
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Decision threshold (defaults to the midpoint of the bound and the maximum).
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long, default_value = "alice")]
    announcer: String,
    /// Secret amplitudes as re,im,re,im.
    #[arg(long)]
    secret: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) =>
        {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let target = match OutputTarget::parse(&cli.out) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match dispatch(cli.command, &target) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command, target: &OutputTarget) -> Result<ExitCode> {
    match command {
        Command::Graph(args) => cmd_graph(args, target),
        Command::Bell(args) => cmd_bell(args, target),
        Command::Degeneracy(args) => cmd_degeneracy(args, target),
        Command::Dqis(args) => cmd_dqis(args, target),
        Command::Attack(args) => cmd_attack(args, target),
        Command::Protocol(args) => cmd_protocol(args, target),
    }
}

fn parse_secret(spec: &Option<String>) -> Result<Secret> {
    match spec {
        None => Ok(Secret::qubit(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8))?),
        Some(s) => {
            let parts: Vec<f64> = s
                .split(',')
                .map(|p| p.trim().parse::<f64>().context("secret amplitudes must be numbers"))
                .collect::<Result<_>>()?;
            if !parts.len().is_multiple_of(2) || parts.is_empty() {
                bail!("secret must be re,im pairs");
            }
            let amps: Vec<Complex64> = parts
                .chunks(2)
                .map(|c| Complex64::new(c[0], c[1]))
                .collect();
            Ok(Secret::new(amps)?)
        }
    }
}

fn cmd_graph(args: GraphArgs, target: &OutputTarget) -> Result<ExitCode> {
    let graph: Graph = match (&args.cluster, &args.file) {
        (Some(n), None) => linear_cluster(*n)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            serde_json::from_str(&text).context("parsing graph JSON")?
        }
        _ => linear_cluster(4)?,
    };
    let gens = generators(&graph);
    let state = canonical_state(&graph)?;
    let expectations: Vec<serde_json::Value> = gens
        .iter()
        .map(|g| {
            let v = state.expectation(g)?;
            Ok(json!({"generator": g.to_string(), "value": v, "tolerance": VALUE_TOL}))
        })
        .collect::<Result<_>>()?;
    let report = Report::new(
        "graph",
        json!({"graph": graph}),
        json!({
            "generators": gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "canonical_state": state.amplitude_records(),
            "generator_expectations": expectations,
        }),
    );
    target.write_json(&report)?;
    Ok(ExitCode::SUCCESS)
}

struct NamedOperator {
    name: String,
    bell: BellOperator,
    gens: Vec<PauliString>,
    /// States expected to reach the maximum, with labels.
    witnesses: Vec<(String, dqis_core::state::StateVector)>,
    note: Option<String>,
}

fn fixture_operators(fixture: &str) -> Result<Vec<NamedOperator>> {
    let equal = Secret::qubit(
        Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
    )?;
    let ops = match fixture {
        "cluster4" => vec![
            NamedOperator {
                name: "cluster4_b1".into(),
                bell: cluster4::bell_b1(),
                gens: cluster4::graph_generators(),
                witnesses: vec![
                    ("0000".into(), cluster4::state("0000")),
                    ("1110".into(), cluster4::state("1110")),
                ],
                note: None,
            },
            NamedOperator {
                name: "cluster4_b2".into(),
                bell: cluster4::bell_b2(),
                gens: cluster4::graph_generators(),
                witnesses: vec![
                    ("0000".into(), cluster4::state("0000")),
                    ("0101".into(), cluster4::state("0101")),
                ],
                note: None,
            },
        ],
        "fiveq" => vec![NamedOperator {
            name: "fiveq".into(),
            bell: fiveq::bell(),
            gens: fiveq::code_generators(),
            witnesses: vec![
                ("codeword0".into(), fiveq::zero_codeword()),
                ("codeword1".into(), fiveq::one_codeword()),
                (
                    "equal superposition".into(),
                    encode(&equal, &fiveq::code_space())?,
                ),
            ],
            note: Some(
                "codeword1 is the Y1X2 flip of codeword0; the all-X flip anticommutes \
                 with the fourth generator and does not reach the maximum"
                    .into(),
            ),
        }],
        "steane" => vec![NamedOperator {
            name: "steane".into(),
            bell: steane::bell(),
            gens: steane::code_generators(),
            witnesses: vec![
                ("codeword0".into(), steane::zero_codeword()),
                (
                    "equal superposition".into(),
                    encode(&equal, &steane::code_space())?,
                ),
            ],
            note: None,
        }],
        "shor" => vec![NamedOperator {
            name: "shor".into(),
            bell: shor::bell(),
            gens: shor::code_generators(),
            witnesses: vec![
                ("codeword0".into(), shor::zero_codeword()),
                (
                    "equal superposition".into(),
                    encode(&equal, &shor::code_space())?,
                ),
            ],
            note: None,
        }],
        other => bail!("unknown fixture `{other}` (expected cluster4, fiveq, steane or shor)"),
    };
    Ok(ops)
}

fn load_operator_file(path: &str) -> Result<Vec<NamedOperator>> {
    #[derive(serde::Deserialize)]
    struct OperatorFile {
        generators: Vec<PauliString>,
        /// 1-based generator indices per term.
        recipe: Vec<Vec<usize>>,
        /// Optional expected terms for cross-checking.
        terms: Option<Vec<PauliString>>,
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let file: OperatorFile = serde_json::from_str(&text).context("parsing operator JSON")?;
    let recipe: Vec<Vec<usize>> = file
        .recipe
        .iter()
        .map(|row| {
            row.iter()
                .map(|&i| {
                    i.checked_sub(1)
                        .ok_or_else(|| anyhow!("recipe indices are 1-based"))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let bell = dqis_core::bell::build_bell(&file.generators, &recipe)?;
    if let Some(expected) = &file.terms {
        if expected != bell.terms() {
            bail!(
                "terms cross-check failed: built {:?}, file lists {:?}",
                bell.terms().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                expected.iter().map(|t| t.to_string()).collect::<Vec<_>>()
            );
        }
    }
    Ok(vec![NamedOperator {
        name: path.to_string(),
        bell,
        gens: file.generators,
        witnesses: Vec::new(),
        note: None,
    }])
}

fn selected_operators(args: &SelectorArgs) -> Result<Vec<NamedOperator>> {
    match (&args.fixture, &args.file) {
        (_, Some(path)) => load_operator_file(path),
        (Some(fixture), None) => fixture_operators(fixture),
        (None, None) => fixture_operators("cluster4"),
    }
}

fn cmd_bell(args: SelectorArgs, target: &OutputTarget) -> Result<ExitCode> {
    let inputs = json!({"fixture": args.fixture, "file": args.file});
    let mut entries = Vec::new();
    for op in selected_operators(&args)? {
        let bound = lr_bound(&op.bell)?;
        let witnesses: Vec<serde_json::Value> = op
            .witnesses
            .iter()
            .map(|(label, state)| {
                let v = quantum_value(&op.bell, state)?;
                Ok(json!({"state": label, "value": v, "tolerance": VALUE_TOL}))
            })
            .collect::<Result<_>>()?;
        entries.push(json!({
            "operator": op.name,
            "terms": op.bell.terms().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "m": op.bell.m(),
            "q": bound.q,
            "lr_bound": bound.bound,
            "quantum_maximum": op.bell.m(),
            "witness_values": witnesses,
            "note": op.note,
        }));
    }
    let report = Report::new("bell", inputs, json!({"operators": entries}));
    target.write_json(&report)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_degeneracy(args: SelectorArgs, target: &OutputTarget) -> Result<ExitCode> {
    let inputs = json!({"fixture": args.fixture, "file": args.file});
    let mut entries = Vec::new();
    for op in selected_operators(&args)? {
        let degen = degenerate_signatures(&op.bell, &op.gens)?;
        let per_signature_dim = degen.subspace_dim() / degen.signatures.len();
        entries.push(json!({
            "operator": op.name,
            "generator_count": op.gens.len(),
            "independent_terms": degen.rank,
            "signatures": degen.signatures.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "signature_count": degen.signatures.len(),
            "eigenspace_dim_per_signature": per_signature_dim,
            "subspace_dim": degen.subspace_dim(),
            "dimension_formula": format!("2^({} - {})", op.bell.n(), degen.rank),
        }));
    }
    let report = Report::new("degeneracy", inputs, json!({"operators": entries}));
    target.write_json(&report)?;
    Ok(ExitCode::SUCCESS)
}

fn scenario_by_name(name: &str) -> Result<(CodeSpace, TeleportConfig, Option<Secret>)> {
    Ok(match name {
        "cluster4" => (cluster4::code_space(), cluster4::teleport_config(), None),
        "fiveq" => (fiveq::code_space(), fiveq::teleport_config(), None),
        "fiveq_tables" => (
            fiveq::branch_table_code_space(),
            fiveq::branch_table_config(),
            None,
        ),
        "ghz_negative" => (
            ghz_negative::code_space(),
            ghz_negative::teleport_config(),
            None,
        ),
        path => {
            let file = ScenarioFile::load(path)?;
            (file.code_space()?, file.config()?, file.secret()?)
        }
    })
}

fn cmd_dqis(args: DqisArgs, target: &OutputTarget) -> Result<ExitCode> {
    let (code, cfg, file_secret) = scenario_by_name(&args.scenario)?;
    let secret = match (&args.secret, file_secret) {
        (None, Some(s)) => s,
        (spec, _) => parse_secret(spec)?,
    };
    let report = check_divergence(&code, &cfg)?;
    let diagnostics: Vec<serde_json::Value> = report
        .outcomes
        .iter()
        .filter(|oc| !(oc.equal_norms && oc.orthogonal))
        .map(|oc| {
            json!({
                "outcome": oc.outcome,
                "norms": oc.norms,
                "gram": oc.gram,
                "equal_norms": oc.equal_norms,
                "orthogonal": oc.orthogonal,
            })
        })
        .collect();
    let mut results = json!({
        "divergent": report.ok,
        "outcome_count": report.outcomes.len(),
        "tolerance": dqis_core::dqis::DIVERGENCE_TOL,
        "failing_outcomes": diagnostics,
    });
    if report.ok {
        let recovery = report.recovery.as_ref().expect("recovery when divergent");
        let branches = run_teleportation(&secret, &code, &cfg, recovery)?;
        let min_fidelity = branches.iter().map(|b| b.fidelity).fold(f64::INFINITY, f64::min);
        let rows: Vec<serde_json::Value> = branches
            .iter()
            .map(|b| {
                json!({
                    "outcome": b.outcome,
                    "probability": b.probability,
                    "fidelity": b.fidelity,
                    "recovered_state": b.rex_state.amplitude_records(),
                })
            })
            .collect();
        results["branches"] = json!(rows);
        results["min_fidelity"] = json!({"value": min_fidelity, "tolerance": 1e-9});
    }
    if args.tables {
        results["tables"] = serde_json::to_value(reproduce_tables()?)?;
    }
    let report = Report::new(
        "dqis",
        json!({"scenario": args.scenario, "secret": secret.amplitudes().iter().map(|a| (a.re, a.im)).collect::<Vec<_>>()}),
        results,
    );
    target.write_json(&report)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_attack(args: AttackArgs, target: &OutputTarget) -> Result<ExitCode> {
    let secret = parse_secret(&args.secret)?;
    let thetas: Vec<f64> = match args.theta {
        Some(t) => vec![t],
        None => {
            let k = args.grid.max(2);
            (0..k)
                .map(|i| i as f64 * std::f64::consts::FRAC_PI_2 / (k - 1) as f64)
                .collect()
        }
    };
    let rows = violation_under_attack(&secret, &fiveq::code_space(), &fiveq::bell(), &thetas)?;
    if target.wants_csv() {
        let mut lines = vec![ViolationSample::csv_header(fiveq::bell().m())];
        lines.extend(rows.iter().map(|r| r.csv_row()));
        target.write_text(&(lines.join("\n") + "\n"))?;
        return Ok(ExitCode::SUCCESS);
    }
    let results: Vec<serde_json::Value> = rows
        .iter()
        .map(|r| {
            json!({
                "theta": r.theta,
                "value": r.value,
                "reference": 3.0 + 2.0 * r.theta.cos(),
                "tolerance": VALUE_TOL,
                "term_expectations": r.term_expectations,
            })
        })
        .collect();
    let report = Report::new(
        "attack",
        json!({"thetas": thetas, "secret": secret.amplitudes().iter().map(|a| (a.re, a.im)).collect::<Vec<_>>()}),
        json!({"sweep": results}),
    );
    target.write_json(&report)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_protocol(args: ProtocolArgs, target: &OutputTarget) -> Result<ExitCode> {
    let scenario = args
        .scenario
        .parse()
        .map_err(|e: dqis_core::Error| anyhow!(e))?;
    let announcer = match args.announcer.as_str() {
        "alice" => Announcer::Alice,
        "dolly" => Announcer::Dolly,
        other => bail!("unknown announcer `{other}`"),
    };
    let cfg = ScenarioConfig {
        scenario,
        copies: args.n,
        threshold: args.threshold,
        seed: args.seed,
        attack_theta: args.theta,
        announcer,
    };
    let secret = parse_secret(&args.secret)?;
    let transcript = run_protocol(&cfg, &secret)?;
    eprintln!("{}", transcript_summary(&transcript));
    let report = Report::new(
        "protocol",
        serde_json::to_value(&cfg)?,
        serde_json::to_value(&transcript)?,
    );
    target.write_json(&report)?;
    Ok(match transcript.decision {
        Decision::Proceed => ExitCode::SUCCESS,
        Decision::Abort { .. } => ExitCode::from(2),
    })
}
