//! Command-line entry point for the classification engine.
//!
//! Every subcommand prints a JSON report on stdout (or to `--json-out`) and a
//! one-line human summary on stderr.  Reports are deterministic for a fixed
//! seed and inputs, except for the single `timestamp` field.  Exit codes:
//! `classify` encodes the verdict (0 constant, 1 log-star, 2 global,
//! 3 unknown); other subcommands exit 0 on success; usage errors exit 64 and
//! file errors 65.

use std::fs;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use lcl_core::decider::{classify, Class, SearchLimits};
use lcl_core::instance::{Instance, Topology};
use lcl_core::lba::{
    canonical_radius, canonical_solve, compile_pi, encode_good_input, lba_run, LbaMachine,
    Phi, RunResult,
};
use lcl_core::normalize::{
    block_geometry, encode_stage2_input, normalize_stage1, normalize_stage2, solve_stage2,
    stage2_output_count, PredecessorLcl,
};
use lcl_core::problem::LclProblem;
use lcl_core::sim::{simulate, synthesize};
use lcl_core::solve::solve_instance;
use lcl_core::types::TypeAutomaton;
use lcl_core::verify::verify_labeling;

#[derive(Parser)]
#[command(name = "lcl", version, about = "Decision engine for LCLs on labeled paths and cycles")]
struct Cli {
    /// Seed for all generated instances and search orderings.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads (reductions are deterministic regardless).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Search budget in visited nodes.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget_nodes: u64,
    /// Wall-clock budget in seconds.
    #[arg(long, global = true, default_value_t = 300)]
    budget_secs: u64,
    /// Write the JSON report to this path instead of stdout.
    #[arg(long, global = true)]
    json_out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InstanceArgs {
    /// Number of nodes.
    #[arg(long, default_value_t = 64)]
    n: usize,
    /// Topology: cycle or path.
    #[arg(long, default_value = "cycle")]
    topology: String,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a problem file as CONSTANT, LOGSTAR, GLOBAL, or UNKNOWN.
    Classify { problem: String },
    /// Solve one generated instance exactly (global brute-force solver).
    Solve {
        problem: String,
        #[command(flatten)]
        inst: InstanceArgs,
    },
    /// Classify, synthesize the matching algorithm, and run it on one
    /// generated instance.
    Simulate {
        problem: String,
        #[command(flatten)]
        inst: InstanceArgs,
    },
    /// Summarize the type automaton of a problem.
    Types { problem: String },
    /// Pump an input word to a target length without changing its type.
    Pump {
        problem: String,
        /// Comma-separated input labels.
        #[arg(long)]
        word: String,
        #[arg(long)]
        target: usize,
    },
    /// Compile a bounded-tape machine file into its path LCL.
    CompileLba { machine: String },
    /// Encode the halting execution of a machine as an input-labeled path.
    EncodeGoodInput {
        machine: String,
        /// Flag carried by the first node: a or b.
        #[arg(long, default_value = "a")]
        phi: String,
        /// Trailing empty nodes.
        #[arg(long, default_value_t = 8)]
        padding: usize,
    },
    /// Apply both normalization stages to a predecessor-window problem file.
    Normalize {
        problem: String,
        /// Also solve an encoded instance of this many source nodes.
        #[arg(long, default_value_t = 8)]
        check_n: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Help and version requests are not usage errors.
            use clap::error::ErrorKind::*;
            if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(64);
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                CliError::File(_) => 65,
                CliError::Engine(_) => 70,
            };
            ExitCode::from(code)
        }
    }
}

enum CliError {
    File(String),
    Engine(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::File(m) | CliError::Engine(m) => write!(f, "{m}"),
        }
    }
}

fn read_file(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::File(format!("{path}: {e}")))
}

fn engine<T>(r: lcl_core::error::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Engine(e.to_string()))
}

fn digest(value: &Value) -> String {
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(value).expect("serialization cannot fail"));
    format!("{:x}", h.finalize())
}

fn parse_topology(s: &str) -> Result<Topology, CliError> {
    match s {
        "cycle" => Ok(Topology::Cycle),
        "path" => Ok(Topology::Path),
        other => Err(CliError::Engine(format!("unknown topology {other:?}"))),
    }
}

fn parse_phi(s: &str) -> Result<Phi, CliError> {
    match s {
        "a" => Ok(Phi::A),
        "b" => Ok(Phi::B),
        other => Err(CliError::Engine(format!("flag must be a or b, got {other:?}"))),
    }
}

fn limits(cli: &Cli) -> SearchLimits {
    SearchLimits { max_checks: cli.budget_nodes, ..SearchLimits::default() }
}

/// Emits the report (stdout or --json-out) plus a stderr summary line.
fn emit(cli: &Cli, command: &str, report: Value, summary: &str) -> Result<(), CliError> {
    let body = json!({
        "command": command,
        "seed": cli.seed,
        "report": report,
        "digest": digest(&report),
        "timestamp": SystemTime::now().duration_since(UNIX_EPOCH).unwrap().as_secs(),
    });
    let text = serde_json::to_string_pretty(&body).expect("serialization cannot fail");
    match &cli.json_out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::File(format!("{path}: {e}")))?
        }
        None => println!("{text}"),
    }
    eprintln!("{summary}");
    Ok(())
}

fn class_name(c: Class) -> &'static str {
    match c {
        Class::Constant => "CONSTANT",
        Class::Logstar => "LOGSTAR",
        Class::Global => "GLOBAL",
        Class::Unknown => "UNKNOWN",
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    match &cli.command {
        Command::Classify { problem } => {
            let p = engine(LclProblem::from_json(&read_file(problem)?))?;
            let c = engine(classify(&p, &limits(cli)))?;
            let report = json!({
                "problem": p.name,
                "class": class_name(c.class),
                "pumping_constant": c.ell_pump,
                "unsolvable_small_instances": c.unsolvable.len(),
            });
            emit(cli, "classify", report, &format!("{}: {}", p.name, class_name(c.class)))?;
            Ok(ExitCode::from(match c.class {
                Class::Constant => 0,
                Class::Logstar => 1,
                Class::Global => 2,
                Class::Unknown => 3,
            }))
        }
        Command::Solve { problem, inst } => {
            let p = engine(LclProblem::from_json(&read_file(problem)?))?;
            let topo = parse_topology(&inst.topology)?;
            let instance = engine(Instance::generate(&p, topo, inst.n, cli.seed))?;
            let sol = engine(solve_instance(&p, &instance))?;
            let report = match &sol {
                Some(labeling) => {
                    let bad = engine(verify_labeling(&p, &instance, labeling))?;
                    json!({
                        "problem": p.name,
                        "n": inst.n,
                        "topology": inst.topology,
                        "solvable": true,
                        "outputs": labeling,
                        "violations": bad,
                    })
                }
                None => json!({
                    "problem": p.name,
                    "n": inst.n,
                    "topology": inst.topology,
                    "solvable": false,
                }),
            };
            let ok = sol.is_some();
            emit(cli, "solve", report, &format!("{}: solvable={}", p.name, ok))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate { problem, inst } => {
            let p = engine(LclProblem::from_json(&read_file(problem)?))?;
            let topo = parse_topology(&inst.topology)?;
            let c = engine(classify(&p, &limits(cli)))?;
            let alg = engine(synthesize(&p, &c))?;
            let instance = engine(Instance::generate(&p, topo, inst.n, cli.seed))?;
            let rep = engine(simulate(&p, &alg, &instance))?;
            let report = json!({
                "problem": p.name,
                "class": class_name(c.class),
                "n": inst.n,
                "topology": inst.topology,
                "radius": rep.radius,
                "outputs": rep.outputs,
                "violations": rep.violations,
            });
            let line = format!(
                "{}: class={} radius={} violations={}",
                p.name,
                class_name(c.class),
                rep.radius,
                rep.violations.len()
            );
            emit(cli, "simulate", report, &line)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Types { problem } => {
            let p = engine(LclProblem::from_json(&read_file(problem)?))?;
            let aut = engine(TypeAutomaton::build(&p))?;
            let report = json!({
                "problem": p.name,
                "states": aut.states.len(),
                "pumping_constant": aut.states.len(),
            });
            emit(cli, "types", report, &format!("{}: {} type states", p.name, aut.states.len()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Pump { problem, word, target } => {
            let p = engine(LclProblem::from_json(&read_file(problem)?))?;
            let aut = engine(TypeAutomaton::build(&p))?;
            let w: Vec<u16> = word
                .split(',')
                .map(|l| {
                    p.sigma_in
                        .lookup(l.trim())
                        .ok_or_else(|| CliError::Engine(format!("unknown input label {l:?}")))
                })
                .collect::<Result<_, _>>()?;
            let pumped = engine(aut.pump_to_length(&w, *target))?;
            let names: Vec<&str> =
                pumped.iter().map(|&l| p.sigma_in.name(l)).collect();
            let report = json!({
                "problem": p.name,
                "source_length": w.len(),
                "pumped_length": pumped.len(),
                "same_type": aut.state_of(&w) == aut.state_of(&pumped),
                "pumped": names,
            });
            emit(cli, "pump", report, &format!("{}: {} -> {} cells", p.name, w.len(), pumped.len()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CompileLba { machine } => {
            let m = engine(LbaMachine::from_json(&read_file(machine)?))?;
            let pi = engine(compile_pi(&m))?;
            let outs = pi.outputs();
            let names: Vec<String> = outs.iter().map(|&o| pi.output_name(o)).collect();
            let (trace, radius) = match engine(lba_run(&m, 1 << 22))? {
                RunResult::Halted(t) => {
                    let len = t.len();
                    (Some(len), Some(2 + (m.b + 1) * len))
                }
                RunResult::Looping(_) => (None, None),
            };
            let report = json!({
                "tape_bound": m.b,
                "states": m.state_names,
                "halts": trace.is_some(),
                "trace_length": trace,
                "solver_radius": radius,
                "output_label_count": outs.len(),
                "output_labels": names,
            });
            let line = format!(
                "B={} halts={} outputs={}",
                m.b,
                trace.is_some(),
                outs.len()
            );
            emit(cli, "compile-lba", report, &line)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::EncodeGoodInput { machine, phi, padding } => {
            let m = engine(LbaMachine::from_json(&read_file(machine)?))?;
            let pi = engine(compile_pi(&m))?;
            let phi = parse_phi(phi)?;
            let enc = engine(encode_good_input(&m, phi, *padding))?;
            let labels: Vec<String> = enc.iter().map(|&l| pi.input_name(l)).collect();
            let solver = engine(canonical_solve(&pi, &enc))?;
            let violations = pi.verify(&enc, &solver);
            let report = json!({
                "tape_bound": m.b,
                "length": enc.len(),
                "solver_radius": engine(canonical_radius(&m))?,
                "inputs": labels,
                "solver_violations": violations,
            });
            emit(cli, "encode-good-input", report, &format!("{} nodes", enc.len()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Normalize { problem, check_n } => {
            let p = engine(PredecessorLcl::from_json(&read_file(problem)?))?;
            let s1 = engine(normalize_stage1(&p))?;
            let norm = engine(normalize_stage2(&s1))?;
            let (a, gamma) = block_geometry(p.alpha);
            let mut check = json!(null);
            if *check_n > 0 {
                let inputs: Vec<u16> =
                    (0..*check_n as u16).map(|i| (i * 7 + cli.seed as u16) % p.alpha as u16).collect();
                let bits = encode_stage2_input(p.alpha, &inputs);
                let out = engine(solve_stage2(&s1, &p, &bits))?;
                let bad = engine(lcl_core::verify::verify_normalized(&norm, &bits, &out))?;
                check = json!({
                    "source_nodes": check_n,
                    "encoded_nodes": bits.len(),
                    "violations": bad,
                });
            }
            let report = json!({
                "problem": p.name,
                "alpha": p.alpha,
                "beta": p.beta,
                "stage1_outputs": s1.beta,
                "payload_bits": a,
                "block_length": gamma,
                "stage2_outputs": stage2_output_count(p.alpha, s1.beta),
                "normalized": serde_json::from_str::<Value>(&norm.to_json())
                    .expect("round-trip"),
                "encoded_check": check,
            });
            let line = format!(
                "{}: alpha={} beta={} -> gamma={} outputs={}",
                p.name,
                p.alpha,
                p.beta,
                gamma,
                stage2_output_count(p.alpha, s1.beta)
            );
            emit(cli, "normalize", report, &line)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
