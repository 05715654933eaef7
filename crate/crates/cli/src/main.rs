//! `biovi` command-line front end.
//!
//! Exit codes: 0 success, 1 regression failure, 2 usage error, 3 I/O error.

mod ops;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use biovi_core::ledger::{summarize, Ledger};
use biovi_core::neuromatrix::GaussianParams;
use biovi_core::prekinematics::{divergences, run_sample_problem, ProblemMode, PROBLEM_IDS};
use biovi_core::quantity::constants::{self, NAMES};
use biovi_core::regression::{run_regression_suite, Selection};
use biovi_core::simulate::simulate_stream;
use biovi_core::{Error, EvalMode};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Core(Error::Format { .. }) => 3,
            CliError::Core(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "biovi",
    version,
    about = "Unit-aware consumption kinematics, pulse ledger and regression suite"
)]
struct Cli {
    /// How dimension mismatches inside formulas are handled.
    #[arg(long, global = true, env = "BIOVI_MODE", default_value = "checked", value_parser = parse_eval_mode)]
    eval_mode: EvalMode,
    #[command(subcommand)]
    command: Command,
}

fn parse_eval_mode(s: &str) -> Result<EvalMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_problem_mode(s: &str) -> Result<ProblemMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Print the physical constants.
    Constants {
        #[arg(long)]
        json: bool,
    },
    /// Evaluate one operation: `biovi eval <op> --name value ...`.
    Eval {
        /// List operations and their flags.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        json: bool,
        op: Option<String>,
        /// `--name value` pairs, plus `--deg` (default) or `--rad`.
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Solve a worked sample problem.
    Problem {
        id: String,
        #[arg(long, default_value = "strict-paper", value_parser = parse_problem_mode)]
        mode: ProblemMode,
        #[arg(long, conflicts_with = "json")]
        csv: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the regression suite; exits 1 if any entry fails.
    Regress {
        #[arg(long, default_value = "strict-paper", value_parser = parse_problem_mode)]
        mode: ProblemMode,
        #[arg(long)]
        json: bool,
        /// Comma-separated target ids; an empty value selects nothing.
        #[arg(long)]
        only: Option<String>,
    },
    /// Draw a seeded pulse stream into a ledger CSV.
    Simulate(SimulateArgs),
    /// Ledger files.
    #[command(subcommand)]
    Ledger(LedgerCommand),
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Means for grades 1,2,3.
    #[arg(long, default_value = "1,1,1")]
    mu: String,
    /// Standard deviations for grades 1,2,3.
    #[arg(long, default_value = "0.1,0.1,0.1")]
    sigma: String,
    /// Thresholds for grades 1,2,3.
    #[arg(long, default_value = "1,1,1")]
    theta: String,
    /// Ledger CSV output path.
    #[arg(long)]
    out: PathBuf,
    /// Summary output path; printed to stdout when absent.
    #[arg(long)]
    summary: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum LedgerFormat {
    Csv,
    Text,
}

#[derive(Subcommand)]
enum LedgerCommand {
    /// Write a ledger in CSV or text form.
    Export {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: LedgerFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a ledger CSV and write it in canonical form.
    Import {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Summarize a ledger against per-grade thresholds.
    Summarize {
        input: PathBuf,
        /// Thresholds for grades 1,2,3.
        #[arg(long, default_value = "0,0,0")]
        theta: String,
        #[arg(long)]
        json: bool,
    },
}

fn triple(s: &str, name: &str) -> Result<[f64; 3], CliError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().ok().filter(|v| v.is_finite()))
        .collect::<Option<_>>()
        .ok_or_else(|| CliError::Usage(format!("--{name}: `{s}` is not three numbers")))?;
    v.try_into()
        .map_err(|_| CliError::Usage(format!("--{name}: expected three comma-separated numbers")))
}

fn read(path: &Path) -> Result<fs::File, CliError> {
    fs::File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io(e.to_string())),
        _ => Ok(()),
    }
}

fn pretty(v: &impl serde::Serialize) -> Result<String, CliError> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Io(e.to_string()))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Constants { json } => {
            let pairs: Vec<_> = NAMES
                .iter()
                .map(|n| (*n, constants::constant(n).expect("listed constant")))
                .collect();
            if json {
                let map: serde_json::Map<_, _> = pairs
                    .iter()
                    .map(|(n, q)| (n.to_string(), json!(q)))
                    .collect();
                emit(&pretty(&map)?)?;
            } else {
                let text: String = pairs
                    .iter()
                    .map(|(n, q)| format!("{n:<5} {} {}\n", ops::number(q.magnitude()), q.dim()))
                    .collect();
                emit(&text)?;
            }
        }
        Command::Eval {
            list,
            json,
            op,
            args,
        } => {
            if list {
                let text: String = ops::OPS
                    .iter()
                    .map(|(n, f, d)| format!("{n:<20} {d}\n{:<20}   {f}\n", ""))
                    .collect();
                emit(&text)?;
                return Ok(0);
            }
            let op = op.ok_or_else(|| {
                CliError::Usage("missing operation; see `biovi eval --list`".into())
            })?;
            let params = ops::Params::parse(&args)?;
            let out = ops::run(&op, &params, cli.eval_mode)?;
            if json || params.json {
                emit(&pretty(&out.to_json(&op))?)?;
            } else {
                emit(&out.to_text())?;
            }
        }
        Command::Problem {
            id,
            mode,
            csv,
            json,
        } => {
            if !PROBLEM_IDS.contains(&id.as_str()) {
                return Err(CliError::Usage(format!(
                    "unknown problem `{id}`; known: {}",
                    PROBLEM_IDS.join(", ")
                )));
            }
            let r = run_sample_problem(&id, mode)?;
            if csv {
                let mut buf = Vec::new();
                r.write_csv(&mut buf, true)
                    .map_err(|e| CliError::Io(e.to_string()))?;
                emit(&String::from_utf8_lossy(&buf))?;
            } else if json {
                let div = divergences(&id)?;
                emit(&pretty(&json!({ "result": r, "divergences": div }))?)?;
            } else {
                let mut text = format!("problem {} ({})\n", r.problem_id, r.mode);
                for v in &r.values {
                    text.push_str(&format!(
                        "{:<12} {:e} {}\n",
                        v.label,
                        v.display_magnitude(),
                        v.display_unit
                    ));
                }
                for w in &r.warnings {
                    text.push_str(&format!("warning: {w}\n"));
                }
                emit(&text)?;
            }
        }
        Command::Regress { mode, json, only } => {
            let selection = match only {
                None => Selection::All,
                Some(s) => Selection::Only(
                    s.split(',')
                        .map(str::trim)
                        .filter(|x| !x.is_empty())
                        .map(str::to_string)
                        .collect(),
                ),
            };
            let report = run_regression_suite(mode, &selection)?;
            if json {
                emit(&pretty(&report)?)?;
            } else {
                emit(&report.to_text())?;
            }
            return Ok(if report.all_pass() { 0 } else { 1 });
        }
        Command::Simulate(a) => {
            let mu = triple(&a.mu, "mu")?;
            let sigma = triple(&a.sigma, "sigma")?;
            let theta = triple(&a.theta, "theta")?;
            let params = [0, 1, 2]
                .map(|g| GaussianParams::new(mu[g], sigma[g]))
                .into_iter()
                .collect::<Result<Vec<_>, _>>()?;
            let params: [GaussianParams; 3] = params.try_into().expect("three grades");
            let sim = simulate_stream(a.n, a.seed, params, theta)?;
            write(&a.out, sim.ledger.to_csv().as_bytes())?;
            let summary = if a.json {
                pretty(&json!({ "summary": sim.summary, "ranking": sim.ranking }))?
            } else {
                let mut t = sim.summary.to_text();
                t.push_str("ranking by yield:");
                for (g, y) in &sim.ranking {
                    t.push_str(&format!(" grade {g} ({y}%)"));
                }
                t.push('\n');
                t
            };
            match a.summary {
                Some(p) => write(&p, summary.as_bytes())?,
                None => emit(&summary)?,
            }
        }
        Command::Ledger(cmd) => match cmd {
            LedgerCommand::Export { input, format, out } => {
                let ledger = Ledger::load_csv(read(&input)?)?;
                let text = match format {
                    LedgerFormat::Csv => ledger.to_csv(),
                    LedgerFormat::Text => ledger.to_text(),
                };
                match out {
                    Some(p) => write(&p, text.as_bytes())?,
                    None => emit(&text)?,
                }
            }
            LedgerCommand::Import { input, out } => {
                let ledger = Ledger::load_csv(read(&input)?)?;
                write(&out, ledger.to_csv().as_bytes())?;
                emit(&format!("imported {} records\n", ledger.len()))?;
            }
            LedgerCommand::Summarize { input, theta, json } => {
                let ledger = Ledger::load_csv(read(&input)?)?;
                let s = summarize(&ledger, triple(&theta, "theta")?)?;
                if json {
                    emit(&pretty(&s)?)?;
                } else {
                    emit(&s.to_text())?;
                }
            }
        },
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
