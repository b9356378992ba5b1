use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cuas_cli::{execute, load_scenario, run_queries, CliError, Mode, Options, Outcome, Query};
use serde_json::json;

#[derive(Parser)]
#[command(name = "cuas", version, about = "Exact calculus of convex comprehensive act sets")]
struct Cli {
    /// Scenario JSON file defining states, decision makers and information structures.
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random midpoint trials for the convexity probe.
    #[arg(long, global = true, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Numeric,
}

#[derive(Subcommand)]
enum Command {
    /// Value of information of a decision maker under an information structure.
    Voi { set: String, info: String },
    /// Relative value of a finer structure over a coarser one.
    Relvoi { set: String, fine: String, coarse: String },
    /// Fusion (Minkowski sum) of two decision makers.
    Fuse { a: String, b: String },
    /// Union (convex hull) of two decision makers.
    Union { a: String, b: String },
    /// Star-difference M ∼ L.
    Stardiff { m: String, l: String },
    /// Whether M values information more than L.
    Compare { m: String, l: String },
    /// Normal fan cells of a decision maker.
    Normalfan { set: String },
    /// Dioid laws on a named triple, or on every triple of the scenario.
    CheckDioid { names: Vec<String> },
    /// Flexibility conditions for enlarging L to G.
    FlexUnion { l: String, g: String },
    /// Flexibility conditions for adding one act to L.
    FlexLittle {
        l: String,
        /// Decision maker name with a single act, or a literal such as (5,-1).
        act: String,
        /// Generator of L to build the witness from.
        generator: Option<String>,
    },
}

impl Command {
    fn words(self) -> Vec<String> {
        let (name, args): (&str, Vec<String>) = match self {
            Command::Voi { set, info } => ("voi", vec![set, info]),
            Command::Relvoi { set, fine, coarse } => ("relvoi", vec![set, fine, coarse]),
            Command::Fuse { a, b } => ("fuse", vec![a, b]),
            Command::Union { a, b } => ("union", vec![a, b]),
            Command::Stardiff { m, l } => ("stardiff", vec![m, l]),
            Command::Compare { m, l } => ("compare", vec![m, l]),
            Command::Normalfan { set } => ("normalfan", vec![set]),
            Command::CheckDioid { names } => ("check-dioid", names),
            Command::FlexUnion { l, g } => ("flex-union", vec![l, g]),
            Command::FlexLittle { l, act, generator } => {
                ("flex-little", [l, act].into_iter().chain(generator).collect())
            }
        };
        std::iter::once(name.to_string()).chain(args).collect()
    }
}

fn print(outcomes: &[Outcome], json: bool, headers: bool) {
    if json {
        let value = if headers {
            json!(outcomes
                .iter()
                .map(|o| json!({ "query": o.words, "result": o.report.json() }))
                .collect::<Vec<_>>())
        } else {
            outcomes[0].report.json()
        };
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        return;
    }
    for o in outcomes {
        if headers {
            println!("> {}", o.words.join(" "));
        }
        println!("{}", o.report.text());
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let path = cli
        .scenario
        .ok_or_else(|| CliError::Usage("--scenario <path> is required".into()))?;
    let scenario = load_scenario(&path)?;
    let options = Options {
        seed: cli.seed,
        trials: cli.trials,
        mode: match cli.mode {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Numeric => Mode::Numeric,
        },
        tol: cli.tol,
    };
    let outcomes = match cli.command {
        Some(command) => {
            let words = command.words();
            let query = Query::from_words(&words).map_err(CliError::Usage)?;
            let outcome = Outcome {
                words,
                report: execute(&scenario, &query, &options)?,
            };
            print(std::slice::from_ref(&outcome), cli.json, false);
            return Ok(outcome.report.exit_code());
        }
        None => run_queries(&scenario, &options),
    };
    match outcomes {
        Ok(done) => {
            print(&done, cli.json, true);
            Ok(done.iter().map(|o| o.report.exit_code()).max().unwrap_or(0))
        }
        Err((done, e)) => {
            print(&done, cli.json, true);
            Err(e)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
