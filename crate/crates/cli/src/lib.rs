//! Scenario files and the `cuas` command-line front end.
//!
//! A scenario is a JSON document:
//!
//! ```json
//! {
//!   "states": ["busy", "quiet"],
//!   "decision_makers": { "L": [[0, 0], [4, -1], [7, -5]] },
//!   "info_structures": { "q": [{ "weight": "1/2", "posterior": [1, 0] },
//!                              { "weight": "1/2", "posterior": [0, 1] }] },
//!   "queries": [["voi", "L", "q"]]
//! }
//! ```
//!
//! Numbers may be JSON numbers or strings such as `"-5"`, `"1/3"` or
//! `"0.25"`; all are read exactly.

pub mod query;
pub mod report;
pub mod scenario;

use std::path::Path;

use thiserror::Error;

pub use query::{execute, Mode, Options, Query};
pub use report::Report;
pub use scenario::{parse_scenario, Scenario, ScenarioError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Core(#[from] cuas_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_scenario(&text).map_err(|e| match e {
        ScenarioError::Parse { line, column, message } => ScenarioError::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    }
    .into())
}

/// One evaluated query with its rendering.
pub struct Outcome {
    pub words: Vec<String>,
    pub report: Report,
}

/// Runs the scenario's own queries in order, stopping at the first error.
pub fn run_queries(scenario: &Scenario, options: &Options) -> Result<Vec<Outcome>, (Vec<Outcome>, CliError)> {
    let mut done = Vec::new();
    for words in &scenario.queries {
        let result = Query::from_words(words)
            .map_err(CliError::Usage)
            .and_then(|q| execute(scenario, &q, options));
        match result {
            Ok(report) => done.push(Outcome {
                words: words.clone(),
                report,
            }),
            Err(e) => return Err((done, e)),
        }
    }
    Ok(done)
}
