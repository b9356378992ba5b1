//! Scenario documents: a state space, named decision makers, named
//! information structures and an ordered list of queries.

use std::collections::BTreeMap;

use cuas_core::scalar::parse_rational;
use cuas_core::{Belief, InfoStructure, PolyCUAS, Rational, StateSpace, UtilityAct};
use serde::Deserialize;
use thiserror::Error;

use crate::query::Query;

#[derive(Debug, Error, PartialEq)]
pub enum ScenarioError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Validation { field: String, message: String },
}

impl ScenarioError {
    fn validation(field: impl Into<String>, message: impl ToString) -> Self {
        ScenarioError::Validation {
            field: field.into(),
            message: message.to_string(),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawNumber {
    Number(serde_json::Number),
    Text(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawStates {
    Count(usize),
    Labels(Vec<String>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSignal {
    weight: RawNumber,
    posterior: Vec<RawNumber>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    states: RawStates,
    #[serde(default)]
    decision_makers: BTreeMap<String, Vec<Vec<RawNumber>>>,
    #[serde(default)]
    info_structures: BTreeMap<String, Vec<RawSignal>>,
    #[serde(default)]
    queries: Vec<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub space: StateSpace,
    pub decision_makers: BTreeMap<String, PolyCUAS>,
    pub info_structures: BTreeMap<String, InfoStructure>,
    pub queries: Vec<Vec<String>>,
}

impl Scenario {
    /// A scenario with no named objects, used when no file is given.
    pub fn empty(space: StateSpace) -> Self {
        Scenario {
            space,
            decision_makers: BTreeMap::new(),
            info_structures: BTreeMap::new(),
            queries: Vec::new(),
        }
    }
}

fn number(raw: &RawNumber, field: &str) -> Result<Rational, ScenarioError> {
    let text = match raw {
        RawNumber::Number(n) => n.to_string(),
        RawNumber::Text(s) => s.clone(),
    };
    parse_rational(&text)
        .ok_or_else(|| ScenarioError::validation(field, format!("{text:?} is not a rational number")))
}

fn vector(raw: &[RawNumber], k: usize, field: &str) -> Result<Vec<Rational>, ScenarioError> {
    if raw.len() != k {
        return Err(ScenarioError::validation(
            field,
            format!("expected {k} coordinates, found {}", raw.len()),
        ));
    }
    raw.iter().map(|x| number(x, field)).collect()
}

pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let raw: RawScenario = serde_json::from_str(text).map_err(|e| ScenarioError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let space = match raw.states {
        RawStates::Count(0) => return Err(ScenarioError::validation("states", "at least one state required")),
        RawStates::Count(k) => StateSpace::with_dimension(k),
        RawStates::Labels(labels) => {
            StateSpace::new(labels).map_err(|e| ScenarioError::validation("states", e))?
        }
    };
    let k = space.dim();

    let mut decision_makers = BTreeMap::new();
    for (name, acts) in &raw.decision_makers {
        let field = format!("decision_makers.{name}");
        if acts.is_empty() {
            return Err(ScenarioError::validation(field, "no acts"));
        }
        let acts = acts
            .iter()
            .enumerate()
            .map(|(i, a)| vector(a, k, &format!("{field}[{i}]")).map(UtilityAct::new))
            .collect::<Result<Vec<_>, _>>()?;
        let set = PolyCUAS::canonicalize(&space, acts).map_err(|e| ScenarioError::validation(&field, e))?;
        decision_makers.insert(name.clone(), set);
    }

    let mut info_structures = BTreeMap::new();
    for (name, signals) in &raw.info_structures {
        let field = format!("info_structures.{name}");
        let mut parsed = Vec::with_capacity(signals.len());
        for (i, s) in signals.iter().enumerate() {
            let at = format!("{field}[{i}]");
            let weight = number(&s.weight, &format!("{at}.weight"))?;
            let posterior = Belief::new(vector(&s.posterior, k, &format!("{at}.posterior"))?)
                .map_err(|e| ScenarioError::validation(format!("{at}.posterior"), e))?;
            parsed.push((weight, posterior));
        }
        let q = InfoStructure::new(&space, parsed).map_err(|e| ScenarioError::validation(&field, e))?;
        info_structures.insert(name.clone(), q);
    }

    let scenario = Scenario {
        space,
        decision_makers,
        info_structures,
        queries: raw.queries,
    };
    for (i, words) in scenario.queries.iter().enumerate() {
        Query::from_words(words)
            .and_then(|q| q.check_names(&scenario))
            .map_err(|e| ScenarioError::validation(format!("queries[{i}]"), e))?;
    }
    Ok(scenario)
}

/// Parses an act literal such as `(5,-1)` or `(1/2, -3)`.
pub fn parse_act(text: &str, k: usize) -> Option<UtilityAct> {
    let inner = text.trim().strip_prefix('(')?.strip_suffix(')')?;
    let coords: Option<Vec<Rational>> = inner.split(',').map(parse_rational).collect();
    coords.filter(|c| c.len() == k).map(UtilityAct::new)
}
