//! Queries over a scenario and their evaluation.

use cuas_core::comparison::{
    convexity_probe, little_flexibility_check, little_flexibility_witness, normal_cells,
    union_flexibility_check, values_more,
};
use cuas_core::dioid::{check_dioid_laws, fusion, star_difference, union};
use cuas_core::information::{relative_voi, voi, voi_of};
use cuas_core::{DioidElement, Error, InfoStructure, PolyCUAS, Scalar, UtilityAct, ValueFunction};

use crate::report::Report;
use crate::scenario::{parse_act, Scenario};
use crate::CliError;

/// How value functions are evaluated by `voi` and `relvoi`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Exact,
    Numeric,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub seed: u64,
    pub trials: usize,
    pub mode: Mode,
    pub tol: f64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            trials: 10_000,
            mode: Mode::Exact,
            tol: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Voi { set: String, info: String },
    RelVoi { set: String, fine: String, coarse: String },
    Fuse(String, String),
    Union(String, String),
    StarDiff { m: String, l: String },
    Compare { m: String, l: String },
    NormalFan(String),
    CheckDioid(Option<[String; 3]>),
    FlexUnion { l: String, g: String },
    FlexLittle { l: String, act: String, generator: Option<String> },
}

pub const COMMANDS: [&str; 10] = [
    "voi", "relvoi", "fuse", "union", "stardiff", "compare", "normalfan", "check-dioid",
    "flex-union", "flex-little",
];

enum Kind {
    Set,
    Info,
    Act,
}

impl Query {
    pub fn from_words(words: &[String]) -> Result<Query, String> {
        let (command, args) = words.split_first().ok_or("empty query")?;
        let arity = |n: usize| -> Result<(), String> {
            if args.len() == n {
                Ok(())
            } else {
                Err(format!("{command} takes {n} arguments, found {}", args.len()))
            }
        };
        let a = |i: usize| args[i].clone();
        Ok(match command.as_str() {
            "voi" => {
                arity(2)?;
                Query::Voi { set: a(0), info: a(1) }
            }
            "relvoi" => {
                arity(3)?;
                Query::RelVoi { set: a(0), fine: a(1), coarse: a(2) }
            }
            "fuse" => {
                arity(2)?;
                Query::Fuse(a(0), a(1))
            }
            "union" => {
                arity(2)?;
                Query::Union(a(0), a(1))
            }
            "stardiff" => {
                arity(2)?;
                Query::StarDiff { m: a(0), l: a(1) }
            }
            "compare" => {
                arity(2)?;
                Query::Compare { m: a(0), l: a(1) }
            }
            "normalfan" => {
                arity(1)?;
                Query::NormalFan(a(0))
            }
            "check-dioid" => match args.len() {
                0 => Query::CheckDioid(None),
                3 => Query::CheckDioid(Some([a(0), a(1), a(2)])),
                n => return Err(format!("check-dioid takes 0 or 3 arguments, found {n}")),
            },
            "flex-union" => {
                arity(2)?;
                Query::FlexUnion { l: a(0), g: a(1) }
            }
            "flex-little" => match args.len() {
                2 | 3 => Query::FlexLittle {
                    l: a(0),
                    act: a(1),
                    generator: args.get(2).cloned(),
                },
                n => return Err(format!("flex-little takes 2 or 3 arguments, found {n}")),
            },
            other => {
                return Err(format!(
                    "unknown command {other:?}; expected one of {}",
                    COMMANDS.join(", ")
                ))
            }
        })
    }

    fn arguments(&self) -> Vec<(&str, Kind)> {
        use Kind::*;
        let args: Vec<(&String, Kind)> = match self {
            Query::Voi { set, info } => vec![(set, Set), (info, Info)],
            Query::RelVoi { set, fine, coarse } => vec![(set, Set), (fine, Info), (coarse, Info)],
            Query::Fuse(a, b) | Query::Union(a, b) => vec![(a, Set), (b, Set)],
            Query::StarDiff { m, l } | Query::Compare { m, l } => vec![(m, Set), (l, Set)],
            Query::NormalFan(g) => vec![(g, Set)],
            Query::CheckDioid(None) => vec![],
            Query::CheckDioid(Some(names)) => names.iter().map(|n| (n, Set)).collect(),
            Query::FlexUnion { l, g } => vec![(l, Set), (g, Set)],
            Query::FlexLittle { l, act, generator } => {
                let mut v = vec![(l, Set), (act, Act)];
                v.extend(generator.iter().map(|g| (g, Act)));
                v
            }
        };
        args.into_iter().map(|(n, k)| (n.as_str(), k)).collect()
    }

    /// Every referenced name is defined with the right kind.
    pub fn check_names(&self, scenario: &Scenario) -> Result<(), String> {
        for (name, kind) in self.arguments() {
            let ok = match kind {
                Kind::Set => scenario.decision_makers.contains_key(name),
                Kind::Info => scenario.info_structures.contains_key(name),
                Kind::Act => {
                    scenario.decision_makers.contains_key(name)
                        || parse_act(name, scenario.space.dim()).is_some()
                }
            };
            if !ok {
                let what = match kind {
                    Kind::Set => "decision maker",
                    Kind::Info => "information structure",
                    Kind::Act => "decision maker or act literal",
                };
                return Err(format!("undefined {what} {name:?}"));
            }
        }
        Ok(())
    }
}

fn set<'a>(scenario: &'a Scenario, name: &str) -> Result<&'a PolyCUAS, CliError> {
    scenario
        .decision_makers
        .get(name)
        .ok_or_else(|| CliError::Usage(format!("undefined decision maker {name:?}")))
}

fn info<'a>(scenario: &'a Scenario, name: &str) -> Result<&'a InfoStructure, CliError> {
    scenario
        .info_structures
        .get(name)
        .ok_or_else(|| CliError::Usage(format!("undefined information structure {name:?}")))
}

/// A literal `(a,b,..)` or a decision maker with a single generator.
fn act(scenario: &Scenario, text: &str) -> Result<UtilityAct, CliError> {
    if let Some(a) = parse_act(text, scenario.space.dim()) {
        return Ok(a);
    }
    match set(scenario, text)?.generators() {
        [single] => Ok(single.clone()),
        gens => Err(CliError::Usage(format!(
            "{text:?} has {} generators, expected a single act",
            gens.len()
        ))),
    }
}

fn numeric(g: &PolyCUAS, tol: f64) -> ValueFunction {
    let gens: Vec<Vec<f64>> = g
        .generators()
        .iter()
        .map(|a| a.coords().iter().map(cuas_core::scalar::to_f64).collect())
        .collect();
    ValueFunction::numeric(g.space(), "support", tol, move |p: &[f64]| {
        gens.iter()
            .map(|a| a.iter().zip(p).map(|(x, y)| x * y).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max)
    })
}

fn numeric_voi(g: &PolyCUAS, q: &InfoStructure, tol: f64) -> Result<f64, CliError> {
    Ok(voi_of(&numeric(g, tol), q)?.to_f64())
}

pub fn execute(scenario: &Scenario, query: &Query, options: &Options) -> Result<Report, CliError> {
    query.check_names(scenario).map_err(CliError::Usage)?;
    Ok(match query {
        Query::Voi { set: g, info: q } => {
            let (g, q) = (set(scenario, g)?, info(scenario, q)?);
            match options.mode {
                Mode::Exact => Report::Value(Scalar::Exact(voi(g, q)?)),
                Mode::Numeric => Report::Value(Scalar::Approx(numeric_voi(g, q, options.tol)?)),
            }
        }
        Query::RelVoi { set: g, fine, coarse } => {
            let (g, fine, coarse) = (set(scenario, g)?, info(scenario, fine)?, info(scenario, coarse)?);
            let exact = relative_voi(g, fine, coarse)?;
            match options.mode {
                Mode::Exact => Report::Value(Scalar::Exact(exact)),
                Mode::Numeric => Report::Value(Scalar::Approx(
                    numeric_voi(g, fine, options.tol)? - numeric_voi(g, coarse, options.tol)?,
                )),
            }
        }
        Query::Fuse(a, b) => Report::Set(fusion(set(scenario, a)?, set(scenario, b)?)?.into()),
        Query::Union(a, b) => Report::Set(union(set(scenario, a)?, set(scenario, b)?)?.into()),
        Query::StarDiff { m, l } => Report::Set(star_difference(set(scenario, m)?, set(scenario, l)?)?),
        Query::Compare { m, l } => {
            let (m, l) = (set(scenario, m)?, set(scenario, l)?);
            Report::Compare {
                verdict: values_more(m, l)?,
                probe_convex: convexity_probe(m, l, options.trials, options.seed)?,
                trials: options.trials,
                seed: options.seed,
            }
        }
        Query::NormalFan(g) => Report::Fan(normal_cells(set(scenario, g)?)?),
        Query::CheckDioid(Some(names)) => {
            let [a, b, c] = names.each_ref().map(|n| set(scenario, n).map(|g| g.clone().into()));
            Report::Dioid(check_dioid_laws(&[(a?, b?, c?)])?)
        }
        Query::CheckDioid(None) => {
            // every ordered triple of the scenario's decision makers
            let elements: Vec<DioidElement> = scenario.decision_makers.values().map(|g| g.clone().into()).collect();
            if elements.is_empty() {
                return Err(Error::EmptySet.into());
            }
            let mut triples = Vec::new();
            for a in &elements {
                for b in &elements {
                    for c in &elements {
                        triples.push((a.clone(), b.clone(), c.clone()));
                    }
                }
            }
            Report::Dioid(check_dioid_laws(&triples)?)
        }
        Query::FlexUnion { l, g } => {
            Report::FlexUnion(union_flexibility_check(set(scenario, l)?, set(scenario, g)?)?)
        }
        Query::FlexLittle { l, act: a, generator } => {
            let l = set(scenario, l)?;
            let a = act(scenario, a)?;
            let report = little_flexibility_check(l, &a)?;
            let witness = match generator {
                Some(g) => {
                    let g = act(scenario, g)?;
                    Some((g.clone(), little_flexibility_witness(l, &a, &g)?))
                }
                None => None,
            };
            Report::FlexLittle { act: a, report, witness }
        }
    })
}
