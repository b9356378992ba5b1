//! Text and JSON rendering of query results.

use cuas_core::comparison::{
    ComparisonVerdict, LittleFlexibilityReport, NormalCell, UnionFlexibilityReport,
};
use cuas_core::dioid::DioidLawReport;
use cuas_core::scalar::format_rational;
use cuas_core::{Belief, DioidElement, Rational, Scalar, UtilityAct};
use serde_json::{json, Value};

#[derive(Clone, Debug)]
pub enum Report {
    Value(Scalar),
    Set(DioidElement),
    Compare {
        verdict: ComparisonVerdict,
        probe_convex: bool,
        trials: usize,
        seed: u64,
    },
    Fan(Vec<NormalCell>),
    Dioid(DioidLawReport),
    FlexUnion(UnionFlexibilityReport),
    FlexLittle {
        act: UtilityAct,
        report: LittleFlexibilityReport,
        witness: Option<(UtilityAct, DioidElement)>,
    },
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn q(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn coords(x: &[Rational]) -> Value {
    Value::Array(x.iter().map(q).collect())
}

fn set_json(g: &DioidElement) -> Value {
    match g {
        DioidElement::Empty(_) => json!({ "empty": true, "text": "empty" }),
        DioidElement::Set(s) => json!({
            "generators": s.generators().iter().map(|a| coords(a.coords())).collect::<Vec<_>>(),
            "text": g.to_string(),
        }),
    }
}

fn opt_set_json(g: &Option<DioidElement>) -> Value {
    g.as_ref().map_or(Value::Null, set_json)
}

fn acts_json(acts: &[UtilityAct]) -> Value {
    Value::Array(acts.iter().map(|a| coords(a.coords())).collect())
}

fn act_list(acts: &[UtilityAct]) -> String {
    if acts.is_empty() {
        return "none".into();
    }
    acts.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn scalar_json(x: &Scalar) -> Value {
    match x {
        Scalar::Exact(r) => json!({ "exact": format_rational(r) }),
        Scalar::Approx(f) => json!({ "approx": f }),
    }
}

fn scalar_text(x: &Scalar) -> String {
    match x {
        Scalar::Exact(r) => format_rational(r),
        Scalar::Approx(f) => format!("{f}"),
    }
}

/// Cells sorted by their lowest vertex; on two states the first coordinate
/// doubles as the `t` parameter.
fn sorted_cells(cells: &[NormalCell]) -> Vec<&NormalCell> {
    let mut sorted: Vec<&NormalCell> = cells.iter().collect();
    sorted.sort_by(|a, b| a.region.vertices.first().cmp(&b.region.vertices.first()));
    sorted
}

fn interval(vertices: &[Belief]) -> Option<(Rational, Rational)> {
    let ts: Vec<&Rational> = vertices.iter().map(|v| &v.coords()[0]).collect();
    Some(((*ts.iter().min()?).clone(), (*ts.iter().max()?).clone()))
}

impl Report {
    /// Process exit status: 1 flags a negative comparison verdict.
    pub fn exit_code(&self) -> u8 {
        match self {
            Report::Compare { verdict, .. } if !verdict.holds => 1,
            _ => 0,
        }
    }

    pub fn text(&self) -> String {
        match self {
            Report::Value(x) => scalar_text(x),
            Report::Set(g) => g.to_string(),
            Report::Compare {
                verdict,
                probe_convex,
                trials,
                seed,
            } => {
                let mut lines = vec![format!("values more: {}", yes(verdict.holds))];
                match &verdict.witness {
                    Some(w) => lines.push(format!("witness: {w}")),
                    None => lines.push(format!("star-difference: {}", verdict.star_difference)),
                }
                lines.push(format!("certified by: {}", verdict.evidence));
                lines.push(format!(
                    "convexity probe: {} ({trials} midpoint trials, seed {seed})",
                    if *probe_convex { "no violation" } else { "violation found" }
                ));
                lines.join("\n")
            }
            Report::Fan(cells) => {
                let sorted = sorted_cells(cells);
                let two_states = cells.first().is_some_and(|c| c.owner.dim() == 2);
                let mut lines = Vec::new();
                if two_states {
                    let mut breaks: Vec<Rational> = sorted
                        .iter()
                        .filter_map(|c| interval(&c.region.vertices))
                        .map(|(_, hi)| hi)
                        .collect();
                    breaks.pop();
                    let breaks: Vec<String> = breaks.iter().map(format_rational).collect();
                    lines.push(format!("breakpoints: {}", if breaks.is_empty() { "none".into() } else { breaks.join(", ") }));
                }
                for c in sorted {
                    let vertices: Vec<String> = c.region.vertices.iter().map(ToString::to_string).collect();
                    match interval(&c.region.vertices).filter(|_| two_states) {
                        Some((lo, hi)) => lines.push(format!(
                            "{}: t in [{},{}]",
                            c.owner,
                            format_rational(&lo),
                            format_rational(&hi)
                        )),
                        None => lines.push(format!("{}: vertices {}", c.owner, vertices.join(" "))),
                    }
                }
                lines.join("\n")
            }
            Report::Dioid(r) => {
                let mut lines = vec![format!(
                    "{} law checks over {} triples",
                    r.laws_checked, r.triples_checked
                )];
                if r.passed() {
                    lines.push("all laws hold".into());
                }
                for f in &r.failures {
                    lines.push(format!("triple {}: {} fails", f.triple, f.law));
                }
                lines.join("\n")
            }
            Report::FlexUnion(r) => [
                format!("values more: {}", yes(r.values_more)),
                format!(
                    "witness: {}",
                    r.witness.as_ref().map_or("none".into(), ToString::to_string)
                ),
                format!("dominated region convex: {}", yes(r.dominated_region_convex)),
                format!("fan refines: {}", yes(r.fan_refines)),
                format!("pieces in single cells: {}", yes(r.pieces_in_single_cells)),
                format!("straddling generators: {}", act_list(&r.straddling_generators)),
                format!("G is a fusion of L: {}", yes(r.g_is_fusion_of_l)),
                format!(
                    "sufficient generator: {}",
                    r.sufficient_generator.as_ref().map_or("none".into(), ToString::to_string)
                ),
                format!(
                    "sufficient identity: {}",
                    r.sufficient_identity_holds.map_or("n/a", yes)
                ),
            ]
            .join("\n"),
            Report::FlexLittle { act, report, witness } => {
                let mut lines = vec![
                    format!("act: {act}"),
                    format!("already contained: {}", yes(report.already_contained)),
                    format!("values more: {}", yes(report.values_more)),
                    format!("lower region convex: {}", yes(report.lower_region_convex)),
                    format!(
                        "necessary generator: {}",
                        report.necessary_generator.as_ref().map_or("none".into(), ToString::to_string)
                    ),
                    format!("qualifying generators: {}", act_list(&report.qualifying_generators)),
                ];
                if let Some((g, w)) = witness {
                    lines.push(format!("witness for {g}: {w}"));
                }
                lines.join("\n")
            }
        }
    }

    pub fn json(&self) -> Value {
        match self {
            Report::Value(x) => json!({ "kind": "value", "value": scalar_json(x) }),
            Report::Set(g) => json!({ "kind": "set", "set": set_json(g) }),
            Report::Compare {
                verdict,
                probe_convex,
                trials,
                seed,
            } => json!({
                "kind": "compare",
                "holds": verdict.holds,
                "witness": opt_set_json(&verdict.witness),
                "star_difference": set_json(&verdict.star_difference),
                "evidence": verdict.evidence.to_string(),
                "probe": { "convex": probe_convex, "trials": trials, "seed": seed },
            }),
            Report::Fan(cells) => json!({
                "kind": "normal_fan",
                "cells": sorted_cells(cells).iter().map(|c| json!({
                    "owner": coords(c.owner.coords()),
                    "vertices": c.region.vertices.iter().map(|v| coords(v.coords())).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            }),
            Report::Dioid(r) => json!({
                "kind": "dioid_laws",
                "passed": r.passed(),
                "triples_checked": r.triples_checked,
                "laws_checked": r.laws_checked,
                "failures": r.failures.iter().map(|f| json!({
                    "triple": f.triple,
                    "law": f.law.to_string(),
                })).collect::<Vec<_>>(),
            }),
            Report::FlexUnion(r) => json!({
                "kind": "union_flexibility",
                "values_more": r.values_more,
                "witness": opt_set_json(&r.witness),
                "dominated_region_convex": r.dominated_region_convex,
                "fan_refines": r.fan_refines,
                "pieces_in_single_cells": r.pieces_in_single_cells,
                "straddling_generators": acts_json(&r.straddling_generators),
                "g_is_fusion_of_l": r.g_is_fusion_of_l,
                "sufficient_generator": r.sufficient_generator.as_ref().map(|a| coords(a.coords())),
                "sufficient_identity_holds": r.sufficient_identity_holds,
            }),
            Report::FlexLittle { act, report, witness } => json!({
                "kind": "little_flexibility",
                "act": coords(act.coords()),
                "already_contained": report.already_contained,
                "values_more": report.values_more,
                "witness_of_verdict": opt_set_json(&report.witness),
                "lower_region_convex": report.lower_region_convex,
                "necessary_generator": report.necessary_generator.as_ref().map(|a| coords(a.coords())),
                "qualifying_generators": acts_json(&report.qualifying_generators),
                "witness": witness.as_ref().map(|(g, w)| json!({
                    "generator": coords(g.coords()),
                    "set": set_json(w),
                })),
            }),
        }
    }
}
