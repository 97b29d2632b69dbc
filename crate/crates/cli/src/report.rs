//! Run report: the stable part of a `check` run, as text or JSON.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use stabmc_core::executor::{BuildError, ExecTree, Machine};
use stabmc_core::frontend::ast::PropertyKind;
use stabmc_core::logic::{CheckResult, Property, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub nodes: usize,
    pub leaves: usize,
    pub terminated: usize,
    pub deadlocked: usize,
    pub faulted: usize,
    pub max_depth: usize,
    pub measurement_branches: usize,
}

impl Stats {
    pub fn of(tree: &ExecTree) -> Stats {
        let s = tree.stats();
        Stats {
            nodes: s.nodes,
            leaves: s.leaves,
            terminated: s.terminated_leaves,
            deadlocked: s.deadlocked_leaves,
            faulted: s.faulted_leaves,
            max_depth: s.max_depth,
            measurement_branches: s.measurement_branches,
        }
    }
}

/// One edge of a trace: which child was taken, and what it does.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub step: usize,
    pub action: String,
}

/// The state formula deciding a verdict at the end of the trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FocusReport {
    /// Index among the property's state subformulas, in preorder.
    pub state: usize,
    pub formula: String,
    /// `true`, `false` or `undefined`.
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    /// 1-based position in the model's property list.
    pub index: usize,
    pub kind: String,
    pub text: String,
    /// `True`, `False` or `Undefined`.
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default)]
    pub trace: Vec<Step>,
    #[serde(default)]
    pub focus: Option<FocusReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub model: String,
    /// Warnings from parsing and type checking, as printed on stderr.
    #[serde(default)]
    pub diagnostics: Vec<String>,
    pub stats: Stats,
    pub properties: Vec<PropertyReport>,
}

pub fn kind_keyword(kind: PropertyKind) -> &'static str {
    match kind {
        PropertyKind::FinalState => "finalstateproperty",
        PropertyKind::Temporal => "property",
    }
}

pub fn property_report(
    index: usize,
    prop: &Property,
    result: &CheckResult,
    tree: &ExecTree,
    machine: &Machine<'_>,
) -> PropertyReport {
    let (trace, focus) = match &result.trace {
        Some(e) => {
            let formula = prop
                .state(e.focus.state_index)
                .expect("focus indexes a state subformula")
                .render(machine.program);
            (
                crate::steps(tree, machine, &e.path),
                Some(FocusReport {
                    state: e.focus.state_index,
                    formula,
                    value: e.focus.value.to_string(),
                }),
            )
        }
        None => (Vec::new(), None),
    };
    PropertyReport {
        index,
        kind: kind_keyword(prop.kind).to_string(),
        text: prop.text.clone(),
        verdict: result.verdict.to_string(),
        reason: match &result.verdict {
            Verdict::Undefined(r) => Some(r.clone()),
            _ => None,
        },
        trace,
        focus,
    }
}

pub fn stats_line(s: &Stats) -> String {
    format!(
        "tree: {} nodes, {} leaves ({} terminated, {} deadlocked, {} faulted), max depth {}, {} measurement branches",
        s.nodes, s.leaves, s.terminated, s.deadlocked, s.faulted, s.max_depth, s.measurement_branches
    )
}

pub fn text(r: &Report) -> String {
    let mut out = format!("model {}\n{}\n", r.model, stats_line(&r.stats));
    for p in &r.properties {
        let _ = writeln!(out, "[{}] {} {}: {}", p.index, p.kind, p.text, p.verdict);
        if let Some(reason) = &p.reason {
            let _ = writeln!(out, "    reason: {reason}");
        }
        let Some(focus) = &p.focus else { continue };
        let label = match p.verdict.as_str() {
            "False" => "counterexample",
            "True" => "witness",
            _ => "path to the undefined state",
        };
        let _ = writeln!(out, "    {label}, {} steps:", p.trace.len());
        for (i, s) in p.trace.iter().enumerate() {
            let _ = writeln!(out, "    {:>6}. {}", i + 1, s.action);
        }
        let _ = writeln!(out, "    at the last state: {} is {}", focus.formula, focus.value);
    }
    out
}

pub fn limit_json(model: &str, e: &BuildError, machine: &Machine<'_>) -> String {
    let path = e.path();
    let tail: Vec<String> = path
        .iter()
        .skip(path.len().saturating_sub(10))
        .map(|a| machine.describe(a))
        .collect();
    serde_json::json!({
        "model": model,
        "error": e.to_string(),
        "steps": path.len(),
        "last_actions": tail,
    })
    .to_string()
}
