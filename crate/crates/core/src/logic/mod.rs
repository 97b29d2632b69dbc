//! QCTL: classical formulas, real terms, state formulas and CTL over the
//! execution tree.
//!
//! Properties are desugared into the primitive forms `State`, implication,
//! `EX`, `E[_ U _]` and `AF` (see [`formula`]). Truth is three-valued: a
//! term that cannot be evaluated (an amplitude of an entangled subsystem, a
//! support above the cap, an unbound qubit) makes its formula
//! [`Truth::Undefined`], which propagates by Kleene's rules instead of being
//! coerced to false. Leaves of the tree stutter: their only successor is
//! themselves.

pub mod ctl;
pub mod eval;
pub mod formula;

#[cfg(test)]
mod tests;

pub use ctl::{label, Explanation, Focus, Labelling, TreeShape};
pub use eval::{eval_classical, eval_state, eval_term, Eval, EvalContext, Num, TOLERANCE};
pub use formula::{
    lower_classical, lower_state, lower_temporal, lower_term, Atomic, Classical, Ctl, StateFormula, Term,
};

use crate::executor::ExecTree;
use crate::frontend::ast::{Program, PropertyKind};
use crate::frontend::typecheck::TypedProperty;
use crate::frontend::{check_formula, parse_formula_syntax, Diagnostic};

/// Kleene truth value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
    Undefined,
}

impl Truth {
    pub fn from_bool(b: bool) -> Truth {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn from_eval(e: &Eval<bool>) -> Truth {
        match e {
            Ok(b) => Truth::from_bool(*b),
            Err(_) => Truth::Undefined,
        }
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Undefined,
        }
    }

    pub fn or(self, other: Truth) -> Truth {
        !(!self).and(!other)
    }

    pub fn implies(self, other: Truth) -> Truth {
        (!self).or(other)
    }
}

impl std::ops::Not for Truth {
    type Output = Truth;

    fn not(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Undefined => Truth::Undefined,
        }
    }
}

impl std::fmt::Display for Truth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::Undefined => "undefined",
        })
    }
}

/// A desugared property.
#[derive(Clone, Debug, PartialEq)]
pub struct Property {
    pub kind: PropertyKind,
    /// Source text, including the enclosing parentheses.
    pub text: String,
    pub formula: Ctl<StateFormula>,
}

impl Property {
    pub fn from_typed(p: &TypedProperty) -> Property {
        Property {
            kind: p.kind,
            text: p.text.clone(),
            formula: lower_temporal(&p.formula),
        }
    }

    /// The state formula a [`Focus`] refers to.
    pub fn state(&self, index: usize) -> Option<&StateFormula> {
        self.formula.states().get(index).copied()
    }
}

/// Parse, resolve against `program` and desugar one property formula.
/// Returns the property and any resolution warnings.
pub fn parse_formula(
    text: &str,
    program: &Program,
    kind: PropertyKind,
) -> Result<(Property, Vec<Diagnostic>), Vec<Diagnostic>> {
    let syntax = parse_formula_syntax(text)?;
    let (typed, warnings) = check_formula(program, &syntax, kind)?;
    Ok((
        Property {
            kind,
            text: text.trim().to_string(),
            formula: lower_temporal(&typed),
        },
        warnings,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    /// Why the deciding state formula could not be evaluated.
    Undefined(String),
}

impl Verdict {
    pub fn truth(&self) -> Truth {
        match self {
            Verdict::True => Truth::True,
            Verdict::False => Truth::False,
            Verdict::Undefined(_) => Truth::Undefined,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::True => f.write_str("True"),
            Verdict::False => f.write_str("False"),
            Verdict::Undefined(_) => f.write_str("Undefined"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub verdict: Verdict,
    /// Counterexample for false verdicts, witness for true existential
    /// ones, the offending node for undefined ones.
    pub trace: Option<Explanation>,
}

fn undefined_reason(f: &StateFormula, tree: &ExecTree, node: usize, ctx: EvalContext<'_>) -> String {
    match eval_state(f, &tree.nodes[node].config, ctx) {
        Err(e) => e,
        Ok(_) => "undefined subformula".into(),
    }
}

/// `f` must hold at every leaf; the first failing leaf (depth-first order)
/// is the counterexample. Deadlocked and faulted leaves are included.
pub fn check_final_state(f: &StateFormula, tree: &ExecTree, ctx: EvalContext<'_>) -> CheckResult {
    let mut undefined = None;
    for leaf in tree.leaves_in_order() {
        let value = eval_state(f, &tree.nodes[leaf].config, ctx);
        let explain = |value| Explanation {
            path: tree.path_to(leaf),
            focus: Focus {
                state_index: 0,
                node: leaf,
                value,
            },
        };
        match value {
            Ok(true) => {}
            Ok(false) => {
                return CheckResult {
                    verdict: Verdict::False,
                    trace: Some(explain(Truth::False)),
                };
            }
            Err(e) => {
                undefined.get_or_insert((e, explain(Truth::Undefined)));
            }
        }
    }
    match undefined {
        Some((e, trace)) => CheckResult {
            verdict: Verdict::Undefined(e),
            trace: Some(trace),
        },
        None => CheckResult {
            verdict: Verdict::True,
            trace: None,
        },
    }
}

/// Evaluate `f` at the root of `tree`.
pub fn check_temporal(f: &Ctl<StateFormula>, tree: &ExecTree, ctx: EvalContext<'_>) -> CheckResult {
    let labels = label(f, tree, |s, node| {
        Truth::from_eval(&eval_state(s, &tree.nodes[node].config, ctx))
    });
    let explanation = labels.explain(tree, 0);
    let verdict = match labels.value(0) {
        Truth::True => Verdict::True,
        Truth::False => Verdict::False,
        Truth::Undefined => {
            let s = f.states()[explanation.focus.state_index];
            Verdict::Undefined(undefined_reason(s, tree, explanation.focus.node, ctx))
        }
    };
    let keep = verdict != Verdict::True || f.is_existential();
    CheckResult {
        verdict,
        trace: keep.then_some(explanation),
    }
}

pub fn check_property(p: &Property, tree: &ExecTree, ctx: EvalContext<'_>) -> CheckResult {
    match (&p.kind, &p.formula) {
        (PropertyKind::FinalState, Ctl::State(s)) => check_final_state(s, tree, ctx),
        (PropertyKind::FinalState, other) => panic!("final-state property with temporal structure: {other:?}"),
        (PropertyKind::Temporal, f) => check_temporal(f, tree, ctx),
    }
}
