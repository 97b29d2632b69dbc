//! `check --replay`: re-execute a saved trace from the initial configuration
//! and re-evaluate its focus formula at the end.
//!
//! The trace file is either one property object of a JSON report or the
//! whole first report line. Exit 0 when the recorded value is reproduced, 1
//! when the formula evaluates differently, 2 when the trace does not apply.

use std::io::Write;
use std::path::Path;

use stabmc_core::executor::Machine;
use stabmc_core::frontend::ast::PropertyKind;
use stabmc_core::frontend::TypedProgram;
use stabmc_core::logic::{eval_state, EvalContext, Property, Truth};

use crate::report::{kind_keyword, PropertyReport};
use crate::{io_failure, usage, Failure, Outcome, EXIT_FALSE, EXIT_OK};

fn pick(value: serde_json::Value, want: Option<usize>) -> Result<PropertyReport, Failure> {
    let bad = |e: serde_json::Error| usage(format!("error: malformed trace: {e}"));
    let Some(list) = value.get("properties") else {
        return serde_json::from_value(value).map_err(bad);
    };
    let list: Vec<PropertyReport> = serde_json::from_value(list.clone()).map_err(bad)?;
    list.into_iter()
        .find(|p| match want {
            Some(i) => p.index == i,
            None => p.verdict != "True" && p.focus.is_some(),
        })
        .ok_or_else(|| usage("error: the report holds no matching property with a trace"))
}

pub(crate) fn replay(
    file: &Path,
    want: Option<usize>,
    program: &TypedProgram,
    machine: &Machine<'_>,
    ctx: EvalContext<'_>,
    out: &mut dyn Write,
) -> Outcome {
    let text = std::fs::read_to_string(file).map_err(|e| io_failure("read", file, e))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| usage(format!("error: {}: not JSON: {e}", file.display())))?;
    let rec = pick(value, want)?;
    let Some(typed) = rec.index.checked_sub(1).and_then(|i| program.properties.get(i)) else {
        return Err(usage(format!(
            "error: trace refers to property {}, which the model lacks",
            rec.index
        )));
    };
    let prop = Property::from_typed(typed);
    if rec.text != prop.text || rec.kind != kind_keyword(prop.kind) {
        return Err(usage(format!(
            "error: trace is for `{} {}`, but property {} is `{} {}`",
            rec.kind,
            rec.text,
            rec.index,
            kind_keyword(prop.kind),
            prop.text
        )));
    }
    let Some(focus) = &rec.focus else {
        return Err(usage("error: trace has no focus formula to re-evaluate"));
    };
    let Some(formula) = prop.state(focus.state) else {
        return Err(usage(format!(
            "error: property has no state subformula {}",
            focus.state
        )));
    };

    let mut config = machine.initial_configuration();
    for (k, s) in rec.trace.iter().enumerate() {
        let mut succ = machine.successors(&config);
        let enabled: Vec<String> = succ.iter().map(|(a, _)| machine.describe(a)).collect();
        if enabled.get(s.step) != Some(&s.action) {
            return Err(usage(format!(
                "error: step {} takes child {} as `{}`, but the enabled actions are [{}]",
                k + 1,
                s.step,
                s.action,
                enabled.join("; ")
            )));
        }
        config = succ.swap_remove(s.step).1;
    }
    if prop.kind == PropertyKind::FinalState && !machine.successors(&config).is_empty() {
        return Err(usage("error: trace of a final-state property does not end at a leaf"));
    }

    let value = eval_state(formula, &config, ctx);
    let got = Truth::from_eval(&value);
    let _ = writeln!(
        out,
        "replayed {} steps of [{}] {} {}",
        rec.trace.len(),
        rec.index,
        rec.kind,
        rec.text
    );
    let _ = writeln!(out, "at the last state: {} is {got}", formula.render(program));
    if let Err(reason) = &value {
        let _ = writeln!(out, "reason: {reason}");
    }
    if got.to_string() == focus.value {
        let _ = writeln!(out, "reproduced: recorded value {}", focus.value);
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(out, "not reproduced: recorded value {}", focus.value);
        Ok(EXIT_FALSE)
    }
}
