use std::fmt;

use crate::frontend::ast::{BinOp, DataType};
use crate::frontend::typecheck::{Scope, Slot, TExpr, TExprKind, TypedProgram};
use crate::stabilizer::{QubitId, Tableau};

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(i64),
    Bool(bool),
    Real(f64),
    /// `None` is an unbound qubit variable.
    Qubit(Option<QubitId>),
    /// Channels carry no stored contents under rendezvous.
    Channel,
}

impl Value {
    pub fn default_for(ty: DataType) -> Value {
        match ty {
            DataType::Integer => Value::Int(0),
            DataType::Bool => Value::Bool(false),
            DataType::Real => Value::Real(0.0),
            DataType::Qubit => Value::Qubit(None),
            DataType::Channel(_) => Value::Channel,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Real(r) => write!(f, "{r:?}"),
            Value::Qubit(Some(q)) => write!(f, "q#{q}"),
            Value::Qubit(None) => f.write_str("unbound"),
            Value::Channel => f.write_str("channel"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Running,
    Terminated,
    Faulted(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProcState {
    /// Index into the process's compiled code; equal to its length once done.
    pub pc: usize,
    pub status: Status,
}

/// One global execution state. Configurations are values: stepping clones.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    pub quantum: Tableau,
    pub shared: Vec<Value>,
    pub locals: Vec<Vec<Value>>,
    pub procs: Vec<ProcState>,
    pub step_count: usize,
}

impl Configuration {
    pub fn get(&self, slot: Slot) -> &Value {
        match slot.scope {
            Scope::Shared => &self.shared[slot.index],
            Scope::Local(p) => &self.locals[p][slot.index],
        }
    }

    pub fn set(&mut self, slot: Slot, v: Value) {
        match slot.scope {
            Scope::Shared => self.shared[slot.index] = v,
            Scope::Local(p) => self.locals[p][slot.index] = v,
        }
    }

    /// Qubit id bound to a qubit-typed slot.
    pub fn qubit(&self, program: &TypedProgram, slot: Slot) -> Result<QubitId, String> {
        match self.get(slot) {
            Value::Qubit(Some(q)) => Ok(*q),
            _ => Err(format!("qubit variable `{}` is unbound", program.slot_name(slot))),
        }
    }

    /// `Alice.x=true Bob.rq=q#0 ...` for every classical and qubit variable.
    pub fn store_text(&self, program: &TypedProgram) -> String {
        program
            .slots()
            .filter(|&s| !matches!(self.get(s), Value::Channel))
            .map(|s| format!("{}={}", program.slot_name(s), self.get(s)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Evaluate a store expression. Property-only constructs are rejected.
pub fn eval(e: &TExpr, c: &Configuration, program: &TypedProgram) -> Result<Value, String> {
    let num_int = |v: Value| match v {
        Value::Int(i) => Ok(i),
        other => Err(format!("expected integer, found {other}")),
    };
    match &e.kind {
        TExprKind::Bool(b) => Ok(Value::Bool(*b)),
        TExprKind::Int(i) => Ok(Value::Int(*i)),
        TExprKind::Real(r) => Ok(Value::Real(r.to_f64())),
        TExprKind::Var(s) => match c.get(*s) {
            Value::Qubit(None) => Err(format!("qubit variable `{}` is unbound", program.slot_name(*s))),
            v => Ok(v.clone()),
        },
        TExprKind::Widen(inner) => Ok(Value::Real(num_int(eval(inner, c, program)?)? as f64)),
        TExprKind::Not(inner) => match eval(inner, c, program)? {
            Value::Bool(b) => Ok(Value::Bool(!b)),
            other => Err(format!("`not` applied to {other}")),
        },
        TExprKind::Neg(inner) => match eval(inner, c, program)? {
            Value::Int(i) => i
                .checked_neg()
                .map(Value::Int)
                .ok_or_else(|| "integer overflow".to_string()),
            Value::Real(r) => Ok(Value::Real(-r)),
            other => Err(format!("`-` applied to {other}")),
        },
        TExprKind::Binary(op, a, b) => {
            let a = eval(a, c, program)?;
            // `and`/`or`/`imp` short-circuit so a guard like `n != 0 and ...`
            // does not fault on the right operand.
            if let (Value::Bool(x), true) = (&a, op.is_logical()) {
                match (op, x) {
                    (BinOp::And, false) => return Ok(Value::Bool(false)),
                    (BinOp::Or, true) => return Ok(Value::Bool(true)),
                    (BinOp::Imp, false) => return Ok(Value::Bool(true)),
                    _ => return eval(b, c, program),
                }
            }
            binary(*op, a, eval(b, c, program)?)
        }
        TExprKind::QubitAtom(_)
        | TExprKind::Prob(_)
        | TExprKind::Amp(..)
        | TExprKind::Unentangled(_)
        | TExprKind::Temporal(..) => Err("quantum formula is not a store expression".into()),
    }
}

fn binary(op: BinOp, a: Value, b: Value) -> Result<Value, String> {
    use Value::*;
    let overflow = || "integer overflow".to_string();
    Ok(match (op, a, b) {
        (BinOp::Add, Int(x), Int(y)) => Int(x.checked_add(y).ok_or_else(overflow)?),
        (BinOp::Sub, Int(x), Int(y)) => Int(x.checked_sub(y).ok_or_else(overflow)?),
        (BinOp::Mul, Int(x), Int(y)) => Int(x.checked_mul(y).ok_or_else(overflow)?),
        (BinOp::Add, Real(x), Real(y)) => Real(x + y),
        (BinOp::Sub, Real(x), Real(y)) => Real(x - y),
        (BinOp::Mul, Real(x), Real(y)) => Real(x * y),
        (op, Int(x), Int(y)) if op.is_comparison() => Bool(compare(op, x.cmp(&y))),
        (op, Real(x), Real(y)) if op.is_comparison() => match x.partial_cmp(&y) {
            Some(o) => Bool(compare(op, o)),
            // NaN: only `!=` holds
            None => Bool(op == BinOp::Ne),
        },
        (BinOp::Eq, Bool(x), Bool(y)) => Bool(x == y),
        (BinOp::Ne, Bool(x), Bool(y)) => Bool(x != y),
        (op, a, b) => return Err(format!("`{}` applied to {a} and {b}", op.spelling())),
    })
}

fn compare(op: BinOp, o: std::cmp::Ordering) -> bool {
    use std::cmp::Ordering::*;
    match op {
        BinOp::Eq => o == Equal,
        BinOp::Ne => o != Equal,
        BinOp::Lt => o == Less,
        BinOp::Le => o != Greater,
        BinOp::Gt => o == Greater,
        BinOp::Ge => o != Less,
        _ => unreachable!("not a comparison"),
    }
}
