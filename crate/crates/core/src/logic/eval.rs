//! Evaluation of classical formulas, terms and state formulas at one
//! configuration. `Err` carries the reason a value is undefined.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::formula::{Classical, StateFormula, Term};
use crate::executor::{eval, Configuration, Value};
use crate::frontend::{Slot, TypedProgram};
use crate::stabilizer::{FactorAmplitude, QubitId, DEFAULT_SUPPORT_CAP};

/// Absolute tolerance for comparisons involving approximate reals.
pub const TOLERANCE: f64 = 1e-9;

pub type Eval<T> = Result<T, String>;

/// What state formulas are evaluated against.
#[derive(Clone, Copy)]
pub struct EvalContext<'a> {
    pub program: &'a TypedProgram,
    /// Largest `k` for which a support of size `2^k` is enumerated.
    pub support_cap: u32,
}

impl<'a> EvalContext<'a> {
    pub fn new(program: &'a TypedProgram) -> EvalContext<'a> {
        EvalContext {
            program,
            support_cap: DEFAULT_SUPPORT_CAP,
        }
    }
}

/// Value of a term: exact whenever only rationals are involved.
#[derive(Clone, Debug, PartialEq)]
pub enum Num {
    Exact(BigRational),
    Approx(f64),
}

impl Num {
    pub fn to_f64(&self) -> f64 {
        match self {
            Num::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Num::Approx(x) => *x,
        }
    }

    fn combine(
        self,
        other: Num,
        exact: fn(BigRational, BigRational) -> BigRational,
        approx: fn(f64, f64) -> f64,
    ) -> Num {
        match (self, other) {
            (Num::Exact(a), Num::Exact(b)) => Num::Exact(exact(a, b)),
            (a, b) => Num::Approx(approx(a.to_f64(), b.to_f64())),
        }
    }

    /// `self <= other`, exactly when both sides are exact.
    pub fn leq(&self, other: &Num) -> bool {
        match (self, other) {
            (Num::Exact(a), Num::Exact(b)) => a <= b,
            _ => self.to_f64() <= other.to_f64() + TOLERANCE,
        }
    }
}

impl std::fmt::Display for Num {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Num::Exact(r) => write!(f, "{r}"),
            Num::Approx(x) => write!(f, "{x}"),
        }
    }
}

fn qubit(slot: Slot, c: &Configuration, ctx: EvalContext<'_>) -> Eval<QubitId> {
    c.qubit(ctx.program, slot)
}

/// Kleene implication over `Eval<bool>`: a false antecedent or a true
/// consequent decides the value even if the other side is undefined.
fn implies(a: Eval<bool>, b: impl FnOnce() -> Eval<bool>) -> Eval<bool> {
    match a {
        Ok(false) => Ok(true),
        Ok(true) => b(),
        Err(e) => match b() {
            Ok(true) => Ok(true),
            _ => Err(e),
        },
    }
}

/// `alpha` under a valuation (`bits[q]` is qubit `q`) and the store.
pub fn eval_classical(a: &Classical, bits: &[bool], c: &Configuration, ctx: EvalContext<'_>) -> Eval<bool> {
    match a {
        Classical::Bottom => Ok(false),
        Classical::Qubit(s) => {
            let q = qubit(*s, c, ctx)?;
            bits.get(q)
                .copied()
                .ok_or_else(|| format!("no valuation for qubit {q}"))
        }
        Classical::Atom(e) => match eval(e, c, ctx.program)? {
            Value::Bool(b) => Ok(b),
            other => Err(format!("expected a boolean, found {other}")),
        },
        Classical::Implies(x, y) => implies(eval_classical(x, bits, c, ctx), || eval_classical(y, bits, c, ctx)),
    }
}

/// Kleene universal quantification of `alpha` over the support.
fn holds_everywhere(a: &Classical, c: &Configuration, ctx: EvalContext<'_>) -> Eval<bool> {
    if !a.mentions_qubits() {
        return eval_classical(a, &[], c, ctx);
    }
    let support = c.quantum.support(ctx.support_cap).map_err(|e| e.to_string())?;
    let mut undefined = None;
    for v in &support {
        match eval_classical(a, &v.bits, c, ctx) {
            Ok(true) => {}
            Ok(false) => return Ok(false),
            Err(e) => {
                undefined.get_or_insert(e);
            }
        }
    }
    undefined.map_or(Ok(true), Err)
}

fn probability(a: &Classical, c: &Configuration, ctx: EvalContext<'_>) -> Eval<BigRational> {
    let one = |b: bool| BigRational::from_integer(BigInt::from(u8::from(b)));
    if !a.mentions_qubits() {
        return eval_classical(a, &[], c, ctx).map(one);
    }
    let support = c.quantum.support(ctx.support_cap).map_err(|e| e.to_string())?;
    let mut hits = 0u64;
    for v in &support {
        if eval_classical(a, &v.bits, c, ctx)? {
            hits += 1;
        }
    }
    Ok(BigRational::new(BigInt::from(hits), BigInt::from(support.len())))
}

/// The amplitude term `re[A](alpha)` / `im[A](alpha)`: `alpha` must select
/// exactly one valuation of `A`, and `A` must be a product factor.
fn amplitude(qs: &[Slot], a: &Classical, real: bool, c: &Configuration, ctx: EvalContext<'_>) -> Eval<Num> {
    let ids = qs.iter().map(|&s| qubit(s, c, ctx)).collect::<Eval<Vec<_>>>()?;
    let names = || {
        qs.iter()
            .map(|&s| ctx.program.slot_name(s))
            .collect::<Vec<_>>()
            .join(", ")
    };
    if ids.len() as u32 > ctx.support_cap {
        return Err(format!(
            "amplitude term over {} qubits exceeds the support cap {}",
            ids.len(),
            ctx.support_cap
        ));
    }
    let mut bits = vec![false; c.quantum.num_qubits()];
    let mut selected = Vec::new();
    for v in 0u64..(1u64 << ids.len()) {
        let value: Vec<bool> = (0..ids.len()).map(|j| v >> (ids.len() - 1 - j) & 1 == 1).collect();
        for (&q, &b) in ids.iter().zip(&value) {
            bits[q] = b;
        }
        if eval_classical(a, &bits, c, ctx)? {
            selected.push(value);
        }
    }
    if selected.len() != 1 {
        return Err(format!(
            "amplitude selector over ({}) must pick exactly one valuation, it picks {}",
            names(),
            selected.len()
        ));
    }
    let amp = c
        .quantum
        .factor_amplitude(&ids, &selected[0], ctx.support_cap)
        .map_err(|e| e.to_string())?;
    let FactorAmplitude::NonZero(amp) = amp else {
        return Ok(Num::Exact(BigRational::zero()));
    };
    let (re, im) = amp.phase.components();
    let comp = if real { re } else { im };
    if comp == 0 {
        return Ok(Num::Exact(BigRational::zero()));
    }
    if amp.halflog % 2 == 0 {
        let denom = BigInt::one() << (amp.halflog / 2) as usize;
        return Ok(Num::Exact(BigRational::new(BigInt::from(comp), denom)));
    }
    Ok(Num::Approx(comp as f64 * amp.magnitude()))
}

pub fn eval_term(t: &Term, c: &Configuration, ctx: EvalContext<'_>) -> Eval<Num> {
    match t {
        Term::Var(s) => match c.get(*s) {
            Value::Int(i) => Ok(Num::Exact(BigRational::from_integer(BigInt::from(*i)))),
            Value::Real(r) => Ok(Num::Approx(*r)),
            other => Err(format!("`{}` is not numeric ({other})", ctx.program.slot_name(*s))),
        },
        Term::Literal(r) => Ok(Num::Exact(r.clone())),
        Term::Sum(a, b) => Ok(eval_term(a, c, ctx)?.combine(eval_term(b, c, ctx)?, |x, y| x + y, |x, y| x + y)),
        Term::Prod(a, b) => Ok(eval_term(a, c, ctx)?.combine(eval_term(b, c, ctx)?, |x, y| x * y, |x, y| x * y)),
        Term::Re(qs, a) => amplitude(qs, a, true, c, ctx),
        Term::Im(qs, a) => amplitude(qs, a, false, c, ctx),
        Term::Prob(a) => probability(a, c, ctx).map(Num::Exact),
    }
}

pub fn eval_state(f: &StateFormula, c: &Configuration, ctx: EvalContext<'_>) -> Eval<bool> {
    match f {
        StateFormula::Bottom => Ok(false),
        StateFormula::Leq(a, b) => Ok(eval_term(a, c, ctx)?.leq(&eval_term(b, c, ctx)?)),
        StateFormula::Implies(a, b) => implies(eval_state(a, c, ctx), || eval_state(b, c, ctx)),
        StateFormula::Lifted(a) => holds_everywhere(a, c, ctx),
        StateFormula::Unentangled(qs) => {
            let ids = qs.iter().map(|&s| qubit(s, c, ctx)).collect::<Eval<Vec<_>>>()?;
            c.quantum.is_unentangled(&ids).map_err(|e| e.to_string())
        }
    }
}
