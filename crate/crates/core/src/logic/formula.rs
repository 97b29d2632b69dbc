//! Layered QCTL syntax and the desugaring from typed property expressions.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::frontend::ast::{AmpPart, BinOp, DataType, TemporalOp};
use crate::frontend::{Slot, TExpr, TExprKind, TypedProgram};

/// Propositional formula over qubit valuations and the classical store.
#[derive(Clone, Debug, PartialEq)]
pub enum Classical {
    Bottom,
    /// `qb(q)`: the bit of `q` in the valuation.
    Qubit(Slot),
    /// A boolean store expression without qubit atoms.
    Atom(TExpr),
    Implies(Box<Classical>, Box<Classical>),
}

/// Real-valued term.
#[derive(Clone, Debug, PartialEq)]
pub enum Term {
    /// Numeric store variable: exact for integers, approximate for reals.
    Var(Slot),
    Literal(BigRational),
    Sum(Box<Term>, Box<Term>),
    Prod(Box<Term>, Box<Term>),
    /// `re[A](alpha)`: real part of the amplitude of the single valuation
    /// of `A` selected by `alpha`, in the factor state on `A`.
    Re(Vec<Slot>, Classical),
    Im(Vec<Slot>, Classical),
    /// `P(alpha)`: probability that a measurement of every qubit satisfies `alpha`.
    Prob(Classical),
}

/// Formula about a single configuration.
#[derive(Clone, Debug, PartialEq)]
pub enum StateFormula {
    Leq(Term, Term),
    Bottom,
    Implies(Box<StateFormula>, Box<StateFormula>),
    /// `alpha` holds on every support valuation.
    Lifted(Classical),
    Unentangled(Vec<Slot>),
}

/// Temporal formula over state formulas `S`; only the primitive forms.
#[derive(Clone, Debug, PartialEq)]
pub enum Ctl<S> {
    State(S),
    Implies(Box<Ctl<S>>, Box<Ctl<S>>),
    EX(Box<Ctl<S>>),
    EU(Box<Ctl<S>>, Box<Ctl<S>>),
    AF(Box<Ctl<S>>),
}

/// State formulas usable under [`Ctl`]: they must have a falsity constant.
pub trait Atomic: Clone {
    fn bottom() -> Self;
    fn is_bottom(&self) -> bool;
}

impl Atomic for StateFormula {
    fn bottom() -> Self {
        StateFormula::Bottom
    }

    fn is_bottom(&self) -> bool {
        *self == StateFormula::Bottom
    }
}

impl Classical {
    #[allow(clippy::should_implement_trait)] // a constructor beside and/or/implies
    pub fn not(a: Classical) -> Classical {
        Classical::Implies(Box::new(a), Box::new(Classical::Bottom))
    }

    pub fn and(a: Classical, b: Classical) -> Classical {
        Classical::not(Classical::Implies(Box::new(a), Box::new(Classical::not(b))))
    }

    pub fn or(a: Classical, b: Classical) -> Classical {
        Classical::Implies(Box::new(Classical::not(a)), Box::new(b))
    }

    pub fn iff(a: Classical, b: Classical) -> Classical {
        let ab = Classical::Implies(Box::new(a.clone()), Box::new(b.clone()));
        let ba = Classical::Implies(Box::new(b), Box::new(a));
        Classical::and(ab, ba)
    }

    pub fn mentions_qubits(&self) -> bool {
        match self {
            Classical::Qubit(_) => true,
            Classical::Implies(a, b) => a.mentions_qubits() || b.mentions_qubits(),
            Classical::Bottom | Classical::Atom(_) => false,
        }
    }
}

impl StateFormula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(a: StateFormula) -> StateFormula {
        StateFormula::Implies(Box::new(a), Box::new(StateFormula::Bottom))
    }

    pub fn and(a: StateFormula, b: StateFormula) -> StateFormula {
        StateFormula::not(StateFormula::Implies(Box::new(a), Box::new(StateFormula::not(b))))
    }

    pub fn or(a: StateFormula, b: StateFormula) -> StateFormula {
        StateFormula::Implies(Box::new(StateFormula::not(a)), Box::new(b))
    }

    pub fn iff(a: StateFormula, b: StateFormula) -> StateFormula {
        let ab = StateFormula::Implies(Box::new(a.clone()), Box::new(b.clone()));
        let ba = StateFormula::Implies(Box::new(b), Box::new(a));
        StateFormula::and(ab, ba)
    }
}

impl<S: Atomic> Ctl<S> {
    pub fn bottom() -> Ctl<S> {
        Ctl::State(S::bottom())
    }

    pub fn top() -> Ctl<S> {
        Ctl::not(Ctl::bottom())
    }

    pub fn implies(a: Ctl<S>, b: Ctl<S>) -> Ctl<S> {
        Ctl::Implies(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Ctl<S>) -> Ctl<S> {
        Ctl::implies(a, Ctl::bottom())
    }

    pub fn and(a: Ctl<S>, b: Ctl<S>) -> Ctl<S> {
        Ctl::not(Ctl::implies(a, Ctl::not(b)))
    }

    pub fn or(a: Ctl<S>, b: Ctl<S>) -> Ctl<S> {
        Ctl::implies(Ctl::not(a), b)
    }

    pub fn iff(a: Ctl<S>, b: Ctl<S>) -> Ctl<S> {
        Ctl::and(Ctl::implies(a.clone(), b.clone()), Ctl::implies(b, a))
    }

    pub fn ex(a: Ctl<S>) -> Ctl<S> {
        Ctl::EX(Box::new(a))
    }

    pub fn eu(a: Ctl<S>, b: Ctl<S>) -> Ctl<S> {
        Ctl::EU(Box::new(a), Box::new(b))
    }

    pub fn af(a: Ctl<S>) -> Ctl<S> {
        Ctl::AF(Box::new(a))
    }

    pub fn ef(a: Ctl<S>) -> Ctl<S> {
        Ctl::eu(Ctl::top(), a)
    }

    pub fn ag(a: Ctl<S>) -> Ctl<S> {
        Ctl::not(Ctl::ef(Ctl::not(a)))
    }

    pub fn ax(a: Ctl<S>) -> Ctl<S> {
        Ctl::not(Ctl::ex(Ctl::not(a)))
    }

    pub fn eg(a: Ctl<S>) -> Ctl<S> {
        Ctl::not(Ctl::af(Ctl::not(a)))
    }

    /// `A[a U b] = not E[not b U (not a and not b)] and AF b`.
    pub fn au(a: Ctl<S>, b: Ctl<S>) -> Ctl<S> {
        let nb = Ctl::not(b.clone());
        let stuck = Ctl::and(Ctl::not(a), nb.clone());
        Ctl::and(Ctl::not(Ctl::eu(nb, stuck)), Ctl::af(b))
    }

    /// Peel `x imp bottom` once.
    fn negated(&self) -> Option<&Ctl<S>> {
        match self {
            Ctl::Implies(a, b) if matches!(&**b, Ctl::State(s) if s.is_bottom()) => Some(a),
            _ => None,
        }
    }

    /// True if the formula is, under its outer negations, an existential
    /// claim whose truth is shown by a single path.
    pub fn is_existential(&self) -> bool {
        let mut f = self;
        let mut positive = true;
        while let Some(inner) = f.negated() {
            f = inner;
            positive = !positive;
        }
        match f {
            Ctl::EX(_) | Ctl::EU(..) => positive,
            Ctl::AF(_) => !positive,
            _ => false,
        }
    }

    /// State formulas in preorder; [`crate::logic::Focus`] indexes into this.
    pub fn states(&self) -> Vec<&S> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            match f {
                Ctl::State(s) => out.push(s),
                Ctl::Implies(a, b) | Ctl::EU(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
                Ctl::EX(a) | Ctl::AF(a) => stack.push(a),
            }
        }
        out
    }
}

fn has(e: &TExpr, pred: fn(&TExprKind) -> bool) -> bool {
    e.any(&mut |x| pred(&x.kind))
}

fn is_temporal(k: &TExprKind) -> bool {
    matches!(k, TExprKind::Temporal(..))
}

fn is_quantum(k: &TExprKind) -> bool {
    matches!(
        k,
        TExprKind::QubitAtom(_) | TExprKind::Prob(_) | TExprKind::Amp(..) | TExprKind::Unentangled(_)
    )
}

fn is_term_level(k: &TExprKind) -> bool {
    matches!(k, TExprKind::Prob(_) | TExprKind::Amp(..) | TExprKind::Unentangled(_))
}

fn is_bool_pair(a: &TExpr, b: &TExpr) -> bool {
    a.ty == DataType::Bool && b.ty == DataType::Bool
}

/// Desugar a typed boolean property into primitive temporal form.
pub fn lower_temporal(e: &TExpr) -> Ctl<StateFormula> {
    if !has(e, is_temporal) {
        return Ctl::State(lower_state(e));
    }
    let l = lower_temporal;
    match &e.kind {
        TExprKind::Not(a) => Ctl::not(l(a)),
        TExprKind::Binary(op, a, b) if is_bool_pair(a, b) => match op {
            BinOp::And => Ctl::and(l(a), l(b)),
            BinOp::Or => Ctl::or(l(a), l(b)),
            BinOp::Imp => Ctl::implies(l(a), l(b)),
            BinOp::Eq => Ctl::iff(l(a), l(b)),
            BinOp::Ne => Ctl::not(Ctl::iff(l(a), l(b))),
            _ => unreachable!("typed boolean operator {op:?}"),
        },
        TExprKind::Temporal(op, args) => {
            let a = l(&args[0]);
            match op {
                TemporalOp::EX => Ctl::ex(a),
                TemporalOp::AX => Ctl::ax(a),
                TemporalOp::EF => Ctl::ef(a),
                TemporalOp::AG => Ctl::ag(a),
                TemporalOp::AF => Ctl::af(a),
                TemporalOp::EG => Ctl::eg(a),
                TemporalOp::EU => Ctl::eu(a, l(&args[1])),
                TemporalOp::AU => Ctl::au(a, l(&args[1])),
            }
        }
        other => unreachable!("temporal operator under {other:?}"),
    }
}

/// Desugar a typed boolean formula without temporal operators. Maximal
/// subformulas without `P`, amplitude or `unentangled` terms are lifted
/// whole, so `qb(q) imp qb(r)` is required per valuation.
pub fn lower_state(e: &TExpr) -> StateFormula {
    if !has(e, is_term_level) {
        return StateFormula::Lifted(lower_classical(e));
    }
    let l = lower_state;
    match &e.kind {
        TExprKind::Not(a) => StateFormula::not(l(a)),
        TExprKind::Unentangled(qs) => StateFormula::Unentangled(qs.clone()),
        TExprKind::Binary(op, a, b) if is_bool_pair(a, b) => match op {
            BinOp::And => StateFormula::and(l(a), l(b)),
            BinOp::Or => StateFormula::or(l(a), l(b)),
            BinOp::Imp => StateFormula::Implies(Box::new(l(a)), Box::new(l(b))),
            BinOp::Eq => StateFormula::iff(l(a), l(b)),
            BinOp::Ne => StateFormula::not(StateFormula::iff(l(a), l(b))),
            _ => unreachable!("typed boolean operator {op:?}"),
        },
        TExprKind::Binary(op, a, b) => {
            let (a, b) = (lower_term(a), lower_term(b));
            let leq = |x: &Term, y: &Term| StateFormula::Leq(x.clone(), y.clone());
            match op {
                BinOp::Le => leq(&a, &b),
                BinOp::Ge => leq(&b, &a),
                BinOp::Lt => StateFormula::not(leq(&b, &a)),
                BinOp::Gt => StateFormula::not(leq(&a, &b)),
                BinOp::Eq => StateFormula::and(leq(&a, &b), leq(&b, &a)),
                BinOp::Ne => StateFormula::not(StateFormula::and(leq(&a, &b), leq(&b, &a))),
                _ => unreachable!("numeric comparison {op:?}"),
            }
        }
        other => unreachable!("state formula {other:?}"),
    }
}

pub fn lower_classical(e: &TExpr) -> Classical {
    if !has(e, is_quantum) {
        return Classical::Atom(e.clone());
    }
    let l = lower_classical;
    match &e.kind {
        TExprKind::QubitAtom(s) => Classical::Qubit(*s),
        TExprKind::Not(a) => Classical::not(l(a)),
        TExprKind::Binary(op, a, b) if is_bool_pair(a, b) => match op {
            BinOp::And => Classical::and(l(a), l(b)),
            BinOp::Or => Classical::or(l(a), l(b)),
            BinOp::Imp => Classical::Implies(Box::new(l(a)), Box::new(l(b))),
            BinOp::Eq => Classical::iff(l(a), l(b)),
            BinOp::Ne => Classical::not(Classical::iff(l(a), l(b))),
            _ => unreachable!("typed boolean operator {op:?}"),
        },
        other => unreachable!("classical formula {other:?}"),
    }
}

fn literal(v: i64) -> Term {
    Term::Literal(BigRational::from_integer(BigInt::from(v)))
}

pub fn lower_term(e: &TExpr) -> Term {
    let bx = |e: &TExpr| Box::new(lower_term(e));
    match &e.kind {
        TExprKind::Int(v) => literal(*v),
        TExprKind::Real(r) => Term::Literal(r.to_rational()),
        TExprKind::Var(s) => Term::Var(*s),
        TExprKind::Widen(a) => lower_term(a),
        TExprKind::Neg(a) => Term::Prod(Box::new(literal(-1)), bx(a)),
        TExprKind::Binary(BinOp::Add, a, b) => Term::Sum(bx(a), bx(b)),
        TExprKind::Binary(BinOp::Sub, a, b) => Term::Sum(bx(a), Box::new(Term::Prod(Box::new(literal(-1)), bx(b)))),
        TExprKind::Binary(BinOp::Mul, a, b) => Term::Prod(bx(a), bx(b)),
        TExprKind::Prob(a) => Term::Prob(lower_classical(a)),
        TExprKind::Amp(AmpPart::Re, qs, a) => Term::Re(qs.clone(), lower_classical(a)),
        TExprKind::Amp(AmpPart::Im, qs, a) => Term::Im(qs.clone(), lower_classical(a)),
        other => unreachable!("numeric term {other:?}"),
    }
}

// ---- rendering ----

fn slots_text(program: &TypedProgram, qs: &[Slot]) -> String {
    qs.iter().map(|&s| program.slot_name(s)).collect::<Vec<_>>().join(", ")
}

impl Classical {
    pub fn render(&self, program: &TypedProgram) -> String {
        match self {
            Classical::Bottom => "false".into(),
            Classical::Qubit(s) => format!("qb({})", program.slot_name(*s)),
            Classical::Atom(e) => program.expr_text(e, None),
            Classical::Implies(a, b) if **b == Classical::Bottom => format!("(not {})", a.render(program)),
            Classical::Implies(a, b) => format!("({} imp {})", a.render(program), b.render(program)),
        }
    }
}

impl Term {
    pub fn render(&self, program: &TypedProgram) -> String {
        match self {
            Term::Var(s) => program.slot_name(*s),
            Term::Literal(r) => r.to_string(),
            Term::Sum(a, b) => format!("({} + {})", a.render(program), b.render(program)),
            Term::Prod(a, b) => format!("({} * {})", a.render(program), b.render(program)),
            Term::Re(qs, a) => format!("re[{}]({})", slots_text(program, qs), a.render(program)),
            Term::Im(qs, a) => format!("im[{}]({})", slots_text(program, qs), a.render(program)),
            Term::Prob(a) => format!("P({})", a.render(program)),
        }
    }
}

impl StateFormula {
    pub fn render(&self, program: &TypedProgram) -> String {
        match self {
            StateFormula::Leq(a, b) => format!("({} <= {})", a.render(program), b.render(program)),
            StateFormula::Bottom => "false".into(),
            StateFormula::Implies(a, b) if **b == StateFormula::Bottom => {
                format!("(not {})", a.render(program))
            }
            StateFormula::Implies(a, b) => format!("({} imp {})", a.render(program), b.render(program)),
            StateFormula::Lifted(a) => a.render(program),
            StateFormula::Unentangled(qs) => format!("unentangled({})", slots_text(program, qs)),
        }
    }
}
