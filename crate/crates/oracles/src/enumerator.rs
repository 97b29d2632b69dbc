//! Brute-force path enumerator.
//!
//! Interprets the *untyped* syntax tree directly: control is a stack of
//! continuations per process, the store is a name-keyed map, and the quantum
//! state is the dense [`StateVector`]. It shares nothing with the engine's
//! compiled code, slots or tableau, so tree sizes and leaf stores computed
//! here are an independent check of the execution semantics:
//! rendezvous channels, `if` falling through when no guard holds, `do`
//! exiting, qubit sends moving the reference, and random measurement
//! outcomes each becoming a branch.

use std::collections::BTreeMap;

use stabmc_core::frontend::ast::{BinOp, DataType, Expr, ExprKind, Program, Stmt, StmtKind};
use stabmc_core::stabilizer::Gate;

use crate::statevector::{Outcome, StateVector};

#[derive(Clone, Debug, PartialEq)]
pub enum Val {
    Int(i64),
    Bool(bool),
    Real(f64),
    Qubit(Option<usize>),
    Chan,
}

#[derive(Clone, Copy, Debug)]
enum Frame<'a> {
    /// Statements still to run.
    Seq(&'a [Stmt]),
    /// A `do` statement waiting to re-evaluate its guards.
    Loop(&'a Stmt),
}

#[derive(Clone, Debug)]
enum Proc<'a> {
    Running(Vec<Frame<'a>>),
    Done,
    Faulted,
}

/// Key: `(Some(process), name)` for locals, `(None, name)` for shared.
type Store = BTreeMap<(Option<String>, String), Val>;

#[derive(Clone, Debug)]
struct State<'a> {
    procs: Vec<Proc<'a>>,
    store: Store,
    qubits: StateVector,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub nodes: u64,
    pub leaves: u64,
    pub terminated: u64,
    pub deadlocked: u64,
    pub faulted: u64,
    pub max_depth: usize,
    /// Number of nodes expanded by a random measurement.
    pub random_measurements: u64,
}

/// Store of a leaf, readable by `(process, name)`.
pub struct Leaf<'s> {
    store: &'s Store,
    pub terminated: bool,
}

impl Leaf<'_> {
    pub fn get(&self, process: &str, name: &str) -> Val {
        self.store
            .get(&(Some(process.to_string()), name.to_string()))
            .or_else(|| self.store.get(&(None, name.to_string())))
            .cloned()
            .unwrap_or_else(|| panic!("no variable {process}.{name}"))
    }
}

struct Walker<'a, F> {
    program: &'a Program,
    summary: Summary,
    max_depth: usize,
    on_leaf: F,
}

/// Enumerate every execution of `program`, calling `on_leaf` for each leaf
/// in depth-first order. Panics if a path exceeds `max_depth` steps.
pub fn enumerate<F: FnMut(&Leaf<'_>)>(program: &Program, max_depth: usize, on_leaf: F) -> Summary {
    let mut store = Store::new();
    let default = |ty: DataType| match ty {
        DataType::Integer => Val::Int(0),
        DataType::Bool => Val::Bool(false),
        DataType::Real => Val::Real(0.0),
        DataType::Qubit => Val::Qubit(None),
        DataType::Channel(_) => Val::Chan,
    };
    for d in &program.shared {
        store.insert((None, d.name.name.clone()), default(d.ty));
    }
    for p in &program.processes {
        for d in &p.locals {
            store.insert((Some(p.name.name.clone()), d.name.name.clone()), default(d.ty));
        }
    }
    let procs = program
        .processes
        .iter()
        .map(|p| normalize(vec![Frame::Seq(&p.body)]))
        .collect();
    let mut w = Walker {
        program,
        summary: Summary::default(),
        max_depth,
        on_leaf,
    };
    w.visit(
        State {
            procs,
            store,
            qubits: StateVector::new(0),
        },
        0,
    );
    w.summary
}

/// Drop finished frames and unfold a `do` reached in sequence into a loop frame.
fn normalize(mut frames: Vec<Frame<'_>>) -> Proc<'_> {
    loop {
        match frames.last().copied() {
            None => return Proc::Done,
            Some(Frame::Seq([])) => {
                frames.pop();
            }
            Some(Frame::Seq([first, rest @ ..])) if matches!(first.kind, StmtKind::Do(_)) => {
                *frames.last_mut().unwrap() = Frame::Seq(rest);
                frames.push(Frame::Loop(first));
            }
            Some(_) => return Proc::Running(frames),
        }
    }
}

fn current<'a>(p: &Proc<'a>) -> Option<&'a Stmt> {
    match p {
        Proc::Running(frames) => match frames.last()? {
            Frame::Seq(s) => s.first(),
            Frame::Loop(s) => Some(s),
        },
        _ => None,
    }
}

/// Control after finishing the current basic statement.
fn advanced<'a>(p: &Proc<'a>) -> Proc<'a> {
    let Proc::Running(frames) = p else { unreachable!() };
    let mut frames = frames.clone();
    if let Some(Frame::Seq(s)) = frames.last_mut() {
        *s = &s[1..];
    }
    normalize(frames)
}

impl<'a, F: FnMut(&Leaf<'_>)> Walker<'a, F> {
    fn pname(&self, i: usize) -> String {
        self.program.processes[i].name.name.clone()
    }

    fn key(&self, s: &State<'a>, i: usize, name: &str) -> (Option<String>, String) {
        let local = (Some(self.pname(i)), name.to_string());
        if s.store.contains_key(&local) {
            local
        } else {
            (None, name.to_string())
        }
    }

    fn eval(&self, s: &State<'a>, i: usize, e: &Expr) -> Option<Val> {
        Some(match &e.kind {
            ExprKind::Bool(b) => Val::Bool(*b),
            ExprKind::Int(v) => Val::Int(*v),
            ExprKind::Real(r) => Val::Real(r.to_f64()),
            ExprKind::Var(path) => {
                let key = match &path.process {
                    Some(p) => (Some(p.name.clone()), path.name.name.clone()),
                    None => self.key(s, i, &path.name.name),
                };
                s.store[&key].clone()
            }
            ExprKind::Not(a) => match self.eval(s, i, a)? {
                Val::Bool(b) => Val::Bool(!b),
                _ => return None,
            },
            ExprKind::Neg(a) => match self.eval(s, i, a)? {
                Val::Int(v) => Val::Int(v.checked_neg()?),
                Val::Real(v) => Val::Real(-v),
                _ => return None,
            },
            ExprKind::Binary(op, a, b) => {
                let x = self.eval(s, i, a)?;
                let y = self.eval(s, i, b)?;
                let real = |v: &Val| match v {
                    Val::Int(n) => Some(*n as f64),
                    Val::Real(r) => Some(*r),
                    _ => None,
                };
                match (op, &x, &y) {
                    (BinOp::And, Val::Bool(p), Val::Bool(q)) => Val::Bool(*p && *q),
                    (BinOp::Or, Val::Bool(p), Val::Bool(q)) => Val::Bool(*p || *q),
                    (BinOp::Imp, Val::Bool(p), Val::Bool(q)) => Val::Bool(!*p || *q),
                    (BinOp::Eq, Val::Bool(p), Val::Bool(q)) => Val::Bool(p == q),
                    (BinOp::Ne, Val::Bool(p), Val::Bool(q)) => Val::Bool(p != q),
                    (BinOp::Add, Val::Int(p), Val::Int(q)) => Val::Int(p.checked_add(*q)?),
                    (BinOp::Sub, Val::Int(p), Val::Int(q)) => Val::Int(p.checked_sub(*q)?),
                    (BinOp::Mul, Val::Int(p), Val::Int(q)) => Val::Int(p.checked_mul(*q)?),
                    (BinOp::Eq, Val::Int(p), Val::Int(q)) => Val::Bool(p == q),
                    (BinOp::Ne, Val::Int(p), Val::Int(q)) => Val::Bool(p != q),
                    (BinOp::Lt, Val::Int(p), Val::Int(q)) => Val::Bool(p < q),
                    (BinOp::Le, Val::Int(p), Val::Int(q)) => Val::Bool(p <= q),
                    (BinOp::Gt, Val::Int(p), Val::Int(q)) => Val::Bool(p > q),
                    (BinOp::Ge, Val::Int(p), Val::Int(q)) => Val::Bool(p >= q),
                    _ => {
                        let (p, q) = (real(&x)?, real(&y)?);
                        match op {
                            BinOp::Add => Val::Real(p + q),
                            BinOp::Sub => Val::Real(p - q),
                            BinOp::Mul => Val::Real(p * q),
                            BinOp::Eq => Val::Bool(p == q),
                            BinOp::Ne => Val::Bool(p != q),
                            BinOp::Lt => Val::Bool(p < q),
                            BinOp::Le => Val::Bool(p <= q),
                            BinOp::Gt => Val::Bool(p > q),
                            BinOp::Ge => Val::Bool(p >= q),
                            _ => return None,
                        }
                    }
                }
            }
            _ => return None,
        })
    }

    fn qubit(&self, s: &State<'a>, i: usize, name: &str) -> Option<usize> {
        match s.store[&self.key(s, i, name)] {
            Val::Qubit(q) => q,
            _ => None,
        }
    }

    fn set(&self, s: &mut State<'a>, i: usize, name: &str, v: Val) {
        let k = self.key(s, i, name);
        s.store.insert(k, v);
    }

    fn successors(&self, s: &State<'a>) -> (Vec<State<'a>>, bool) {
        let mut out = Vec::new();
        let mut random = false;
        for i in 0..s.procs.len() {
            let Some(stmt) = current(&s.procs[i]) else { continue };
            let fault = |s: &State<'a>| {
                let mut n = s.clone();
                n.procs[i] = Proc::Faulted;
                n
            };
            match &stmt.kind {
                StmtKind::If(branches) | StmtKind::Do(branches) => {
                    let mut chosen = Vec::new();
                    let mut failed = false;
                    for (k, b) in branches.iter().enumerate() {
                        match self.eval(s, i, &b.guard) {
                            Some(Val::Bool(true)) => chosen.push(k),
                            Some(_) => {}
                            None => failed = true,
                        }
                    }
                    if failed {
                        out.push(fault(s));
                        continue;
                    }
                    let is_do = matches!(stmt.kind, StmtKind::Do(_));
                    let Proc::Running(frames) = &s.procs[i] else {
                        unreachable!()
                    };
                    if chosen.is_empty() {
                        let mut f = frames.clone();
                        if is_do {
                            f.pop();
                        } else if let Some(Frame::Seq(rest)) = f.last_mut() {
                            *rest = &rest[1..];
                        }
                        let mut n = s.clone();
                        n.procs[i] = normalize(f);
                        out.push(n);
                    }
                    for k in chosen {
                        let mut f = frames.clone();
                        if !is_do {
                            if let Some(Frame::Seq(rest)) = f.last_mut() {
                                *rest = &rest[1..];
                            }
                        }
                        f.push(Frame::Seq(&branches[k].body));
                        let mut n = s.clone();
                        n.procs[i] = normalize(f);
                        out.push(n);
                    }
                }
                StmtKind::Send { channel, value } => {
                    for j in i + 1..s.procs.len() {
                        if let Some(Stmt {
                            kind: StmtKind::Receive { channel: ch, target },
                            ..
                        }) = current(&s.procs[j])
                        {
                            if ch.name == channel.name {
                                out.push(self.transfer(s, i, value, j, &target.name));
                            }
                        }
                    }
                }
                StmtKind::Receive { channel, target } => {
                    for j in i + 1..s.procs.len() {
                        if let Some(Stmt {
                            kind: StmtKind::Send { channel: ch, value },
                            ..
                        }) = current(&s.procs[j])
                        {
                            if ch.name == channel.name {
                                out.push(self.transfer(s, j, value, i, &target.name));
                            }
                        }
                    }
                }
                StmtKind::Measure { target, qubit } => {
                    let Some(q) = self.qubit(s, i, &qubit.name) else {
                        out.push(fault(s));
                        continue;
                    };
                    let outcomes = match s.qubits.measure(q) {
                        Outcome::Certain(b) => vec![(b, false)],
                        Outcome::Even => vec![(false, true), (true, true)],
                        Outcome::Other => panic!("non-stabilizer statistics"),
                    };
                    for (bit, collapse) in outcomes {
                        random |= collapse;
                        let mut n = s.clone();
                        if collapse {
                            n.qubits.collapse(q, bit);
                        }
                        self.set(&mut n, i, &target.name, Val::Bool(bit));
                        n.procs[i] = advanced(&s.procs[i]);
                        out.push(n);
                    }
                }
                _ => {
                    let mut n = s.clone();
                    let ok = self.basic(&mut n, i, stmt);
                    n.procs[i] = if ok { advanced(&s.procs[i]) } else { Proc::Faulted };
                    out.push(n);
                }
            }
        }
        (out, random)
    }

    fn transfer(&self, s: &State<'a>, from: usize, value: &Expr, to: usize, target: &str) -> State<'a> {
        let mut n = s.clone();
        let v = match &value.kind {
            ExprKind::Var(p)
                if p.process.is_none()
                    && matches!(s.store.get(&self.key(s, from, &p.name.name)), Some(Val::Qubit(_))) =>
            {
                let q = self.qubit(s, from, &p.name.name);
                self.set(&mut n, from, &p.name.name, Val::Qubit(None));
                q.map(|q| Val::Qubit(Some(q)))
            }
            _ => self.eval(s, from, value),
        };
        let Some(mut v) = v else {
            n.procs[from] = Proc::Faulted;
            return n;
        };
        // integers sent on real channels arrive as reals
        if let (Val::Int(x), Some(Val::Real(_))) = (&v, s.store.get(&self.key(s, to, target))) {
            v = Val::Real(*x as f64);
        }
        self.set(&mut n, to, target, v);
        n.procs[from] = advanced(&s.procs[from]);
        n.procs[to] = advanced(&s.procs[to]);
        n
    }

    fn basic(&self, n: &mut State<'a>, i: usize, stmt: &Stmt) -> bool {
        match &stmt.kind {
            StmtKind::Assign { target, value } => {
                let Some(mut v) = self.eval(n, i, value) else {
                    return false;
                };
                if let (Val::Int(x), Some(Val::Real(_))) = (&v, n.store.get(&self.key(n, i, &target.name))) {
                    v = Val::Real(*x as f64);
                }
                self.set(n, i, &target.name, v);
            }
            StmtKind::NewQubit { target } => {
                let q = n.qubits.extend();
                self.set(n, i, &target.name, Val::Qubit(Some(q)));
            }
            StmtKind::Gate { gate, qubit } => {
                let Some(q) = self.qubit(n, i, &qubit.name) else {
                    return false;
                };
                match gate {
                    Gate::Had => n.qubits.had(q),
                    Gate::Ph => n.qubits.ph(q),
                    Gate::X => n.qubits.x(q),
                }
            }
            StmtKind::CNot { control, target } => {
                let (Some(c), Some(t)) = (self.qubit(n, i, &control.name), self.qubit(n, i, &target.name)) else {
                    return false;
                };
                if c == t {
                    return false;
                }
                n.qubits.cnot(c, t);
            }
            StmtKind::Skip => {}
            _ => unreachable!(),
        }
        true
    }

    fn visit(&mut self, s: State<'a>, depth: usize) {
        self.summary.nodes += 1;
        self.summary.max_depth = self.summary.max_depth.max(depth);
        let (succ, random) = self.successors(&s);
        if succ.is_empty() {
            self.summary.leaves += 1;
            let terminated = s.procs.iter().all(|p| matches!(p, Proc::Done));
            if s.procs.iter().any(|p| matches!(p, Proc::Faulted)) {
                self.summary.faulted += 1;
            } else if terminated {
                self.summary.terminated += 1;
            } else {
                self.summary.deadlocked += 1;
            }
            (self.on_leaf)(&Leaf {
                store: &s.store,
                terminated,
            });
            return;
        }
        assert!(depth < self.max_depth, "path longer than {} steps", self.max_depth);
        if random {
            self.summary.random_measurements += 1;
        }
        for n in succ {
            self.visit(n, depth + 1);
        }
    }
}
