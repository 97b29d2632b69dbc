//! Name resolution and static typing.
//!
//! Every variable reference becomes a [`Slot`] (shared store or one process's
//! local store, plus an index), every expression carries its [`DataType`],
//! and integer operands mixed into real arithmetic get an explicit
//! [`TExprKind::Widen`] so the evaluators never have to re-derive types.

use super::ast::*;
use super::diag::{Diagnostic, Loc};
use crate::stabilizer::Gate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scope {
    Shared,
    /// Locals of the process with this declaration index.
    Local(usize),
}

/// Storage location of a variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub scope: Scope,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VarInfo {
    pub name: String,
    pub ty: DataType,
    pub loc: Loc,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TExpr {
    pub kind: TExprKind,
    pub ty: DataType,
    pub loc: Loc,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TExprKind {
    Bool(bool),
    Int(i64),
    Real(RealLit),
    Var(Slot),
    Not(Box<TExpr>),
    Neg(Box<TExpr>),
    Binary(BinOp, Box<TExpr>, Box<TExpr>),
    /// Integer operand used where a real is expected.
    Widen(Box<TExpr>),
    QubitAtom(Slot),
    Prob(Box<TExpr>),
    Amp(AmpPart, Vec<Slot>, Box<TExpr>),
    Unentangled(Vec<Slot>),
    Temporal(TemporalOp, Vec<TExpr>),
}

impl TExpr {
    fn new(kind: TExprKind, ty: DataType, loc: Loc) -> TExpr {
        TExpr { kind, ty, loc }
    }

    /// Direct subexpressions.
    pub fn children(&self) -> Vec<&TExpr> {
        match &self.kind {
            TExprKind::Not(e) | TExprKind::Neg(e) | TExprKind::Widen(e) | TExprKind::Prob(e) => {
                vec![e]
            }
            TExprKind::Amp(_, _, e) => vec![e],
            TExprKind::Binary(_, a, b) => vec![a, b],
            TExprKind::Temporal(_, args) => args.iter().collect(),
            _ => Vec::new(),
        }
    }

    /// True if `pred` holds for this node or any node below it.
    pub fn any(&self, pred: &mut impl FnMut(&TExpr) -> bool) -> bool {
        pred(self) || self.children().into_iter().any(|c| c.any(pred))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TStmt {
    pub kind: TStmtKind,
    pub loc: Loc,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TStmtKind {
    Assign {
        target: Slot,
        value: TExpr,
    },
    NewQubit {
        target: Slot,
    },
    Gate {
        gate: Gate,
        qubit: Slot,
    },
    CNot {
        control: Slot,
        target: Slot,
    },
    Measure {
        target: Slot,
        qubit: Slot,
    },
    /// For qubit channels `value` is always a plain qubit variable.
    Send {
        channel: Slot,
        value: TExpr,
    },
    Receive {
        channel: Slot,
        target: Slot,
    },
    If(Vec<TBranch>),
    Do(Vec<TBranch>),
    Skip,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TBranch {
    pub guard: TExpr,
    pub body: Vec<TStmt>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypedProcess {
    pub name: String,
    pub locals: Vec<VarInfo>,
    pub body: Vec<TStmt>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypedProperty {
    pub kind: PropertyKind,
    pub text: String,
    pub loc: Loc,
    pub formula: TExpr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypedProgram {
    pub name: String,
    pub shared: Vec<VarInfo>,
    pub processes: Vec<TypedProcess>,
    pub properties: Vec<TypedProperty>,
}

impl TypedProgram {
    pub fn var(&self, slot: Slot) -> &VarInfo {
        match slot.scope {
            Scope::Shared => &self.shared[slot.index],
            Scope::Local(p) => &self.processes[p].locals[slot.index],
        }
    }

    /// `name` for shared variables, `Proc.name` for locals.
    pub fn slot_name(&self, slot: Slot) -> String {
        match slot.scope {
            Scope::Shared => self.shared[slot.index].name.clone(),
            Scope::Local(p) => format!(
                "{}.{}",
                self.processes[p].name, self.processes[p].locals[slot.index].name
            ),
        }
    }

    pub fn process_index(&self, name: &str) -> Option<usize> {
        self.processes.iter().position(|p| p.name == name)
    }

    /// Every slot of the program: shared first, then each process's locals.
    pub fn slots(&self) -> impl Iterator<Item = Slot> + '_ {
        let shared = (0..self.shared.len()).map(|index| Slot {
            scope: Scope::Shared,
            index,
        });
        let locals = self.processes.iter().enumerate().flat_map(|(p, proc)| {
            (0..proc.locals.len()).map(move |index| Slot {
                scope: Scope::Local(p),
                index,
            })
        });
        shared.chain(locals)
    }
}

impl TypedProgram {
    /// Render `e` with source names. Locals of `current` print unqualified;
    /// all other locals print as `Proc.name`.
    pub fn expr_text(&self, e: &TExpr, current: Option<usize>) -> String {
        let name = |s: Slot| match s.scope {
            Scope::Local(p) if Some(p) == current => self.var(s).name.clone(),
            _ => self.slot_name(s),
        };
        let list = |v: &[Slot]| v.iter().map(|&s| name(s)).collect::<Vec<_>>().join(", ");
        let sub = |e: &TExpr| self.expr_text(e, current);
        match &e.kind {
            TExprKind::Bool(b) => b.to_string(),
            TExprKind::Int(v) => v.to_string(),
            TExprKind::Real(r) => r.0.clone(),
            TExprKind::Var(s) => name(*s),
            TExprKind::Not(a) => format!("(not {})", sub(a)),
            TExprKind::Neg(a) => format!("(-{})", sub(a)),
            TExprKind::Binary(op, a, b) => format!("({} {} {})", sub(a), op.spelling(), sub(b)),
            TExprKind::Widen(a) => sub(a),
            TExprKind::QubitAtom(s) => format!("qb({})", name(*s)),
            TExprKind::Prob(a) => format!("P({})", sub(a)),
            TExprKind::Amp(part, qs, a) => {
                let p = if *part == AmpPart::Re { "re" } else { "im" };
                format!("{p}[{}]({})", list(qs), sub(a))
            }
            TExprKind::Unentangled(qs) => format!("unentangled({})", list(qs)),
            TExprKind::Temporal(TemporalOp::EU, a) => format!("E[{} U {}]", sub(&a[0]), sub(&a[1])),
            TExprKind::Temporal(TemporalOp::AU, a) => format!("A[{} U {}]", sub(&a[0]), sub(&a[1])),
            TExprKind::Temporal(op, a) => format!("({op:?} {})", sub(&a[0])),
        }
    }
}

/// A program that passed the checker, with any warnings it produced.
#[derive(Clone, Debug)]
pub struct Checked {
    pub program: TypedProgram,
    pub warnings: Vec<Diagnostic>,
}

/// Where an expression is being checked.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Context {
    /// Process body of the given process.
    Process(usize),
    /// Any property formula.
    Property { final_state: bool },
    /// Argument of `P(..)` or an amplitude selector: qubit atoms and store
    /// expressions only.
    Classical,
}

struct Checker<'a> {
    program: &'a Program,
    diags: Vec<Diagnostic>,
    /// Qubit slots an amplitude selector may mention.
    amp_scope: Option<Vec<Slot>>,
}

pub fn typecheck(program: &Program) -> Result<Checked, Vec<Diagnostic>> {
    let mut c = Checker {
        program,
        diags: Vec::new(),
        amp_scope: None,
    };
    let info = |d: &VarDecl| VarInfo {
        name: d.name.name.clone(),
        ty: d.ty,
        loc: d.name.loc,
    };
    let mut processes = Vec::new();
    for (i, p) in program.processes.iter().enumerate() {
        let body = c.stmts(&p.body, i);
        processes.push(TypedProcess {
            name: p.name.name.clone(),
            locals: p.locals.iter().map(info).collect(),
            body,
        });
    }
    let mut properties = Vec::new();
    for prop in &program.properties {
        let ctx = Context::Property {
            final_state: prop.kind == PropertyKind::FinalState,
        };
        if let Some(formula) = c.expr(&prop.formula, ctx) {
            if c.expect_bool(&formula, "property") {
                properties.push(TypedProperty {
                    kind: prop.kind,
                    text: prop.text.clone(),
                    loc: prop.loc,
                    formula,
                });
            }
        }
    }
    let (errors, warnings): (Vec<_>, Vec<_>) = c.diags.into_iter().partition(|d| d.is_error());
    if !errors.is_empty() {
        return Err(errors.into_iter().chain(warnings).collect());
    }
    Ok(Checked {
        program: TypedProgram {
            name: program.name.name.clone(),
            shared: program.shared.iter().map(info).collect(),
            processes,
            properties,
        },
        warnings,
    })
}

/// Check one property formula against an already parsed `program`, e.g. a
/// formula given on the command line. Returns the typed formula and warnings.
pub fn check_formula(
    program: &Program,
    formula: &Expr,
    kind: PropertyKind,
) -> Result<(TExpr, Vec<Diagnostic>), Vec<Diagnostic>> {
    let mut c = Checker {
        program,
        diags: Vec::new(),
        amp_scope: None,
    };
    let ctx = Context::Property {
        final_state: kind == PropertyKind::FinalState,
    };
    let typed = c.expr(formula, ctx).filter(|f| c.expect_bool(f, "property"));
    let (errors, warnings): (Vec<_>, Vec<_>) = c.diags.into_iter().partition(|d| d.is_error());
    match typed {
        Some(f) if errors.is_empty() => Ok((f, warnings)),
        _ => Err(errors.into_iter().chain(warnings).collect()),
    }
}

impl Checker<'_> {
    fn error(&mut self, loc: Loc, msg: impl Into<String>) {
        self.diags.push(Diagnostic::error(loc, msg));
    }

    fn slot_type(&self, slot: Slot) -> DataType {
        match slot.scope {
            Scope::Shared => self.program.shared[slot.index].ty,
            Scope::Local(p) => self.program.processes[p].locals[slot.index].ty,
        }
    }

    fn find_local(&self, process: usize, name: &str) -> Option<Slot> {
        self.program.processes[process]
            .locals
            .iter()
            .position(|d| d.name.name == name)
            .map(|index| Slot {
                scope: Scope::Local(process),
                index,
            })
    }

    fn find_shared(&self, name: &str) -> Option<Slot> {
        self.program
            .shared
            .iter()
            .position(|d| d.name.name == name)
            .map(|index| Slot {
                scope: Scope::Shared,
                index,
            })
    }

    /// A statement operand: locals shadow shared variables.
    fn resolve_in_process(&mut self, process: usize, id: &Ident) -> Option<Slot> {
        let found = self
            .find_local(process, &id.name)
            .or_else(|| self.find_shared(&id.name));
        if found.is_none() {
            self.error(id.loc, format!("unknown identifier `{}`", id.name));
        }
        found
    }

    fn resolve(&mut self, path: &VarPath, ctx: Context) -> Option<Slot> {
        if let Some(proc_id) = &path.process {
            let Some(p) = self.program.processes.iter().position(|p| p.name.name == proc_id.name) else {
                self.error(proc_id.loc, format!("unknown process `{}`", proc_id.name));
                return None;
            };
            let found = self.find_local(p, &path.name.name);
            if found.is_none() {
                self.error(
                    path.name.loc,
                    format!("process `{}` has no variable `{}`", proc_id.name, path.name.name),
                );
            }
            return found;
        }
        if let Context::Process(p) = ctx {
            return self.resolve_in_process(p, &path.name);
        }
        // Properties: shared scope first, then processes in declaration order.
        if let Some(s) = self.find_shared(&path.name.name) {
            return Some(s);
        }
        let owners: Vec<usize> = (0..self.program.processes.len())
            .filter(|&p| self.find_local(p, &path.name.name).is_some())
            .collect();
        let Some(&first) = owners.first() else {
            self.error(path.name.loc, format!("unknown identifier `{}`", path.name.name));
            return None;
        };
        if owners.len() > 1 {
            let names: Vec<&str> = owners
                .iter()
                .map(|&p| self.program.processes[p].name.name.as_str())
                .collect();
            self.diags.push(Diagnostic::warning(
                path.name.loc,
                format!(
                    "`{}` is declared by processes {}; using {}.{}",
                    path.name.name,
                    names.join(", "),
                    names[0],
                    path.name.name
                ),
            ));
        }
        self.find_local(first, &path.name.name)
    }

    fn expect_bool(&mut self, e: &TExpr, what: &str) -> bool {
        if e.ty == DataType::Bool {
            return true;
        }
        self.error(e.loc, format!("{what} must be bool, got {}", e.ty));
        false
    }

    // ---- statements ----

    fn stmts(&mut self, stmts: &[Stmt], p: usize) -> Vec<TStmt> {
        stmts.iter().filter_map(|s| self.stmt(s, p)).collect()
    }

    fn qubit_operand(&mut self, p: usize, id: &Ident, what: &str) -> Option<Slot> {
        let slot = self.resolve_in_process(p, id)?;
        match self.slot_type(slot) {
            DataType::Qubit => Some(slot),
            ty => {
                self.error(id.loc, format!("{what} expects qubit, got {ty}"));
                None
            }
        }
    }

    fn channel(&mut self, p: usize, id: &Ident) -> Option<(Slot, BaseType)> {
        let slot = self.resolve_in_process(p, id)?;
        match self.slot_type(slot) {
            DataType::Channel(b) => Some((slot, b)),
            ty => {
                self.error(id.loc, format!("`{}` is not a channel (it is {ty})", id.name));
                None
            }
        }
    }

    /// Coerce `value` to `want`, widening integers to reals.
    fn coerce(&mut self, value: TExpr, want: DataType, what: impl FnOnce() -> String) -> Option<TExpr> {
        if value.ty == want {
            return Some(value);
        }
        if want == DataType::Real && value.ty == DataType::Integer {
            let loc = value.loc;
            return Some(TExpr::new(TExprKind::Widen(Box::new(value)), DataType::Real, loc));
        }
        let msg = format!("{}: expected {want}, got {}", what(), value.ty);
        self.error(value.loc, msg);
        None
    }

    fn stmt(&mut self, s: &Stmt, p: usize) -> Option<TStmt> {
        let ctx = Context::Process(p);
        let kind = match &s.kind {
            StmtKind::Assign { target, value } => {
                let slot = self.resolve_in_process(p, target);
                let value = self.expr(value, ctx);
                let slot = slot?;
                let ty = self.slot_type(slot);
                match ty {
                    DataType::Qubit => {
                        self.error(
                            target.loc,
                            format!("qubit `{}` can only be initialized with newqubit", target.name),
                        );
                        return None;
                    }
                    DataType::Channel(_) => {
                        self.error(target.loc, format!("cannot assign to channel `{}`", target.name));
                        return None;
                    }
                    _ => {}
                }
                let value = self.coerce(value?, ty, || format!("assignment to `{}`", target.name))?;
                TStmtKind::Assign { target: slot, value }
            }
            StmtKind::NewQubit { target } => TStmtKind::NewQubit {
                target: self.qubit_operand(p, target, "newqubit")?,
            },
            StmtKind::Gate { gate, qubit } => {
                let name = match gate {
                    Gate::Had => "had",
                    Gate::Ph => "ph",
                    Gate::X => "X",
                };
                TStmtKind::Gate {
                    gate: *gate,
                    qubit: self.qubit_operand(p, qubit, name)?,
                }
            }
            StmtKind::CNot { control, target } => {
                let c = self.qubit_operand(p, control, "cnot");
                let t = self.qubit_operand(p, target, "cnot");
                TStmtKind::CNot {
                    control: c?,
                    target: t?,
                }
            }
            StmtKind::Measure { target, qubit } => {
                let q = self.qubit_operand(p, qubit, "meas");
                let t = self.resolve_in_process(p, target)?;
                let ty = self.slot_type(t);
                if ty != DataType::Bool {
                    self.error(
                        target.loc,
                        format!("measurement result must be stored in a bool, `{}` is {ty}", target.name),
                    );
                    return None;
                }
                TStmtKind::Measure { target: t, qubit: q? }
            }
            StmtKind::Send { channel, value } => {
                let ch = self.channel(p, channel);
                let v = self.expr(value, ctx);
                let (ch, base) = ch?;
                let v = v?;
                if base == BaseType::Qubit {
                    if !matches!(v.kind, TExprKind::Var(_)) || v.ty != DataType::Qubit {
                        self.error(
                            v.loc,
                            format!("qubit channel `{}` can only send a qubit variable", channel.name),
                        );
                        return None;
                    }
                    TStmtKind::Send { channel: ch, value: v }
                } else {
                    let v = self.coerce(v, base.into(), || format!("send on channel `{}`", channel.name))?;
                    TStmtKind::Send { channel: ch, value: v }
                }
            }
            StmtKind::Receive { channel, target } => {
                let ch = self.channel(p, channel);
                let t = self.resolve_in_process(p, target);
                let ((ch, base), t) = (ch?, t?);
                let ty = self.slot_type(t);
                if ty != DataType::from(base) {
                    self.error(
                        target.loc,
                        format!(
                            "channel `{}` carries {base}, but `{}` is {ty}",
                            channel.name, target.name
                        ),
                    );
                    return None;
                }
                TStmtKind::Receive { channel: ch, target: t }
            }
            StmtKind::If(branches) => TStmtKind::If(self.branches(branches, p)?),
            StmtKind::Do(branches) => TStmtKind::Do(self.branches(branches, p)?),
            StmtKind::Skip => TStmtKind::Skip,
        };
        Some(TStmt { kind, loc: s.loc })
    }

    fn branches(&mut self, branches: &[Branch], p: usize) -> Option<Vec<TBranch>> {
        let mut out = Vec::new();
        let mut ok = true;
        for b in branches {
            let guard = self.expr(&b.guard, Context::Process(p));
            let body = self.stmts(&b.body, p);
            match guard {
                Some(g) if self.expect_bool(&g, "guard") => out.push(TBranch { guard: g, body }),
                _ => ok = false,
            }
        }
        ok.then_some(out)
    }

    // ---- expressions ----

    fn qubit_list(&mut self, vars: &[VarPath], ctx: Context, what: &str) -> Option<Vec<Slot>> {
        let mut out = Vec::new();
        let mut ok = true;
        for v in vars {
            match self.resolve(v, ctx) {
                Some(s) if self.slot_type(s) == DataType::Qubit => {
                    if out.contains(&s) {
                        self.error(v.loc(), format!("{what} lists `{v}` twice"));
                        ok = false;
                    }
                    out.push(s);
                }
                Some(s) => {
                    let ty = self.slot_type(s);
                    self.error(v.loc(), format!("{what} expects qubit, got {ty}"));
                    ok = false;
                }
                None => ok = false,
            }
        }
        ok.then_some(out)
    }

    fn expr(&mut self, e: &Expr, ctx: Context) -> Option<TExpr> {
        let loc = e.loc;
        let t = |kind, ty| Some(TExpr::new(kind, ty, loc));
        match &e.kind {
            ExprKind::Bool(b) => t(TExprKind::Bool(*b), DataType::Bool),
            ExprKind::Int(v) => t(TExprKind::Int(*v), DataType::Integer),
            ExprKind::Real(r) => t(TExprKind::Real(r.clone()), DataType::Real),
            ExprKind::Var(path) => {
                let slot = self.resolve(path, ctx)?;
                let ty = self.slot_type(slot);
                if let DataType::Channel(_) = ty {
                    self.error(loc, format!("channel `{path}` cannot be used as a value"));
                    return None;
                }
                t(TExprKind::Var(slot), ty)
            }
            ExprKind::Not(inner) => {
                let inner = self.expr(inner, ctx)?;
                if inner.ty != DataType::Bool {
                    self.error(loc, format!("`not` expects bool, got {}", inner.ty));
                    return None;
                }
                t(TExprKind::Not(Box::new(inner)), DataType::Bool)
            }
            ExprKind::Neg(inner) => {
                let inner = self.expr(inner, ctx)?;
                match inner.ty {
                    DataType::Integer | DataType::Real => {
                        let ty = inner.ty;
                        t(TExprKind::Neg(Box::new(inner)), ty)
                    }
                    DataType::Qubit => {
                        self.error(loc, "qubit used in arithmetic");
                        None
                    }
                    ty => {
                        self.error(loc, format!("unary `-` expects a number, got {ty}"));
                        None
                    }
                }
            }
            ExprKind::Binary(op, a, b) => {
                let a = self.expr(a, ctx);
                let b = self.expr(b, ctx);
                self.binary(*op, a?, b?, loc)
            }
            ExprKind::QubitAtom(v) => {
                let slots = self.qubit_list(std::slice::from_ref(v), ctx, "qb")?;
                if let Some(scope) = &self.amp_scope {
                    if !scope.contains(&slots[0]) {
                        self.error(
                            loc,
                            format!("amplitude selector mentions `{v}`, which is outside its qubit list"),
                        );
                        return None;
                    }
                }
                t(TExprKind::QubitAtom(slots[0]), DataType::Bool)
            }
            ExprKind::Prob(inner) => {
                if ctx == Context::Classical {
                    self.error(loc, "P(..) cannot be nested inside P(..) or an amplitude selector");
                    return None;
                }
                let inner = self.expr(inner, Context::Classical)?;
                if !self.expect_bool(&inner, "argument of P(..)") {
                    return None;
                }
                t(TExprKind::Prob(Box::new(inner)), DataType::Real)
            }
            ExprKind::Amp(part, vars, inner) => {
                if ctx == Context::Classical {
                    self.error(
                        loc,
                        "amplitude terms cannot be nested inside P(..) or an amplitude selector",
                    );
                    return None;
                }
                let slots = self.qubit_list(vars, ctx, "amplitude term")?;
                let saved = self.amp_scope.replace(slots.clone());
                let inner = self.expr(inner, Context::Classical);
                self.amp_scope = saved;
                let inner = inner?;
                if !self.expect_bool(&inner, "amplitude selector") {
                    return None;
                }
                t(TExprKind::Amp(*part, slots, Box::new(inner)), DataType::Real)
            }
            ExprKind::Unentangled(vars) => {
                if ctx == Context::Classical {
                    self.error(
                        loc,
                        "unentangled(..) cannot appear inside P(..) or an amplitude selector",
                    );
                    return None;
                }
                let slots = self.qubit_list(vars, ctx, "unentangled")?;
                t(TExprKind::Unentangled(slots), DataType::Bool)
            }
            ExprKind::Temporal(op, args) => {
                match ctx {
                    Context::Property { final_state: false } => {}
                    Context::Property { final_state: true } => {
                        self.error(loc, "temporal operators are not allowed in a finalstateproperty");
                        return None;
                    }
                    _ => {
                        self.error(
                            loc,
                            "temporal operators cannot appear inside P(..) or an amplitude selector",
                        );
                        return None;
                    }
                }
                let mut out = Vec::new();
                for a in args {
                    let a = self.expr(a, ctx)?;
                    if !self.expect_bool(&a, "operand of a temporal operator") {
                        return None;
                    }
                    out.push(a);
                }
                t(TExprKind::Temporal(*op, out), DataType::Bool)
            }
        }
    }

    fn binary(&mut self, op: BinOp, a: TExpr, b: TExpr, loc: Loc) -> Option<TExpr> {
        use DataType::*;
        let mk = |op, a, b, ty| Some(TExpr::new(TExprKind::Binary(op, Box::new(a), Box::new(b)), ty, loc));
        if op.is_logical() {
            if a.ty == Bool && b.ty == Bool {
                return mk(op, a, b, Bool);
            }
            self.error(
                loc,
                format!("`{}` expects bool operands, got {} and {}", op.spelling(), a.ty, b.ty),
            );
            return None;
        }
        if a.ty == Qubit || b.ty == Qubit {
            if op.is_arithmetic() {
                self.error(loc, "qubit used in arithmetic");
            } else {
                self.error(loc, "qubit references cannot be compared; use qb(..) in properties");
            }
            return None;
        }
        let numeric = a.ty.is_numeric() && b.ty.is_numeric();
        let widen = |e: TExpr| {
            if e.ty == Integer {
                let l = e.loc;
                TExpr::new(TExprKind::Widen(Box::new(e)), Real, l)
            } else {
                e
            }
        };
        if numeric {
            let real = a.ty == Real || b.ty == Real;
            let (a, b) = if real { (widen(a), widen(b)) } else { (a, b) };
            let ty = if op.is_comparison() {
                Bool
            } else if real {
                Real
            } else {
                Integer
            };
            return mk(op, a, b, ty);
        }
        if matches!(op, BinOp::Eq | BinOp::Ne) && a.ty == Bool && b.ty == Bool {
            return mk(op, a, b, Bool);
        }
        let msg = if op.is_arithmetic() {
            format!("`{}` expects numbers, got {} and {}", op.spelling(), a.ty, b.ty)
        } else {
            format!("cannot compare {} with {} using `{}`", a.ty, b.ty, op.spelling())
        };
        self.error(loc, msg);
        None
    }
}
