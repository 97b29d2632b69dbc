use super::code::{stmt_text, Code, Instr, SelectKind};
use super::state::{eval, Configuration, ProcState, Status, Value};
use crate::frontend::typecheck::{TExprKind, TStmtKind, TypedProgram};
use crate::stabilizer::{MeasurementResult, Tableau};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ActionKind {
    /// Assignment, gate, `newqubit` or `skip`.
    Exec,
    /// `outcome` is filled in by [`Machine::step`]; `random` records whether
    /// the other outcome was possible too.
    Measure { outcome: Option<bool>, random: bool },
    /// Entry into the branch with this index of an `if`/`do`.
    Branch(usize),
    /// No guard holds: an `if` falls through, a `do` leaves the loop.
    Exit,
    /// Rendezvous; the action's process is the sender.
    Comm { receiver: usize, receiver_pc: usize },
    /// Guard evaluation failed; the process becomes Faulted.
    Fault(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Action {
    pub process: usize,
    /// Control point the action was taken from.
    pub pc: usize,
    pub kind: ActionKind,
}

/// Why a configuration has no successor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LeafKind {
    /// Every process ran to its end.
    Terminated,
    /// Some process is still running but none can move.
    Deadlock,
    /// Some process faulted.
    Faulted,
}

/// A typed program together with its compiled control flow.
#[derive(Clone, Debug)]
pub struct Machine<'p> {
    pub program: &'p TypedProgram,
    pub code: Code,
}

impl<'p> Machine<'p> {
    pub fn new(program: &'p TypedProgram) -> Machine<'p> {
        Machine {
            program,
            code: Code::compile(program),
        }
    }

    pub fn initial_configuration(&self) -> Configuration {
        let p = self.program;
        let mut procs: Vec<ProcState> = self
            .code
            .entry
            .iter()
            .map(|&pc| ProcState {
                pc,
                status: Status::Running,
            })
            .collect();
        for (i, ps) in procs.iter_mut().enumerate() {
            if ps.pc >= self.code.len(i) {
                ps.status = Status::Terminated;
            }
        }
        Configuration {
            quantum: Tableau::new(0),
            shared: p.shared.iter().map(|v| Value::default_for(v.ty)).collect(),
            locals: p
                .processes
                .iter()
                .map(|proc| proc.locals.iter().map(|v| Value::default_for(v.ty)).collect())
                .collect(),
            procs,
            step_count: 0,
        }
    }

    fn current(&self, c: &Configuration, p: usize) -> Option<&Instr> {
        match c.procs[p].status {
            Status::Running => self.code.instr(p, c.procs[p].pc),
            _ => None,
        }
    }

    fn current_stmt(&self, c: &Configuration, p: usize) -> Option<&TStmtKind> {
        match self.current(c, p)? {
            Instr::Op { stmt, .. } => Some(stmt),
            _ => None,
        }
    }

    /// Enabled actions in the canonical order: by acting process (a
    /// rendezvous counts at the lower index of its two processes), then by
    /// branch or partner index.
    pub fn enabled_actions(&self, c: &Configuration) -> Vec<Action> {
        let mut out = Vec::new();
        let n = c.procs.len();
        for i in 0..n {
            let Some(instr) = self.current(c, i) else { continue };
            let pc = c.procs[i].pc;
            match instr {
                Instr::Op { stmt, .. } => match stmt {
                    TStmtKind::Send { channel, .. } => {
                        for j in i + 1..n {
                            if let Some(TStmtKind::Receive { channel: ch, .. }) = self.current_stmt(c, j) {
                                if ch == channel {
                                    out.push(Action {
                                        process: i,
                                        pc,
                                        kind: ActionKind::Comm {
                                            receiver: j,
                                            receiver_pc: c.procs[j].pc,
                                        },
                                    });
                                }
                            }
                        }
                    }
                    TStmtKind::Receive { channel, .. } => {
                        for j in i + 1..n {
                            if let Some(TStmtKind::Send { channel: ch, .. }) = self.current_stmt(c, j) {
                                if ch == channel {
                                    out.push(Action {
                                        process: j,
                                        pc: c.procs[j].pc,
                                        kind: ActionKind::Comm {
                                            receiver: i,
                                            receiver_pc: pc,
                                        },
                                    });
                                }
                            }
                        }
                    }
                    TStmtKind::Measure { .. } => out.push(Action {
                        process: i,
                        pc,
                        kind: ActionKind::Measure {
                            outcome: None,
                            random: false,
                        },
                    }),
                    _ => out.push(Action {
                        process: i,
                        pc,
                        kind: ActionKind::Exec,
                    }),
                },
                Instr::Select { branches, .. } => {
                    let mut taken = Vec::new();
                    let mut fault = None;
                    for (k, (guard, _)) in branches.iter().enumerate() {
                        match eval(guard, c, self.program) {
                            Ok(Value::Bool(true)) => taken.push(k),
                            Ok(_) => {}
                            Err(e) => {
                                fault = Some(e);
                                break;
                            }
                        }
                    }
                    let kinds: Vec<ActionKind> = match fault {
                        Some(e) => vec![ActionKind::Fault(format!("guard evaluation failed: {e}"))],
                        None if taken.is_empty() => vec![ActionKind::Exit],
                        None => taken.into_iter().map(ActionKind::Branch).collect(),
                    };
                    out.extend(kinds.into_iter().map(|kind| Action { process: i, pc, kind }));
                }
                Instr::Jump(_) => unreachable!("control never rests on a jump"),
            }
        }
        out
    }

    fn advance(&self, c: &mut Configuration, p: usize, pc: usize) {
        c.procs[p].pc = pc;
        if pc >= self.code.len(p) {
            c.procs[p].status = Status::Terminated;
        }
    }

    fn next_of(&self, p: usize, pc: usize) -> usize {
        match self.code.instr(p, pc) {
            Some(Instr::Op { next, .. }) => *next,
            _ => unreachable!("next of a non-statement"),
        }
    }

    fn fault(c: &mut Configuration, p: usize, reason: String) {
        c.procs[p].status = Status::Faulted(reason);
    }

    /// Successors of `c` under the enabled action `a`, each paired with the
    /// resolved action (measurement outcomes filled in). A random measurement
    /// yields outcome 0 then outcome 1; everything else yields one successor.
    pub fn step(&self, c: &Configuration, a: &Action) -> Vec<(Action, Configuration)> {
        let mut n = c.clone();
        n.step_count += 1;
        let p = a.process;
        let prog = self.program;
        match &a.kind {
            ActionKind::Exec => {
                let stmt = self.current_stmt(c, p).expect("exec action at a statement");
                match self.exec(&mut n, p, stmt) {
                    Ok(()) => {
                        let next = self.next_of(p, a.pc);
                        self.advance(&mut n, p, next);
                    }
                    Err(e) => Self::fault(&mut n, p, e),
                }
                vec![(a.clone(), n)]
            }
            ActionKind::Measure { .. } => {
                let Some(TStmtKind::Measure { target, qubit }) = self.current_stmt(c, p) else {
                    unreachable!("measure action at a measurement");
                };
                let q = match n.qubit(prog, *qubit) {
                    Ok(q) => q,
                    Err(e) => {
                        Self::fault(&mut n, p, e);
                        return vec![(a.clone(), n)];
                    }
                };
                let next = self.next_of(p, a.pc);
                let result = n.quantum.measure(q).expect("bound qubit ids are valid");
                let outcomes: Vec<(bool, bool)> = match result {
                    MeasurementResult::Deterministic(b) => vec![(b, false)],
                    MeasurementResult::Random => vec![(false, true), (true, true)],
                };
                outcomes
                    .into_iter()
                    .map(|(bit, random)| {
                        let mut m = n.clone();
                        if random {
                            m.quantum.collapse(q, bit).expect("random outcome collapses");
                        }
                        m.set(*target, Value::Bool(bit));
                        self.advance(&mut m, p, next);
                        let act = Action {
                            kind: ActionKind::Measure {
                                outcome: Some(bit),
                                random,
                            },
                            ..a.clone()
                        };
                        (act, m)
                    })
                    .collect()
            }
            ActionKind::Branch(k) => {
                let Some(Instr::Select { branches, .. }) = self.current(c, p) else {
                    unreachable!("branch action at a select");
                };
                self.advance(&mut n, p, branches[*k].1);
                vec![(a.clone(), n)]
            }
            ActionKind::Exit => {
                let Some(Instr::Select { exit, .. }) = self.current(c, p) else {
                    unreachable!("exit action at a select");
                };
                self.advance(&mut n, p, *exit);
                vec![(a.clone(), n)]
            }
            ActionKind::Comm { receiver, receiver_pc } => {
                let (Some(TStmtKind::Send { value, .. }), Some(TStmtKind::Receive { target, .. })) =
                    (self.current_stmt(c, p), self.current_stmt(c, *receiver))
                else {
                    unreachable!("comm action between a send and a receive");
                };
                let payload = match &value.kind {
                    // qubit send: the reference moves to the receiver
                    TExprKind::Var(s) if value.ty == crate::frontend::ast::DataType::Qubit => match n.qubit(prog, *s) {
                        Ok(q) => {
                            n.set(*s, Value::Qubit(None));
                            Ok(Value::Qubit(Some(q)))
                        }
                        Err(e) => Err(e),
                    },
                    _ => eval(value, c, prog),
                };
                match payload {
                    Ok(v) => {
                        n.set(*target, v);
                        let sn = self.next_of(p, a.pc);
                        let rn = self.next_of(*receiver, *receiver_pc);
                        self.advance(&mut n, p, sn);
                        self.advance(&mut n, *receiver, rn);
                    }
                    Err(e) => Self::fault(&mut n, p, e),
                }
                vec![(a.clone(), n)]
            }
            ActionKind::Fault(reason) => {
                Self::fault(&mut n, p, reason.clone());
                vec![(a.clone(), n)]
            }
        }
    }

    fn exec(&self, n: &mut Configuration, p: usize, stmt: &TStmtKind) -> Result<(), String> {
        let prog = self.program;
        match stmt {
            TStmtKind::Assign { target, value } => {
                let v = eval(value, n, prog)?;
                n.set(*target, v);
            }
            TStmtKind::NewQubit { target } => {
                let q = n.quantum.extend();
                n.set(*target, Value::Qubit(Some(q)));
            }
            TStmtKind::Gate { gate, qubit } => {
                let q = n.qubit(prog, *qubit)?;
                n.quantum.apply_gate(*gate, q).map_err(|e| e.to_string())?;
            }
            TStmtKind::CNot { control, target } => {
                let c = n.qubit(prog, *control)?;
                let t = n.qubit(prog, *target)?;
                n.quantum.apply_cnot(c, t).map_err(|e| e.to_string())?;
            }
            TStmtKind::Skip => {}
            other => unreachable!("{other:?} is not executed on its own (process {p})"),
        }
        Ok(())
    }

    /// All successors in canonical order.
    pub fn successors(&self, c: &Configuration) -> Vec<(Action, Configuration)> {
        self.enabled_actions(c).iter().flat_map(|a| self.step(c, a)).collect()
    }

    /// Classify a configuration without successors.
    pub fn leaf_kind(&self, c: &Configuration) -> LeafKind {
        if c.procs.iter().any(|p| matches!(p.status, Status::Faulted(_))) {
            LeafKind::Faulted
        } else if c.procs.iter().all(|p| p.status == Status::Terminated) {
            LeafKind::Terminated
        } else {
            LeafKind::Deadlock
        }
    }

    /// Human-readable label, e.g. `Alice -> Bob: AtoB!q / AtoB?rq`.
    pub fn describe(&self, a: &Action) -> String {
        let prog = self.program;
        let name = |p: usize| prog.processes[p].name.as_str();
        let stmt = |p: usize, pc: usize| match self.code.instr(p, pc) {
            Some(Instr::Op { stmt, .. }) => stmt_text(prog, p, stmt),
            _ => "?".to_string(),
        };
        let p = a.process;
        match &a.kind {
            ActionKind::Exec => format!("{}: {}", name(p), stmt(p, a.pc)),
            ActionKind::Measure { outcome, random } => {
                let tail = match outcome {
                    Some(b) => format!(" -> {}{}", u8::from(*b), if *random { " (random)" } else { "" }),
                    None => String::new(),
                };
                format!("{}: {}{tail}", name(p), stmt(p, a.pc))
            }
            ActionKind::Branch(k) => match self.code.instr(p, a.pc) {
                Some(Instr::Select { kind, branches, .. }) => format!(
                    "{}: {} branch {} [{}]",
                    name(p),
                    if *kind == SelectKind::If { "if" } else { "do" },
                    k + 1,
                    prog.expr_text(&branches[*k].0, Some(p))
                ),
                _ => format!("{}: branch {}", name(p), k + 1),
            },
            ActionKind::Exit => match self.code.instr(p, a.pc) {
                Some(Instr::Select {
                    kind: SelectKind::Do, ..
                }) => {
                    format!("{}: do: no guard holds, leave loop", name(p))
                }
                _ => format!("{}: if: no guard holds, skip", name(p)),
            },
            ActionKind::Comm { receiver, receiver_pc } => format!(
                "{} -> {}: {} / {}",
                name(p),
                name(*receiver),
                stmt(p, a.pc),
                stmt(*receiver, *receiver_pc)
            ),
            ActionKind::Fault(reason) => format!("{}: fault: {reason}", name(p)),
        }
    }

    /// Source location of the statement an action was taken from.
    pub fn action_loc(&self, a: &Action) -> crate::frontend::Loc {
        self.code.instr(a.process, a.pc).map(Instr::loc).unwrap_or_default()
    }
}
