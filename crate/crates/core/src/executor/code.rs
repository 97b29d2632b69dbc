//! Flattening of process bodies into jump-free instruction lists.
//!
//! Guarded blocks become a `Select` whose branch targets, exit and every
//! `next` field already point past any jumps, so a process's control point is
//! always an index of a real instruction (or the end of its list).

use crate::frontend::typecheck::{TExpr, TStmt, TStmtKind, TypedProgram};
use crate::frontend::Loc;
use crate::stabilizer::Gate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SelectKind {
    If,
    Do,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Instr {
    /// A basic statement; control continues at `next`.
    Op { stmt: TStmtKind, next: usize, loc: Loc },
    Select {
        kind: SelectKind,
        /// Guard and entry point of each branch.
        branches: Vec<(TExpr, usize)>,
        /// Where control goes when no guard holds.
        exit: usize,
        loc: Loc,
    },
    /// Never a control point after compilation.
    Jump(usize),
}

impl Instr {
    pub fn loc(&self) -> Loc {
        match self {
            Instr::Op { loc, .. } | Instr::Select { loc, .. } => *loc,
            Instr::Jump(_) => Loc::default(),
        }
    }
}

/// Compiled bodies of all processes, indexed like the program's processes.
#[derive(Clone, Debug, PartialEq)]
pub struct Code {
    pub procs: Vec<Vec<Instr>>,
    /// First control point of each process.
    pub entry: Vec<usize>,
}

impl Code {
    pub fn compile(program: &TypedProgram) -> Code {
        let mut procs = Vec::new();
        let mut entry = Vec::new();
        for p in &program.processes {
            let mut out = Vec::new();
            emit(&p.body, &mut out);
            let resolve = |mut pc: usize, code: &[Instr]| {
                // Jump chains only run forward or into a Select, so this ends.
                while let Some(Instr::Jump(t)) = code.get(pc) {
                    pc = *t;
                }
                pc
            };
            let snapshot = out.clone();
            for ins in &mut out {
                match ins {
                    Instr::Op { next, .. } => *next = resolve(*next, &snapshot),
                    Instr::Select { branches, exit, .. } => {
                        for (_, t) in branches.iter_mut() {
                            *t = resolve(*t, &snapshot);
                        }
                        *exit = resolve(*exit, &snapshot);
                    }
                    Instr::Jump(_) => {}
                }
            }
            entry.push(resolve(0, &out));
            procs.push(out);
        }
        Code { procs, entry }
    }

    pub fn instr(&self, process: usize, pc: usize) -> Option<&Instr> {
        self.procs[process].get(pc)
    }

    pub fn len(&self, process: usize) -> usize {
        self.procs[process].len()
    }
}

fn emit(stmts: &[TStmt], out: &mut Vec<Instr>) {
    for s in stmts {
        match &s.kind {
            TStmtKind::If(branches) | TStmtKind::Do(branches) => {
                let kind = if matches!(s.kind, TStmtKind::If(_)) {
                    SelectKind::If
                } else {
                    SelectKind::Do
                };
                let head = out.len();
                out.push(Instr::Jump(usize::MAX)); // placeholder for the Select
                let mut targets = Vec::new();
                let mut ends = Vec::new();
                for b in branches {
                    targets.push((b.guard.clone(), out.len()));
                    emit(&b.body, out);
                    ends.push(out.len());
                    out.push(Instr::Jump(usize::MAX));
                }
                let after = out.len();
                let back = match kind {
                    SelectKind::If => after,
                    SelectKind::Do => head,
                };
                for e in ends {
                    out[e] = Instr::Jump(back);
                }
                out[head] = Instr::Select {
                    kind,
                    branches: targets,
                    exit: after,
                    loc: s.loc,
                };
            }
            other => {
                let next = out.len() + 1;
                out.push(Instr::Op {
                    stmt: other.clone(),
                    next,
                    loc: s.loc,
                });
            }
        }
    }
}

/// Source-like rendering of a basic statement inside process `p`.
pub fn stmt_text(program: &TypedProgram, p: usize, stmt: &TStmtKind) -> String {
    let name = |s| {
        let v = program.var(s);
        match s.scope {
            crate::frontend::Scope::Local(q) if q == p => v.name.clone(),
            crate::frontend::Scope::Shared => v.name.clone(),
            _ => program.slot_name(s),
        }
    };
    let expr = |e: &TExpr| program.expr_text(e, Some(p));
    match stmt {
        TStmtKind::Assign { target, value } => format!("{} := {}", name(*target), expr(value)),
        TStmtKind::NewQubit { target } => format!("{} := newqubit", name(*target)),
        TStmtKind::Gate { gate, qubit } => {
            let g = match gate {
                Gate::Had => "had",
                Gate::Ph => "ph",
                Gate::X => "X",
            };
            format!("{g} {}", name(*qubit))
        }
        TStmtKind::CNot { control, target } => {
            format!("cnot {} {}", name(*control), name(*target))
        }
        TStmtKind::Measure { target, qubit } => {
            format!("{} := meas {}", name(*target), name(*qubit))
        }
        TStmtKind::Send { channel, value } => format!("{}!{}", name(*channel), expr(value)),
        TStmtKind::Receive { channel, target } => format!("{}?{}", name(*channel), name(*target)),
        TStmtKind::Skip => "skip".to_string(),
        TStmtKind::If(_) => "if .. fi".to_string(),
        TStmtKind::Do(_) => "do .. od".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::load;

    fn compile(body: &str) -> Code {
        let src = format!("program P; process Q; var b: bool; begin {body} end; endprogram.");
        Code::compile(&load(&src).unwrap().program)
    }

    #[test]
    fn straight_line() {
        let c = compile("skip; skip;");
        assert_eq!(c.entry[0], 0);
        assert!(matches!(c.procs[0][1], Instr::Op { next: 2, .. }));
    }

    #[test]
    fn if_branches_rejoin_after_the_block() {
        let c = compile("if :: b -> skip; :: true -> fi skip;");
        let Instr::Select { branches, exit, .. } = &c.procs[0][0] else {
            panic!()
        };
        let last = c.procs[0].len() - 1;
        assert_eq!(*exit, last);
        // the second branch is empty, so it enters straight at the statement after `fi`
        assert_eq!(branches[1].1, last);
        assert!(matches!(c.procs[0][branches[0].1], Instr::Op { next, .. } if next == last));
    }

    #[test]
    fn do_branches_loop_back() {
        let c = compile("do :: b -> b := false; :: true -> od");
        let Instr::Select { branches, exit, .. } = &c.procs[0][0] else {
            panic!()
        };
        assert_eq!(branches[1].1, 0);
        assert!(matches!(c.procs[0][branches[0].1], Instr::Op { next: 0, .. }));
        assert_eq!(*exit, c.procs[0].len());
    }

    #[test]
    fn leading_empty_block_entry() {
        let c = compile("if :: true -> fi");
        assert_eq!(c.entry[0], 0);
        let Instr::Select { branches, .. } = &c.procs[0][0] else {
            panic!()
        };
        assert_eq!(branches[0].1, c.procs[0].len());
    }
}
