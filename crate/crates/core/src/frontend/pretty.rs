//! Source rendering of syntax trees.
//!
//! Output re-parses to an equal tree. Expressions are fully parenthesized, so
//! the printer never has to know operator precedence.

use std::fmt::{self, Display, Formatter, Write};

use super::ast::*;
use crate::stabilizer::Gate;

impl Display for Program {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "program {};", self.name.name)?;
        if !self.shared.is_empty() {
            write_decls(f, &self.shared, "")?;
        }
        for p in &self.processes {
            writeln!(f, "process {};", p.name.name)?;
            if !p.locals.is_empty() {
                write_decls(f, &p.locals, "  ")?;
            }
            writeln!(f, "begin")?;
            write_stmts(f, &p.body, 1)?;
            writeln!(f, "end;")?;
        }
        writeln!(f, "endprogram.")?;
        for prop in &self.properties {
            let kw = match prop.kind {
                PropertyKind::FinalState => "finalstateproperty",
                PropertyKind::Temporal => "property",
            };
            writeln!(f, "{kw} ({});", prop.formula)?;
        }
        Ok(())
    }
}

fn write_decls(f: &mut Formatter<'_>, decls: &[VarDecl], indent: &str) -> fmt::Result {
    writeln!(f, "{indent}var")?;
    for d in decls {
        writeln!(f, "{indent}  {}: {};", d.name.name, d.ty)?;
    }
    Ok(())
}

fn write_stmts(f: &mut Formatter<'_>, stmts: &[Stmt], depth: usize) -> fmt::Result {
    for s in stmts {
        write_stmt(f, s, depth)?;
    }
    Ok(())
}

fn write_stmt(f: &mut Formatter<'_>, s: &Stmt, depth: usize) -> fmt::Result {
    let pad = "  ".repeat(depth);
    match &s.kind {
        StmtKind::Assign { target, value } => writeln!(f, "{pad}{} := {value};", target.name),
        StmtKind::NewQubit { target } => writeln!(f, "{pad}{} := newqubit;", target.name),
        StmtKind::Gate { gate, qubit } => {
            let kw = match gate {
                Gate::Had => "had",
                Gate::Ph => "ph",
                Gate::X => "X",
            };
            writeln!(f, "{pad}{kw} {};", qubit.name)
        }
        StmtKind::CNot { control, target } => {
            writeln!(f, "{pad}cnot {} {};", control.name, target.name)
        }
        StmtKind::Measure { target, qubit } => {
            writeln!(f, "{pad}{} := meas {};", target.name, qubit.name)
        }
        StmtKind::Send { channel, value } => writeln!(f, "{pad}{}!{value};", channel.name),
        StmtKind::Receive { channel, target } => {
            writeln!(f, "{pad}{}?{};", channel.name, target.name)
        }
        StmtKind::If(branches) | StmtKind::Do(branches) => {
            let (open, close) = match s.kind {
                StmtKind::If(_) => ("if", "fi"),
                _ => ("do", "od"),
            };
            writeln!(f, "{pad}{open}")?;
            for b in branches {
                writeln!(f, "{pad}:: {} ->", b.guard)?;
                write_stmts(f, &b.body, depth + 1)?;
            }
            writeln!(f, "{pad}{close}")
        }
        StmtKind::Skip => writeln!(f, "{pad}skip;"),
    }
}

fn write_list(f: &mut Formatter<'_>, vars: &[VarPath]) -> fmt::Result {
    for (i, v) in vars.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

impl Display for Expr {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Bool(b) => write!(f, "{b}"),
            ExprKind::Int(v) => write!(f, "{v}"),
            ExprKind::Real(r) => f.write_str(&r.0),
            ExprKind::Var(v) => write!(f, "{v}"),
            ExprKind::Not(e) => write!(f, "(not {e})"),
            ExprKind::Neg(e) => write!(f, "(-{e})"),
            ExprKind::Binary(op, a, b) => write!(f, "({a} {} {b})", op.spelling()),
            ExprKind::QubitAtom(v) => write!(f, "qb({v})"),
            ExprKind::Prob(e) => write!(f, "P({e})"),
            ExprKind::Amp(part, vars, e) => {
                f.write_str(match part {
                    AmpPart::Re => "re[",
                    AmpPart::Im => "im[",
                })?;
                write_list(f, vars)?;
                write!(f, "]({e})")
            }
            ExprKind::Unentangled(vars) => {
                f.write_str("unentangled(")?;
                write_list(f, vars)?;
                f.write_char(')')
            }
            ExprKind::Temporal(op, args) => match (op, args.as_slice()) {
                (TemporalOp::EU, [a, b]) => write!(f, "E[{a} U {b}]"),
                (TemporalOp::AU, [a, b]) => write!(f, "A[{a} U {b}]"),
                (op, [a]) => write!(f, "({op:?} {a})"),
                _ => Err(fmt::Error),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::frontend::parse_source;

    #[test]
    fn printed_program_reparses() {
        let src = "program P; var c: channel of integer;
            process Al; var n: integer; b: bool; begin
              n := 1 + 2 * 3; c!n; if :: n >= 7 -> b := true; :: true -> fi
              do :: b -> b := false; od
            end;
            process B; var m: integer; begin c?m; end;
            endprogram.
            property (AG (Al.n == 7));
            finalstateproperty (P(true) <= 1)";
        let p = parse_source(src).unwrap();
        let printed = p.to_string();
        let q = parse_source(&printed).unwrap_or_else(|e| panic!("{printed}\n{e:?}"));
        assert_eq!(p, q);
    }
}
