//! Lexing, parsing and type checking of protocol models.

pub mod ast;
pub mod diag;
pub mod lexer;
pub mod parser;
mod pretty;
pub mod typecheck;

pub use diag::{Diagnostic, Loc, Severity};
pub use lexer::{decode, tokenize, Token, TokenKind};
pub use parser::{parse_formula_syntax, parse_program, parse_source};
pub use typecheck::{check_formula, typecheck, Checked, Scope, Slot, TExpr, TExprKind, TypedProgram};

/// Parse and type-check a model file in one go. Warnings from a successful
/// check are returned alongside the program.
pub fn load(source: &str) -> Result<Checked, Vec<Diagnostic>> {
    let program = parse_source(source)?;
    typecheck(&program)
}
