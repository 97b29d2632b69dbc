//! Recursive-descent parser for model files and property formulas.
//!
//! Errors are collected rather than returned one at a time: a bad statement
//! is skipped up to the next `;` or block boundary, a bad declaration up to
//! the next `process`/`endprogram`, so one run reports as many problems as it
//! can find.

use std::collections::HashSet;

use super::ast::*;
use super::diag::{Diagnostic, Loc};
use super::lexer::{tokenize, Token, TokenKind};
use crate::stabilizer::Gate;

/// Marker for "a diagnostic has been recorded".
struct Failed;

type PResult<T> = Result<T, Failed>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Program,
    Formula,
}

struct Parser<'a> {
    tokens: &'a [Token],
    source: &'a str,
    pos: usize,
    diags: Vec<Diagnostic>,
    mode: Mode,
}

/// Tokenize and parse a whole model file.
pub fn parse_source(source: &str) -> Result<Program, Vec<Diagnostic>> {
    let (tokens, mut diags) = tokenize(source);
    match parse_program(&tokens, source) {
        Ok(p) if diags.is_empty() => Ok(p),
        Ok(_) => Err(diags),
        Err(more) => {
            diags.extend(more);
            diags.sort_by_key(|d| d.loc);
            Err(diags)
        }
    }
}

/// Parse a token stream produced by [`tokenize`] from `source`.
pub fn parse_program(tokens: &[Token], source: &str) -> Result<Program, Vec<Diagnostic>> {
    let mut p = Parser::new(tokens, source, Mode::Program);
    let program = p.program();
    match program {
        Some(prog) if p.diags.is_empty() => Ok(prog),
        _ => Err(p.diags),
    }
}

/// Parse standalone property text into its surface syntax.
pub fn parse_formula_syntax(source: &str) -> Result<Expr, Vec<Diagnostic>> {
    let (tokens, mut diags) = tokenize(source);
    let mut p = Parser::new(&tokens, source, Mode::Formula);
    let expr = p.expr();
    if expr.is_ok() && !p.at_end() {
        let _ = p.unexpected::<()>("end of formula");
    }
    diags.append(&mut p.diags);
    match expr {
        Ok(e) if diags.is_empty() => Ok(e),
        _ => Err(diags),
    }
}

impl<'a> Parser<'a> {
    fn new(tokens: &'a [Token], source: &'a str, mode: Mode) -> Parser<'a> {
        Parser {
            tokens,
            source,
            pos: 0,
            diags: Vec::new(),
            mode,
        }
    }

    fn peek(&self) -> Option<&TokenKind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn peek_at(&self, offset: usize) -> Option<&TokenKind> {
        self.tokens.get(self.pos + offset).map(|t| &t.kind)
    }

    fn at(&self, kind: &TokenKind) -> bool {
        self.peek() == Some(kind)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn loc(&self) -> Loc {
        match self.tokens.get(self.pos) {
            Some(t) => t.loc,
            None => self.tokens.last().map_or(Loc::new(1, 1), |t| {
                Loc::new(t.loc.line, t.loc.col + (t.end - t.start) as u32)
            }),
        }
    }

    fn bump(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.at(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&mut self, loc: Loc, msg: impl Into<String>) -> PResult<T> {
        self.diags.push(Diagnostic::error(loc, msg));
        Err(Failed)
    }

    fn unexpected<T>(&mut self, wanted: &str) -> PResult<T> {
        let loc = self.loc();
        let found = match self.peek() {
            Some(k) => k.to_string(),
            None => "end of input".to_string(),
        };
        self.error(loc, format!("expected {wanted}, found {found}"))
    }

    fn expect(&mut self, kind: TokenKind) -> PResult<()> {
        if self.eat(&kind) {
            Ok(())
        } else {
            self.unexpected(&format!("`{}`", kind.spelling()))
        }
    }

    fn ident(&mut self) -> PResult<Ident> {
        match self.peek() {
            Some(TokenKind::Ident(name)) => {
                let id = Ident::new(name.clone(), self.loc());
                self.pos += 1;
                Ok(id)
            }
            _ => self.unexpected("identifier"),
        }
    }

    fn skip_until(&mut self, stops: &[TokenKind]) {
        while let Some(k) = self.peek() {
            if stops.contains(k) {
                return;
            }
            self.pos += 1;
        }
    }

    // ---- declarations ----

    fn program(&mut self) -> Option<Program> {
        let header = (|| -> PResult<Ident> {
            self.expect(TokenKind::Program)?;
            let name = self.ident()?;
            self.expect(TokenKind::Semi)?;
            Ok(name)
        })();
        let name = match header {
            Ok(n) => n,
            Err(Failed) => {
                self.skip_until(&[TokenKind::Var, TokenKind::Process, TokenKind::EndProgram]);
                Ident::new("?", Loc::new(1, 1))
            }
        };

        let mut shared = Vec::new();
        if self.at(&TokenKind::Var) && self.var_block(&mut shared).is_err() {
            self.skip_until(&[TokenKind::Process, TokenKind::EndProgram]);
        }

        let mut processes = Vec::new();
        while self.at(&TokenKind::Process) {
            match self.process() {
                Ok(p) => processes.push(p),
                Err(Failed) => {
                    self.pos += 1;
                    self.skip_until(&[TokenKind::Process, TokenKind::EndProgram]);
                }
            }
        }

        let end_loc = self.loc();
        if self.expect(TokenKind::EndProgram).is_err() {
            // nothing sensible can follow
            return None;
        }
        if processes.is_empty() && !self.diags.iter().any(|d| d.loc < end_loc) {
            self.diags
                .push(Diagnostic::error(end_loc, "program declares no process"));
        }
        let _ = self.expect(TokenKind::Dot);

        let mut properties = Vec::new();
        while !self.at_end() {
            match self.property() {
                Ok(p) => properties.push(p),
                Err(Failed) => self.skip_until(&[TokenKind::FinalStateProperty, TokenKind::Property]),
            }
            if self.at_end() {
                break;
            }
        }

        self.check_duplicates(&shared, &processes);
        Some(Program {
            name,
            shared,
            processes,
            properties,
        })
    }

    fn check_duplicates(&mut self, shared: &[VarDecl], processes: &[ProcessDecl]) {
        let scope = |decls: &[VarDecl], what: &str, diags: &mut Vec<Diagnostic>| {
            let mut seen = HashSet::new();
            for d in decls {
                if !seen.insert(d.name.name.as_str()) {
                    diags.push(Diagnostic::error(
                        d.name.loc,
                        format!("duplicate declaration of `{}` in {what}", d.name.name),
                    ));
                }
            }
        };
        scope(shared, "shared scope", &mut self.diags);
        for p in processes {
            scope(&p.locals, &format!("process `{}`", p.name.name), &mut self.diags);
        }
        let mut names = HashSet::new();
        for p in processes {
            if !names.insert(p.name.name.as_str()) {
                self.diags.push(Diagnostic::error(
                    p.name.loc,
                    format!("duplicate process name `{}`", p.name.name),
                ));
            }
        }
    }

    /// `"var" vardecl (";" vardecl)* ";"`
    fn var_block(&mut self, out: &mut Vec<VarDecl>) -> PResult<()> {
        self.expect(TokenKind::Var)?;
        loop {
            self.var_decl(out)?;
            self.expect(TokenKind::Semi)?;
            if !matches!(self.peek(), Some(TokenKind::Ident(_))) {
                return Ok(());
            }
        }
    }

    fn var_decl(&mut self, out: &mut Vec<VarDecl>) -> PResult<()> {
        let mut names = vec![self.ident()?];
        while self.eat(&TokenKind::Comma) {
            names.push(self.ident()?);
        }
        self.expect(TokenKind::Colon)?;
        let ty = self.data_type()?;
        out.extend(names.into_iter().map(|name| VarDecl { name, ty }));
        Ok(())
    }

    fn base_type(&mut self) -> Option<BaseType> {
        let b = match self.peek()? {
            TokenKind::Integer => BaseType::Integer,
            TokenKind::Bool => BaseType::Bool,
            TokenKind::RealType => BaseType::Real,
            TokenKind::Qubit => BaseType::Qubit,
            _ => return None,
        };
        self.pos += 1;
        Some(b)
    }

    fn data_type(&mut self) -> PResult<DataType> {
        if self.eat(&TokenKind::Channel) {
            self.expect(TokenKind::Of)?;
            return match self.base_type() {
                Some(b) => Ok(DataType::Channel(b)),
                None => self.unexpected("channel payload type (integer, bool, real or qubit)"),
            };
        }
        match self.base_type() {
            Some(b) => Ok(b.into()),
            None => self.unexpected("type"),
        }
    }

    fn process(&mut self) -> PResult<ProcessDecl> {
        self.expect(TokenKind::Process)?;
        let name = self.ident()?;
        self.expect(TokenKind::Semi)?;
        let mut locals = Vec::new();
        if self.at(&TokenKind::Var) {
            self.var_block(&mut locals)?;
        }
        self.expect(TokenKind::Begin)?;
        let body = self.stmts(&[TokenKind::End]);
        self.expect(TokenKind::End)?;
        self.expect(TokenKind::Semi)?;
        Ok(ProcessDecl { name, locals, body })
    }

    fn property(&mut self) -> PResult<PropertyDecl> {
        let loc = self.loc();
        let kind = if self.eat(&TokenKind::FinalStateProperty) {
            PropertyKind::FinalState
        } else if self.eat(&TokenKind::Property) {
            PropertyKind::Temporal
        } else {
            return self.unexpected("`finalstateproperty` or `property`");
        };
        let open = self.pos;
        self.expect(TokenKind::LParen)?;
        let saved = self.mode;
        self.mode = Mode::Formula;
        let formula = self.expr();
        self.mode = saved;
        let formula = formula?;
        self.expect(TokenKind::RParen)?;
        let text = self.source[self.tokens[open].start..self.tokens[self.pos - 1].end].to_string();
        self.eat(&TokenKind::Semi);
        Ok(PropertyDecl {
            kind,
            formula,
            text,
            loc,
        })
    }

    // ---- statements ----

    /// Statements up to (not including) one of `stops`, a `::`, or the end.
    fn stmts(&mut self, stops: &[TokenKind]) -> Vec<Stmt> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                None => break,
                Some(k) if stops.contains(k) || *k == TokenKind::Guard => break,
                // block closers that do not belong to us end the list too
                Some(TokenKind::End | TokenKind::Fi | TokenKind::Od | TokenKind::EndProgram) => break,
                _ => {}
            }
            let start = self.pos;
            match self.stmt() {
                Ok(s) => out.push(s),
                Err(Failed) => {
                    self.skip_until(&[
                        TokenKind::Semi,
                        TokenKind::Guard,
                        TokenKind::Fi,
                        TokenKind::Od,
                        TokenKind::End,
                        TokenKind::EndProgram,
                    ]);
                    self.eat(&TokenKind::Semi);
                    if self.pos == start {
                        self.pos += 1;
                    }
                }
            }
        }
        out
    }

    fn stmt(&mut self) -> PResult<Stmt> {
        let loc = self.loc();
        let kind = match self.peek() {
            Some(TokenKind::Ident(_)) => {
                let name = self.ident()?;
                match self.peek() {
                    Some(TokenKind::Assign) => {
                        self.pos += 1;
                        if self.eat(&TokenKind::NewQubit) {
                            StmtKind::NewQubit { target: name }
                        } else if self.eat(&TokenKind::Meas) {
                            let qubit = self.ident()?;
                            StmtKind::Measure { target: name, qubit }
                        } else {
                            let value = self.expr()?;
                            StmtKind::Assign { target: name, value }
                        }
                    }
                    Some(TokenKind::Bang) => {
                        self.pos += 1;
                        let value = self.expr()?;
                        StmtKind::Send { channel: name, value }
                    }
                    Some(TokenKind::Question) => {
                        self.pos += 1;
                        let target = self.ident()?;
                        StmtKind::Receive { channel: name, target }
                    }
                    _ => return self.unexpected("`:=`, `!` or `?`"),
                }
            }
            Some(TokenKind::Had | TokenKind::Ph | TokenKind::X) => {
                let gate = match self.bump().map(|t| &t.kind) {
                    Some(TokenKind::Had) => Gate::Had,
                    Some(TokenKind::Ph) => Gate::Ph,
                    _ => Gate::X,
                };
                let qubit = self.ident()?;
                StmtKind::Gate { gate, qubit }
            }
            Some(TokenKind::Cnot) => {
                self.pos += 1;
                let control = self.ident()?;
                let target = self.ident()?;
                StmtKind::CNot { control, target }
            }
            Some(TokenKind::Skip) => {
                self.pos += 1;
                StmtKind::Skip
            }
            Some(TokenKind::If) => {
                self.pos += 1;
                let branches = self.branches(TokenKind::Fi)?;
                self.eat(&TokenKind::Semi);
                return Ok(Stmt {
                    kind: StmtKind::If(branches),
                    loc,
                });
            }
            Some(TokenKind::Do) => {
                self.pos += 1;
                let branches = self.branches(TokenKind::Od)?;
                self.eat(&TokenKind::Semi);
                return Ok(Stmt {
                    kind: StmtKind::Do(branches),
                    loc,
                });
            }
            _ => return self.unexpected("statement"),
        };
        self.expect(TokenKind::Semi)?;
        Ok(Stmt { kind, loc })
    }

    fn branches(&mut self, close: TokenKind) -> PResult<Vec<Branch>> {
        let mut out = Vec::new();
        if !self.at(&TokenKind::Guard) {
            return self.unexpected("`::`");
        }
        while self.eat(&TokenKind::Guard) {
            let guard = match self.expr() {
                Ok(g) => g,
                Err(Failed) => {
                    self.skip_until(&[TokenKind::Arrow, TokenKind::Guard, close.clone()]);
                    Expr::new(ExprKind::Bool(false), self.loc())
                }
            };
            if self.at(&TokenKind::Arrow) {
                self.pos += 1;
            } else {
                let _ = self.unexpected::<()>("`->`");
            }
            let body = self.stmts(std::slice::from_ref(&close));
            out.push(Branch { guard, body });
        }
        self.expect(close)?;
        Ok(out)
    }

    // ---- expressions ----

    pub(crate) fn expr(&mut self) -> PResult<Expr> {
        self.implication()
    }

    fn implication(&mut self) -> PResult<Expr> {
        let lhs = self.disjunction()?;
        if self.at(&TokenKind::Imp) {
            let loc = self.loc();
            self.pos += 1;
            let rhs = self.implication()?;
            return Ok(Expr::new(
                ExprKind::Binary(BinOp::Imp, Box::new(lhs), Box::new(rhs)),
                loc,
            ));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> PResult<Expr> {
        let mut lhs = self.conjunction()?;
        while self.at(&TokenKind::Or) {
            let loc = self.loc();
            self.pos += 1;
            let rhs = self.conjunction()?;
            lhs = Expr::new(ExprKind::Binary(BinOp::Or, Box::new(lhs), Box::new(rhs)), loc);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> PResult<Expr> {
        let mut lhs = self.prefix()?;
        while self.at(&TokenKind::And) {
            let loc = self.loc();
            self.pos += 1;
            let rhs = self.prefix()?;
            lhs = Expr::new(ExprKind::Binary(BinOp::And, Box::new(lhs), Box::new(rhs)), loc);
        }
        Ok(lhs)
    }

    fn temporal_prefix(&self) -> Option<TemporalOp> {
        if self.mode != Mode::Formula {
            return None;
        }
        Some(match self.peek()? {
            TokenKind::AG => TemporalOp::AG,
            TokenKind::AF => TemporalOp::AF,
            TokenKind::AX => TemporalOp::AX,
            TokenKind::EG => TemporalOp::EG,
            TokenKind::EF => TemporalOp::EF,
            TokenKind::EX => TemporalOp::EX,
            _ => return None,
        })
    }

    fn prefix(&mut self) -> PResult<Expr> {
        let loc = self.loc();
        if self.eat(&TokenKind::Not) {
            let inner = self.prefix()?;
            return Ok(Expr::new(ExprKind::Not(Box::new(inner)), loc));
        }
        if let Some(op) = self.temporal_prefix() {
            self.pos += 1;
            let inner = self.prefix()?;
            return Ok(Expr::new(ExprKind::Temporal(op, vec![inner]), loc));
        }
        self.comparison()
    }

    fn comparison(&mut self) -> PResult<Expr> {
        let lhs = self.additive()?;
        let op = match self.peek() {
            Some(TokenKind::Eq | TokenKind::EqEq) => BinOp::Eq,
            Some(TokenKind::Ne) => BinOp::Ne,
            Some(TokenKind::Lt) => BinOp::Lt,
            Some(TokenKind::Le) => BinOp::Le,
            Some(TokenKind::Gt) => BinOp::Gt,
            Some(TokenKind::Ge) => BinOp::Ge,
            _ => return Ok(lhs),
        };
        let loc = self.loc();
        self.pos += 1;
        let rhs = self.additive()?;
        if matches!(
            self.peek(),
            Some(
                TokenKind::Eq
                    | TokenKind::EqEq
                    | TokenKind::Ne
                    | TokenKind::Lt
                    | TokenKind::Le
                    | TokenKind::Gt
                    | TokenKind::Ge
            )
        ) {
            let l = self.loc();
            return self.error(l, "comparison operators do not chain; add parentheses");
        }
        Ok(Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), loc))
    }

    fn additive(&mut self) -> PResult<Expr> {
        let mut lhs = self.multiplicative()?;
        loop {
            let op = match self.peek() {
                Some(TokenKind::Plus) => BinOp::Add,
                Some(TokenKind::Minus) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            let loc = self.loc();
            self.pos += 1;
            let rhs = self.multiplicative()?;
            lhs = Expr::new(ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), loc);
        }
    }

    fn multiplicative(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        while self.at(&TokenKind::Star) {
            let loc = self.loc();
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::new(ExprKind::Binary(BinOp::Mul, Box::new(lhs), Box::new(rhs)), loc);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Expr> {
        let loc = self.loc();
        if self.eat(&TokenKind::Minus) {
            let inner = self.unary()?;
            return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), loc));
        }
        self.primary()
    }

    fn var_path(&mut self) -> PResult<VarPath> {
        let first = self.ident()?;
        if self.at(&TokenKind::Dot) && matches!(self.peek_at(1), Some(TokenKind::Ident(_))) {
            self.pos += 1;
            let name = self.ident()?;
            return Ok(VarPath {
                process: Some(first),
                name,
            });
        }
        Ok(VarPath {
            process: None,
            name: first,
        })
    }

    fn var_list(&mut self, close: TokenKind) -> PResult<Vec<VarPath>> {
        let mut out = vec![self.var_path()?];
        while self.eat(&TokenKind::Comma) {
            out.push(self.var_path()?);
        }
        self.expect(close)?;
        Ok(out)
    }

    fn primary(&mut self) -> PResult<Expr> {
        let loc = self.loc();
        let formula = self.mode == Mode::Formula;
        match self.peek().cloned() {
            Some(TokenKind::True) => {
                self.pos += 1;
                Ok(Expr::new(ExprKind::Bool(true), loc))
            }
            Some(TokenKind::False) => {
                self.pos += 1;
                Ok(Expr::new(ExprKind::Bool(false), loc))
            }
            Some(TokenKind::Int(text)) => {
                self.pos += 1;
                match text.parse::<i64>() {
                    Ok(v) => Ok(Expr::new(ExprKind::Int(v), loc)),
                    Err(_) => self.error(loc, format!("integer literal `{text}` out of 64-bit range")),
                }
            }
            Some(TokenKind::Real(text)) => {
                self.pos += 1;
                if !text.parse::<f64>().is_ok_and(f64::is_finite) {
                    return self.error(loc, format!("real literal `{text}` out of range"));
                }
                Ok(Expr::new(ExprKind::Real(RealLit(text)), loc))
            }
            Some(TokenKind::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(TokenKind::RParen)?;
                Ok(inner)
            }
            Some(TokenKind::E | TokenKind::A) if formula => {
                let op = if self.at(&TokenKind::E) {
                    TemporalOp::EU
                } else {
                    TemporalOp::AU
                };
                self.pos += 1;
                self.expect(TokenKind::LBracket)?;
                let lhs = self.expr()?;
                self.expect(TokenKind::U)?;
                let rhs = self.expr()?;
                self.expect(TokenKind::RBracket)?;
                Ok(Expr::new(ExprKind::Temporal(op, vec![lhs, rhs]), loc))
            }
            Some(TokenKind::Ident(name)) if formula => {
                let next = self.peek_at(1);
                match (name.as_str(), next) {
                    ("qb", Some(TokenKind::LParen)) => {
                        self.pos += 2;
                        let v = self.var_path()?;
                        self.expect(TokenKind::RParen)?;
                        Ok(Expr::new(ExprKind::QubitAtom(v), loc))
                    }
                    ("P", Some(TokenKind::LParen)) => {
                        self.pos += 2;
                        let inner = self.expr()?;
                        self.expect(TokenKind::RParen)?;
                        Ok(Expr::new(ExprKind::Prob(Box::new(inner)), loc))
                    }
                    ("re" | "im", Some(TokenKind::LBracket)) => {
                        let part = if name == "re" { AmpPart::Re } else { AmpPart::Im };
                        self.pos += 2;
                        let qubits = self.var_list(TokenKind::RBracket)?;
                        self.expect(TokenKind::LParen)?;
                        let inner = self.expr()?;
                        self.expect(TokenKind::RParen)?;
                        Ok(Expr::new(ExprKind::Amp(part, qubits, Box::new(inner)), loc))
                    }
                    ("unentangled", Some(TokenKind::LParen)) => {
                        self.pos += 2;
                        let qubits = self.var_list(TokenKind::RParen)?;
                        Ok(Expr::new(ExprKind::Unentangled(qubits), loc))
                    }
                    _ => Ok(Expr::new(ExprKind::Var(self.var_path()?), loc)),
                }
            }
            Some(TokenKind::Ident(_)) => Ok(Expr::new(ExprKind::Var(self.var_path()?), loc)),
            _ => self.unexpected("expression"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "program P; process Q; begin skip; end; endprogram.";

    fn errors(src: &str) -> Vec<String> {
        parse_source(src).unwrap_err().into_iter().map(|d| d.message).collect()
    }

    #[test]
    fn minimal_program() {
        let p = parse_source(MINIMAL).unwrap();
        assert_eq!(p.name.name, "P");
        assert_eq!(p.processes.len(), 1);
        assert_eq!(p.processes[0].body.len(), 1);
        assert_eq!(p.processes[0].body[0].kind, StmtKind::Skip);
    }

    #[test]
    fn no_process_is_an_error() {
        assert_eq!(errors("program P; endprogram."), ["program declares no process"]);
    }

    #[test]
    fn declaration_lists() {
        let p = parse_source(
            "program P; var a, b: bool; c: channel of qubit;
             process Q; var q: qubit; n: integer; begin skip; end; endprogram.",
        )
        .unwrap();
        assert_eq!(p.shared.len(), 3);
        assert_eq!(p.shared[2].ty, DataType::Channel(BaseType::Qubit));
        assert_eq!(p.processes[0].locals[1].ty, DataType::Integer);
    }

    #[test]
    fn statements() {
        let p = parse_source(
            "program P; process Q; var q, r: qubit; b: bool; c: channel of bool; begin
               q := newqubit; r := newqubit; had q; ph q; X r; cnot q r;
               b := meas q; c!b; c?b;
               if :: b -> skip; :: not b -> b := true; fi
               do :: false -> skip; od
             end; endprogram.",
        )
        .unwrap();
        let body = &p.processes[0].body;
        assert_eq!(body.len(), 11);
        assert!(matches!(body[5].kind, StmtKind::CNot { .. }));
        assert!(matches!(&body[9].kind, StmtKind::If(b) if b.len() == 2));
        assert!(matches!(&body[10].kind, StmtKind::Do(b) if b.len() == 1));
    }

    #[test]
    fn equality_spellings_agree() {
        let a = parse_formula_syntax("b = c").unwrap();
        let b = parse_formula_syntax("b == c").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn precedence() {
        let e = parse_formula_syntax("a or b and not c == 1 + 2 * 3 imp d").unwrap();
        let ExprKind::Binary(BinOp::Imp, lhs, _) = e.kind else {
            panic!()
        };
        let ExprKind::Binary(BinOp::Or, _, rhs) = lhs.kind else {
            panic!()
        };
        let ExprKind::Binary(BinOp::And, _, not) = rhs.kind else {
            panic!()
        };
        let ExprKind::Not(cmp) = not.kind else { panic!() };
        let ExprKind::Binary(BinOp::Eq, _, sum) = cmp.kind else {
            panic!()
        };
        assert!(matches!(sum.kind, ExprKind::Binary(BinOp::Add, _, _)));
    }

    #[test]
    fn formula_constructs() {
        let e = parse_formula_syntax("P(not qb(Alice.q)) <= 0.5").unwrap();
        let ExprKind::Binary(BinOp::Le, lhs, rhs) = e.kind else {
            panic!()
        };
        assert!(matches!(lhs.kind, ExprKind::Prob(_)));
        assert_eq!(rhs.kind, ExprKind::Real(RealLit("0.5".into())));

        let e = parse_formula_syntax("E[true U unentangled(q, r)] and AG re[q](qb(q)) >= 0").unwrap();
        let ExprKind::Binary(BinOp::And, l, r) = e.kind else {
            panic!()
        };
        assert!(matches!(l.kind, ExprKind::Temporal(TemporalOp::EU, ref v) if v.len() == 2));
        assert!(matches!(r.kind, ExprKind::Temporal(TemporalOp::AG, _)));
    }

    #[test]
    fn formula_constructs_rejected_in_processes() {
        assert!(parse_source("program P; process Q; var b: bool; begin b := qb(x); end; endprogram.").is_err());
        assert!(parse_source("program P; process Q; var b: bool; begin b := AG b; end; endprogram.").is_err());
    }

    #[test]
    fn multiple_errors_are_reported() {
        let errs = errors(
            "program P; process Q; var b: bool; begin
               b := ; b := true; had ;
             end; endprogram.",
        );
        assert_eq!(errs.len(), 2, "{errs:?}");
    }

    #[test]
    fn duplicate_declarations() {
        let errs = errors(
            "program P; var a: bool; a: integer;
             process Q; var x, x: bool; begin skip; end;
             process Q; begin skip; end; endprogram.",
        );
        assert_eq!(errs.len(), 3, "{errs:?}");
        assert!(errs.iter().any(|e| e.contains("duplicate process name")));
    }

    #[test]
    fn integer_overflow_is_a_parse_error() {
        let errs = errors("program P; process Q; var n: integer; begin n := 9223372036854775808; end; endprogram.");
        assert!(errs[0].contains("out of 64-bit range"));
        assert!(
            parse_source("program P; process Q; var n: integer; begin n := 9223372036854775807; end; endprogram.")
                .is_ok()
        );
    }

    #[test]
    fn properties_keep_their_text() {
        let p = parse_source(&format!(
            "{MINIMAL}\nfinalstateproperty (x == 1);\nproperty (AG (x == 1))"
        ))
        .unwrap();
        assert_eq!(p.properties.len(), 2);
        assert_eq!(p.properties[0].kind, PropertyKind::FinalState);
        assert_eq!(p.properties[0].text, "(x == 1)");
        assert_eq!(p.properties[1].text, "(AG (x == 1))");
    }

    #[test]
    fn trailing_dot_is_required() {
        assert!(parse_source("program P; process Q; begin skip; end; endprogram").is_err());
    }

    #[test]
    fn chained_comparison_rejected() {
        assert!(parse_formula_syntax("a == b == c").is_err());
    }
}
