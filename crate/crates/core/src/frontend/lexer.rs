use std::fmt;

use super::diag::{Diagnostic, Loc};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Ident(String),
    /// Digits only; range is checked by the parser.
    Int(String),
    /// `digits.digits`
    Real(String),

    // declarations and blocks
    Program,
    EndProgram,
    Process,
    Var,
    Begin,
    End,
    Integer,
    Bool,
    RealType,
    Qubit,
    Channel,
    Of,
    // statements
    NewQubit,
    Meas,
    Had,
    Ph,
    X,
    Cnot,
    If,
    Fi,
    Do,
    Od,
    Skip,
    // expressions
    True,
    False,
    Not,
    And,
    Or,
    Imp,
    // properties
    FinalStateProperty,
    Property,
    AG,
    AF,
    AX,
    EG,
    EF,
    EX,
    A,
    E,
    U,

    Semi,
    Comma,
    Colon,
    Assign,
    Dot,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Guard,
    Arrow,
    Bang,
    Question,
    Eq,
    EqEq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    Star,
}

fn keyword(word: &str) -> Option<TokenKind> {
    use TokenKind::*;
    Some(match word {
        "program" => Program,
        "endprogram" => EndProgram,
        "process" => Process,
        "var" => Var,
        "begin" => Begin,
        "end" => End,
        "integer" => Integer,
        "bool" => Bool,
        "real" => RealType,
        "qubit" => Qubit,
        "channel" => Channel,
        "of" => Of,
        "newqubit" => NewQubit,
        "meas" => Meas,
        "had" => Had,
        "ph" => Ph,
        "X" => X,
        "cnot" => Cnot,
        "if" => If,
        "fi" => Fi,
        "do" => Do,
        "od" => Od,
        "skip" => Skip,
        "true" => True,
        "false" => False,
        "not" => Not,
        "and" => And,
        "or" => Or,
        "imp" => Imp,
        "finalstateproperty" => FinalStateProperty,
        "property" => Property,
        "AG" => AG,
        "AF" => AF,
        "AX" => AX,
        "EG" => EG,
        "EF" => EF,
        "EX" => EX,
        "A" => A,
        "E" => E,
        "U" => U,
        _ => return None,
    })
}

impl TokenKind {
    /// Source spelling for keywords and punctuation.
    pub fn spelling(&self) -> &str {
        use TokenKind::*;
        match self {
            Ident(s) | Int(s) | Real(s) => s,
            Program => "program",
            EndProgram => "endprogram",
            Process => "process",
            Var => "var",
            Begin => "begin",
            End => "end",
            Integer => "integer",
            Bool => "bool",
            RealType => "real",
            Qubit => "qubit",
            Channel => "channel",
            Of => "of",
            NewQubit => "newqubit",
            Meas => "meas",
            Had => "had",
            Ph => "ph",
            X => "X",
            Cnot => "cnot",
            If => "if",
            Fi => "fi",
            Do => "do",
            Od => "od",
            Skip => "skip",
            True => "true",
            False => "false",
            Not => "not",
            And => "and",
            Or => "or",
            Imp => "imp",
            FinalStateProperty => "finalstateproperty",
            Property => "property",
            AG => "AG",
            AF => "AF",
            AX => "AX",
            EG => "EG",
            EF => "EF",
            EX => "EX",
            A => "A",
            E => "E",
            U => "U",
            Semi => ";",
            Comma => ",",
            Colon => ":",
            Assign => ":=",
            Dot => ".",
            LParen => "(",
            RParen => ")",
            LBracket => "[",
            RBracket => "]",
            Guard => "::",
            Arrow => "->",
            Bang => "!",
            Question => "?",
            Eq => "=",
            EqEq => "==",
            Ne => "!=",
            Lt => "<",
            Le => "<=",
            Gt => ">",
            Ge => ">=",
            Plus => "+",
            Minus => "-",
            Star => "*",
        }
    }
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "identifier `{s}`"),
            TokenKind::Int(s) | TokenKind::Real(s) => write!(f, "number `{s}`"),
            k => write!(f, "`{}`", k.spelling()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub loc: Loc,
    /// Byte offsets into the source.
    pub start: usize,
    pub end: usize,
}

/// Split `source` into tokens. `{ ... }` comments and whitespace are dropped.
/// Lexical errors are collected and lexing resumes after the offending text.
pub fn tokenize(source: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    let bytes = source.as_bytes();
    let mut tokens = Vec::new();
    let mut diags = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);

    macro_rules! advance {
        ($n:expr) => {{
            for _ in 0..$n {
                if bytes[i] == b'\n' {
                    line += 1;
                    col = 1;
                } else if bytes[i] & 0xC0 != 0x80 {
                    col += 1;
                }
                i += 1;
            }
        }};
    }

    while i < bytes.len() {
        let c = bytes[i];
        let loc = Loc::new(line, col);
        let start = i;
        if c.is_ascii_whitespace() {
            advance!(1);
            continue;
        }
        if c == b'{' {
            match source[i..].find('}') {
                Some(len) => advance!(len + 1),
                None => {
                    diags.push(Diagnostic::error(loc, "unterminated comment"));
                    advance!(bytes.len() - i);
                }
            }
            continue;
        }
        if c.is_ascii_alphabetic() {
            let len = bytes[i..]
                .iter()
                .take_while(|b| b.is_ascii_alphanumeric() || **b == b'_')
                .count();
            let word = &source[i..i + len];
            let kind = keyword(word).unwrap_or_else(|| TokenKind::Ident(word.to_string()));
            advance!(len);
            tokens.push(Token {
                kind,
                loc,
                start,
                end: i,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let int_len = bytes[i..].iter().take_while(|b| b.is_ascii_digit()).count();
            let mut len = int_len;
            let is_real =
                bytes.get(i + int_len) == Some(&b'.') && bytes.get(i + int_len + 1).is_some_and(u8::is_ascii_digit);
            if is_real {
                len += 1 + bytes[i + int_len + 1..]
                    .iter()
                    .take_while(|b| b.is_ascii_digit())
                    .count();
            }
            let text = source[i..i + len].to_string();
            advance!(len);
            let kind = if is_real {
                TokenKind::Real(text)
            } else {
                TokenKind::Int(text)
            };
            tokens.push(Token {
                kind,
                loc,
                start,
                end: i,
            });
            continue;
        }
        let two = bytes.get(i + 1).copied();
        use TokenKind::*;
        let (kind, len) = match (c, two) {
            (b':', Some(b'=')) => (Assign, 2),
            (b':', Some(b':')) => (Guard, 2),
            (b'-', Some(b'>')) => (Arrow, 2),
            (b'=', Some(b'=')) => (EqEq, 2),
            (b'!', Some(b'=')) => (Ne, 2),
            (b'<', Some(b'=')) => (Le, 2),
            (b'>', Some(b'=')) => (Ge, 2),
            (b':', _) => (Colon, 1),
            (b';', _) => (Semi, 1),
            (b',', _) => (Comma, 1),
            (b'.', _) => (Dot, 1),
            (b'(', _) => (LParen, 1),
            (b')', _) => (RParen, 1),
            (b'[', _) => (LBracket, 1),
            (b']', _) => (RBracket, 1),
            (b'!', _) => (Bang, 1),
            (b'?', _) => (Question, 1),
            (b'=', _) => (Eq, 1),
            (b'<', _) => (Lt, 1),
            (b'>', _) => (Gt, 1),
            (b'+', _) => (Plus, 1),
            (b'-', _) => (Minus, 1),
            (b'*', _) => (Star, 1),
            _ => {
                let ch = source[i..].chars().next().unwrap_or('?');
                diags.push(Diagnostic::error(loc, format!("illegal character `{ch}`")));
                advance!(ch.len_utf8());
                continue;
            }
        };
        advance!(len);
        tokens.push(Token {
            kind,
            loc,
            start,
            end: i,
        });
    }
    (tokens, diags)
}

/// Model files must be UTF-8.
pub fn decode(bytes: &[u8]) -> Result<&str, Diagnostic> {
    std::str::from_utf8(bytes).map_err(|e| {
        let prefix = &bytes[..e.valid_up_to()];
        let line = prefix.iter().filter(|&&b| b == b'\n').count() as u32 + 1;
        let col = prefix.iter().rev().take_while(|&&b| b != b'\n').count() as u32 + 1;
        Diagnostic::error(Loc::new(line, col), "source is not valid UTF-8")
    })
}
