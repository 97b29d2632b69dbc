//! Untyped syntax tree of a protocol model.
//!
//! Source locations are carried along for diagnostics but never take part in
//! equality: two trees compare equal when they have the same structure.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::diag::Loc;
use crate::stabilizer::Gate;

macro_rules! eq_ignoring_loc {
    ($ty:ty, $($field:ident),+) => {
        impl PartialEq for $ty {
            fn eq(&self, other: &Self) -> bool {
                $(self.$field == other.$field)&&+
            }
        }
    };
}

#[derive(Clone, Debug)]
pub struct Ident {
    pub name: String,
    pub loc: Loc,
}
eq_ignoring_loc!(Ident, name);

impl Ident {
    pub fn new(name: impl Into<String>, loc: Loc) -> Ident {
        Ident { name: name.into(), loc }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseType {
    Integer,
    Bool,
    Real,
    Qubit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DataType {
    Integer,
    Bool,
    Real,
    Qubit,
    Channel(BaseType),
}

impl From<BaseType> for DataType {
    fn from(b: BaseType) -> DataType {
        match b {
            BaseType::Integer => DataType::Integer,
            BaseType::Bool => DataType::Bool,
            BaseType::Real => DataType::Real,
            BaseType::Qubit => DataType::Qubit,
        }
    }
}

impl DataType {
    pub fn is_numeric(self) -> bool {
        matches!(self, DataType::Integer | DataType::Real)
    }
}

impl std::fmt::Display for BaseType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BaseType::Integer => "integer",
            BaseType::Bool => "bool",
            BaseType::Real => "real",
            BaseType::Qubit => "qubit",
        })
    }
}

impl std::fmt::Display for DataType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DataType::Integer => f.write_str("integer"),
            DataType::Bool => f.write_str("bool"),
            DataType::Real => f.write_str("real"),
            DataType::Qubit => f.write_str("qubit"),
            DataType::Channel(b) => write!(f, "channel of {b}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VarDecl {
    pub name: Ident,
    pub ty: DataType,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Program {
    pub name: Ident,
    pub shared: Vec<VarDecl>,
    pub processes: Vec<ProcessDecl>,
    pub properties: Vec<PropertyDecl>,
}

impl Program {
    pub fn final_state_properties(&self) -> impl Iterator<Item = &PropertyDecl> {
        self.properties.iter().filter(|p| p.kind == PropertyKind::FinalState)
    }

    pub fn temporal_properties(&self) -> impl Iterator<Item = &PropertyDecl> {
        self.properties.iter().filter(|p| p.kind == PropertyKind::Temporal)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProcessDecl {
    pub name: Ident,
    pub locals: Vec<VarDecl>,
    pub body: Vec<Stmt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PropertyKind {
    /// `finalstateproperty`: a state formula required at every leaf.
    FinalState,
    /// `property`: a temporal formula checked at the root.
    Temporal,
}

#[derive(Clone, Debug)]
pub struct PropertyDecl {
    pub kind: PropertyKind,
    pub formula: Expr,
    /// The formula as written in the source.
    pub text: String,
    pub loc: Loc,
}
eq_ignoring_loc!(PropertyDecl, kind, formula);

#[derive(Clone, Debug)]
pub struct Stmt {
    pub kind: StmtKind,
    pub loc: Loc,
}
eq_ignoring_loc!(Stmt, kind);

#[derive(Clone, Debug, PartialEq)]
pub enum StmtKind {
    Assign { target: Ident, value: Expr },
    NewQubit { target: Ident },
    Gate { gate: Gate, qubit: Ident },
    CNot { control: Ident, target: Ident },
    Measure { target: Ident, qubit: Ident },
    Send { channel: Ident, value: Expr },
    Receive { channel: Ident, target: Ident },
    If(Vec<Branch>),
    Do(Vec<Branch>),
    Skip,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    pub guard: Expr,
    pub body: Vec<Stmt>,
}

/// `name` or `Proc.name`.
#[derive(Clone, Debug, PartialEq)]
pub struct VarPath {
    pub process: Option<Ident>,
    pub name: Ident,
}

impl VarPath {
    pub fn loc(&self) -> Loc {
        self.process.as_ref().map_or(self.name.loc, |p| p.loc)
    }
}

impl std::fmt::Display for VarPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.process {
            Some(p) => write!(f, "{}.{}", p.name, self.name.name),
            None => f.write_str(&self.name.name),
        }
    }
}

/// Decimal literal kept as written, so it converts exactly to a rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealLit(pub String);

impl RealLit {
    pub fn to_f64(&self) -> f64 {
        self.0.parse().unwrap_or(f64::NAN)
    }

    pub fn to_rational(&self) -> BigRational {
        let (int, frac) = self.0.split_once('.').unwrap_or((&self.0, ""));
        let digits: String = format!("{int}{frac}");
        let numer: BigInt = digits.parse().unwrap_or_else(|_| BigInt::zero());
        let mut denom = BigInt::one();
        for _ in 0..frac.len() {
            denom *= 10;
        }
        BigRational::new(numer, denom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    And,
    Or,
    Imp,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Add,
    Sub,
    Mul,
}

impl BinOp {
    pub fn spelling(self) -> &'static str {
        match self {
            BinOp::And => "and",
            BinOp::Or => "or",
            BinOp::Imp => "imp",
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
        }
    }

    pub fn is_comparison(self) -> bool {
        matches!(
            self,
            BinOp::Eq | BinOp::Ne | BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge
        )
    }

    pub fn is_arithmetic(self) -> bool {
        matches!(self, BinOp::Add | BinOp::Sub | BinOp::Mul)
    }

    pub fn is_logical(self) -> bool {
        matches!(self, BinOp::And | BinOp::Or | BinOp::Imp)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AmpPart {
    Re,
    Im,
}

/// Temporal operators as written, before desugaring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TemporalOp {
    AG,
    AF,
    AX,
    EG,
    EF,
    EX,
    /// `E[f U g]`
    EU,
    /// `A[f U g]`
    AU,
}

#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub loc: Loc,
}
eq_ignoring_loc!(Expr, kind);

impl Expr {
    pub fn new(kind: ExprKind, loc: Loc) -> Expr {
        Expr { kind, loc }
    }
}

/// Expression syntax shared by process bodies and properties. The variants
/// after `Binary` only appear in properties.
#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Bool(bool),
    Int(i64),
    Real(RealLit),
    Var(VarPath),
    Not(Box<Expr>),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    /// `qb(q)`
    QubitAtom(VarPath),
    /// `P(phi)`
    Prob(Box<Expr>),
    /// `re[q1,..](phi)` / `im[q1,..](phi)`
    Amp(AmpPart, Vec<VarPath>, Box<Expr>),
    /// `unentangled(q1,..)`
    Unentangled(Vec<VarPath>),
    Temporal(TemporalOp, Vec<Expr>),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_literals_convert_exactly() {
        let r = RealLit("0.4999".into()).to_rational();
        assert_eq!(r, BigRational::new(4999.into(), 10000.into()));
        assert_eq!(
            RealLit("2.50".into()).to_rational(),
            BigRational::new(5.into(), 2.into())
        );
    }

    #[test]
    fn equality_ignores_locations() {
        let a = Ident::new("x", Loc::new(1, 1));
        let b = Ident::new("x", Loc::new(9, 9));
        assert_eq!(a, b);
    }
}
