//! Printer/parser round trips on generated syntax trees, and parser
//! totality on arbitrary and mutated input.

use proptest::prelude::*;

use stabmc_core::executor::{Limits, Machine};
use stabmc_core::frontend::ast::*;
use stabmc_core::frontend::{load, parse_formula_syntax, parse_source, Loc};
use stabmc_core::logic::{check_property, EvalContext, Property};
use stabmc_core::stabilizer::Gate;

const NAMES: &[&str] = &["a", "b", "q0", "x_hat", "result"];
const PROCS: &[&str] = &["Alice", "Bob"];

fn ident(name: &str) -> Ident {
    Ident::new(name, Loc::default())
}

fn expr(kind: ExprKind) -> Expr {
    Expr::new(kind, Loc::default())
}

fn name() -> impl Strategy<Value = Ident> {
    prop::sample::select(NAMES).prop_map(ident)
}

fn var_path() -> impl Strategy<Value = VarPath> {
    (prop::option::of(prop::sample::select(PROCS)), name()).prop_map(|(p, name)| VarPath {
        process: p.map(ident),
        name,
    })
}

fn bin_op() -> impl Strategy<Value = BinOp> {
    use BinOp::*;
    prop::sample::select(vec![And, Or, Imp, Eq, Ne, Lt, Le, Gt, Ge, Add, Sub, Mul])
}

fn literal() -> impl Strategy<Value = Expr> {
    prop_oneof![
        any::<bool>().prop_map(|b| expr(ExprKind::Bool(b))),
        (0..i64::MAX).prop_map(|v| expr(ExprKind::Int(v))),
        (0u32..1000, 0u32..10_000).prop_map(|(i, f)| expr(ExprKind::Real(RealLit(format!("{i}.{f}"))))),
    ]
}

/// Expressions allowed in process bodies.
fn classical() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![literal(), var_path().prop_map(|v| expr(ExprKind::Var(v)))];
    leaf.prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| expr(ExprKind::Not(Box::new(e)))),
            inner.clone().prop_map(|e| expr(ExprKind::Neg(Box::new(e)))),
            (bin_op(), inner.clone(), inner).prop_map(|(op, a, b)| expr(ExprKind::Binary(
                op,
                Box::new(a),
                Box::new(b)
            ))),
        ]
    })
}

fn formula() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        literal(),
        var_path().prop_map(|v| expr(ExprKind::Var(v))),
        var_path().prop_map(|v| expr(ExprKind::QubitAtom(v))),
        prop::collection::vec(var_path(), 1..4).prop_map(|vs| expr(ExprKind::Unentangled(vs))),
    ];
    leaf.prop_recursive(5, 48, 2, |inner| {
        use TemporalOp::*;
        let unary_temporal = prop::sample::select(vec![AG, AF, AX, EG, EF, EX]);
        let until = prop::sample::select(vec![EU, AU]);
        let part = prop::sample::select(vec![AmpPart::Re, AmpPart::Im]);
        prop_oneof![
            inner.clone().prop_map(|e| expr(ExprKind::Not(Box::new(e)))),
            inner.clone().prop_map(|e| expr(ExprKind::Neg(Box::new(e)))),
            (bin_op(), inner.clone(), inner.clone()).prop_map(|(op, a, b)| expr(ExprKind::Binary(
                op,
                Box::new(a),
                Box::new(b)
            ))),
            inner.clone().prop_map(|e| expr(ExprKind::Prob(Box::new(e)))),
            (part, prop::collection::vec(var_path(), 1..3), inner.clone()).prop_map(|(p, vs, e)| expr(ExprKind::Amp(
                p,
                vs,
                Box::new(e)
            ))),
            (unary_temporal, inner.clone()).prop_map(|(op, e)| expr(ExprKind::Temporal(op, vec![e]))),
            (until, inner.clone(), inner).prop_map(|(op, a, b)| expr(ExprKind::Temporal(op, vec![a, b]))),
        ]
    })
}

fn stmt(kind: StmtKind) -> Stmt {
    Stmt {
        kind,
        loc: Loc::default(),
    }
}

fn simple_stmt() -> impl Strategy<Value = Stmt> {
    let gate = prop::sample::select(vec![Gate::Had, Gate::Ph, Gate::X]);
    prop_oneof![
        (name(), classical()).prop_map(|(target, value)| stmt(StmtKind::Assign { target, value })),
        name().prop_map(|target| stmt(StmtKind::NewQubit { target })),
        (gate, name()).prop_map(|(gate, qubit)| stmt(StmtKind::Gate { gate, qubit })),
        (name(), name()).prop_map(|(control, target)| stmt(StmtKind::CNot { control, target })),
        (name(), name()).prop_map(|(target, qubit)| stmt(StmtKind::Measure { target, qubit })),
        (name(), classical()).prop_map(|(channel, value)| stmt(StmtKind::Send { channel, value })),
        (name(), name()).prop_map(|(channel, target)| stmt(StmtKind::Receive { channel, target })),
        Just(stmt(StmtKind::Skip)),
    ]
}

fn statement() -> impl Strategy<Value = Stmt> {
    simple_stmt().prop_recursive(3, 24, 3, |inner| {
        let branch = (classical(), prop::collection::vec(inner, 0..3)).prop_map(|(guard, body)| Branch { guard, body });
        let branches = prop::collection::vec(branch, 1..3).boxed();
        prop_oneof![
            branches.clone().prop_map(|b| stmt(StmtKind::If(b))),
            branches.prop_map(|b| stmt(StmtKind::Do(b))),
        ]
    })
}

fn decls() -> impl Strategy<Value = Vec<VarDecl>> {
    let ty = prop_oneof![
        Just(DataType::Integer),
        Just(DataType::Bool),
        Just(DataType::Real),
        Just(DataType::Qubit),
        Just(DataType::Channel(BaseType::Qubit)),
        Just(DataType::Channel(BaseType::Bool)),
    ];
    // distinct names: duplicates are a parse error
    (
        prop::sample::subsequence(NAMES, 0..NAMES.len()),
        prop::collection::vec(ty, NAMES.len()),
    )
        .prop_map(|(names, tys)| {
            names
                .into_iter()
                .zip(tys)
                .map(|(n, ty)| VarDecl { name: ident(n), ty })
                .collect()
        })
}

fn program() -> impl Strategy<Value = Program> {
    let process = |n: &'static str| {
        (decls(), prop::collection::vec(statement(), 0..5)).prop_map(move |(locals, body)| ProcessDecl {
            name: ident(n),
            locals,
            body,
        })
    };
    let property = (any::<bool>(), formula()).prop_map(|(temporal, formula)| PropertyDecl {
        kind: if temporal {
            PropertyKind::Temporal
        } else {
            PropertyKind::FinalState
        },
        formula,
        text: String::new(),
        loc: Loc::default(),
    });
    (
        decls(),
        process("Alice"),
        prop::option::of(process("Bob")),
        prop::collection::vec(property, 0..3),
    )
        .prop_map(|(shared, a, b, properties)| Program {
            name: ident("Generated"),
            shared,
            processes: std::iter::once(a).chain(b).collect(),
            properties,
        })
}

const COINFLIP: &str = include_str!("../../cli/examples/coinflip.qmc");

/// Source fragments a mutation may splice in.
const FRAGMENTS: &[&str] = &[
    "(",
    ")",
    "[",
    "]",
    ";",
    ":",
    "::",
    "->",
    "!",
    "?",
    ".",
    ",",
    ":=",
    "if",
    "fi",
    "do",
    "od",
    "begin",
    "end",
    "var",
    "process",
    "program",
    "endprogram",
    "qubit",
    "newqubit",
    "meas",
    "had",
    "cnot",
    "P(",
    "re[",
    "unentangled(",
    "E[",
    "A[",
    "U",
    "AG",
    "EX",
    "not",
    "and",
    "imp",
    "==",
    "<=",
    "-",
    "*",
    "0.5",
    "99999999999999999999",
    "{",
    "}",
    "x",
    "\u{0}",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn printed_formulas_reparse(e in formula()) {
        let printed = e.to_string();
        let back = parse_formula_syntax(&printed).map_err(|d| TestCaseError::fail(format!("{printed}: {d:?}")))?;
        prop_assert_eq!(back, e, "{}", printed);
    }

    #[test]
    fn printed_programs_reparse(p in program()) {
        let printed = p.to_string();
        let back = parse_source(&printed).map_err(|d| TestCaseError::fail(format!("{printed}\n{d:?}")))?;
        prop_assert_eq!(&back, &p, "{}", printed);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn arbitrary_input_never_panics(src in "\\PC{0,200}") {
        let _ = parse_source(&src);
        let _ = parse_formula_syntax(&src);
        let _ = load(&src);
    }

    #[test]
    fn mutated_model_never_panics(
        edits in prop::collection::vec((0usize..COINFLIP.len(), 0usize..8, prop::sample::select(FRAGMENTS)), 1..6)
    ) {
        let mut src = COINFLIP.to_string();
        for (at, cut, frag) in edits {
            let mut start = at.min(src.len());
            while !src.is_char_boundary(start) {
                start -= 1;
            }
            let mut stop = (start + cut).min(src.len());
            while !src.is_char_boundary(stop) {
                stop += 1;
            }
            src.replace_range(start..stop, frag);
        }
        // a mutated model either loads and runs, or reports an error
        match load(&src) {
            Ok(c) => {
                let limits = Limits { max_depth: 60, max_nodes: 5_000 };
                if let Ok(tree) = Machine::new(&c.program).build_tree(limits) {
                    for p in &c.program.properties {
                        let _ = check_property(&Property::from_typed(p), &tree, EvalContext::new(&c.program));
                    }
                }
            }
            Err(diags) => prop_assert!(diags.iter().any(|d| d.is_error())),
        }
    }
}
