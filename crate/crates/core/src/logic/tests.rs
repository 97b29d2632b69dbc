use std::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;
use crate::executor::{Configuration, Limits, Machine};
use crate::frontend::ast::PropertyKind;
use crate::frontend::{load, parse_source, TypedProgram};

const COINFLIP: &str = include_str!("../../../cli/examples/coinflip.qmc");

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A model whose single process runs `body` over `locals`, and the
/// configuration at its (unique) leaf.
struct Fixture {
    ast: crate::frontend::ast::Program,
    program: TypedProgram,
    end: Configuration,
}

fn fixture(locals: &str, body: &str) -> Fixture {
    let src = format!("program P; process Q; var {locals} begin {body} end; endprogram.");
    let ast = parse_source(&src).unwrap();
    let program = load(&src).unwrap().program;
    let tree = Machine::new(&program).build_tree(Limits::default()).unwrap();
    let leaves = tree.leaves_in_order();
    assert_eq!(leaves.len(), 1, "fixture must be deterministic");
    let end = tree.nodes[leaves[0]].config.clone();
    Fixture { ast, program, end }
}

impl Fixture {
    fn state(&self, text: &str) -> StateFormula {
        let (p, _) = parse_formula(text, &self.ast, PropertyKind::FinalState).unwrap_or_else(|e| panic!("{e:?}"));
        let Ctl::State(s) = p.formula else {
            panic!("not a state formula")
        };
        s
    }

    fn eval(&self, text: &str) -> Eval<bool> {
        self.eval_capped(text, 20)
    }

    fn eval_capped(&self, text: &str, cap: u32) -> Eval<bool> {
        let ctx = EvalContext {
            program: &self.program,
            support_cap: cap,
        };
        eval_state(&self.state(text), &self.end, ctx)
    }

    fn term(&self, text: &str) -> Num {
        let StateFormula::Leq(t, _) = self.state(&format!("{text} <= 0")) else {
            panic!()
        };
        eval_term(&t, &self.end, EvalContext::new(&self.program)).unwrap()
    }
}

fn plus() -> Fixture {
    fixture("q: qubit;", "q := newqubit; had q;")
}

fn bell() -> Fixture {
    fixture("q0, q1: qubit;", "q0 := newqubit; q1 := newqubit; had q0; cnot q0 q1;")
}

fn ghz() -> Fixture {
    fixture(
        "q0, q1, q2: qubit;",
        "q0 := newqubit; q1 := newqubit; q2 := newqubit; had q0; cnot q0 q1; cnot q1 q2;",
    )
}

// ---- desugaring ----

#[test]
fn ag_desugars_to_negated_eu() {
    let ast = parse_source(COINFLIP).unwrap();
    let text = "(AG (((b==b_hat) and (x==x_hat)) imp (abort==false)))";
    let (p, warnings) = parse_formula(text, &ast, PropertyKind::Temporal).unwrap();
    // b and x are declared by both processes
    assert_eq!(warnings.len(), 2);
    let Ctl::Implies(eu, bottom) = &p.formula else { panic!() };
    assert_eq!(**bottom, Ctl::State(StateFormula::Bottom));
    let Ctl::EU(top, neg) = &**eu else { panic!() };
    assert_eq!(**top, Ctl::top());
    let Ctl::Implies(inner, _) = &**neg else { panic!() };
    // the whole implication is one lifted store atom
    assert!(matches!(&**inner, Ctl::State(StateFormula::Lifted(Classical::Atom(_)))));
}

#[test]
fn classical_formula_is_a_single_store_atom() {
    let ast = parse_source(COINFLIP).unwrap();
    let (p, _) = parse_formula("(Alice.result == Bob.result)", &ast, PropertyKind::FinalState).unwrap();
    assert!(matches!(
        p.formula,
        Ctl::State(StateFormula::Lifted(Classical::Atom(_)))
    ));
}

#[test]
fn probability_bound_desugars_to_leq() {
    let f = plus();
    let s = f.state("P(not qb(q)) <= 0.5");
    let StateFormula::Leq(Term::Prob(Classical::Implies(a, b)), Term::Literal(r)) = s else {
        panic!("{s:?}")
    };
    assert!(matches!(*a, Classical::Qubit(_)));
    assert_eq!(*b, Classical::Bottom);
    assert_eq!(r, ratio(1, 2));
}

#[test]
fn derived_temporal_operators_reduce_to_primitives() {
    let ast = parse_source(COINFLIP).unwrap();
    for text in [
        "(AX abort)",
        "(EG abort)",
        "(EF abort)",
        "(A[abort U dontknow])",
        "(AF abort)",
        "(EX abort)",
    ] {
        let (p, _) = parse_formula(text, &ast, PropertyKind::Temporal).unwrap();
        fn primitive(f: &Ctl<StateFormula>) -> bool {
            match f {
                Ctl::State(_) => true,
                Ctl::Implies(a, b) | Ctl::EU(a, b) => primitive(a) && primitive(b),
                Ctl::EX(a) | Ctl::AF(a) => primitive(a),
            }
        }
        assert!(primitive(&p.formula), "{text}");
    }
}

// ---- classical and state evaluation ----

#[test]
fn classical_evaluation() {
    let f = fixture("q: qubit; x: integer;", "q := newqubit; x := 1;");
    let ctx = EvalContext::new(&f.program);
    let q = crate::frontend::Slot {
        scope: crate::frontend::Scope::Local(0),
        index: 0,
    };
    let not_qb = Classical::not(Classical::Qubit(q));
    assert_eq!(eval_classical(&not_qb, &[false], &f.end, ctx), Ok(true));
    assert_eq!(eval_classical(&not_qb, &[true], &f.end, ctx), Ok(false));
    for bits in [[false], [true]] {
        assert_eq!(eval_classical(&Classical::Bottom, &bits, &f.end, ctx), Ok(false));
    }
    let StateFormula::Lifted(x_is_one) = f.state("x == 1") else {
        panic!()
    };
    assert_eq!(eval_classical(&x_is_one, &[true], &f.end, ctx), Ok(true));
}

#[test]
fn plus_state_lifting_and_probability() {
    let f = plus();
    assert_eq!(f.eval("not qb(q)"), Ok(false));
    assert_eq!(f.term("P(not qb(q))"), Num::Exact(ratio(1, 2)));
    assert_eq!(f.eval("P(not qb(q)) <= 0.5"), Ok(true));
    assert_eq!(f.eval("P(not qb(q)) <= 0.4999"), Ok(false));
    assert_eq!(f.eval("P(not qb(q)) < 0.5"), Ok(false));
    assert_eq!(f.eval("P(not qb(q)) >= 0.5"), Ok(true));
    assert_eq!(f.eval("P(not qb(q)) == 0.5"), Ok(true));
    assert_eq!(f.eval("P(qb(q)) + P(not qb(q)) == 1"), Ok(true));
}

#[test]
fn zero_state_lifting() {
    let f = fixture("q: qubit;", "q := newqubit;");
    assert_eq!(f.eval("not qb(q)"), Ok(true));
    assert_eq!(f.term("P(qb(q))"), Num::Exact(ratio(0, 1)));
}

#[test]
fn ghz_probability_is_exactly_one() {
    let f = ghz();
    assert_eq!(f.term("P(qb(q0) == qb(q1))"), Num::Exact(ratio(1, 1)));
    assert_eq!(f.eval("qb(q0) == qb(q2)"), Ok(true));
    assert_eq!(f.eval("unentangled(q0, q1)"), Ok(false));
}

#[test]
fn bell_entanglement_needs_no_support() {
    let f = bell();
    for cap in [20, 0] {
        assert_eq!(f.eval_capped("unentangled(q0, q1)", cap), Ok(true));
        assert_eq!(f.eval_capped("unentangled(q0)", cap), Ok(false));
        assert_eq!(f.eval_capped("not unentangled(q1)", cap), Ok(true));
    }
    // a probability does enumerate the support and hits the cap
    let err = f.eval_capped("P(qb(q0)) <= 1", 0).unwrap_err();
    assert!(err.contains("cap"), "{err}");
}

#[test]
fn amplitude_terms() {
    let f = plus();
    let half_sqrt = std::f64::consts::FRAC_1_SQRT_2;
    assert!((f.term("re[q](qb(q))").to_f64() - half_sqrt).abs() < 1e-12);
    assert_eq!(f.term("im[q](qb(q))"), Num::Exact(ratio(0, 1)));
    let ph = fixture("q: qubit;", "q := newqubit; had q; ph q;");
    assert!((ph.term("im[q](qb(q))").to_f64() - half_sqrt).abs() < 1e-12);
    assert_eq!(ph.term("re[q](not qb(q))").to_f64(), half_sqrt);
    let zero = fixture("q: qubit;", "q := newqubit;");
    assert_eq!(zero.term("re[q](not qb(q))"), Num::Exact(ratio(1, 1)));
    assert_eq!(zero.term("re[q](qb(q))"), Num::Exact(ratio(0, 1)));
    // two-qubit product factor with even halflog stays exact
    let pp = fixture("a, b: qubit;", "a := newqubit; b := newqubit; had a; had b;");
    assert_eq!(pp.term("re[a, b](qb(a) and qb(b))"), Num::Exact(ratio(1, 2)));
}

#[test]
fn undefined_amplitudes_propagate_by_kleene_rules() {
    let f = bell();
    let err = f.eval("re[q0](qb(q0)) <= 1").unwrap_err();
    assert!(err.contains("entangled"), "{err}");
    // the selector must pick exactly one valuation
    let err = plus().eval("re[q](true) <= 1").unwrap_err();
    assert!(err.contains("exactly one"), "{err}");
    // a true consequent or a false antecedent decides the implication anyway
    assert_eq!(f.eval("(re[q0](qb(q0)) <= 1) imp unentangled(q0, q1)"), Ok(true));
    assert_eq!(f.eval("unentangled(q0) imp (re[q0](qb(q0)) <= 1)"), Ok(true));
    assert!(f.eval("(re[q0](qb(q0)) <= 1) and unentangled(q0, q1)").is_err());
    assert_eq!(f.eval("(re[q0](qb(q0)) <= 1) and unentangled(q0)"), Ok(false));
}

#[test]
fn unbound_qubit_is_undefined() {
    let f = fixture("q, r: qubit;", "q := newqubit;");
    let err = f.eval("qb(r)").unwrap_err();
    assert!(err.contains("unbound"), "{err}");
}

#[test]
fn lifting_agrees_with_probability_one() {
    for f in [plus(), bell(), ghz()] {
        let qs: Vec<String> = f.program.processes[0].locals.iter().map(|v| v.name.clone()).collect();
        let atoms: Vec<String> = qs.iter().map(|q| format!("qb({q})")).collect();
        let mut alphas = atoms.clone();
        for a in &atoms {
            for b in &atoms {
                alphas.push(format!("({a} == {b})"));
                alphas.push(format!("({a} imp {b})"));
                alphas.push(format!("({a} and not {b})"));
            }
        }
        for a in alphas {
            let lifted = f.eval(&a).unwrap();
            let prob_one = f.eval(&format!("P({a}) >= 1")).unwrap();
            let lifted_neg = f.eval(&format!("not ({a}) == true")).unwrap();
            let prob_zero = f.eval(&format!("P({a}) <= 0")).unwrap();
            assert_eq!(lifted, prob_one, "{a}");
            assert_eq!(lifted_neg, prob_zero, "{a}");
        }
    }
}

// ---- temporal layer ----

/// Arena tree given by child ranges, for fixtures.
struct Shape(Vec<Range<usize>>);

impl TreeShape for Shape {
    fn node_count(&self) -> usize {
        self.0.len()
    }

    fn children(&self, node: usize) -> Range<usize> {
        self.0[node].clone()
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Prop {
    Bottom,
    Var(usize),
}

impl Atomic for Prop {
    fn bottom() -> Prop {
        Prop::Bottom
    }

    fn is_bottom(&self) -> bool {
        *self == Prop::Bottom
    }
}

fn eval_on(f: &Ctl<Prop>, tree: &Shape, labels: &[Vec<bool>]) -> Truth {
    label(f, tree, |p, n| match p {
        Prop::Bottom => Truth::False,
        Prop::Var(i) => Truth::from_bool(labels[n][*i]),
    })
    .value(0)
}

fn var(i: usize) -> Ctl<Prop> {
    Ctl::State(Prop::Var(i))
}

#[test]
fn single_node_tree_stutters() {
    let tree = Shape(vec![Range::default()]);
    for p in [false, true] {
        for q in [false, true] {
            let labels = vec![vec![p, q]];
            let t = Truth::from_bool;
            assert_eq!(eval_on(&Ctl::af(var(0)), &tree, &labels), t(p));
            assert_eq!(eval_on(&Ctl::ex(var(0)), &tree, &labels), t(p));
            assert_eq!(eval_on(&Ctl::eu(var(0), var(1)), &tree, &labels), t(q));
            assert_eq!(eval_on(&Ctl::ag(var(0)), &tree, &labels), t(p));
            assert_eq!(eval_on(&Ctl::eg(var(0)), &tree, &labels), t(p));
            assert_eq!(eval_on(&Ctl::au(var(0), var(1)), &tree, &labels), t(q));
        }
    }
    assert_eq!(eval_on(&Ctl::ex(Ctl::bottom()), &tree, &[vec![]]), Truth::False);
    assert_eq!(eval_on(&Ctl::af(Ctl::top()), &tree, &[vec![]]), Truth::True);
}

#[test]
fn small_tree_fixpoints_and_explanations() {
    // 0 -> {1, 2}, 1 -> {3}; leaves 2 and 3
    let tree = Shape(vec![1..3, 3..4, 3..3, 4..4]);
    let labels = [
        vec![true, false],
        vec![true, false],
        vec![false, false],
        vec![false, true],
    ];
    let eu = Ctl::eu(var(0), var(1));
    let l = label(&eu, &tree, |p, n| match p {
        Prop::Bottom => Truth::False,
        Prop::Var(i) => Truth::from_bool(labels[n][*i]),
    });
    assert_eq!(l.value(0), Truth::True);
    let e = l.explain(&tree, 0);
    assert_eq!(e.path, vec![0, 1, 3]);
    assert_eq!(e.focus.value, Truth::True);
    // AF q fails along 0 -> 2
    let af = Ctl::af(var(1));
    let l = label(&af, &tree, |p, n| match p {
        Prop::Bottom => Truth::False,
        Prop::Var(i) => Truth::from_bool(labels[n][*i]),
    });
    assert_eq!(l.value(0), Truth::False);
    assert_eq!(l.explain(&tree, 0).path, vec![0, 2]);
    // AG p fails: witness of EF not p ends at node 2
    let ag = Ctl::ag(var(0));
    let l = label(&ag, &tree, |p, n| match p {
        Prop::Bottom => Truth::False,
        Prop::Var(i) => Truth::from_bool(labels[n][*i]),
    });
    assert_eq!(l.value(0), Truth::False);
    let e = l.explain(&tree, 0);
    assert_eq!(e.path, vec![0, 1, 3]);
    assert_eq!(e.focus.value, Truth::False);
    assert_eq!(ag.states()[e.focus.state_index], &Prop::Var(0));
}

#[test]
fn undefined_is_contained_by_kleene_or() {
    // EF over a tree where one leaf is undefined and another satisfies the goal
    let tree = Shape(vec![1..3, 3..3, 3..3]);
    let values = [Truth::False, Truth::Undefined, Truth::True];
    let f = Ctl::ef(var(0));
    let l = label(&f, &tree, |p, n| match p {
        Prop::Bottom => Truth::False,
        Prop::Var(_) => values[n],
    });
    assert_eq!(l.value(0), Truth::True);
    let values = [Truth::False, Truth::Undefined, Truth::False];
    let l = label(&f, &tree, |p, n| match p {
        Prop::Bottom => Truth::False,
        Prop::Var(_) => values[n],
    });
    assert_eq!(l.value(0), Truth::Undefined);
    let e = l.explain(&tree, 0);
    assert_eq!(e.path, vec![0, 1]);
    assert_eq!(e.focus.value, Truth::Undefined);
}

// ---- properties over the coin-flipping tree ----

fn coinflip() -> (crate::frontend::ast::Program, TypedProgram, ExecTree) {
    let ast = parse_source(COINFLIP).unwrap();
    let program = load(COINFLIP).unwrap().program;
    let tree = Machine::new(&program).build_tree(Limits::default()).unwrap();
    (ast, program, tree)
}

#[test]
fn coinflip_bundled_properties_hold() {
    let (_, program, tree) = coinflip();
    assert_eq!(program.properties.len(), 2);
    for p in &program.properties {
        let r = check_property(&Property::from_typed(p), &tree, EvalContext::new(&program));
        assert_eq!(r.verdict, Verdict::True, "{}", p.text);
        assert!(r.trace.is_none());
    }
}

#[test]
fn coinflip_never_aborts() {
    let (ast, program, tree) = coinflip();
    let ctx = EvalContext::new(&program);
    let check = |text: &str| {
        let (p, _) = parse_formula(text, &ast, PropertyKind::Temporal).unwrap();
        check_property(&p, &tree, ctx)
    };
    // honest parties: a matching basis reproduces Alice's bit, so abort stays false
    let r = check("E[true U (Bob.abort == true)]");
    assert_eq!(r.verdict, Verdict::False);
    assert_eq!(check("AG (Bob.abort == false)").verdict, Verdict::True);
    // a mismatching basis does happen, and is then witnessed
    let r = check("EF (Bob.dontknow == true)");
    assert_eq!(r.verdict, Verdict::True);
    let trace = r.trace.unwrap();
    let end = &tree.nodes[*trace.path.last().unwrap()].config;
    let dontknow = program.processes[1]
        .locals
        .iter()
        .position(|v| v.name == "dontknow")
        .unwrap();
    assert_eq!(end.locals[1][dontknow], crate::executor::Value::Bool(true));
    assert_eq!(check("AF true").verdict, Verdict::True);
    assert_eq!(check("EX false").verdict, Verdict::False);
}

#[test]
fn final_state_counterexample_is_first_failing_leaf() {
    let src = "program P; process Al; var result: bool; begin skip; end;
               process Bo; var result: bool; begin result := true; end; endprogram.
               finalstateproperty (Al.result == Bo.result)";
    let ast = parse_source(src).unwrap();
    let program = load(src).unwrap().program;
    let tree = Machine::new(&program).build_tree(Limits::default()).unwrap();
    let ctx = EvalContext::new(&program);
    let r = check_property(&Property::from_typed(&program.properties[0]), &tree, ctx);
    assert_eq!(r.verdict, Verdict::False);
    let trace = r.trace.unwrap();
    assert_eq!(trace.path, tree.path_to(tree.leaves_in_order()[0]));
    let (top, _) = parse_formula("(true)", &ast, PropertyKind::FinalState).unwrap();
    assert_eq!(check_property(&top, &tree, ctx).verdict, Verdict::True);
}

#[test]
fn undefined_verdict_carries_reason_and_path() {
    let src = "program P; process Q; var q0, q1: qubit; begin
               q0 := newqubit; q1 := newqubit; had q0; cnot q0 q1; end; endprogram.
               property (AG (re[q0](qb(q0)) <= 1))";
    let program = load(src).unwrap().program;
    let tree = Machine::new(&program).build_tree(Limits::default()).unwrap();
    let r = check_property(
        &Property::from_typed(&program.properties[0]),
        &tree,
        EvalContext::new(&program),
    );
    let Verdict::Undefined(reason) = &r.verdict else {
        panic!("{r:?}")
    };
    assert!(reason.contains("unbound") || reason.contains("entangled"), "{reason}");
    assert!(r.trace.is_some());
}
