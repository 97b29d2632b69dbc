//! The CTL labelling agrees with path enumeration on random labelled trees.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stabmc_core::executor::{Limits, Machine};
use stabmc_core::frontend::ast::PropertyKind;
use stabmc_core::frontend::{load, parse_source};
use stabmc_core::logic::{check_property, label, parse_formula, Ctl, EvalContext, TreeShape, Truth};
use stabmc_oracles::ctl::{random_formula, random_tree, to_ctl, Formula, Label, Oracle, RandomTree};

const ATOMS: usize = 3;

fn labelling<'f>(f: &'f Ctl<Label>, tree: &RandomTree) -> stabmc_core::logic::Labelling<'f, Label> {
    label(f, tree, |s, n| match s {
        Label::Bottom => Truth::False,
        Label::Atom(i) => Truth::from_bool(tree.labels[n][*i]),
    })
}

/// Tree sizes: mostly small, some at the 10,000 node ceiling; chains stay
/// shorter so path enumeration remains cheap.
fn instance(rng: &mut ChaCha8Rng, i: usize) -> RandomTree {
    let (max, branching) = match i % 4 {
        0 => (10_000, rng.gen_range(2..=4)),
        1 => (rng.gen_range(1..=300), 1),
        _ => (rng.gen_range(1..=2_000), rng.gen_range(2..=3)),
    };
    random_tree(rng, max, branching, ATOMS)
}

fn assert_valid_explanation(f: &Ctl<Label>, tree: &RandomTree) {
    let l = labelling(f, tree);
    let e = l.explain(tree, 0);
    assert_eq!(e.path[0], 0);
    for w in e.path.windows(2) {
        assert!(tree.children(w[0]).contains(&w[1]), "path leaves the tree");
    }
    assert_eq!(*e.path.last().unwrap(), e.focus.node);
    assert_eq!(l.state_value(e.focus.state_index, e.focus.node), e.focus.value);
}

#[test]
fn labelling_matches_path_enumeration_on_random_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked = 0usize;
    for i in 0..200 {
        let tree = instance(&mut rng, i);
        assert!(tree.node_count() <= 10_000);
        let mut oracle = Oracle::new(&tree);
        let mut formulas: Vec<Formula> = (0..ATOMS)
            .flat_map(|a| {
                let p = Box::new(Formula::Atom(a));
                let q = Box::new(Formula::Atom((a + 1) % ATOMS));
                [Formula::EX(p.clone()), Formula::AF(p.clone()), Formula::EU(p, q)]
            })
            .collect();
        formulas.extend((0..4).map(|_| random_formula(&mut rng, 4, ATOMS)));
        for f in &formulas {
            let ctl = to_ctl(f);
            let l = labelling(&ctl, &tree);
            for n in 0..tree.node_count() {
                let expected = Truth::from_bool(oracle.holds(f, n));
                assert_eq!(l.value(n), expected, "tree {i}, node {n}, {f:?}");
                checked += 1;
            }
            assert_valid_explanation(&ctl, &tree);
        }
    }
    assert!(checked > 100_000, "{checked}");
}

#[test]
fn ag_ef_duality_on_random_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd0a1);
    for i in 0..200 {
        let tree = instance(&mut rng, i);
        let theta = random_formula(&mut rng, 3, ATOMS);
        let ag = to_ctl(&Formula::AG(Box::new(theta.clone())));
        let dual = Ctl::not(Ctl::ef(Ctl::not(to_ctl(&theta))));
        let (a, b) = (labelling(&ag, &tree), labelling(&dual, &tree));
        for n in 0..tree.node_count() {
            assert_eq!(a.value(n), b.value(n), "tree {i} node {n}");
        }
        let mut oracle = Oracle::new(&tree);
        let ef_not = Formula::EF(Box::new(Formula::Not(Box::new(theta.clone()))));
        let ag_f = Formula::AG(Box::new(theta));
        assert_eq!(oracle.holds(&ag_f, 0), !oracle.holds(&ef_not, 0));
    }
}

#[test]
fn ag_ef_duality_on_parsed_properties() {
    let src = include_str!("../../cli/examples/coinflip.qmc");
    let ast = parse_source(src).unwrap();
    let program = load(src).unwrap().program;
    let tree = Machine::new(&program).build_tree(Limits::default()).unwrap();
    let ctx = EvalContext::new(&program);
    let bodies = [
        "(Bob.abort == false)",
        "(Bob.dontknow == false)",
        "(Alice.x == Bob.x_hat)",
        "((Alice.b == Bob.b_hat) imp (Alice.x == Bob.x_hat))",
        "(EX (Bob.g == true))",
        "(AF (Alice.result == Bob.result))",
    ];
    for body in bodies {
        let check = |text: String| {
            let (p, _) = parse_formula(&text, &ast, PropertyKind::Temporal).unwrap();
            check_property(&p, &tree, ctx).verdict.truth()
        };
        let ag = check(format!("AG {body}"));
        let ef = check(format!("EF (not {body})"));
        assert_eq!(ag, !ef, "{body}");
    }
}
