//! The execution tree agrees with the independent AST-walking enumerator.

use stabmc_core::executor::{Limits, Machine, Value};
use stabmc_core::frontend::{load, parse_source};
use stabmc_oracles::enumerator::{enumerate, Val};

const COINFLIP: &str = include_str!("../../cli/examples/coinflip.qmc");
const FIXED_BASIS: &str = include_str!("../../cli/examples/coinflip_fixed_basis.qmc");

/// Sizes of the coin-flipping tree as counted by the enumerator. Each of the
/// 8 choices of (x, b, g) contributes 3 leaves when Bob's basis matches and
/// 8 when it does not, so 8 * 11 = 88 leaves.
const COINFLIP_NODES: u64 = 430;
const COINFLIP_LEAVES: u64 = 88;

fn compare(src: &str) {
    let ast = parse_source(src).unwrap();
    let oracle = enumerate(&ast, 10_000, |_| {});
    let typed = load(src).unwrap().program;
    let m = Machine::new(&typed);
    let s = m.build_tree(Limits::default()).unwrap().stats();
    assert_eq!(s.nodes as u64, oracle.nodes, "nodes");
    assert_eq!(s.leaves as u64, oracle.leaves, "leaves");
    assert_eq!(s.terminated_leaves as u64, oracle.terminated, "terminated");
    assert_eq!(s.deadlocked_leaves as u64, oracle.deadlocked, "deadlocked");
    assert_eq!(s.faulted_leaves as u64, oracle.faulted, "faulted");
    assert_eq!(s.max_depth, oracle.max_depth, "depth");
    assert_eq!(
        s.measurement_branches as u64, oracle.random_measurements,
        "measurements"
    );
}

#[test]
fn coinflip_tree_size_is_pinned_by_the_enumerator() {
    let ast = parse_source(COINFLIP).unwrap();
    let oracle = enumerate(&ast, 10_000, |_| {});
    assert_eq!(oracle.leaves, COINFLIP_LEAVES);
    assert_eq!(oracle.nodes, COINFLIP_NODES);
    assert_eq!(oracle.terminated, COINFLIP_LEAVES);
    compare(COINFLIP);
}

#[test]
fn coinflip_leaf_stores_agree() {
    let ast = parse_source(COINFLIP).unwrap();
    let mut oracle_leaves = Vec::new();
    let mut aborts = 0;
    enumerate(&ast, 10_000, |leaf| {
        let get = |p, n| match leaf.get(p, n) {
            Val::Bool(b) => b,
            other => panic!("{other:?}"),
        };
        assert_eq!(get("Alice", "result"), get("Bob", "result"));
        assert_eq!(get("Alice", "b"), get("Bob", "b"));
        aborts += usize::from(get("Bob", "abort"));
        oracle_leaves.push([
            get("Alice", "x"),
            get("Alice", "b"),
            get("Bob", "x_hat"),
            get("Bob", "b_hat"),
        ]);
    });
    // honest run: Bob never aborts
    assert_eq!(aborts, 0);

    let typed = load(COINFLIP).unwrap().program;
    let m = Machine::new(&typed);
    let tree = m.build_tree(Limits::default()).unwrap();
    let idx = |p: usize, n: &str| typed.processes[p].locals.iter().position(|v| v.name == n).unwrap();
    let engine_leaves: Vec<[bool; 4]> = tree
        .leaves_in_order()
        .into_iter()
        .map(|l| {
            let c = &tree.nodes[l].config;
            let b = |p, n| c.locals[p][idx(p, n)] == Value::Bool(true);
            [b(0, "x"), b(0, "b"), b(1, "x_hat"), b(1, "b_hat")]
        })
        .collect();
    let mut a = oracle_leaves.clone();
    let mut b = engine_leaves.clone();
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn fixed_basis_mutant_has_disagreeing_leaves() {
    let ast = parse_source(FIXED_BASIS).unwrap();
    let mut mismatches = 0;
    let s = enumerate(&ast, 10_000, |leaf| {
        if leaf.get("Alice", "x") != leaf.get("Bob", "x_hat") {
            mismatches += 1;
        }
    });
    assert!(mismatches > 0);
    assert_eq!(s.terminated, s.leaves);
    compare(FIXED_BASIS);
}

#[test]
fn small_programs_agree() {
    let programs = [
        "program P; process Q; begin skip; end; endprogram.",
        "program P; process Q; var q, r: qubit; a, b: bool; begin
           q := newqubit; r := newqubit; had q; cnot q r; a := meas q; b := meas r; end; endprogram.",
        "program P; var c: channel of integer;
         process S1; begin c!1; end;
         process R; var n, m: integer; begin c?n; c?m; end;
         process S2; begin c!2; end; endprogram.",
        "program P; process Q; var n: integer; begin
           do :: n < 3 -> n := n + 1; :: n < 2 -> n := n + 2; od
           if :: n == 3 -> skip; :: n == 4 -> n := 0; fi end; endprogram.",
        "program P; var c: channel of bool; process A1; var b: bool; begin c?b; end; endprogram.",
        "program P; process Q; var q: qubit; begin had q; end; endprogram.",
        "program P; var c: channel of qubit;
         process A1; var q: qubit; b: bool; begin q := newqubit; had q; c!q; b := meas q; end;
         process B1; var r: qubit; b: bool; begin c?r; b := meas r; end; endprogram.",
    ];
    for p in programs {
        compare(p);
    }
}
