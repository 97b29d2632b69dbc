use stabmc_oracles::circuits::{random_suite, run_lockstep, Op};

#[test]
fn unitary_circuits_match_statevector() {
    random_suite(7, 300, 6, 40, false).unwrap();
}

#[test]
fn circuits_with_measurement_match_statevector() {
    random_suite(11, 300, 6, 40, true).unwrap();
}

#[test]
fn ghz_chain() {
    let ops = [
        Op::Had(0),
        Op::Cnot(0, 1),
        Op::Cnot(1, 2),
        Op::Ph(2),
        Op::Measure(1, true),
    ];
    let (t, _) = run_lockstep(3, &ops).unwrap();
    assert_eq!(t.support(0).unwrap().len(), 1);
}
