//! Random Clifford circuits run in lockstep on a [`Tableau`] and a
//! [`StateVector`], comparing everything observable after each operation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stabmc_core::stabilizer::{Gate, MeasurementResult, Tableau};

use crate::statevector::{Outcome, StateVector};

#[derive(Clone, Copy, Debug)]
pub enum Op {
    Had(usize),
    Ph(usize),
    X(usize),
    Cnot(usize, usize),
    /// Measure; when random, collapse to the given bit.
    Measure(usize, bool),
}

pub fn random_circuit(rng: &mut impl Rng, qubits: usize, len: usize, measure: bool) -> Vec<Op> {
    (0..len)
        .map(|_| {
            let q = rng.gen_range(0..qubits);
            let choices = if measure { 5 } else { 4 };
            match rng.gen_range(0..choices) {
                0 => Op::Had(q),
                1 => Op::Ph(q),
                2 => Op::X(q),
                3 if qubits > 1 => {
                    let mut t = rng.gen_range(0..qubits - 1);
                    if t >= q {
                        t += 1;
                    }
                    Op::Cnot(q, t)
                }
                3 => Op::Had(q),
                _ => Op::Measure(q, rng.gen()),
            }
        })
        .collect()
}

/// Compare support sets, squared magnitudes and relative phases.
pub fn compare_support(t: &Tableau, sv: &StateVector) -> Result<(), String> {
    let ts = t.support(30).map_err(|e| e.to_string())?;
    let ss = sv.support();
    if ts.len() != ss.len() {
        return Err(format!("support size {} vs oracle {}", ts.len(), ss.len()));
    }
    let base = ss[0].1;
    for (tv, (bits, amp)) in ts.iter().zip(&ss) {
        if &tv.bits != bits {
            return Err(format!("support element {:?} vs oracle {:?}", tv.bits, bits));
        }
        if !sv.has_magnitude(*amp, tv.amplitude.halflog) {
            return Err(format!("magnitude mismatch at {}", tv.bit_string()));
        }
        let expect = StateVector::rotate(base, tv.amplitude.phase.quarter_turns());
        if expect != *amp {
            return Err(format!(
                "relative phase at {}: tableau {} oracle {:?} (base {:?})",
                tv.bit_string(),
                tv.amplitude.phase,
                amp,
                base
            ));
        }
    }
    Ok(())
}

pub fn compare_measurements(t: &Tableau, sv: &StateVector) -> Result<(), String> {
    for q in 0..t.num_qubits() {
        let got = t.measure(q).map_err(|e| e.to_string())?;
        let ok = matches!(
            (got, sv.measure(q)),
            (MeasurementResult::Random, Outcome::Even)
                | (MeasurementResult::Deterministic(false), Outcome::Certain(false))
                | (MeasurementResult::Deterministic(true), Outcome::Certain(true))
        );
        if !ok {
            return Err(format!("measure({q}): tableau {got:?} oracle {:?}", sv.measure(q)));
        }
    }
    Ok(())
}

/// Every nonempty proper subset, as sorted qubit lists.
pub fn compare_entanglement(t: &Tableau, sv: &StateVector) -> Result<(), String> {
    let n = t.num_qubits();
    for mask in 1usize..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|q| mask >> q & 1 == 1).collect();
        let got = t.is_unentangled(&subset).map_err(|e| e.to_string())?;
        if got != sv.is_product(&subset) {
            return Err(format!("is_unentangled({subset:?}) = {got}, oracle disagrees"));
        }
    }
    Ok(())
}

/// Run `ops` on both simulators, checking the tableau invariants after every
/// operation and all observables at the end.
pub fn run_lockstep(qubits: usize, ops: &[Op]) -> Result<(Tableau, StateVector), String> {
    let mut t = Tableau::new(qubits);
    let mut sv = StateVector::new(qubits);
    let err = |e: stabmc_core::stabilizer::StabilizerError| e.to_string();
    for op in ops {
        match *op {
            Op::Had(q) => {
                t.apply_gate(Gate::Had, q).map_err(err)?;
                sv.had(q);
            }
            Op::Ph(q) => {
                t.apply_gate(Gate::Ph, q).map_err(err)?;
                sv.ph(q);
            }
            Op::X(q) => {
                t.apply_gate(Gate::X, q).map_err(err)?;
                sv.x(q);
            }
            Op::Cnot(c, tg) => {
                t.apply_cnot(c, tg).map_err(err)?;
                sv.cnot(c, tg);
            }
            Op::Measure(q, bit) => match t.measure(q).map_err(err)? {
                MeasurementResult::Random => {
                    if sv.measure(q) != Outcome::Even {
                        return Err(format!("measure({q}) random, oracle {:?}", sv.measure(q)));
                    }
                    t.collapse(q, bit).map_err(err)?;
                    sv.collapse(q, bit);
                }
                MeasurementResult::Deterministic(b) => {
                    if sv.measure(q) != Outcome::Certain(b) {
                        return Err(format!("measure({q}) = {b}, oracle {:?}", sv.measure(q)));
                    }
                }
            },
        }
        t.validate().map_err(|e| format!("after {op:?}: {e}"))?;
    }
    compare_support(&t, &sv)?;
    compare_measurements(&t, &sv)?;
    compare_entanglement(&t, &sv)?;
    Ok((t, sv))
}

/// `count` random circuits on 1..=max_qubits qubits with up to `max_len` ops.
pub fn random_suite(seed: u64, count: usize, max_qubits: usize, max_len: usize, measure: bool) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let n = rng.gen_range(1..=max_qubits);
        let len = rng.gen_range(0..=max_len);
        let ops = random_circuit(&mut rng, n, len, measure);
        run_lockstep(n, &ops).map_err(|e| format!("circuit #{i} ({n} qubits, {ops:?}): {e}"))?;
    }
    Ok(())
}
