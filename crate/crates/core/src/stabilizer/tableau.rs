use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::gf2::{self, get, set, words_for};
use super::pauli::{self, PauliRow};
use super::{FactorAmplitude, Gate, MeasurementResult, QubitId, StabilizerError, SupportValuation};

/// Destabilizer/stabilizer tableau of an `n`-qubit stabilizer state.
///
/// Rows `0..n` are destabilizers, rows `n..2n` stabilizers. Each row stores
/// its x- and z-bits packed into `words` `u64`s and a sign bit; a column with
/// x=z=1 means `Y`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    words: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    r: Vec<bool>,
}

/// Sum of the `g` exponents for `P_left * P_right`, bit-parallel.
fn product_exponent(lx: &[u64], lz: &[u64], rx: &[u64], rz: &[u64]) -> i64 {
    let mut sum = 0i64;
    for k in 0..lx.len() {
        let (x1, z1, x2, z2) = (lx[k], lz[k], rx[k], rz[k]);
        let plus = (x1 & z1 & !x2 & z2) | (x1 & !z1 & x2 & z2) | (!x1 & z1 & x2 & !z2);
        let minus = (x1 & z1 & x2 & !z2) | (x1 & !z1 & !x2 & z2) | (!x1 & z1 & x2 & z2);
        sum += plus.count_ones() as i64 - minus.count_ones() as i64;
    }
    sum
}

impl Tableau {
    /// `|0...0>` on `n` qubits.
    pub fn new(n: usize) -> Tableau {
        let words = words_for(n);
        let mut t = Tableau {
            n,
            words,
            x: vec![0; 2 * n * words],
            z: vec![0; 2 * n * words],
            r: vec![false; 2 * n],
        };
        for q in 0..n {
            set(&mut t.x[q * words..(q + 1) * words], q, true);
            let s = n + q;
            set(&mut t.z[s * words..(s + 1) * words], q, true);
        }
        t
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    fn row_x(&self, i: usize) -> &[u64] {
        &self.x[i * self.words..(i + 1) * self.words]
    }

    fn row_z(&self, i: usize) -> &[u64] {
        &self.z[i * self.words..(i + 1) * self.words]
    }

    fn check(&self, q: QubitId) -> Result<(), StabilizerError> {
        if q < self.n {
            Ok(())
        } else {
            Err(StabilizerError::InvalidQubit {
                qubit: q,
                qubits: self.n,
            })
        }
    }

    /// Append a fresh qubit in `|0>`; returns its id (the old qubit count).
    pub fn extend(&mut self) -> QubitId {
        let n = self.n;
        let m = n + 1;
        let words = words_for(m);
        let mut x = vec![0; 2 * m * words];
        let mut z = vec![0; 2 * m * words];
        let mut r = vec![false; 2 * m];
        let old = self.words;
        for i in 0..2 * n {
            let dst = if i < n { i } else { i + 1 };
            x[dst * words..dst * words + old].copy_from_slice(self.row_x(i));
            z[dst * words..dst * words + old].copy_from_slice(self.row_z(i));
            r[dst] = self.r[i];
        }
        set(&mut x[n * words..(n + 1) * words], n, true);
        let s = 2 * n + 1;
        set(&mut z[s * words..(s + 1) * words], n, true);
        *self = Tableau { n: m, words, x, z, r };
        n
    }

    pub fn apply_gate(&mut self, gate: Gate, q: QubitId) -> Result<(), StabilizerError> {
        self.check(q)?;
        let (w, mask) = (q / 64, 1u64 << (q % 64));
        for i in 0..2 * self.n {
            let idx = i * self.words + w;
            let xb = self.x[idx] & mask != 0;
            let zb = self.z[idx] & mask != 0;
            match gate {
                Gate::Had => {
                    self.r[i] ^= xb && zb;
                    if xb != zb {
                        self.x[idx] ^= mask;
                        self.z[idx] ^= mask;
                    }
                }
                Gate::Ph => {
                    self.r[i] ^= xb && zb;
                    if xb {
                        self.z[idx] ^= mask;
                    }
                }
                Gate::X => self.r[i] ^= zb,
            }
        }
        Ok(())
    }

    pub fn apply_cnot(&mut self, control: QubitId, target: QubitId) -> Result<(), StabilizerError> {
        self.check(control)?;
        self.check(target)?;
        if control == target {
            return Err(StabilizerError::SameControlTarget(control));
        }
        let (cw, cm) = (control / 64, 1u64 << (control % 64));
        let (tw, tm) = (target / 64, 1u64 << (target % 64));
        for i in 0..2 * self.n {
            let base = i * self.words;
            let xc = self.x[base + cw] & cm != 0;
            let zc = self.z[base + cw] & cm != 0;
            let xt = self.x[base + tw] & tm != 0;
            let zt = self.z[base + tw] & tm != 0;
            self.r[i] ^= xc && zt && !(xt ^ zc);
            if xc {
                self.x[base + tw] ^= tm;
            }
            if zt {
                self.z[base + cw] ^= cm;
            }
        }
        Ok(())
    }

    /// Row `h` becomes `row i * row h`.
    fn rowsum(&mut self, h: usize, i: usize) {
        let w = self.words;
        let e = product_exponent(self.row_x(i), self.row_z(i), self.row_x(h), self.row_z(h));
        let total = (2 * self.r[h] as i64 + 2 * self.r[i] as i64 + e).rem_euclid(4);
        debug_assert!(total == 0 || total == 2);
        self.r[h] = total == 2;
        for k in 0..w {
            self.x[h * w + k] ^= self.x[i * w + k];
            self.z[h * w + k] ^= self.z[i * w + k];
        }
    }

    fn random_pivot(&self, q: QubitId) -> Option<usize> {
        (self.n..2 * self.n).find(|&p| get(self.row_x(p), q))
    }

    /// Measure `q` in the computational basis without changing the state.
    pub fn measure(&self, q: QubitId) -> Result<MeasurementResult, StabilizerError> {
        self.check(q)?;
        if self.random_pivot(q).is_some() {
            return Ok(MeasurementResult::Random);
        }
        let w = self.words;
        let mut sx = vec![0u64; w];
        let mut sz = vec![0u64; w];
        let mut sr = false;
        for i in 0..self.n {
            if !get(self.row_x(i), q) {
                continue;
            }
            let s = i + self.n;
            let e = product_exponent(self.row_x(s), self.row_z(s), &sx, &sz);
            let total = (2 * sr as i64 + 2 * self.r[s] as i64 + e).rem_euclid(4);
            sr = total == 2;
            for k in 0..w {
                sx[k] ^= self.x[s * w + k];
                sz[k] ^= self.z[s * w + k];
            }
        }
        Ok(MeasurementResult::Deterministic(sr))
    }

    /// Project a random measurement of `q` onto `outcome`.
    pub fn collapse(&mut self, q: QubitId, outcome: bool) -> Result<(), StabilizerError> {
        self.check(q)?;
        let p = self.random_pivot(q).ok_or(StabilizerError::NotRandom(q))?;
        let d = p - self.n;
        // row d anticommutes with p and is overwritten below
        for i in 0..2 * self.n {
            if i != p && i != d && get(self.row_x(i), q) {
                self.rowsum(i, p);
            }
        }
        let w = self.words;
        self.x.copy_within(p * w..(p + 1) * w, d * w);
        self.z.copy_within(p * w..(p + 1) * w, d * w);
        self.r[d] = self.r[p];
        self.x[p * w..(p + 1) * w].fill(0);
        self.z[p * w..(p + 1) * w].fill(0);
        set(&mut self.z[p * w..(p + 1) * w], q, true);
        self.r[p] = outcome;
        Ok(())
    }

    fn stabilizer_rows(&self) -> Vec<PauliRow> {
        (self.n..2 * self.n)
            .map(|i| PauliRow::from_signed(self.row_x(i), self.row_z(i), self.r[i]))
            .collect()
    }

    /// `k` such that the support has `2^k` elements.
    pub fn support_exponent(&self) -> u32 {
        pauli::support_exponent(&self.stabilizer_rows(), self.n)
    }

    /// Basis states with nonzero amplitude, in lexicographic order (qubit 0
    /// first), phases normalized to `+1` on the first element.
    pub fn support(&self, cap: u32) -> Result<Vec<SupportValuation>, StabilizerError> {
        pauli::support(self.stabilizer_rows(), self.n, cap)
    }

    /// Exact probability that a support valuation satisfies `pred`.
    pub fn probability<F>(&self, cap: u32, mut pred: F) -> Result<BigRational, StabilizerError>
    where
        F: FnMut(&[bool]) -> bool,
    {
        let support = self.support(cap)?;
        let hits = support.iter().filter(|v| pred(&v.bits)).count();
        let denom = BigInt::one() << support.len().trailing_zeros();
        Ok(BigRational::new(BigInt::from(hits), denom))
    }

    fn check_subsystem(&self, qubits: &[QubitId]) -> Result<(), StabilizerError> {
        if qubits.is_empty() {
            return Err(StabilizerError::EmptySubsystem);
        }
        let mut seen = vec![false; self.n];
        for &q in qubits {
            self.check(q)?;
            if std::mem::replace(&mut seen[q], true) {
                return Err(StabilizerError::DuplicateQubit(q));
            }
        }
        Ok(())
    }

    /// True iff the state factors as `|psi_A> (x) |psi_rest>`.
    ///
    /// Uses the GF(2) rank of the stabilizer rows restricted to the x- and
    /// z-columns of `qubits`, which is `|A| + S(A)`; no support enumeration.
    /// The empty set and the full register are trivially unentangled.
    pub fn is_unentangled(&self, qubits: &[QubitId]) -> Result<bool, StabilizerError> {
        if qubits.is_empty() {
            return Ok(true);
        }
        self.check_subsystem(qubits)?;
        if qubits.len() == self.n {
            return Ok(true);
        }
        let a = qubits.len();
        let cols = 2 * a;
        let mut rows: Vec<Vec<u64>> = (self.n..2 * self.n)
            .map(|i| {
                let mut row = vec![0u64; words_for(cols)];
                for (j, &q) in qubits.iter().enumerate() {
                    set(&mut row, j, get(self.row_x(i), q));
                    set(&mut row, a + j, get(self.row_z(i), q));
                }
                row
            })
            .collect();
        Ok(gf2::rank(&mut rows, cols) == a)
    }

    /// Amplitude of basis state `value` (indexed like `qubits`) in the factor
    /// state on `qubits`. The factor's global phase is fixed by giving its
    /// lexicographically smallest support element phase `+1`.
    pub fn factor_amplitude(
        &self,
        qubits: &[QubitId],
        value: &[bool],
        cap: u32,
    ) -> Result<FactorAmplitude, StabilizerError> {
        self.check_subsystem(qubits)?;
        assert_eq!(qubits.len(), value.len(), "valuation length mismatch");
        if !self.is_unentangled(qubits)? {
            return Err(StabilizerError::EntangledSubsystem(qubits.to_vec()));
        }
        let mut inside = vec![false; self.n];
        for &q in qubits {
            inside[q] = true;
        }
        let rest: Vec<QubitId> = (0..self.n).filter(|&q| !inside[q]).collect();

        // Eliminate the complement's columns; the rows left with identity
        // there generate the factor on `qubits`.
        let mut rows = self.stabilizer_rows();
        let mut pivot = 0;
        for &q in &rest {
            for part in [true, false] {
                let bit = |r: &PauliRow| if part { get(&r.x, q) } else { get(&r.z, q) };
                let Some(found) = (pivot..rows.len()).find(|&i| bit(&rows[i])) else {
                    continue;
                };
                rows.swap(pivot, found);
                let p = rows[pivot].clone();
                for (j, row) in rows.iter_mut().enumerate() {
                    if j != pivot && bit(row) {
                        row.mul_assign(&p);
                    }
                }
                pivot += 1;
            }
        }
        let local: Vec<PauliRow> = rows[pivot..].iter().map(|r| r.restrict(qubits)).collect();
        debug_assert_eq!(local.len(), qubits.len());
        let support = pauli::support(local, qubits.len(), cap)?;
        Ok(support
            .into_iter()
            .find(|s| s.bits == value)
            .map_or(FactorAmplitude::Zero, |s| FactorAmplitude::NonZero(s.amplitude)))
    }

    /// Check the structural invariants: stabilizers commute pairwise,
    /// destabilizer `i` anticommutes exactly with stabilizer `i`, and the
    /// `2n x 2n` binary matrix has full rank.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.n;
        let symp = |i: usize, j: usize| -> bool {
            let mut acc = 0u32;
            for k in 0..self.words {
                acc += ((self.row_x(i)[k] & self.row_z(j)[k]) ^ (self.row_z(i)[k] & self.row_x(j)[k])).count_ones();
            }
            acc % 2 == 1
        };
        for i in n..2 * n {
            for j in i + 1..2 * n {
                if symp(i, j) {
                    return Err(format!("stabilizers {} and {} anticommute", i - n, j - n));
                }
            }
        }
        for d in 0..n {
            for s in n..2 * n {
                let expect = s == d + n;
                if symp(d, s) != expect {
                    return Err(format!(
                        "destabilizer {d} {} with stabilizer {}",
                        if expect { "commutes" } else { "anticommutes" },
                        s - n
                    ));
                }
            }
        }
        let cols = 2 * n;
        let mut rows: Vec<Vec<u64>> = (0..2 * n)
            .map(|i| {
                let mut row = vec![0u64; words_for(cols)];
                for q in 0..n {
                    set(&mut row, q, get(self.row_x(i), q));
                    set(&mut row, n + q, get(self.row_z(i), q));
                }
                row
            })
            .collect();
        let rank = gf2::rank(&mut rows, cols);
        if rank != cols {
            return Err(format!("tableau rank {rank} < {cols}"));
        }
        Ok(())
    }

    fn row_string(&self, i: usize) -> String {
        let mut s = String::with_capacity(self.n + 1);
        s.push(if self.r[i] { '-' } else { '+' });
        for q in 0..self.n {
            s.push(match (get(self.row_x(i), q), get(self.row_z(i), q)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            });
        }
        s
    }

    /// Stabilizer generators as signed Pauli strings, e.g. `["+XX", "+ZZ"]`.
    pub fn stabilizer_strings(&self) -> Vec<String> {
        (self.n..2 * self.n).map(|i| self.row_string(i)).collect()
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tableau({} qubits)", self.n)?;
        if f.alternate() {
            writeln!(f)?;
            write!(f, "{self}")?;
        }
        Ok(())
    }
}

/// Debug dump: destabilizers, a separator, stabilizers, one row per line.
impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            writeln!(f, "{}", self.row_string(i))?;
        }
        writeln!(f, "{}", "-".repeat(self.n + 1))?;
        for i in self.n..2 * self.n {
            writeln!(f, "{}", self.row_string(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabilizer::{ExactAmplitude, Phase};
    use num_traits::Zero;

    fn bell() -> Tableau {
        let mut t = Tableau::new(2);
        t.apply_gate(Gate::Had, 0).unwrap();
        t.apply_cnot(0, 1).unwrap();
        t
    }

    fn ghz3() -> Tableau {
        let mut t = Tableau::new(3);
        t.apply_gate(Gate::Had, 0).unwrap();
        t.apply_cnot(0, 1).unwrap();
        t.apply_cnot(1, 2).unwrap();
        t
    }

    fn amp(phase: Phase, halflog: u32) -> ExactAmplitude {
        ExactAmplitude { phase, halflog }
    }

    fn strings(t: &Tableau) -> Vec<(String, ExactAmplitude)> {
        t.support(20)
            .unwrap()
            .into_iter()
            .map(|v| (v.bit_string(), v.amplitude))
            .collect()
    }

    #[test]
    fn fresh_state_is_all_zeros() {
        let t = Tableau::new(1);
        assert_eq!(t.measure(0).unwrap(), MeasurementResult::Deterministic(false));
        let t0 = Tableau::new(0);
        t0.validate().unwrap();
        let s = t0.support(20).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].bits.is_empty());
        assert_eq!(s[0].amplitude, amp(Phase::PlusOne, 0));
        let t3 = Tableau::new(3);
        assert!(t3.probability(20, |b| b.iter().any(|&x| x)).unwrap().is_zero());
        assert_eq!(strings(&t3), vec![("000".into(), amp(Phase::PlusOne, 0))]);
    }

    #[test]
    fn extend_appends_zero_qubit() {
        let mut t = Tableau::new(1);
        t.apply_gate(Gate::Had, 0).unwrap();
        let id = t.extend();
        assert_eq!(id, 1);
        t.validate().unwrap();
        let s: Vec<String> = strings(&t).into_iter().map(|e| e.0).collect();
        assert_eq!(s, ["00", "10"]);
        assert_eq!(t.measure(1).unwrap(), MeasurementResult::Deterministic(false));

        let mut e = Tableau::new(0);
        assert_eq!(e.extend(), 0);
        assert_eq!(e, Tableau::new(1));
    }

    #[test]
    fn extend_across_word_boundary() {
        let mut t = Tableau::new(0);
        for _ in 0..70 {
            t.extend();
        }
        t.apply_gate(Gate::Had, 63).unwrap();
        t.apply_cnot(63, 64).unwrap();
        t.validate().unwrap();
        assert!(!t.is_unentangled(&[64]).unwrap());
        t.collapse(63, true).unwrap();
        assert_eq!(t.measure(64).unwrap(), MeasurementResult::Deterministic(true));
    }

    #[test]
    fn single_qubit_gates() {
        let mut t = Tableau::new(1);
        t.apply_gate(Gate::Had, 0).unwrap();
        assert_eq!(t.measure(0).unwrap(), MeasurementResult::Random);
        t.apply_gate(Gate::Had, 0).unwrap();
        assert_eq!(t.measure(0).unwrap(), MeasurementResult::Deterministic(false));
        t.apply_gate(Gate::X, 0).unwrap();
        assert_eq!(t.measure(0).unwrap(), MeasurementResult::Deterministic(true));
    }

    #[test]
    fn bell_support_and_collapse() {
        let t = bell();
        t.validate().unwrap();
        assert_eq!(
            strings(&t),
            vec![
                ("00".into(), amp(Phase::PlusOne, 1)),
                ("11".into(), amp(Phase::PlusOne, 1))
            ]
        );
        assert_eq!(t.stabilizer_strings(), ["+XX", "+ZZ"]);
        assert_eq!(t.measure(0).unwrap(), MeasurementResult::Random);
        for outcome in [false, true] {
            let mut c = t.clone();
            c.collapse(0, outcome).unwrap();
            c.validate().unwrap();
            assert_eq!(c.measure(1).unwrap(), MeasurementResult::Deterministic(outcome));
            assert_eq!(c.measure(0).unwrap(), MeasurementResult::Deterministic(outcome));
        }
        let mut one = t.clone();
        one.collapse(0, true).unwrap();
        assert_eq!(strings(&one), vec![("11".into(), amp(Phase::PlusOne, 0))]);
    }

    #[test]
    fn ghz_collapse_to_zeros() {
        let mut t = ghz3();
        t.collapse(2, false).unwrap();
        assert_eq!(strings(&t), vec![("000".into(), amp(Phase::PlusOne, 0))]);
    }

    #[test]
    fn collapse_requires_random_outcome() {
        let mut t = Tableau::new(1);
        assert_eq!(t.collapse(0, true), Err(StabilizerError::NotRandom(0)));
        let mut p = Tableau::new(1);
        p.apply_gate(Gate::Had, 0).unwrap();
        p.collapse(0, false).unwrap();
        assert_eq!(p, Tableau::new(1));
    }

    #[test]
    fn phase_gate_on_plus() {
        let mut t = Tableau::new(1);
        t.apply_gate(Gate::Had, 0).unwrap();
        t.apply_gate(Gate::Ph, 0).unwrap();
        assert_eq!(
            strings(&t),
            vec![("0".into(), amp(Phase::PlusOne, 1)), ("1".into(), amp(Phase::PlusI, 1))]
        );
    }

    #[test]
    fn probabilities_are_exact() {
        let mut plus = Tableau::new(1);
        plus.apply_gate(Gate::Had, 0).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(plus.probability(20, |b| !b[0]).unwrap(), half);
        assert!(Tableau::new(1).probability(20, |b| b[0]).unwrap().is_zero());
        assert!(ghz3().probability(20, |b| b[0] == b[1]).unwrap().is_one());
    }

    #[test]
    fn support_cap_is_enforced() {
        let t = bell();
        assert_eq!(t.support(0), Err(StabilizerError::SupportTooLarge { k: 1, cap: 0 }));
        assert_eq!(t.support_exponent(), 1);
    }

    #[test]
    fn entanglement_by_rank() {
        let b = bell();
        assert!(b.is_unentangled(&[0, 1]).unwrap());
        assert!(!b.is_unentangled(&[0]).unwrap());
        let mut prod = Tableau::new(2);
        prod.apply_gate(Gate::Had, 1).unwrap();
        assert!(prod.is_unentangled(&[0]).unwrap());
        assert!(!ghz3().is_unentangled(&[0, 1]).unwrap());
        assert!(b.is_unentangled(&[]).unwrap());
        assert_eq!(b.is_unentangled(&[0, 0]), Err(StabilizerError::DuplicateQubit(0)));
        assert!(matches!(
            b.is_unentangled(&[5]),
            Err(StabilizerError::InvalidQubit { qubit: 5, .. })
        ));
    }

    #[test]
    fn factor_amplitudes() {
        let mut plus = Tableau::new(1);
        plus.apply_gate(Gate::Had, 0).unwrap();
        let a = plus.factor_amplitude(&[0], &[true], 20).unwrap();
        assert_eq!(a, FactorAmplitude::NonZero(amp(Phase::PlusOne, 1)));
        let FactorAmplitude::NonZero(a) = a else { unreachable!() };
        assert!((a.re() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(a.im(), 0.0);

        let zero = Tableau::new(1);
        assert_eq!(
            zero.factor_amplitude(&[0], &[false], 20).unwrap(),
            FactorAmplitude::NonZero(amp(Phase::PlusOne, 0))
        );
        assert_eq!(zero.factor_amplitude(&[0], &[true], 20).unwrap(), FactorAmplitude::Zero);

        let mut y = plus.clone();
        y.apply_gate(Gate::Ph, 0).unwrap();
        let FactorAmplitude::NonZero(a) = y.factor_amplitude(&[0], &[true], 20).unwrap() else {
            panic!()
        };
        assert_eq!(a.phase, Phase::PlusI);
        assert!((a.im() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);

        assert!(matches!(
            bell().factor_amplitude(&[0], &[false], 20),
            Err(StabilizerError::EntangledSubsystem(_))
        ));
    }

    #[test]
    fn factor_amplitude_of_embedded_factor() {
        // |0> (x) Bell(1,2) (x) |->, factor on [3] and on [2, 1]
        let mut t = Tableau::new(4);
        t.apply_gate(Gate::Had, 1).unwrap();
        t.apply_cnot(1, 2).unwrap();
        t.apply_gate(Gate::X, 3).unwrap();
        t.apply_gate(Gate::Had, 3).unwrap();
        let FactorAmplitude::NonZero(a) = t.factor_amplitude(&[3], &[true], 20).unwrap() else {
            panic!()
        };
        assert_eq!(a, amp(Phase::MinusOne, 1));
        assert_eq!(
            t.factor_amplitude(&[2, 1], &[true, true], 20).unwrap(),
            FactorAmplitude::NonZero(amp(Phase::PlusOne, 1))
        );
        assert_eq!(
            t.factor_amplitude(&[2, 1], &[true, false], 20).unwrap(),
            FactorAmplitude::Zero
        );
    }

    #[test]
    fn cnot_rejects_same_qubit() {
        let mut t = Tableau::new(2);
        assert_eq!(t.apply_cnot(1, 1), Err(StabilizerError::SameControlTarget(1)));
        assert!(t.apply_gate(Gate::Had, 2).is_err());
    }

    #[test]
    fn dump_format() {
        let t = bell();
        assert_eq!(t.to_string(), "+ZI\n+IX\n---\n+XX\n+ZZ\n");
    }
}
