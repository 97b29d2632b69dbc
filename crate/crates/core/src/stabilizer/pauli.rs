use super::gf2::{get, set, words_for};
use super::{ExactAmplitude, Phase, StabilizerError, SupportValuation};

/// The operator `i^p X^x Z^z` on `qubits` qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PauliRow {
    pub x: Vec<u64>,
    pub z: Vec<u64>,
    pub p: u8,
}

impl PauliRow {
    /// From a tableau row `(-1)^sign * P_0 ... P_{n-1}` with `Y` stored as x=z=1.
    /// Uses `Y = i X Z`.
    pub fn from_signed(x: &[u64], z: &[u64], sign: bool) -> PauliRow {
        let ys: u32 = x.iter().zip(z).map(|(a, b)| (a & b).count_ones()).sum();
        PauliRow {
            x: x.to_vec(),
            z: z.to_vec(),
            p: ((2 * sign as u32 + ys) % 4) as u8,
        }
    }

    /// `self <- self * other`.
    pub fn mul_assign(&mut self, other: &PauliRow) {
        // Z^z1 X^x2 = (-1)^(z1.x2) X^x2 Z^z1
        let cross: u32 = self.z.iter().zip(&other.x).map(|(a, b)| (a & b).count_ones()).sum();
        self.p = ((self.p as u32 + other.p as u32 + 2 * cross) % 4) as u8;
        for (a, b) in self.x.iter_mut().zip(&other.x) {
            *a ^= b;
        }
        for (a, b) in self.z.iter_mut().zip(&other.z) {
            *a ^= b;
        }
    }

    /// Keep only the listed columns, in the listed order.
    pub fn restrict(&self, columns: &[usize]) -> PauliRow {
        let w = words_for(columns.len());
        let mut x = vec![0; w];
        let mut z = vec![0; w];
        for (i, &c) in columns.iter().enumerate() {
            set(&mut x, i, get(&self.x, c));
            set(&mut z, i, get(&self.z, c));
        }
        // only meaningful when every dropped column is identity
        PauliRow { x, z, p: self.p }
    }
}

/// Row-reduce a commuting generating set. Returns `(x_rows, z_rows)`: rows
/// whose x-parts are linearly independent, and rows that are pure `Z` strings
/// in reduced echelon form together with their pivot columns.
fn reduce(mut rows: Vec<PauliRow>, qubits: usize) -> (Vec<PauliRow>, Vec<(usize, PauliRow)>) {
    let mut pivot = 0;
    for q in 0..qubits {
        let Some(found) = (pivot..rows.len()).find(|&r| get(&rows[r].x, q)) else {
            continue;
        };
        rows.swap(pivot, found);
        let p = rows[pivot].clone();
        for (j, row) in rows.iter_mut().enumerate() {
            if j != pivot && get(&row.x, q) {
                row.mul_assign(&p);
            }
        }
        pivot += 1;
    }
    let mut z_rows = rows.split_off(pivot);
    let x_rows = rows;

    let mut z_pivots = Vec::new();
    let mut zp = 0;
    for q in 0..qubits {
        let Some(found) = (zp..z_rows.len()).find(|&r| get(&z_rows[r].z, q)) else {
            continue;
        };
        z_rows.swap(zp, found);
        let p = z_rows[zp].clone();
        for (j, row) in z_rows.iter_mut().enumerate() {
            if j != zp && get(&row.z, q) {
                row.mul_assign(&p);
            }
        }
        z_pivots.push(q);
        zp += 1;
    }
    debug_assert_eq!(zp, z_rows.len(), "generators are not independent");
    (x_rows, z_pivots.into_iter().zip(z_rows).collect())
}

/// Number of x-independent generators; the support has `2^k` elements.
pub(crate) fn support_exponent(rows: &[PauliRow], qubits: usize) -> u32 {
    let mut xs: Vec<Vec<u64>> = rows.iter().map(|r| r.x.clone()).collect();
    super::gf2::rank(&mut xs, qubits) as u32
}

/// All basis states with nonzero amplitude for the state stabilized by
/// `rows` (exactly `qubits` independent commuting generators), sorted
/// lexicographically with qubit 0 most significant, phases normalized so the
/// first entry is `+1`.
pub(crate) fn support(rows: Vec<PauliRow>, qubits: usize, cap: u32) -> Result<Vec<SupportValuation>, StabilizerError> {
    let k = support_exponent(&rows, qubits);
    if k > cap {
        return Err(StabilizerError::SupportTooLarge { k, cap });
    }
    let (x_rows, z_rows) = reduce(rows, qubits);
    debug_assert_eq!(x_rows.len() as u32, k);

    // Seed: one basis state in the support. Pure Z rows i^p Z^z need
    // z.s = p/2; with reduced echelon form and free bits 0 that is s[pivot].
    let w = words_for(qubits);
    let mut seed = vec![0u64; w];
    for (pivot, row) in &z_rows {
        debug_assert!(row.p % 2 == 0, "non-Hermitian Z generator");
        set(&mut seed, *pivot, row.p == 2);
    }

    // |psi> ~ sum_S P_S |seed>, each P_S = i^p X^x Z^z lands on seed ^ x with
    // phase i^(p + 2 z.seed). Walk subsets in Gray-code order.
    let count = 1usize << k;
    let mut acc = PauliRow {
        x: vec![0; w],
        z: vec![0; w],
        p: 0,
    };
    let mut out = Vec::with_capacity(count);
    for step in 0..count {
        if step > 0 {
            let flip = step.trailing_zeros() as usize;
            acc.mul_assign(&x_rows[flip]);
        }
        let zs: u32 = acc.z.iter().zip(&seed).map(|(a, b)| (a & b).count_ones()).sum();
        let phase = ((acc.p as u32 + 2 * zs) % 4) as u8;
        let bits: Vec<bool> = (0..qubits).map(|q| get(&seed, q) ^ get(&acc.x, q)).collect();
        out.push((bits, phase));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    let base = out.first().map(|e| e.1).unwrap_or(0);
    Ok(out
        .into_iter()
        .map(|(bits, p)| SupportValuation {
            bits,
            amplitude: ExactAmplitude {
                phase: Phase::from_quarter_turns((p + 4 - base) % 4),
                halflog: k,
            },
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli(s: &str) -> PauliRow {
        // e.g. "+XZ", "-YI"
        let sign = s.starts_with('-');
        let ops: Vec<char> = s[1..].chars().collect();
        let mut x = vec![0; words_for(ops.len())];
        let mut z = vec![0; words_for(ops.len())];
        for (i, c) in ops.iter().enumerate() {
            set(&mut x, i, matches!(c, 'X' | 'Y'));
            set(&mut z, i, matches!(c, 'Z' | 'Y'));
        }
        PauliRow::from_signed(&x, &z, sign)
    }

    #[test]
    fn y_times_y_is_identity() {
        let mut y = pauli("+Y");
        y.mul_assign(&pauli("+Y"));
        assert_eq!(y, pauli("+I"));
    }

    #[test]
    fn x_times_z_is_minus_i_y() {
        let mut x = pauli("+X");
        x.mul_assign(&pauli("+Z"));
        // XZ = -iY, and Y = i X Z so i^p X Z with p = 0 here
        assert_eq!(x.p, 0);
        let y = pauli("+Y");
        assert_eq!(y.p, 1);
    }

    #[test]
    fn support_of_minus_state() {
        let s = support(vec![pauli("-X")], 1, 20).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].amplitude.phase, Phase::PlusOne);
        assert_eq!(s[1].amplitude.phase, Phase::MinusOne);
    }

    #[test]
    fn support_of_y_eigenstate() {
        let s = support(vec![pauli("+Y")], 1, 20).unwrap();
        assert_eq!(s[1].amplitude.phase, Phase::PlusI);
    }
}
