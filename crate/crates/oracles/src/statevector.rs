//! Dense statevector simulator with exact arithmetic.
//!
//! Amplitudes are Gaussian integers `a + bi` sharing one scale: the state is
//! `sum_j (a_j + i b_j) / sqrt(2)^scale |j>`. Bit `q` of `j` is qubit `q`.

pub type Gaussian = (i64, i64);

#[derive(Clone, Debug)]
pub struct StateVector {
    n: usize,
    amps: Vec<Gaussian>,
    scale: u32,
}

fn mul(a: Gaussian, b: Gaussian) -> Gaussian {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn norm2(a: Gaussian) -> i128 {
    a.0 as i128 * a.0 as i128 + a.1 as i128 * a.1 as i128
}

/// `i^k`.
pub fn unit(k: u8) -> Gaussian {
    match k % 4 {
        0 => (1, 0),
        1 => (0, 1),
        2 => (-1, 0),
        _ => (0, -1),
    }
}

/// Outcome statistics of a computational-basis measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Certain(bool),
    Even,
    /// Cannot happen for stabilizer states.
    Other,
}

impl StateVector {
    pub fn new(n: usize) -> StateVector {
        let mut amps = vec![(0, 0); 1 << n];
        amps[0] = (1, 0);
        StateVector { n, amps, scale: 0 }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn amplitude(&self, index: usize) -> Gaussian {
        self.amps[index]
    }

    pub fn extend(&mut self) -> usize {
        self.amps.resize(1 << (self.n + 1), (0, 0));
        self.n += 1;
        self.n - 1
    }

    pub fn had(&mut self, q: usize) {
        let m = 1 << q;
        for j in 0..self.amps.len() {
            if j & m == 0 {
                let (a, b) = (self.amps[j], self.amps[j | m]);
                self.amps[j] = (a.0 + b.0, a.1 + b.1);
                self.amps[j | m] = (a.0 - b.0, a.1 - b.1);
            }
        }
        self.scale += 1;
        self.reduce();
    }

    pub fn ph(&mut self, q: usize) {
        let m = 1 << q;
        for (j, a) in self.amps.iter_mut().enumerate() {
            if j & m != 0 {
                *a = mul(*a, (0, 1));
            }
        }
    }

    pub fn x(&mut self, q: usize) {
        let m = 1 << q;
        for j in 0..self.amps.len() {
            if j & m == 0 {
                self.amps.swap(j, j | m);
            }
        }
    }

    pub fn cnot(&mut self, c: usize, t: usize) {
        assert_ne!(c, t);
        let (cm, tm) = (1 << c, 1 << t);
        for j in 0..self.amps.len() {
            if j & cm != 0 && j & tm == 0 {
                self.amps.swap(j, j | tm);
            }
        }
    }

    // divide out common factors of 2 so the integers stay small
    fn reduce(&mut self) {
        while self.scale >= 2 && self.amps.iter().all(|a| a.0 % 2 == 0 && a.1 % 2 == 0) {
            for a in &mut self.amps {
                *a = (a.0 / 2, a.1 / 2);
            }
            self.scale -= 2;
        }
    }

    fn total(&self) -> i128 {
        1i128 << self.scale
    }

    pub fn measure(&self, q: usize) -> Outcome {
        let m = 1 << q;
        let ones: i128 = self
            .amps
            .iter()
            .enumerate()
            .filter(|(j, _)| j & m != 0)
            .map(|(_, a)| norm2(*a))
            .sum();
        let total = self.total();
        if ones == 0 {
            Outcome::Certain(false)
        } else if ones == total {
            Outcome::Certain(true)
        } else if 2 * ones == total {
            Outcome::Even
        } else {
            Outcome::Other
        }
    }

    /// Project onto `outcome` for qubit `q`; only valid after [`Outcome::Even`].
    pub fn collapse(&mut self, q: usize, outcome: bool) {
        assert_eq!(self.measure(q), Outcome::Even);
        let m = 1 << q;
        for (j, a) in self.amps.iter_mut().enumerate() {
            if (j & m != 0) != outcome {
                *a = (0, 0);
            }
        }
        // probability 1/2: multiply by sqrt(2)
        if self.scale >= 1 {
            self.scale -= 1;
        } else {
            for a in &mut self.amps {
                *a = (a.0 * 2, a.1 * 2);
            }
            self.scale += 1;
        }
        self.reduce();
    }

    pub fn bits(&self, index: usize) -> Vec<bool> {
        (0..self.n).map(|q| index >> q & 1 == 1).collect()
    }

    /// Nonzero entries, sorted lexicographically by bit vector (qubit 0 first).
    pub fn support(&self) -> Vec<(Vec<bool>, Gaussian)> {
        let mut out: Vec<_> = self
            .amps
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != (0, 0))
            .map(|(j, a)| (self.bits(j), *a))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// `|amp|^2 * 2^scale`-free check: squared magnitude equals `2^-k`.
    pub fn has_magnitude(&self, a: Gaussian, k: u32) -> bool {
        (norm2(a) << k) == self.total()
    }

    /// Purity test `Tr[rho_A^2] == 1` computed exactly.
    pub fn is_product(&self, subset: &[usize]) -> bool {
        if subset.is_empty() || subset.len() == self.n {
            return true;
        }
        let rest: Vec<usize> = (0..self.n).filter(|q| !subset.contains(q)).collect();
        let index = |a: usize, b: usize| -> usize {
            let mut j = 0;
            for (i, &q) in subset.iter().enumerate() {
                j |= (a >> i & 1) << q;
            }
            for (i, &q) in rest.iter().enumerate() {
                j |= (b >> i & 1) << q;
            }
            j
        };
        let da = 1 << subset.len();
        let db = 1 << rest.len();
        // rho[a][a'] * 2^scale = sum_b c(a,b) conj(c(a',b))
        let mut purity: i128 = 0;
        for a in 0..da {
            for a2 in 0..da {
                let (mut re, mut im) = (0i128, 0i128);
                for b in 0..db {
                    let x = self.amps[index(a, b)];
                    let y = self.amps[index(a2, b)];
                    re += x.0 as i128 * y.0 as i128 + x.1 as i128 * y.1 as i128;
                    im += x.1 as i128 * y.0 as i128 - x.0 as i128 * y.1 as i128;
                }
                purity += re * re + im * im;
            }
        }
        purity == self.total() * self.total()
    }

    /// Apply a quarter-turn phase to a Gaussian integer.
    pub fn rotate(a: Gaussian, quarter_turns: u8) -> Gaussian {
        mul(a, unit(quarter_turns))
    }
}
