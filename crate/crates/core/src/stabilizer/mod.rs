//! Exact simulation of stabilizer states.
//!
//! A state on `n` qubits is held as a destabilizer/stabilizer tableau: `2n`
//! Pauli rows packed into `u64` words plus one sign bit per row. Clifford gates
//! are `O(n)` column updates, measurement is `O(n^2)`. Nothing in this module
//! uses floating point; amplitudes come out as a quarter-turn phase times a
//! power of `1/sqrt(2)`.

mod gf2;
mod pauli;
mod tableau;

pub use tableau::Tableau;

use thiserror::Error;

/// Index of a qubit in a [`Tableau`]. Ids are dense and never reused.
pub type QubitId = usize;

/// Default bound on `k` in a support of size `2^k`.
pub const DEFAULT_SUPPORT_CAP: u32 = 20;

/// Single-qubit Clifford gates understood by the tableau.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    Had,
    Ph,
    X,
}

/// Outcome of a computational-basis measurement, before any collapse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasurementResult {
    Deterministic(bool),
    /// Both outcomes occur, each with probability 1/2.
    Random,
}

/// A power of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    PlusOne,
    PlusI,
    MinusOne,
    MinusI,
}

impl Phase {
    pub fn from_quarter_turns(k: u8) -> Phase {
        match k % 4 {
            0 => Phase::PlusOne,
            1 => Phase::PlusI,
            2 => Phase::MinusOne,
            _ => Phase::MinusI,
        }
    }

    pub fn quarter_turns(self) -> u8 {
        match self {
            Phase::PlusOne => 0,
            Phase::PlusI => 1,
            Phase::MinusOne => 2,
            Phase::MinusI => 3,
        }
    }

    /// `(re, im)` as integers in `{-1, 0, 1}`.
    pub fn components(self) -> (i8, i8) {
        match self {
            Phase::PlusOne => (1, 0),
            Phase::PlusI => (0, 1),
            Phase::MinusOne => (-1, 0),
            Phase::MinusI => (0, -1),
        }
    }
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Phase::PlusOne => "+1",
            Phase::PlusI => "+i",
            Phase::MinusOne => "-1",
            Phase::MinusI => "-i",
        })
    }
}

/// The amplitude `phase * 2^(-halflog/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExactAmplitude {
    pub phase: Phase,
    pub halflog: u32,
}

impl ExactAmplitude {
    pub fn magnitude(&self) -> f64 {
        (0.5f64).powf(self.halflog as f64 / 2.0)
    }

    pub fn re(&self) -> f64 {
        self.phase.components().0 as f64 * self.magnitude()
    }

    pub fn im(&self) -> f64 {
        self.phase.components().1 as f64 * self.magnitude()
    }
}

impl std::fmt::Display for ExactAmplitude {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}*2^(-{}/2)", self.phase, self.halflog)
    }
}

/// Amplitude of a basis state inside a factor state; zero is kept distinct.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorAmplitude {
    Zero,
    NonZero(ExactAmplitude),
}

/// One basis state with nonzero amplitude. `bits[q]` is the value of qubit `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportValuation {
    pub bits: Vec<bool>,
    pub amplitude: ExactAmplitude,
}

impl SupportValuation {
    /// Bits written qubit 0 first, e.g. `"10"`.
    pub fn bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilizerError {
    #[error("qubit {qubit} out of range for a {qubits}-qubit state")]
    InvalidQubit { qubit: QubitId, qubits: usize },
    #[error("cnot control and target are the same qubit ({0})")]
    SameControlTarget(QubitId),
    #[error("support has 2^{k} elements, above the cap 2^{cap}")]
    SupportTooLarge { k: u32, cap: u32 },
    #[error("qubits {0:?} are entangled with the rest of the state")]
    EntangledSubsystem(Vec<QubitId>),
    #[error("qubit {0} appears twice in the subsystem")]
    DuplicateQubit(QubitId),
    #[error("subsystem is empty")]
    EmptySubsystem,
    #[error("measurement of qubit {0} is deterministic; nothing to collapse")]
    NotRandom(QubitId),
}
