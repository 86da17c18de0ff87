//! Dense statevector simulator with exact expectation values, seeded shot
//! sampling and a trajectory depolarizing noise model.

mod circuit;
mod gate;
mod pauli;
pub mod rng;
mod sampling;
mod state;

pub use circuit::{random_circuit, Circuit};
pub use gate::{Gate, GateKind};
pub use pauli::{term_expectation, term_matrix_element, PauliSum, PauliTerm};
pub use rng::{derive_seed, rng_from_seed};
pub use sampling::{run_noisy, sample_counts, z_expectation_from_counts, Counts, NoiseModel};
pub use state::{
    apply_gate, bitstring, parse_bitstring, run_from, run_statevector, single_qubit_matrix,
    Matrix2, StateVector, MAX_QUBITS,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("register must contain at least one qubit")]
    EmptyRegister,
    #[error("{requested} qubits requested, simulator limit is {max}")]
    TooManyQubits { requested: usize, max: usize },
    #[error("qubit index {qubit} out of range for {num_qubits} qubits")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("qubit {0} listed twice in one gate")]
    DuplicateTarget(usize),
    #[error("{kind} acts on {expected} qubits, got {got} targets")]
    Arity { kind: GateKind, expected: usize, got: usize },
    #[error("{0} needs exactly one of angle or param_slot")]
    RotationBinding(GateKind),
    #[error("{0} takes no angle")]
    FixedGateWithAngle(GateKind),
    #[error("param_slot {slot} out of range for {num_params} parameters")]
    ParamSlotOutOfRange { slot: usize, num_params: usize },
    #[error("gate has a parameter slot but no angle was bound")]
    MissingBinding,
    #[error("angle bound to a gate without a parameter slot")]
    UnexpectedBinding,
    #[error("expected {expected} parameters, got {got}")]
    ParamCount { expected: usize, got: usize },
    #[error("qubit count mismatch: expected {expected}, got {got}")]
    QubitMismatch { expected: usize, got: usize },
    #[error("operation needs a fully bound circuit")]
    UnboundParameters,
    #[error("mid-circuit measurement (classical control) is not executable")]
    ClassicalControl,
    #[error("shots must be at least 1")]
    ZeroShots,
    #[error("probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("invalid Pauli word {word:?} for {num_qubits} qubits")]
    BadPauliWord { word: String, num_qubits: usize },
    #[error("amplitude vector of length {0} is not a normalizable power of two")]
    BadDimension(usize),
    #[error("parse error: {0}")]
    Parse(String),
}
