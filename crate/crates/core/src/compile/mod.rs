//! Lowering to native gate sets and greedy routing onto constrained qubit
//! topologies.

mod decompose;
mod gateset;
mod route;
mod topology;
mod verify;

pub use decompose::{decompose_to_native, normalize_angle, zyz_angles};
pub use gateset::NativeGateSet;
pub use route::{
    compile, count_non_adjacent, route_to_topology, CompileStats, CompiledCircuit, QubitMap,
    SwapRecord,
};
pub use topology::{Topology, TopologyKind};
pub use verify::{verify_equivalence, MAX_VERIFY_QUBITS};

use thiserror::Error;

use crate::sim::{GateKind, SimError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CompileError {
    #[error("native gate set is not universal: {0}")]
    NonUniversal(String),
    #[error("unknown gate kind {0:?}")]
    UnknownGateKind(String),
    #[error("unknown topology {0:?}")]
    UnknownTopology(String),
    #[error("topology needs at least one qubit")]
    EmptyTopology,
    #[error("circuit uses classical control (mid-circuit measurement), which the compiler does not support")]
    ClassicalControl,
    #[error("{logical} logical qubits do not fit on {physical} physical qubits")]
    TooManyQubits { logical: usize, physical: usize },
    #[error("{0} must be lowered to 2-qubit gates before routing")]
    MultiQubitUnrouted(GateKind),
    #[error("no path between physical qubits {0} and {1}")]
    Unroutable(usize, usize),
    #[error("equivalence check limited to {max} qubits, got {0}", max = MAX_VERIFY_QUBITS)]
    VerifyTooLarge(usize),
    #[error("qubit map does not match the logical register")]
    BadQubitMap,
    #[error(transparent)]
    Sim(#[from] SimError),
}
