//! Desk-scale variational algorithms and their classical oracles.

mod ansatz;
mod data;
mod grouping;
mod hamiltonian;
mod kernel;
mod optim;
mod qcbm;
mod qvc;
mod reupload;
mod trace;
mod varqite;
mod vqe;

pub use ansatz::build_hea_ansatz;
pub use data::{toy, LabeledDataset};
pub use grouping::{group_pauli_terms, qubit_wise_commute, TermGroup};
pub use hamiltonian::{exact_ground_energy, tfim, MAX_DENSE_QUBITS};
pub use kernel::{
    classical_kernel_matrix, kernel_row, quantum_kernel_matrix, train_kernel_classifier, ClassicalKernel,
    FeatureMap, FeatureMapKind, KernelClassifier, KernelMatrix, KernelMode,
};
pub use optim::Optimizer;
pub use qcbm::{
    empirical_distribution, qcbm_loss, run_qcbm, sample_in_batches, shots_to_resolve, total_variation, QcbmConfig,
    QcbmRun, TargetDistribution, MAX_QCBM_QUBITS,
};
pub use qvc::{qvc_circuit, run_qvc, ClassifierRun, QvcConfig};
pub use reupload::{reuploading_circuit, run_reuploading, ReuploadConfig};
pub use trace::{TraceEntry, TrainingTrace};
pub use varqite::{run_varqite, varqite_circuit_count, VarQiteConfig};
pub use vqe::{energy_gradient, run_vqe, run_vqe_from, vqe_energy, ShotMode, VqeProblem, VqeRun};

use thiserror::Error;

use crate::compile::{compile, CompileError, NativeGateSet, Topology};
use crate::sim::{Circuit, SimError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgoError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error("{qubits} qubits exceed the limit of {max}")]
    TooLarge { qubits: usize, max: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("labels are not binary: {0}")]
    NonBinaryLabels(String),
    #[error("ridge parameter must be positive, got {0}")]
    RidgeRequired(f64),
    #[error("linear system could not be solved: {0}")]
    Singular(String),
    #[error("dataset error: {0}")]
    Dataset(String),
    #[error("optimizer {0} is not supported here")]
    UnsupportedOptimizer(String),
}

/// Native depth of `circuit` after compiling to the default gate set on a
/// linear chain.
pub fn compiled_depth(circuit: &Circuit) -> Result<u64, AlgoError> {
    let topo = Topology::linear(circuit.num_qubits);
    Ok(compile(circuit, &NativeGateSet::default(), &topo)?.stats.native_depth as u64)
}

pub(crate) fn random_angles(n: usize, seed: u64) -> Vec<f64> {
    use rand::Rng;
    let mut rng = crate::sim::rng_from_seed(seed);
    (0..n).map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)).collect()
}
