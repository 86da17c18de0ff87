use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::data::LabeledDataset;
use super::optim::{minimize, Optimizer};
use super::trace::TrainingTrace;
use super::{compiled_depth, random_angles, AlgoError};
use crate::profile::ResourceLog;
use crate::sim::{
    derive_seed, run_noisy, run_statevector, sample_counts, z_expectation_from_counts, Circuit, Gate, GateKind,
    NoiseModel, PauliSum,
};

/// Shots used when a noise model is given without an explicit count.
const DEFAULT_NOISY_SHOTS: u64 = 1024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QvcConfig {
    /// Variational layers after the angle encoding.
    pub layers: usize,
    pub optimizer: Optimizer,
    /// Hinge margin: the per-point loss is `max(0, margin − y·⟨Z_r⟩)`.
    #[serde(default = "default_margin")]
    pub margin: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseModel>,
    #[serde(default)]
    pub readout: usize,
}

fn default_margin() -> f64 {
    1.0
}

impl QvcConfig {
    pub fn new(layers: usize, optimizer: Optimizer) -> Self {
        QvcConfig { layers, optimizer, margin: 1.0, shots: None, noise: None, readout: 0 }
    }
}

/// Trace plus the training accuracy of the final parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifierRun {
    pub trace: TrainingTrace,
    pub accuracy: f64,
    pub initial_accuracy: f64,
}

/// Angle encoding `RY(x_k)` on qubit `k` (slots `0..dim`) followed by
/// `layers` blocks of `RY`, `RZ` on every qubit and a linear `CZ` chain
/// (slots from `dim` on).
pub fn qvc_circuit(dim: usize, layers: usize) -> Result<Circuit, AlgoError> {
    if dim == 0 {
        return Err(AlgoError::InvalidConfig("QVC needs at least one feature".into()));
    }
    let mut c = Circuit::with_params(dim, dim + 2 * dim * layers);
    for k in 0..dim {
        c.push(Gate::parameterized(GateKind::Ry, k, k));
    }
    let mut slot = dim;
    for _ in 0..layers {
        for q in 0..dim {
            c.push(Gate::parameterized(GateKind::Ry, q, slot));
            c.push(Gate::parameterized(GateKind::Rz, q, slot + 1));
            slot += 2;
        }
        for q in 0..dim - 1 {
            c.push(Gate::cz(q, q + 1));
        }
    }
    Ok(c)
}

pub(crate) struct PointEvaluator<'a> {
    pub circuit: &'a Circuit,
    pub data: &'a LabeledDataset,
    pub readout: usize,
    pub shots: Option<u64>,
    pub noise: Option<NoiseModel>,
    pub seed: u64,
    pub calls: u64,
    pub depth: u64,
    pub log: ResourceLog,
}

impl PointEvaluator<'_> {
    /// `⟨Z_readout⟩` for every training point under `theta`, one circuit each.
    pub fn outputs(&mut self, theta: &[f64]) -> Result<Vec<f64>, AlgoError> {
        let n = self.data.len() as u64;
        let base = derive_seed(self.seed, self.calls * n);
        self.calls += 1;
        self.log.circuits(n, n, self.depth, self.shots.unwrap_or(0));
        let z_word: String = (0..self.circuit.num_qubits)
            .rev()
            .map(|q| if q == self.readout { 'Z' } else { 'I' })
            .collect();
        let observable = PauliSum::new(self.circuit.num_qubits, vec![(1.0, z_word)])?;
        self.data
            .features()
            .par_iter()
            .enumerate()
            .map(|(i, x)| {
                let mut params = x.clone();
                params.extend_from_slice(theta);
                let seed = derive_seed(base, i as u64);
                match (self.noise, self.shots) {
                    (Some(noise), shots) => {
                        let counts = run_noisy(self.circuit, &params, &noise, shots.unwrap_or(DEFAULT_NOISY_SHOTS), seed)?;
                        Ok(z_expectation_from_counts(&counts, self.readout))
                    }
                    (None, Some(shots)) => {
                        let state = run_statevector(self.circuit, &params)?;
                        Ok(z_expectation_from_counts(&sample_counts(&state, shots, seed)?, self.readout))
                    }
                    (None, None) => {
                        let state = run_statevector(self.circuit, &params)?;
                        Ok(observable.expectation(&state)?)
                    }
                }
            })
            .collect()
    }
}

pub(crate) fn accuracy(outputs: &[f64], targets: &[f64]) -> f64 {
    if targets.is_empty() {
        return 1.0;
    }
    let hits = outputs.iter().zip(targets).filter(|(f, &y)| (if **f >= 0.0 { 1.0 } else { -1.0 }) == y).count();
    hits as f64 / targets.len() as f64
}

/// Quantum variational classifier on binary labels.
///
/// The label is read from the sign of `⟨Z⟩` on the readout qubit. Every
/// loss evaluation executes one circuit per training point.
pub fn run_qvc(data: &LabeledDataset, config: &QvcConfig, seed: u64) -> Result<ClassifierRun, AlgoError> {
    let targets = data.binary_targets()?;
    if data.is_empty() {
        return Err(AlgoError::Dataset("empty training set".into()));
    }
    if config.readout >= data.dim() {
        return Err(AlgoError::InvalidConfig(format!("readout qubit {} out of range", config.readout)));
    }
    if let Some(noise) = &config.noise {
        noise.validate()?;
    }
    let start = Instant::now();
    let circuit = qvc_circuit(data.dim(), config.layers)?;
    let trainable = circuit.num_params - data.dim();
    let mut eval = PointEvaluator {
        circuit: &circuit,
        data,
        readout: config.readout,
        shots: config.shots,
        noise: config.noise,
        seed: derive_seed(seed, 2),
        calls: 0,
        depth: compiled_depth(&circuit)?,
        log: ResourceLog::started("qvc"),
    };
    let margin = config.margin;
    let init = random_angles(trainable, seed);
    let initial_accuracy = accuracy(&eval.outputs(&init)?, &targets);
    let result = minimize(&config.optimizer, init, derive_seed(seed, 1), |theta| {
        let f = eval.outputs(theta)?;
        let loss = f.iter().zip(&targets).map(|(f, y)| (margin - y * f).max(0.0)).sum::<f64>();
        Ok(loss / targets.len() as f64)
    })?;
    let final_accuracy = accuracy(&eval.outputs(&result.params)?, &targets);
    let mut trace = TrainingTrace::new(result.history, result.params, result.converged);
    let mut log = eval.log;
    log.finish(start.elapsed().as_secs_f64());
    trace.attach(log);
    Ok(ClassifierRun { trace, accuracy: final_accuracy, initial_accuracy })
}
