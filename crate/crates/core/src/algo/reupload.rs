use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::data::LabeledDataset;
use super::optim::{minimize, Optimizer};
use super::qvc::{accuracy, ClassifierRun, PointEvaluator};
use super::trace::TrainingTrace;
use super::{compiled_depth, random_angles, AlgoError};
use crate::profile::ResourceLog;
use crate::sim::{derive_seed, Circuit, Gate, GateKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReuploadConfig {
    pub layers: usize,
    pub optimizer: Optimizer,
}

const BLOCK: [GateKind; 3] = [GateKind::Ry, GateKind::Rz, GateKind::Ry];

/// Single-qubit re-uploading circuit.
///
/// Features are zero-padded to `3B` values and read as `B` angle triples.
/// Each layer applies, for every triple, the encoding rotations
/// `RY, RZ, RY` (data slots `0..3B`) followed by a trainable `RY, RZ, RY`
/// block with its own three parameters.
pub fn reuploading_circuit(num_features: usize, layers: usize) -> Result<Circuit, AlgoError> {
    if layers == 0 {
        return Err(AlgoError::InvalidConfig("re-uploading needs L ≥ 1".into()));
    }
    let blocks = num_features.div_ceil(3).max(1);
    let data_slots = 3 * blocks;
    let mut c = Circuit::with_params(1, data_slots + 3 * blocks * layers);
    let mut slot = data_slots;
    for _ in 0..layers {
        for b in 0..blocks {
            for (j, kind) in BLOCK.iter().enumerate() {
                c.push(Gate::parameterized(*kind, 0, 3 * b + j));
            }
            for kind in BLOCK {
                c.push(Gate::parameterized(kind, 0, slot));
                slot += 1;
            }
        }
    }
    Ok(c)
}

/// Trains the re-uploading classifier with cost `(1 − y⟨Z⟩)/2`, the
/// infidelity to `|0⟩` for `+1` and to `|1⟩` for `−1`.
pub fn run_reuploading(data: &LabeledDataset, config: &ReuploadConfig, seed: u64) -> Result<ClassifierRun, AlgoError> {
    let targets = data.binary_targets()?;
    if data.is_empty() {
        return Err(AlgoError::Dataset("empty training set".into()));
    }
    let start = Instant::now();
    let circuit = reuploading_circuit(data.dim(), config.layers)?;
    let width = 3 * data.dim().div_ceil(3).max(1);
    let padded: Vec<Vec<f64>> = data
        .features()
        .iter()
        .map(|x| {
            let mut p = x.clone();
            p.resize(width, 0.0);
            p
        })
        .collect();
    let padded = LabeledDataset::new(padded, data.labels().to_vec())?;
    let mut eval = PointEvaluator {
        circuit: &circuit,
        data: &padded,
        readout: 0,
        shots: None,
        noise: None,
        seed: derive_seed(seed, 2),
        calls: 0,
        depth: compiled_depth(&circuit)?,
        log: ResourceLog::started("reuploading"),
    };
    let init = random_angles(circuit.num_params - width, seed);
    let initial_accuracy = accuracy(&eval.outputs(&init)?, &targets);
    let result = minimize(&config.optimizer, init, derive_seed(seed, 1), |theta| {
        let f = eval.outputs(theta)?;
        Ok(f.iter().zip(&targets).map(|(f, y)| 0.5 * (1.0 - y * f)).sum::<f64>() / targets.len() as f64)
    })?;
    let final_accuracy = accuracy(&eval.outputs(&result.params)?, &targets);
    let mut trace = TrainingTrace::new(result.history, result.params, result.converged);
    let mut log = eval.log;
    log.finish(start.elapsed().as_secs_f64());
    trace.attach(log);
    Ok(ClassifierRun { trace, accuracy: final_accuracy, initial_accuracy })
}
