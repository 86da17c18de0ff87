use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ansatz::build_hea_ansatz;
use super::optim::{minimize, Optimizer};
use super::trace::TrainingTrace;
use super::{compiled_depth, random_angles, AlgoError};
use crate::profile::ResourceLog;
use crate::sim::{derive_seed, parse_bitstring, run_statevector, sample_counts, Circuit, Counts, StateVector};

pub const MAX_QCBM_QUBITS: usize = 8;

/// Probability distribution over the `2^N` bitstrings, indexed by basis
/// state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetDistribution {
    num_qubits: usize,
    probabilities: Vec<f64>,
}

impl TargetDistribution {
    pub fn new(num_qubits: usize, probabilities: Vec<f64>) -> Result<Self, AlgoError> {
        if num_qubits == 0 || num_qubits > MAX_QCBM_QUBITS {
            return Err(AlgoError::TooLarge { qubits: num_qubits, max: MAX_QCBM_QUBITS });
        }
        if probabilities.len() != 1 << num_qubits {
            return Err(AlgoError::DimensionMismatch { expected: 1 << num_qubits, got: probabilities.len() });
        }
        if probabilities.iter().any(|p| !(*p >= 0.0)) {
            return Err(AlgoError::InvalidConfig("negative probability".into()));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(AlgoError::InvalidConfig(format!("probabilities sum to {total}")));
        }
        Ok(TargetDistribution { num_qubits, probabilities })
    }

    pub fn uniform(num_qubits: usize) -> Result<Self, AlgoError> {
        let dim = 1usize << num_qubits.min(MAX_QCBM_QUBITS + 1);
        Self::new(num_qubits, vec![1.0 / dim as f64; dim])
    }

    pub fn point_mass(bits: &str) -> Result<Self, AlgoError> {
        let idx = parse_bitstring(bits).ok_or_else(|| AlgoError::InvalidConfig(format!("bad bitstring {bits:?}")))?;
        let n = bits.len();
        let mut p = vec![0.0; 1 << n.min(MAX_QCBM_QUBITS + 1)];
        if idx < p.len() {
            p[idx] = 1.0;
        }
        Self::new(n, p)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }
}

/// Half the L1 distance.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}

pub fn empirical_distribution(counts: &Counts, num_qubits: usize) -> Vec<f64> {
    let mut p = vec![0.0; 1 << num_qubits];
    let total: u64 = counts.values().sum();
    for (bits, &c) in counts {
        if let Some(i) = parse_bitstring(bits) {
            p[i] = c as f64 / total as f64;
        }
    }
    p
}

/// Samples `shots` outcomes as independent batches of at most `batch`
/// shots; batch `b` uses seed `seed + b`. Batches run concurrently and are
/// merged by summation.
pub fn sample_in_batches(state: &StateVector, shots: u64, batch: u64, seed: u64) -> Result<Counts, AlgoError> {
    if shots == 0 || batch == 0 {
        return Err(AlgoError::InvalidConfig("shots and batch size must be positive".into()));
    }
    let batches = shots.div_ceil(batch);
    let parts = (0..batches)
        .into_par_iter()
        .map(|b| sample_counts(state, batch.min(shots - b * batch), derive_seed(seed, b)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut merged = Counts::new();
    for part in parts {
        for (k, v) in part {
            *merged.entry(k).or_insert(0) += v;
        }
    }
    Ok(merged)
}

/// TVD between the circuit's output distribution (exact or sampled) and
/// the target.
pub fn qcbm_loss(
    circuit: &Circuit,
    params: &[f64],
    target: &TargetDistribution,
    shots: Option<u64>,
    batch: u64,
    seed: u64,
) -> Result<f64, AlgoError> {
    let state = run_statevector(circuit, params)?;
    let model = match shots {
        None => state.probabilities(),
        Some(s) => empirical_distribution(&sample_in_batches(&state, s, batch, seed)?, circuit.num_qubits),
    };
    Ok(total_variation(&model, target.probabilities()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QcbmConfig {
    pub layers: usize,
    pub optimizer: Optimizer,
    /// Shots per loss evaluation; exact probabilities when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    #[serde(default = "default_batch")]
    pub batch_size: u64,
}

fn default_batch() -> u64 {
    1024
}

impl QcbmConfig {
    pub fn new(layers: usize, optimizer: Optimizer, shots: Option<u64>) -> Self {
        QcbmConfig { layers, optimizer, shots, batch_size: default_batch() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QcbmRun {
    pub trace: TrainingTrace,
    pub final_tvd: f64,
}

/// Trains an HEA Born machine against `target` with SPSA. Every loss
/// evaluation is one circuit.
pub fn run_qcbm(target: &TargetDistribution, config: &QcbmConfig, seed: u64) -> Result<QcbmRun, AlgoError> {
    if let Optimizer::CoordinateDescent { .. } = config.optimizer {
        return Err(AlgoError::UnsupportedOptimizer(
            "coordinate_descent (the TVD loss is not sinusoidal in each parameter; use spsa)".into(),
        ));
    }
    let n = target.num_qubits();
    let mut warnings = Vec::new();
    if let Some(s) = config.shots {
        if s == 0 {
            return Err(AlgoError::InvalidConfig("shots must be at least 1".into()));
        }
        if s < 10 * (1u64 << n) {
            warnings.push(format!("{s} shots cannot resolve a support of {} bitstrings (need ≥ {})", 1 << n, 10 << n));
        }
    }
    let start = Instant::now();
    let circuit = build_hea_ansatz(n, config.layers)?;
    let depth = compiled_depth(&circuit)?;
    let mut log = ResourceLog::started("qcbm");
    let mut calls = 0u64;
    let base = derive_seed(seed, 2);
    let batches = config.shots.map_or(1, |s| s.div_ceil(config.batch_size.max(1)));
    let init = random_angles(circuit.num_params, seed);
    let result = minimize(&config.optimizer, init, derive_seed(seed, 1), |theta| {
        log.circuits(1, n as u64, depth, config.shots.unwrap_or(0));
        let s = derive_seed(base, calls * batches);
        calls += 1;
        qcbm_loss(&circuit, theta, target, config.shots, config.batch_size, s)
    })?;
    let mut trace = TrainingTrace::new(result.history, result.params, result.converged);
    trace.warnings = warnings;
    log.finish(start.elapsed().as_secs_f64());
    trace.attach(log);
    let final_tvd = trace.final_objective();
    Ok(QcbmRun { trace, final_tvd })
}

/// Smallest shot count whose mean empirical TVD to `target`, over `reps`
/// repetitions seeded `seed + r`, is at most `tolerance`.
pub fn shots_to_resolve(
    state: &StateVector,
    target: &TargetDistribution,
    tolerance: f64,
    reps: u64,
    seed: u64,
) -> Result<u64, AlgoError> {
    if state.num_qubits() != target.num_qubits() {
        return Err(AlgoError::DimensionMismatch { expected: target.num_qubits(), got: state.num_qubits() });
    }
    if !(tolerance > 0.0) || reps == 0 {
        return Err(AlgoError::InvalidConfig("tolerance and repetitions must be positive".into()));
    }
    let n = state.num_qubits();
    let mean_tvd = |shots: u64| -> Result<f64, AlgoError> {
        let tvds = (0..reps)
            .into_par_iter()
            .map(|r| {
                let counts = sample_counts(state, shots, derive_seed(seed, r))?;
                Ok(total_variation(&empirical_distribution(&counts, n), target.probabilities()))
            })
            .collect::<Result<Vec<f64>, AlgoError>>()?;
        Ok(tvds.iter().sum::<f64>() / reps as f64)
    };
    const CAP: u64 = 1 << 30;
    let mut hi = 1u64;
    while mean_tvd(hi)? > tolerance {
        hi *= 2;
        if hi > CAP {
            return Err(AlgoError::InvalidConfig(format!("tolerance {tolerance} not reached within {CAP} shots")));
        }
    }
    let mut lo = hi / 2;
    if lo == 0 {
        return Ok(hi);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if mean_tvd(mid)? <= tolerance {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_circuit_versus_uniform() {
        let c = build_hea_ansatz(2, 1).unwrap();
        let t = TargetDistribution::uniform(2).unwrap();
        let loss = qcbm_loss(&c, &vec![0.0; c.num_params], &t, None, 1024, 0).unwrap();
        assert!((loss - 0.75).abs() < 1e-12);
    }

    #[test]
    fn point_mass_is_learned() {
        let t = TargetDistribution::point_mass("00").unwrap();
        let run = run_qcbm(&t, &QcbmConfig::new(1, Optimizer::spsa(300), Some(2000)), 5).unwrap();
        assert!(run.final_tvd <= 0.05, "{}", run.final_tvd);
        assert!(run.trace.warnings.is_empty());
    }

    #[test]
    fn small_shot_budget_warns() {
        let t = TargetDistribution::uniform(3).unwrap();
        let run = run_qcbm(&t, &QcbmConfig::new(1, Optimizer::spsa(2), Some(50)), 0).unwrap();
        assert_eq!(run.trace.warnings.len(), 1);
        assert_eq!(run.trace.circuits_executed, 1 + 2 * 2 + 1);
    }

    #[test]
    fn batches_sum_to_shots() {
        let c = build_hea_ansatz(3, 1).unwrap();
        let s = run_statevector(&c, &vec![0.7; c.num_params]).unwrap();
        let counts = sample_in_batches(&s, 2500, 1000, 4).unwrap();
        assert_eq!(counts.values().sum::<u64>(), 2500);
        assert_eq!(counts, sample_in_batches(&s, 2500, 1000, 4).unwrap());
    }

    #[test]
    fn target_validation() {
        assert!(TargetDistribution::new(1, vec![0.5, 0.6]).is_err());
        assert!(TargetDistribution::new(1, vec![-0.5, 1.5]).is_err());
        assert!(TargetDistribution::new(2, vec![1.0, 0.0]).is_err());
    }
}
