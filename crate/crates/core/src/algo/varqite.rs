use std::f64::consts::PI;
use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::trace::{entry, TrainingTrace};
use super::{compiled_depth, random_angles, AlgoError};
use crate::profile::ResourceLog;
use crate::sim::{run_statevector, term_matrix_element, Circuit, PauliSum, StateVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarQiteConfig {
    pub dt: f64,
    pub steps: usize,
    #[serde(default = "default_regularization")]
    pub regularization: f64,
    #[serde(default = "default_halvings")]
    pub max_halvings: usize,
    /// Initial parameters; drawn from the seed when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<Vec<f64>>,
}

fn default_regularization() -> f64 {
    1e-6
}

fn default_halvings() -> usize {
    3
}

impl VarQiteConfig {
    pub fn new(dt: f64, steps: usize) -> Self {
        VarQiteConfig {
            dt,
            steps,
            regularization: default_regularization(),
            max_halvings: default_halvings(),
            initial: None,
        }
    }

    pub fn with_initial(mut self, initial: Vec<f64>) -> Self {
        self.initial = Some(initial);
        self
    }
}

/// Circuit evaluations for `steps` steps with `q` parameters and `p`
/// Hamiltonian terms: the upper triangle of `A` plus one `C` entry per
/// parameter and term.
pub fn varqite_circuit_count(steps: usize, q: usize, p: usize) -> u64 {
    (steps * (q * (q + 1) / 2 + q * p)) as u64
}

/// Energy accepted as non-increasing despite rounding.
const ENERGY_SLACK: f64 = 1e-10;

/// Variational imaginary-time evolution.
///
/// Each step evaluates `A_ij = Re⟨∂_iψ|∂_jψ⟩` and `C_i = −Re⟨∂_iψ|H|ψ⟩`
/// with `|∂_iψ⟩ = ½|ψ(θ + π e_i)⟩`, solves `(A + λI)θ̇ = C` and moves
/// `θ ← θ + dt·θ̇`. A step whose solve fails or whose energy rises is
/// retried with `dt` halved, up to `max_halvings` times; after that the run
/// stops with a diagnostic in the trace warnings.
pub fn run_varqite(h: &PauliSum, ansatz: &Circuit, config: &VarQiteConfig, seed: u64) -> Result<TrainingTrace, AlgoError> {
    if h.num_qubits() != ansatz.num_qubits {
        return Err(AlgoError::DimensionMismatch { expected: h.num_qubits(), got: ansatz.num_qubits });
    }
    if !(config.dt > 0.0) || !(config.regularization >= 0.0) {
        return Err(AlgoError::InvalidConfig("dt must be positive and λ non-negative".into()));
    }
    ansatz.validate()?;
    let q = ansatz.num_params;
    let mut theta = match &config.initial {
        Some(init) if init.len() != q => return Err(AlgoError::DimensionMismatch { expected: q, got: init.len() }),
        Some(init) => init.clone(),
        None => random_angles(q, seed),
    };
    let start = Instant::now();
    let mut log = ResourceLog::started("varqite");
    let depth = compiled_depth(ansatz)?;
    let per_step = varqite_circuit_count(1, q, h.len());

    let mut energy = h.expectation(&run_statevector(ansatz, &theta)?)?;
    let mut history = vec![entry(energy, &theta)];
    let mut warnings = Vec::new();
    let mut rejected = 0usize;
    let mut aborted = false;
    let mut last_change = f64::INFINITY;

    for step in 0..config.steps {
        let (a, c) = metric_and_force(h, ansatz, &theta)?;
        log.circuits(per_step, ansatz.num_qubits as u64, depth, 0);
        let mut system = a;
        for i in 0..q {
            system[(i, i)] += config.regularization;
        }
        let rate = system.clone().cholesky().map(|ch| ch.solve(&c)).filter(|v| v.iter().all(|x| x.is_finite()));

        let mut dt = config.dt;
        let mut accepted = None;
        for attempt in 0..=config.max_halvings {
            if attempt > 0 {
                dt *= 0.5;
                rejected += 1;
            }
            let Some(rate) = &rate else { continue };
            let trial: Vec<f64> = theta.iter().zip(rate.iter()).map(|(t, r)| t + dt * r).collect();
            let e = h.expectation(&run_statevector(ansatz, &trial)?)?;
            if e <= energy + ENERGY_SLACK {
                accepted = Some((trial, e));
                break;
            }
        }
        match accepted {
            Some((trial, e)) => {
                last_change = (energy - e).abs();
                theta = trial;
                energy = e;
                history.push(entry(energy, &theta));
            }
            None => {
                let reason = if rate.is_none() { "singular linear system" } else { "energy increased" };
                warnings.push(format!(
                    "aborted at step {step}: {reason} after {} dt halvings",
                    config.max_halvings
                ));
                aborted = true;
                break;
            }
        }
    }
    if rejected > 0 {
        warnings.push(format!("{rejected} step attempts rejected and retried with halved dt"));
    }
    let mut trace = TrainingTrace::new(history, theta, !aborted && last_change < 1e-8);
    trace.warnings = warnings;
    log.finish(start.elapsed().as_secs_f64());
    trace.attach(log);
    Ok(trace)
}

fn metric_and_force(h: &PauliSum, ansatz: &Circuit, theta: &[f64]) -> Result<(DMatrix<f64>, DVector<f64>), AlgoError> {
    let q = theta.len();
    let psi = run_statevector(ansatz, theta)?;
    let shifted: Vec<StateVector> = (0..q)
        .into_par_iter()
        .map(|i| {
            let mut t = theta.to_vec();
            t[i] += PI;
            run_statevector(ansatz, &t)
        })
        .collect::<Result<_, _>>()?;
    let mut a = DMatrix::zeros(q, q);
    for i in 0..q {
        for j in i..q {
            let v = 0.25 * shifted[i].inner(&shifted[j]).re;
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    let c = DVector::from_iterator(
        q,
        shifted.iter().map(|s| {
            -0.5 * h.terms().iter().map(|t| t.coeff * term_matrix_element(t, s, &psi).re).sum::<f64>()
        }),
    );
    Ok((a, c))
}
