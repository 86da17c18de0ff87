use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grouping::{group_pauli_terms, TermGroup};
use super::optim::{minimize, Optimizer};
use super::trace::TrainingTrace;
use super::{compiled_depth, random_angles, AlgoError};
use crate::profile::ResourceLog;
use crate::sim::{derive_seed, run_statevector, sample_counts, Circuit, Counts, PauliSum, StateVector};

/// How expectation values are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ShotMode {
    Exact,
    Shots { shots: u64 },
    /// Shots chosen as `⌈1/ε²⌉` for a target precision `ε`.
    Precision { epsilon: f64 },
}

impl ShotMode {
    pub fn shots(&self) -> Option<u64> {
        match *self {
            ShotMode::Exact => None,
            ShotMode::Shots { shots } => Some(shots),
            ShotMode::Precision { epsilon } => Some((1.0 / (epsilon * epsilon)).ceil() as u64),
        }
    }

    fn validate(&self) -> Result<(), AlgoError> {
        match *self {
            ShotMode::Shots { shots: 0 } => Err(AlgoError::InvalidConfig("shots must be at least 1".into())),
            ShotMode::Precision { epsilon } if !(epsilon > 0.0 && epsilon < 1.0) => {
                Err(AlgoError::InvalidConfig(format!("precision {epsilon} outside (0, 1)")))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqeProblem {
    pub hamiltonian: PauliSum,
    pub ansatz: Circuit,
    pub shots: ShotMode,
}

impl VqeProblem {
    pub fn new(hamiltonian: PauliSum, ansatz: Circuit, shots: ShotMode) -> Result<Self, AlgoError> {
        if hamiltonian.num_qubits() != ansatz.num_qubits {
            return Err(AlgoError::DimensionMismatch {
                expected: hamiltonian.num_qubits(),
                got: ansatz.num_qubits,
            });
        }
        ansatz.validate()?;
        shots.validate()?;
        Ok(VqeProblem { hamiltonian, ansatz, shots })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqeRun {
    pub trace: TrainingTrace,
    pub group_count: usize,
    pub final_energy: f64,
    /// Shot-noise standard error of `final_energy` (0 in exact mode).
    pub final_standard_error: f64,
}

struct Estimator<'a> {
    problem: &'a VqeProblem,
    groups: Vec<TermGroup>,
    depths: Vec<u64>,
    seed: u64,
    evaluations: u64,
    log: ResourceLog,
}

impl<'a> Estimator<'a> {
    fn new(problem: &'a VqeProblem, seed: u64) -> Result<Self, AlgoError> {
        let groups = group_pauli_terms(&problem.hamiltonian);
        let depths = groups
            .iter()
            .map(|g| {
                let mut c = problem.ansatz.clone();
                c.extend(g.rotations());
                compiled_depth(&c)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Estimator { problem, groups, depths, seed, evaluations: 0, log: ResourceLog::started("vqe") })
    }

    fn energy(&mut self, params: &[f64]) -> Result<(f64, f64), AlgoError> {
        let state = run_statevector(&self.problem.ansatz, params)?;
        let n = self.problem.ansatz.num_qubits as u64;
        let shots = self.problem.shots.shots();
        for &d in &self.depths {
            self.log.circuits(1, n, d, shots.unwrap_or(0));
        }
        let eval = self.evaluations;
        self.evaluations += 1;
        match shots {
            None => Ok((self.problem.hamiltonian.expectation(&state)?, 0.0)),
            Some(s) => {
                let base = derive_seed(self.seed, eval * self.groups.len() as u64);
                let h = &self.problem.hamiltonian;
                let parts = self
                    .groups
                    .par_iter()
                    .enumerate()
                    .map(|(g, group)| {
                        let counts = measure_group(&state, group, s, derive_seed(base, g as u64))?;
                        let mut e = 0.0;
                        let mut var = 0.0;
                        for &t in &group.terms {
                            let term = &h.terms()[t];
                            let est = parity(&counts, &term.support());
                            e += term.coeff * est;
                            if !term.is_identity() {
                                var += term.coeff * term.coeff * (1.0 - est * est) / s as f64;
                            }
                        }
                        Ok((e, var))
                    })
                    .collect::<Result<Vec<_>, AlgoError>>()?;
                let e = parts.iter().map(|p| p.0).sum();
                let var: f64 = parts.iter().map(|p| p.1).sum();
                Ok((e, var.sqrt()))
            }
        }
    }
}

fn measure_group(state: &StateVector, group: &TermGroup, shots: u64, seed: u64) -> Result<Counts, AlgoError> {
    let mut rotated = state.clone();
    for gate in group.rotations() {
        rotated.apply(&gate, None)?;
    }
    Ok(sample_counts(&rotated, shots, seed)?)
}

/// Mean of `Π (−1)^{b_q}` over the listed qubits.
fn parity(counts: &Counts, qubits: &[usize]) -> f64 {
    let mut total = 0u64;
    let mut acc = 0i64;
    for (bits, &c) in counts {
        let b = bits.as_bytes();
        let n = b.len();
        let ones = qubits.iter().filter(|&&q| b[n - 1 - q] == b'1').count();
        acc += if ones % 2 == 0 { c as i64 } else { -(c as i64) };
        total += c;
    }
    acc as f64 / total as f64
}

/// Energy of `params` in exact mode.
pub fn vqe_energy(problem: &VqeProblem, params: &[f64]) -> Result<f64, AlgoError> {
    let state = run_statevector(&problem.ansatz, params)?;
    Ok(problem.hamiltonian.expectation(&state)?)
}

/// Exact gradient of [`vqe_energy`] by the parameter-shift rule.
///
/// Every rotation reading slot `k` is shifted by `±π/2` on its own and the
/// halved energy differences are summed into `∂E/∂θ_k`, so slots shared by
/// several gates are handled exactly.
pub fn energy_gradient(problem: &VqeProblem, params: &[f64]) -> Result<Vec<f64>, AlgoError> {
    let bound = problem.ansatz.bind(params)?;
    let energy = |c: &Circuit| -> Result<f64, AlgoError> {
        Ok(problem.hamiltonian.expectation(&run_statevector(c, &[])?)?)
    };
    let terms = problem
        .ansatz
        .gates
        .par_iter()
        .enumerate()
        .filter_map(|(g, gate)| gate.param_slot.map(|slot| (g, slot)))
        .map(|(g, slot)| {
            let mut shifted = bound.clone();
            let base = shifted.gates[g].angle.unwrap_or(0.0);
            shifted.gates[g].angle = Some(base + std::f64::consts::FRAC_PI_2);
            let plus = energy(&shifted)?;
            shifted.gates[g].angle = Some(base - std::f64::consts::FRAC_PI_2);
            let minus = energy(&shifted)?;
            Ok((slot, 0.5 * (plus - minus)))
        })
        .collect::<Result<Vec<_>, AlgoError>>()?;
    let mut grad = vec![0.0; problem.ansatz.num_params];
    for (slot, d) in terms {
        grad[slot] += d;
    }
    Ok(grad)
}

/// Runs VQE from parameters drawn uniformly in `[−π, π)` with `seed`.
pub fn run_vqe(problem: &VqeProblem, optimizer: &Optimizer, seed: u64) -> Result<VqeRun, AlgoError> {
    let init = random_angles(problem.ansatz.num_params, seed);
    run_vqe_from(problem, optimizer, init, seed)
}

/// Runs VQE from explicit initial parameters. Optimizer randomness uses
/// `seed + 1`, shot sampling `seed + 2` onward.
pub fn run_vqe_from(
    problem: &VqeProblem,
    optimizer: &Optimizer,
    init: Vec<f64>,
    seed: u64,
) -> Result<VqeRun, AlgoError> {
    if init.len() != problem.ansatz.num_params {
        return Err(AlgoError::DimensionMismatch { expected: problem.ansatz.num_params, got: init.len() });
    }
    let start = Instant::now();
    let mut est = Estimator::new(problem, derive_seed(seed, 2))?;
    let mut last_se = 0.0;
    let result = minimize(optimizer, init, derive_seed(seed, 1), |p| {
        let (e, se) = est.energy(p)?;
        last_se = se;
        Ok(e)
    })?;
    let mut trace = TrainingTrace::new(result.history, result.params, result.converged);
    if !trace.converged {
        trace.warnings.push(format!("no convergence within {} iterations", optimizer.iterations()));
    }
    let final_energy = trace.final_objective();
    let group_count = est.groups.len();
    let mut log = est.log;
    log.finish(start.elapsed().as_secs_f64());
    trace.attach(log);
    Ok(VqeRun { trace, group_count, final_energy, final_standard_error: last_se })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algo::{build_hea_ansatz, exact_ground_energy, tfim};

    #[test]
    fn single_z_reaches_ground_state() {
        let h = PauliSum::new(1, vec![(1.0, "Z")]).unwrap();
        let p = VqeProblem::new(h, build_hea_ansatz(1, 1).unwrap(), ShotMode::Exact).unwrap();
        let run = run_vqe(&p, &Optimizer::default(), 3).unwrap();
        assert!((run.final_energy + 1.0).abs() < 1e-6);
    }

    #[test]
    fn tfim2_reaches_minus_sqrt5() {
        let h = tfim(2, 1.0).unwrap();
        let exact = exact_ground_energy(&h).unwrap();
        let p = VqeProblem::new(h, build_hea_ansatz(2, 2).unwrap(), ShotMode::Exact).unwrap();
        let run = run_vqe(&p, &Optimizer::coordinate_descent(200), 11).unwrap();
        assert!((run.final_energy - exact).abs() < 1e-3, "{}", run.final_energy);
        assert!(run.final_energy >= exact - 1e-9);
    }

    #[test]
    fn circuits_per_evaluation_equal_group_count() {
        let h = tfim(3, 0.5).unwrap();
        let p = VqeProblem::new(h, build_hea_ansatz(3, 1).unwrap(), ShotMode::Exact).unwrap();
        let run = run_vqe(&p, &Optimizer::coordinate_descent(1), 0).unwrap();
        // one initial evaluation, 2 per parameter, one after the sweep
        let evals = 2 + 2 * p.ansatz.num_params as u64;
        assert_eq!(run.group_count, 2);
        assert_eq!(run.trace.circuits_executed, evals * 2);
    }

    #[test]
    fn shot_mode_respects_noisy_variational_bound() {
        let h = tfim(2, 1.0).unwrap();
        let exact = exact_ground_energy(&h).unwrap();
        let p = VqeProblem::new(h, build_hea_ansatz(2, 1).unwrap(), ShotMode::Precision { epsilon: 0.02 }).unwrap();
        let run = run_vqe(&p, &Optimizer::spsa(60), 5).unwrap();
        assert!(run.final_energy >= exact - 3.0 * run.final_standard_error);
        let again = run_vqe(&p, &Optimizer::spsa(60), 5).unwrap();
        assert_eq!(run.trace.entries, again.trace.entries);
    }

    #[test]
    fn qubit_mismatch_is_rejected() {
        let h = PauliSum::new(2, vec![(1.0, "ZZ")]).unwrap();
        assert!(VqeProblem::new(h, build_hea_ansatz(3, 1).unwrap(), ShotMode::Exact).is_err());
    }
}
