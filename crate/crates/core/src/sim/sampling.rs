//! Seeded shot sampling and trajectory-based depolarizing noise.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::circuit::Circuit;
use super::gate::GateKind;
use super::rng::rng_from_seed;
use super::state::{bitstring, run_statevector, StateVector};
use super::SimError;

/// Measurement histogram keyed by bitstring (most-significant qubit first).
pub type Counts = BTreeMap<String, u64>;

/// Depolarizing probabilities applied after every 1-qubit (`p1`) and
/// multi-qubit (`p2`) gate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub p1: f64,
    pub p2: f64,
}

impl NoiseModel {
    pub fn new(p1: f64, p2: f64) -> Result<Self, SimError> {
        let model = NoiseModel { p1, p2 };
        model.validate()?;
        Ok(model)
    }

    pub fn ideal() -> Self {
        NoiseModel { p1: 0.0, p2: 0.0 }
    }

    pub fn uniform(p: f64) -> Result<Self, SimError> {
        Self::new(p, p)
    }

    pub fn validate(&self) -> Result<(), SimError> {
        for p in [self.p1, self.p2] {
            if !(0.0..=1.0).contains(&p) || p.is_nan() {
                return Err(SimError::BadProbability(p));
            }
        }
        Ok(())
    }

    pub fn is_ideal(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0
    }

    fn probability_for(&self, arity: usize) -> f64 {
        if arity == 1 {
            self.p1
        } else {
            self.p2
        }
    }
}

/// Cumulative distribution over basis indices.
pub(crate) struct Sampler {
    cdf: Vec<f64>,
}

impl Sampler {
    pub(crate) fn new(state: &StateVector) -> Self {
        let mut acc = 0.0;
        let cdf = state
            .amplitudes()
            .iter()
            .map(|a| {
                acc += a.norm_sqr();
                acc
            })
            .collect();
        Sampler { cdf }
    }

    pub(crate) fn draw(&self, rng: &mut ChaCha8Rng) -> usize {
        let total = *self.cdf.last().expect("non-empty");
        let u: f64 = rng.gen::<f64>() * total;
        self.cdf.partition_point(|&c| c <= u).min(self.cdf.len() - 1)
    }
}

fn to_counts(hist: BTreeMap<usize, u64>, num_qubits: usize) -> Counts {
    hist.into_iter().map(|(k, v)| (bitstring(k, num_qubits), v)).collect()
}

/// Draws `shots` measurement outcomes of `state` in the computational basis.
pub fn sample_counts(state: &StateVector, shots: u64, seed: u64) -> Result<Counts, SimError> {
    if shots == 0 {
        return Err(SimError::ZeroShots);
    }
    let sampler = Sampler::new(state);
    let mut rng = rng_from_seed(seed);
    let mut hist = BTreeMap::new();
    for _ in 0..shots {
        *hist.entry(sampler.draw(&mut rng)).or_insert(0u64) += 1;
    }
    Ok(to_counts(hist, state.num_qubits()))
}

/// Per-shot trajectory simulation under `noise`.
///
/// After each gate, with the gate's depolarizing probability, a uniformly
/// random non-identity Pauli on the gate's targets is inserted (3 choices
/// for 1-qubit gates, 15 for 2-qubit gates, 63 for CCNOT). With an ideal
/// model this is exactly [`sample_counts`] of the ideal final state.
pub fn run_noisy(
    circuit: &Circuit,
    params: &[f64],
    noise: &NoiseModel,
    shots: u64,
    seed: u64,
) -> Result<Counts, SimError> {
    noise.validate()?;
    if shots == 0 {
        return Err(SimError::ZeroShots);
    }
    let ideal = run_statevector(circuit, params)?;
    if noise.is_ideal() {
        return sample_counts(&ideal, shots, seed);
    }
    let bound = circuit.bind(params)?;
    let ideal_sampler = Sampler::new(&ideal);
    let mut rng = rng_from_seed(seed);
    let mut hist = BTreeMap::new();
    let mut errors: Vec<(usize, usize)> = Vec::new();
    for _ in 0..shots {
        errors.clear();
        for (g, gate) in bound.gates.iter().enumerate() {
            let p = noise.probability_for(gate.targets.len());
            if p > 0.0 && rng.gen::<f64>() < p {
                let choices = (1usize << (2 * gate.targets.len())) - 1;
                errors.push((g, rng.gen_range(1..=choices)));
            }
        }
        let outcome = if errors.is_empty() {
            ideal_sampler.draw(&mut rng)
        } else {
            let state = trajectory(&bound, &errors)?;
            Sampler::new(&state).draw(&mut rng)
        };
        *hist.entry(outcome).or_insert(0u64) += 1;
    }
    Ok(to_counts(hist, circuit.num_qubits))
}

const PAULIS: [GateKind; 3] = [GateKind::X, GateKind::Y, GateKind::Z];

fn trajectory(bound: &Circuit, errors: &[(usize, usize)]) -> Result<StateVector, SimError> {
    let mut state = StateVector::zero(bound.num_qubits)?;
    let mut next = errors.iter().peekable();
    for (g, gate) in bound.gates.iter().enumerate() {
        state.apply_unchecked(gate.kind, &gate.targets, gate.angle.unwrap_or(0.0))?;
        while let Some(&&(eg, code)) = next.peek() {
            if eg != g {
                break;
            }
            // Two bits per target select I/X/Y/Z; code 0 (all identity) is excluded.
            for (i, &q) in gate.targets.iter().enumerate() {
                let letter = (code >> (2 * i)) & 3;
                if letter > 0 {
                    state.apply_unchecked(PAULIS[letter - 1], &[q], 0.0)?;
                }
            }
            next.next();
        }
    }
    Ok(state)
}

/// Estimates `⟨Z_q⟩` from counts.
pub fn z_expectation_from_counts(counts: &Counts, qubit: usize) -> f64 {
    let mut total = 0u64;
    let mut acc = 0i64;
    for (bits, &c) in counts {
        let n = bits.len();
        let bit = bits.as_bytes()[n - 1 - qubit] == b'1';
        acc += if bit { -(c as i64) } else { c as i64 };
        total += c;
    }
    if total == 0 {
        0.0
    } else {
        acc as f64 / total as f64
    }
}
