use rand::Rng;
use serde::{Deserialize, Serialize};

use super::ProfileError;
use crate::sim::{derive_seed, rng_from_seed, run_noisy, Circuit, Gate, GateKind, NoiseModel};

/// Success statistics of one mirror circuit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MirrorResult {
    pub size: usize,
    pub num_qubits: usize,
    /// Layer depth of the full mirror circuit.
    pub depth: usize,
    pub gate_count: usize,
    pub expected: String,
    pub success_probability: f64,
    pub shots: u64,
    pub noise: NoiseModel,
}

impl MirrorResult {
    /// Binomial standard error of the success estimate.
    pub fn standard_error(&self) -> f64 {
        let p = self.success_probability;
        (p * (1.0 - p) / self.shots as f64).sqrt()
    }
}

/// Pauli frame as `(x, z)` bit vectors.
#[derive(Debug, Clone, PartialEq)]
struct Frame {
    x: Vec<bool>,
    z: Vec<bool>,
}

impl Frame {
    /// Conjugates the frame by a Clifford gate (all of ours are self-inverse).
    fn conjugate(&mut self, gate: &Gate) -> Result<(), ProfileError> {
        let t = &gate.targets;
        match gate.kind {
            GateKind::X | GateKind::Y | GateKind::Z => {}
            GateKind::H => std::mem::swap(&mut self.x[t[0]], &mut self.z[t[0]]),
            GateKind::Cz => {
                let (a, b) = (t[0], t[1]);
                self.z[a] ^= self.x[b];
                self.z[b] ^= self.x[a];
            }
            GateKind::Cnot => {
                let (c, tg) = (t[0], t[1]);
                self.x[tg] ^= self.x[c];
                self.z[c] ^= self.z[tg];
            }
            GateKind::Swap => {
                self.x.swap(t[0], t[1]);
                self.z.swap(t[0], t[1]);
            }
            kind => return Err(ProfileError::UnsupportedGate(kind)),
        }
        Ok(())
    }

    fn anticommutes_with_axis(&self, kind: GateKind, q: usize) -> bool {
        match kind {
            GateKind::Rx => self.z[q],
            GateKind::Ry => self.x[q] ^ self.z[q],
            _ => self.x[q],
        }
    }

    fn bitstring(&self) -> String {
        (0..self.x.len()).rev().map(|q| if self.x[q] { '1' } else { '0' }).collect()
    }
}

/// Builds `C`, a random Pauli layer, then the quasi-inverse of `C`, and
/// returns the mirror circuit with the bitstring it ideally produces.
///
/// The Pauli layer is tracked through the inverse classically: Clifford
/// gates conjugate the frame and rotations whose axis anticommutes with the
/// frame keep their original angle instead of being negated.
pub fn mirror_circuit(circuit: &Circuit, seed: u64) -> Result<(Circuit, String), ProfileError> {
    circuit.validate()?;
    if circuit.num_params > 0 || circuit.gates.iter().any(|g| g.param_slot.is_some()) {
        return Err(ProfileError::Unbound);
    }
    let n = circuit.num_qubits;
    let mut out = circuit.clone();
    let mut rng = rng_from_seed(seed);
    let mut frame = Frame { x: vec![false; n], z: vec![false; n] };
    for q in 0..n {
        match rng.gen_range(0..4u8) {
            1 => {
                frame.x[q] = true;
                out.push(Gate::x(q));
            }
            2 => {
                frame.x[q] = true;
                frame.z[q] = true;
                out.push(Gate::y(q));
            }
            3 => {
                frame.z[q] = true;
                out.push(Gate::z(q));
            }
            _ => {}
        }
    }
    for gate in circuit.gates.iter().rev() {
        if gate.kind.is_rotation() {
            let theta = gate.angle.unwrap_or(0.0);
            let angle = if frame.anticommutes_with_axis(gate.kind, gate.targets[0]) {
                theta
            } else {
                -theta
            };
            out.push(Gate::rotation(gate.kind, gate.targets[0], angle));
        } else {
            frame.conjugate(gate)?;
            out.push(gate.clone());
        }
    }
    Ok((out, frame.bitstring()))
}

/// Runs the mirror benchmark for each size of `family`.
///
/// Size `s` draws its Pauli layer from seed `base + 2s` and samples with
/// seed `base + 2s + 1`.
pub fn mirror_benchmark<F>(
    sizes: &[usize],
    family: F,
    noise: &NoiseModel,
    shots: u64,
    seed: u64,
) -> Result<Vec<MirrorResult>, ProfileError>
where
    F: Fn(usize) -> Circuit,
{
    noise.validate()?;
    let mut results = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let circuit = family(size);
        if circuit.num_qubits > super::MAX_MIRROR_QUBITS {
            return Err(ProfileError::TooManyQubits(circuit.num_qubits));
        }
        let (mirror, expected) = mirror_circuit(&circuit, derive_seed(seed, 2 * size as u64))?;
        let counts = run_noisy(&mirror, &[], noise, shots, derive_seed(seed, 2 * size as u64 + 1))?;
        let hits = counts.get(&expected).copied().unwrap_or(0);
        results.push(MirrorResult {
            size,
            num_qubits: circuit.num_qubits,
            depth: mirror.depth(),
            gate_count: mirror.len(),
            expected,
            success_probability: hits as f64 / shots as f64,
            shots,
            noise: *noise,
        });
    }
    Ok(results)
}
