use num_complex::Complex64;

use super::circuit::Circuit;
use super::gate::{Gate, GateKind};
use super::SimError;

/// Largest register the dense simulator accepts.
pub const MAX_QUBITS: usize = 24;

pub type Matrix2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// 2x2 unitary of a single-qubit gate kind at the given angle.
pub fn single_qubit_matrix(kind: GateKind, angle: f64) -> Option<Matrix2> {
    let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
    let r = std::f64::consts::FRAC_1_SQRT_2;
    Some(match kind {
        GateKind::Rx => [[c * ONE, -I * s], [-I * s, c * ONE]],
        GateKind::Ry => [[c * ONE, -s * ONE], [s * ONE, c * ONE]],
        GateKind::Rz => [[Complex64::from_polar(1.0, -angle / 2.0), ZERO], [
            ZERO,
            Complex64::from_polar(1.0, angle / 2.0),
        ]],
        GateKind::X => [[ZERO, ONE], [ONE, ZERO]],
        GateKind::Y => [[ZERO, -I], [I, ZERO]],
        GateKind::Z => [[ONE, ZERO], [ZERO, -ONE]],
        GateKind::H => [[r * ONE, r * ONE], [r * ONE, -r * ONE]],
        _ => return None,
    })
}

/// Dense state of `num_qubits` qubits. Qubit 0 is the least-significant bit
/// of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(num_qubits: usize) -> Result<Self, SimError> {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self, SimError> {
        if num_qubits == 0 {
            return Err(SimError::EmptyRegister);
        }
        if num_qubits > MAX_QUBITS {
            return Err(SimError::TooManyQubits { requested: num_qubits, max: MAX_QUBITS });
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(SimError::QubitOutOfRange { qubit: index, num_qubits });
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(StateVector { num_qubits, amps })
    }

    /// Builds a state from raw amplitudes; the vector is normalized.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, SimError> {
        let dim = amps.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(SimError::BadDimension(dim));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(SimError::BadDimension(dim));
        }
        let num_qubits = dim.trailing_zeros() as usize;
        Ok(StateVector { num_qubits, amps: amps.into_iter().map(|a| a / norm).collect() })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Equality up to a single global phase.
    pub fn approx_eq_up_to_phase(&self, other: &StateVector, tol: f64) -> bool {
        if self.amps.len() != other.amps.len() {
            return false;
        }
        let (k, _) = self
            .amps
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, a)| if a.norm() > best.1 { (i, a.norm()) } else { best });
        if other.amps[k].norm() < 1e-300 {
            return false;
        }
        let phase = other.amps[k] / self.amps[k];
        let phase = phase / phase.norm();
        self.amps.iter().zip(&other.amps).all(|(a, b)| (b - phase * a).norm() <= tol)
    }

    /// Applies one gate. `bound_angle` must be supplied exactly when the gate
    /// carries a parameter slot.
    pub fn apply(&mut self, gate: &Gate, bound_angle: Option<f64>) -> Result<(), SimError> {
        gate.validate(self.num_qubits, usize::MAX)?;
        let angle = match (gate.param_slot, bound_angle) {
            (Some(_), Some(a)) => Some(a),
            (Some(_), None) => return Err(SimError::MissingBinding),
            (None, Some(_)) => return Err(SimError::UnexpectedBinding),
            (None, None) => gate.angle,
        };
        self.apply_unchecked(gate.kind, &gate.targets, angle.unwrap_or(0.0))
    }

    pub(crate) fn apply_unchecked(
        &mut self,
        kind: GateKind,
        targets: &[usize],
        angle: f64,
    ) -> Result<(), SimError> {
        match kind {
            GateKind::Cz => self.apply_cz(targets[0], targets[1]),
            GateKind::Cnot => self.apply_controlled_x(1 << targets[0], targets[1]),
            GateKind::Ccnot => {
                self.apply_controlled_x((1 << targets[0]) | (1 << targets[1]), targets[2])
            }
            GateKind::Swap => self.apply_swap(targets[0], targets[1]),
            GateKind::Measure => return Err(SimError::ClassicalControl),
            single => {
                let m = single_qubit_matrix(single, angle).expect("single-qubit kind");
                self.apply_matrix(targets[0], &m);
            }
        }
        Ok(())
    }

    pub fn apply_matrix(&mut self, qubit: usize, m: &Matrix2) {
        let mask = 1usize << qubit;
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | mask]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | mask] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    fn apply_cz(&mut self, a: usize, b: usize) {
        let mask = (1usize << a) | (1usize << b);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *amp = -*amp;
            }
        }
    }

    fn apply_controlled_x(&mut self, controls: usize, target: usize) {
        let t = 1usize << target;
        for i in 0..self.amps.len() {
            if i & controls == controls && i & t == 0 {
                self.amps.swap(i, i | t);
            }
        }
    }

    fn apply_swap(&mut self, a: usize, b: usize) {
        let (ma, mb) = (1usize << a, 1usize << b);
        for i in 0..self.amps.len() {
            if i & ma != 0 && i & mb == 0 {
                self.amps.swap(i, (i & !ma) | mb);
            }
        }
    }
}

/// Applies `gate` to `state` and returns the result.
pub fn apply_gate(
    mut state: StateVector,
    gate: &Gate,
    bound_angle: Option<f64>,
) -> Result<StateVector, SimError> {
    state.apply(gate, bound_angle)?;
    Ok(state)
}

/// Runs `circuit` from `|0…0⟩` with the given parameter vector.
pub fn run_statevector(circuit: &Circuit, params: &[f64]) -> Result<StateVector, SimError> {
    let state = StateVector::zero(circuit.num_qubits)?;
    run_from(circuit, params, state)
}

/// Runs `circuit` from an arbitrary initial state.
pub fn run_from(
    circuit: &Circuit,
    params: &[f64],
    mut state: StateVector,
) -> Result<StateVector, SimError> {
    if params.len() != circuit.num_params {
        return Err(SimError::ParamCount { expected: circuit.num_params, got: params.len() });
    }
    if state.num_qubits() != circuit.num_qubits {
        return Err(SimError::QubitMismatch { expected: circuit.num_qubits, got: state.num_qubits() });
    }
    circuit.validate()?;
    for gate in &circuit.gates {
        let angle = match gate.param_slot {
            Some(slot) => params[slot],
            None => gate.angle.unwrap_or(0.0),
        };
        state.apply_unchecked(gate.kind, &gate.targets, angle)?;
    }
    Ok(state)
}

/// Renders a basis index as a bitstring, most-significant qubit first.
pub fn bitstring(index: usize, num_qubits: usize) -> String {
    (0..num_qubits)
        .rev()
        .map(|q| if index >> q & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Inverse of [`bitstring`].
pub fn parse_bitstring(bits: &str) -> Option<usize> {
    let mut index = 0usize;
    for c in bits.chars() {
        index = index.checked_mul(2)?
            + match c {
                '0' => 0,
                '1' => 1,
                _ => return None,
            };
    }
    Some(index)
}
