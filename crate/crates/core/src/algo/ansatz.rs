use super::AlgoError;
use crate::sim::{Circuit, Gate, GateKind};

/// Hardware-efficient ansatz: per layer `RY`, `RZ` on every qubit followed by
/// `CZ` on each linear-neighbour pair. Parameters are numbered layer by
/// layer, qubit by qubit, `RY` before `RZ`.
pub fn build_hea_ansatz(num_qubits: usize, layers: usize) -> Result<Circuit, AlgoError> {
    if num_qubits == 0 || layers == 0 {
        return Err(AlgoError::InvalidConfig("HEA needs N ≥ 1 and layers ≥ 1".into()));
    }
    let mut c = Circuit::with_params(num_qubits, 2 * num_qubits * layers);
    let mut slot = 0;
    for _ in 0..layers {
        for q in 0..num_qubits {
            c.push(Gate::parameterized(GateKind::Ry, q, slot));
            c.push(Gate::parameterized(GateKind::Rz, q, slot + 1));
            slot += 2;
        }
        for q in 0..num_qubits.saturating_sub(1) {
            c.push(Gate::cz(q, q + 1));
        }
    }
    Ok(c)
}
