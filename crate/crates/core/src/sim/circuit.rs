use serde::{Deserialize, Serialize};

use super::gate::{Gate, GateKind};
use super::SimError;

/// An ordered, possibly parameterized gate list on a fixed register.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub num_qubits: usize,
    pub gates: Vec<Gate>,
    #[serde(default)]
    pub num_params: usize,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit { num_qubits, gates: Vec::new(), num_params: 0 }
    }

    pub fn with_params(num_qubits: usize, num_params: usize) -> Self {
        Circuit { num_qubits, gates: Vec::new(), num_params }
    }

    pub fn push(&mut self, gate: Gate) -> &mut Self {
        self.gates.push(gate);
        self
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> &mut Self {
        self.gates.extend(gates);
        self
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if self.num_qubits == 0 {
            return Err(SimError::EmptyRegister);
        }
        for gate in &self.gates {
            gate.validate(self.num_qubits, self.num_params)?;
        }
        Ok(())
    }

    /// Scheduling-layer depth: the longest chain of gates that share qubits.
    pub fn depth(&self) -> usize {
        let mut level = vec![0usize; self.num_qubits];
        let mut depth = 0;
        for gate in &self.gates {
            let next = gate.targets.iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
            for &q in &gate.targets {
                level[q] = next;
            }
            depth = depth.max(next);
        }
        depth
    }

    /// Number of gates touching two or more qubits.
    pub fn multi_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.targets.len() >= 2).count()
    }

    pub fn count_kind(&self, kind: GateKind) -> usize {
        self.gates.iter().filter(|g| g.kind == kind).count()
    }

    pub fn has_classical_control(&self) -> bool {
        self.gates.iter().any(|g| g.kind == GateKind::Measure)
    }

    /// Replaces every parameter slot by its value, producing a circuit with
    /// `num_params == 0`.
    pub fn bind(&self, params: &[f64]) -> Result<Circuit, SimError> {
        if params.len() != self.num_params {
            return Err(SimError::ParamCount { expected: self.num_params, got: params.len() });
        }
        let gates = self
            .gates
            .iter()
            .map(|g| match g.param_slot {
                Some(slot) => Gate { angle: Some(params[slot]), param_slot: None, ..g.clone() },
                None => g.clone(),
            })
            .collect();
        Ok(Circuit { num_qubits: self.num_qubits, gates, num_params: 0 })
    }

    /// Exact inverse of a fully bound circuit.
    pub fn inverse(&self) -> Result<Circuit, SimError> {
        let mut gates = Vec::with_capacity(self.gates.len());
        for g in self.gates.iter().rev() {
            if g.param_slot.is_some() {
                return Err(SimError::UnboundParameters);
            }
            if g.kind == GateKind::Measure {
                return Err(SimError::ClassicalControl);
            }
            let mut inv = g.clone();
            if let Some(a) = g.angle {
                inv.angle = Some(-a);
            }
            gates.push(inv);
        }
        Ok(Circuit { num_qubits: self.num_qubits, gates, num_params: 0 })
    }

    /// Appends `other` (same register, shared parameter vector).
    pub fn append(&mut self, other: &Circuit) -> Result<(), SimError> {
        if other.num_qubits != self.num_qubits {
            return Err(SimError::QubitMismatch { expected: self.num_qubits, got: other.num_qubits });
        }
        self.num_params = self.num_params.max(other.num_params);
        self.gates.extend(other.gates.iter().cloned());
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Circuit, SimError> {
        let circuit: Circuit =
            serde_json::from_str(text).map_err(|e| SimError::Parse(e.to_string()))?;
        circuit.validate()?;
        Ok(circuit)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_counts_longest_chain() {
        let mut c = Circuit::new(3);
        assert_eq!(c.depth(), 0);
        c.push(Gate::h(0)).push(Gate::h(1)).push(Gate::cnot(0, 1)).push(Gate::x(2));
        assert_eq!(c.depth(), 2);
        c.push(Gate::cnot(1, 2));
        assert_eq!(c.depth(), 3);
    }

    #[test]
    fn bind_and_inverse() {
        let mut c = Circuit::with_params(1, 2);
        c.push(Gate::parameterized(GateKind::Ry, 0, 1)).push(Gate::h(0));
        assert!(c.inverse().is_err());
        let b = c.bind(&[0.0, 0.7]).unwrap();
        let inv = b.inverse().unwrap();
        assert_eq!(inv.gates[0].kind, GateKind::H);
        assert_eq!(inv.gates[1].angle, Some(-0.7));
        assert!(c.bind(&[1.0]).is_err());
    }

    #[test]
    fn validation_rejects_bad_gates() {
        let mut c = Circuit::new(2);
        c.push(Gate::cnot(0, 0));
        assert!(matches!(c.validate(), Err(SimError::DuplicateTarget(0))));
        let mut c = Circuit::new(2);
        c.push(Gate::x(2));
        assert!(matches!(c.validate(), Err(SimError::QubitOutOfRange { .. })));
        let mut c = Circuit::new(1);
        c.push(Gate { kind: GateKind::Rx, targets: vec![0], angle: Some(1.0), param_slot: Some(0) });
        assert!(c.validate().is_err());
        let mut c = Circuit::new(1);
        c.push(Gate { kind: GateKind::H, targets: vec![0], angle: Some(1.0), param_slot: None });
        assert!(matches!(c.validate(), Err(SimError::FixedGateWithAngle(GateKind::H))));
        let mut c = Circuit::new(1);
        c.push(Gate::parameterized(GateKind::Rz, 0, 0));
        assert!(matches!(c.validate(), Err(SimError::ParamSlotOutOfRange { .. })));
    }

    #[test]
    fn json_interchange() {
        let text = r#"{"num_qubits":2,"gates":[{"kind":"H","targets":[0]},
            {"kind":"CNOT","targets":[0,1]},{"kind":"RY","targets":[1],"param_slot":0}],
            "num_params":1}"#;
        let c = Circuit::from_json(text).unwrap();
        assert_eq!(c.gates.len(), 3);
        assert_eq!(c.gates[2].param_slot, Some(0));
        let back = Circuit::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(Circuit::from_json(r#"{"num_qubits":1,"gates":[{"kind":"FOO","targets":[0]}]}"#).is_err());
    }
}

/// A bound circuit of `gates` uniformly drawn unitary gates on distinct
/// random targets, with rotation angles uniform in `[−π, π)`. `CCNOT`
/// appears only for three or more qubits, two-qubit kinds for two or more.
pub fn random_circuit(num_qubits: usize, gates: usize, seed: u64) -> Circuit {
    use rand::seq::SliceRandom;
    use rand::Rng;

    let mut rng = super::rng_from_seed(seed);
    let kinds: Vec<GateKind> = GateKind::ALL
        .into_iter()
        .filter(|k| *k != GateKind::Measure && k.arity() <= num_qubits)
        .collect();
    let mut qubits: Vec<usize> = (0..num_qubits).collect();
    let mut c = Circuit::new(num_qubits);
    for _ in 0..gates {
        let kind = *kinds.choose(&mut rng).expect("at least one kind");
        qubits.shuffle(&mut rng);
        let targets = &qubits[..kind.arity()];
        let gate = if kind.is_rotation() {
            Gate::rotation(kind, targets[0], rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
        } else {
            Gate::fixed(kind, targets)
        };
        c.push(gate);
    }
    c
}
