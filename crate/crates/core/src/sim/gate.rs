use serde::{Deserialize, Serialize};

use super::SimError;

/// Gate alphabet understood by the simulator and the compiler.
///
/// `Measure` marks a mid-circuit measurement (classical control). It is
/// part of the interchange format so such circuits can be described, but
/// neither the simulator nor the compiler executes it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GateKind {
    Rx,
    Ry,
    Rz,
    X,
    Y,
    Z,
    H,
    Cz,
    Cnot,
    Swap,
    Ccnot,
    Measure,
}

impl GateKind {
    pub const ALL: [GateKind; 12] = [
        GateKind::Rx,
        GateKind::Ry,
        GateKind::Rz,
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::H,
        GateKind::Cz,
        GateKind::Cnot,
        GateKind::Swap,
        GateKind::Ccnot,
        GateKind::Measure,
    ];

    /// Number of qubits the gate acts on.
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cz | GateKind::Cnot | GateKind::Swap => 2,
            GateKind::Ccnot => 3,
            _ => 1,
        }
    }

    pub fn is_rotation(self) -> bool {
        matches!(self, GateKind::Rx | GateKind::Ry | GateKind::Rz)
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Rx => "RX",
            GateKind::Ry => "RY",
            GateKind::Rz => "RZ",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::H => "H",
            GateKind::Cz => "CZ",
            GateKind::Cnot => "CNOT",
            GateKind::Swap => "SWAP",
            GateKind::Ccnot => "CCNOT",
            GateKind::Measure => "MEASURE",
        }
    }

    pub fn from_name(name: &str) -> Option<GateKind> {
        let upper = name.trim().to_ascii_uppercase();
        GateKind::ALL.iter().copied().find(|k| k.name() == upper)
    }
}

impl std::fmt::Display for GateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A single gate. Multi-qubit gates list controls first and the target last
/// (`CNOT [c, t]`, `CCNOT [c0, c1, t]`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param_slot: Option<usize>,
}

impl Gate {
    pub fn fixed(kind: GateKind, targets: &[usize]) -> Self {
        Gate { kind, targets: targets.to_vec(), angle: None, param_slot: None }
    }

    pub fn rotation(kind: GateKind, qubit: usize, angle: f64) -> Self {
        Gate { kind, targets: vec![qubit], angle: Some(angle), param_slot: None }
    }

    pub fn parameterized(kind: GateKind, qubit: usize, slot: usize) -> Self {
        Gate { kind, targets: vec![qubit], angle: None, param_slot: Some(slot) }
    }

    pub fn rx(q: usize, angle: f64) -> Self {
        Self::rotation(GateKind::Rx, q, angle)
    }
    pub fn ry(q: usize, angle: f64) -> Self {
        Self::rotation(GateKind::Ry, q, angle)
    }
    pub fn rz(q: usize, angle: f64) -> Self {
        Self::rotation(GateKind::Rz, q, angle)
    }
    pub fn x(q: usize) -> Self {
        Self::fixed(GateKind::X, &[q])
    }
    pub fn y(q: usize) -> Self {
        Self::fixed(GateKind::Y, &[q])
    }
    pub fn z(q: usize) -> Self {
        Self::fixed(GateKind::Z, &[q])
    }
    pub fn h(q: usize) -> Self {
        Self::fixed(GateKind::H, &[q])
    }
    pub fn cz(a: usize, b: usize) -> Self {
        Self::fixed(GateKind::Cz, &[a, b])
    }
    pub fn cnot(control: usize, target: usize) -> Self {
        Self::fixed(GateKind::Cnot, &[control, target])
    }
    pub fn swap(a: usize, b: usize) -> Self {
        Self::fixed(GateKind::Swap, &[a, b])
    }
    pub fn ccnot(c0: usize, c1: usize, target: usize) -> Self {
        Self::fixed(GateKind::Ccnot, &[c0, c1, target])
    }

    /// Checks structural well-formedness against a register size and a
    /// parameter count.
    pub fn validate(&self, num_qubits: usize, num_params: usize) -> Result<(), SimError> {
        if self.targets.len() != self.kind.arity() {
            return Err(SimError::Arity {
                kind: self.kind,
                expected: self.kind.arity(),
                got: self.targets.len(),
            });
        }
        for (i, &t) in self.targets.iter().enumerate() {
            if t >= num_qubits {
                return Err(SimError::QubitOutOfRange { qubit: t, num_qubits });
            }
            if self.targets[..i].contains(&t) {
                return Err(SimError::DuplicateTarget(t));
            }
        }
        if self.kind.is_rotation() {
            match (self.angle, self.param_slot) {
                (Some(a), None) if a.is_finite() => {}
                (None, Some(slot)) if slot < num_params => {}
                (None, Some(slot)) => {
                    return Err(SimError::ParamSlotOutOfRange { slot, num_params })
                }
                _ => return Err(SimError::RotationBinding(self.kind)),
            }
        } else if self.angle.is_some() || self.param_slot.is_some() {
            return Err(SimError::FixedGateWithAngle(self.kind));
        }
        Ok(())
    }
}
