use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::CompileError;
use crate::sim::GateKind;

/// Gate kinds a target device executes natively.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NativeGateSet {
    one_qubit: BTreeSet<GateKind>,
    two_qubit: BTreeSet<GateKind>,
}

impl Default for NativeGateSet {
    fn default() -> Self {
        NativeGateSet {
            one_qubit: [GateKind::Rx, GateKind::Ry, GateKind::Rz].into_iter().collect(),
            two_qubit: [GateKind::Cz].into_iter().collect(),
        }
    }
}

impl NativeGateSet {
    /// Builds a gate set, rejecting anything that is not universal: two
    /// distinct rotation axes and one entangler (CZ or CNOT) are required.
    pub fn new(
        one_qubit: impl IntoIterator<Item = GateKind>,
        two_qubit: impl IntoIterator<Item = GateKind>,
    ) -> Result<Self, CompileError> {
        let set = NativeGateSet {
            one_qubit: one_qubit.into_iter().collect(),
            two_qubit: two_qubit.into_iter().collect(),
        };
        set.check()?;
        Ok(set)
    }

    fn check(&self) -> Result<(), CompileError> {
        if let Some(k) = self.one_qubit.iter().find(|k| k.arity() != 1 || **k == GateKind::Measure) {
            return Err(CompileError::NonUniversal(format!("{k} is not a 1-qubit gate")));
        }
        if let Some(k) = self
            .two_qubit
            .iter()
            .find(|k| !matches!(k, GateKind::Cz | GateKind::Cnot | GateKind::Swap))
        {
            return Err(CompileError::NonUniversal(format!("{k} is not a supported 2-qubit gate")));
        }
        let axes = self.one_qubit.iter().filter(|k| k.is_rotation()).count();
        if axes < 2 {
            return Err(CompileError::NonUniversal(
                "need parameterized rotations about two distinct axes".into(),
            ));
        }
        if !self.two_qubit.contains(&GateKind::Cz) && !self.two_qubit.contains(&GateKind::Cnot) {
            return Err(CompileError::NonUniversal("need CZ or CNOT as entangler".into()));
        }
        Ok(())
    }

    /// Parses `default` or `KIND,KIND+KIND`, e.g. `RZ,RX+CNOT`.
    pub fn parse(spec: &str) -> Result<Self, CompileError> {
        let spec = spec.trim();
        if spec.eq_ignore_ascii_case("default") {
            return Ok(Self::default());
        }
        let (one, two) = spec
            .split_once('+')
            .ok_or_else(|| CompileError::NonUniversal(format!("expected ONE+TWO, got {spec:?}")))?;
        let kinds = |s: &str| -> Result<Vec<GateKind>, CompileError> {
            s.split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    GateKind::from_name(t)
                        .ok_or_else(|| CompileError::UnknownGateKind(t.trim().to_string()))
                })
                .collect()
        };
        Self::new(kinds(one)?, kinds(two)?)
    }

    pub fn contains(&self, kind: GateKind) -> bool {
        self.one_qubit.contains(&kind) || self.two_qubit.contains(&kind)
    }

    pub fn one_qubit(&self) -> &BTreeSet<GateKind> {
        &self.one_qubit
    }

    pub fn two_qubit(&self) -> &BTreeSet<GateKind> {
        &self.two_qubit
    }
}
