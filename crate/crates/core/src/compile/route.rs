use serde::{Deserialize, Serialize};

use super::decompose::decompose_to_native;
use super::gateset::NativeGateSet;
use super::topology::Topology;
use super::CompileError;
use crate::sim::{Circuit, Gate, GateKind};

/// A SWAP inserted by the router, in physical qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapRecord {
    /// Index of the gate in the routed circuit.
    pub gate_index: usize,
    pub physical: (usize, usize),
}

/// Logical-to-physical placement before and after routing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitMap {
    /// `initial[l]` is the physical qubit holding logical qubit `l` at the start.
    pub initial: Vec<usize>,
    /// `final_layout[l]` is where logical qubit `l` is measured.
    pub final_layout: Vec<usize>,
    pub swaps: Vec<SwapRecord>,
}

impl QubitMap {
    pub fn identity(n: usize) -> Self {
        QubitMap { initial: (0..n).collect(), final_layout: (0..n).collect(), swaps: Vec::new() }
    }

    /// Reorders a physical bitstring (MSB first) into logical order.
    pub fn logical_bitstring(&self, physical: &str) -> String {
        let m = physical.len();
        let bits = physical.as_bytes();
        (0..self.final_layout.len())
            .rev()
            .map(|l| bits[m - 1 - self.final_layout[l]] as char)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CompileStats {
    pub native_depth: usize,
    pub two_qubit_count: usize,
    pub swap_inserted: usize,
    pub gate_count: usize,
}

impl CompileStats {
    pub fn of(circuit: &Circuit, swap_inserted: usize) -> Self {
        CompileStats {
            native_depth: circuit.depth(),
            two_qubit_count: circuit.multi_qubit_count(),
            swap_inserted,
            gate_count: circuit.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompiledCircuit {
    pub circuit: Circuit,
    pub qubit_map: QubitMap,
    pub stats: CompileStats,
}

impl CompiledCircuit {
    /// Number of multi-qubit gates acting on non-adjacent physical qubits.
    pub fn non_adjacent_count(&self, topo: &Topology) -> usize {
        count_non_adjacent(&self.circuit, topo)
    }
}

pub fn count_non_adjacent(circuit: &Circuit, topo: &Topology) -> usize {
    circuit
        .gates
        .iter()
        .filter(|g| g.targets.len() >= 2)
        .filter(|g| {
            g.targets.iter().enumerate().any(|(i, &a)| {
                g.targets[i + 1..].iter().any(|&b| !topo.adjacent(a, b))
            })
        })
        .count()
}

/// Greedy router: before each non-adjacent 2-qubit gate, the lower-indexed
/// logical qubit is swapped along a shortest path until it neighbours its
/// partner. The original order is not restored; `qubit_map` records it.
pub fn route_to_topology(circuit: &Circuit, topo: &Topology) -> Result<CompiledCircuit, CompileError> {
    circuit.validate()?;
    if circuit.num_qubits > topo.num_qubits {
        return Err(CompileError::TooManyQubits { logical: circuit.num_qubits, physical: topo.num_qubits });
    }
    let n = circuit.num_qubits;
    let mut l2p: Vec<usize> = (0..n).collect();
    // Physical slot -> logical qubit (None for unused physical qubits).
    let mut p2l: Vec<Option<usize>> = (0..topo.num_qubits).map(|p| (p < n).then_some(p)).collect();
    let mut out = Circuit::with_params(topo.num_qubits, circuit.num_params);
    let mut swaps = Vec::new();

    for gate in &circuit.gates {
        match gate.targets.len() {
            1 => {
                if gate.kind == GateKind::Measure {
                    return Err(CompileError::ClassicalControl);
                }
            }
            2 => {
                let (a, b) = (gate.targets[0], gate.targets[1]);
                if !topo.adjacent(l2p[a], l2p[b]) {
                    let (mover, anchor) = (a.min(b), a.max(b));
                    let path = topo
                        .shortest_path(l2p[mover], l2p[anchor])
                        .ok_or(CompileError::Unroutable(l2p[mover], l2p[anchor]))?;
                    for w in path[..path.len() - 1].windows(2) {
                        let (p, q) = (w[0], w[1]);
                        swaps.push(SwapRecord { gate_index: out.gates.len(), physical: (p, q) });
                        out.gates.push(Gate::swap(p, q));
                        p2l.swap(p, q);
                        for (phys, l) in p2l.iter().enumerate() {
                            if let Some(l) = *l {
                                l2p[l] = phys;
                            }
                        }
                    }
                }
            }
            _ => return Err(CompileError::MultiQubitUnrouted(gate.kind)),
        }
        let mut mapped = gate.clone();
        mapped.targets = gate.targets.iter().map(|&l| l2p[l]).collect();
        out.gates.push(mapped);
    }
    let swap_inserted = swaps.len();
    Ok(CompiledCircuit {
        stats: CompileStats::of(&out, swap_inserted),
        qubit_map: QubitMap { initial: (0..n).collect(), final_layout: l2p, swaps },
        circuit: out,
    })
}

/// Lower, route, then lower the inserted SWAPs.
pub fn compile(
    circuit: &Circuit,
    natives: &NativeGateSet,
    topo: &Topology,
) -> Result<CompiledCircuit, CompileError> {
    let lowered = decompose_to_native(circuit, natives)?;
    let routed = route_to_topology(&lowered, topo)?;
    let circuit = decompose_to_native(&routed.circuit, natives)?;
    Ok(CompiledCircuit {
        stats: CompileStats::of(&circuit, routed.stats.swap_inserted),
        qubit_map: routed.qubit_map,
        circuit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compile::verify_equivalence;

    fn single(gate: Gate, n: usize) -> Circuit {
        let mut c = Circuit::new(n);
        c.push(gate);
        c
    }

    #[test]
    fn all_to_all_needs_no_swaps() {
        let mut c = Circuit::new(4);
        c.push(Gate::cz(0, 3)).push(Gate::cnot(2, 0)).push(Gate::cz(1, 3));
        let r = route_to_topology(&c, &Topology::all_to_all(4)).unwrap();
        assert_eq!(r.stats.swap_inserted, 0);
        assert_eq!(r.circuit, c);
    }

    #[test]
    fn linear_distance_two_needs_one_swap() {
        let c = single(Gate::cz(0, 2), 3);
        let r = route_to_topology(&c, &Topology::linear(3)).unwrap();
        assert_eq!(r.stats.swap_inserted, 1);
        assert_eq!(r.non_adjacent_count(&Topology::linear(3)), 0);
        assert_eq!(r.qubit_map.final_layout, vec![1, 0, 2]);
        assert!(verify_equivalence(&c, &r.circuit, &r.qubit_map).unwrap());
    }

    #[test]
    fn circular_wraps_around() {
        let c = single(Gate::cz(0, 2), 3);
        let r = route_to_topology(&c, &Topology::circular(3)).unwrap();
        assert_eq!(r.stats.swap_inserted, 0);
    }

    #[test]
    fn errors() {
        let c = single(Gate::cz(0, 2), 3);
        assert!(matches!(
            route_to_topology(&c, &Topology::linear(2)),
            Err(CompileError::TooManyQubits { .. })
        ));
        let c = single(Gate::ccnot(0, 1, 2), 3);
        assert!(matches!(
            route_to_topology(&c, &Topology::linear(3)),
            Err(CompileError::MultiQubitUnrouted(GateKind::Ccnot))
        ));
    }

    #[test]
    fn compile_bell_on_linear_two() {
        let mut bell = Circuit::new(2);
        bell.push(Gate::h(0)).push(Gate::cnot(0, 1));
        let natives = NativeGateSet::default();
        let out = compile(&bell, &natives, &Topology::linear(2)).unwrap();
        assert_eq!(out.stats.swap_inserted, 0);
        assert_eq!(out.stats.two_qubit_count, 1);
        assert!(out.circuit.gates.iter().all(|g| natives.contains(g.kind)));
        assert!(verify_equivalence(&bell, &out.circuit, &out.qubit_map).unwrap());
    }

    #[test]
    fn ghz_on_grid() {
        let mut ghz = Circuit::new(4);
        ghz.push(Gate::h(0));
        for q in 0..3 {
            ghz.push(Gate::cnot(q, q + 1));
        }
        let topo = Topology::grid(4);
        let out = compile(&ghz, &NativeGateSet::default(), &topo).unwrap();
        assert_eq!(out.non_adjacent_count(&topo), 0);
        assert!(verify_equivalence(&ghz, &out.circuit, &out.qubit_map).unwrap());
    }

    #[test]
    fn routed_circuit_on_larger_device() {
        let mut c = Circuit::new(3);
        c.push(Gate::h(0)).push(Gate::cnot(0, 2)).push(Gate::ry(1, 0.4)).push(Gate::cz(1, 2));
        let topo = Topology::linear(5);
        let out = compile(&c, &NativeGateSet::default(), &topo).unwrap();
        assert_eq!(out.circuit.num_qubits, 5);
        assert_eq!(out.non_adjacent_count(&topo), 0);
        assert!(verify_equivalence(&c, &out.circuit, &out.qubit_map).unwrap());
    }

    #[test]
    fn logical_bitstring_undoes_layout() {
        let map = QubitMap { initial: vec![0, 1, 2], final_layout: vec![1, 0, 2], swaps: vec![] };
        // physical qubit 1 carries logical 0
        assert_eq!(map.logical_bitstring("010"), "001");
    }
}
