use proptest::prelude::*;
use qutil_core::compile::{compile, verify_equivalence, NativeGateSet, Topology, TopologyKind};
use qutil_core::sim::random_circuit;

fn gate_sets() -> [NativeGateSet; 3] {
    [
        NativeGateSet::default(),
        NativeGateSet::parse("RZ,RX+CNOT").unwrap(),
        NativeGateSet::parse("RY,RZ+CZ,CNOT").unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compiled_circuits_are_equivalent_and_adjacent(n in 1usize..=8, gates in 0usize..=30, seed in any::<u64>()) {
        let circ = random_circuit(n, gates, seed);
        for kind in TopologyKind::ALL {
            let topo = Topology::new(kind, n).unwrap();
            for natives in gate_sets() {
                let out = compile(&circ, &natives, &topo).unwrap();
                prop_assert_eq!(out.non_adjacent_count(&topo), 0);
                prop_assert!(out.circuit.gates.iter().all(|g| natives.contains(g.kind)));
                prop_assert!(verify_equivalence(&circ, &out.circuit, &out.qubit_map).unwrap(), "{:?} {}", kind, seed);
            }
        }
    }
}

#[test]
fn linear_topology_costs_at_least_all_to_all() {
    let natives = NativeGateSet::default();
    for n in [4usize, 6, 8] {
        let (mut lin, mut full) = (0usize, 0usize);
        for seed in 0..40 {
            let circ = random_circuit(n, 25, seed);
            lin += compile(&circ, &natives, &Topology::linear(n)).unwrap().stats.native_depth;
            full += compile(&circ, &natives, &Topology::all_to_all(n)).unwrap().stats.native_depth;
        }
        assert!(lin >= full, "n={n}: linear {lin} < all-to-all {full}");
    }
}

#[test]
fn all_to_all_inserts_no_swaps() {
    for seed in 0..20 {
        let circ = random_circuit(5, 20, seed);
        let out = compile(&circ, &NativeGateSet::default(), &Topology::all_to_all(5)).unwrap();
        assert_eq!(out.stats.swap_inserted, 0);
    }
}
