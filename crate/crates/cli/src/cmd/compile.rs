use serde_json::json;

use qutil_core::compile::{compile, verify_equivalence, NativeGateSet, Topology, TopologyKind, MAX_VERIFY_QUBITS};
use qutil_core::sim::Circuit;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::OutDir;
use crate::{require, resolve, CompileArgs};

pub fn run(args: CompileArgs) -> CliResult<()> {
    let flags = RunConfig {
        circuit: args.circuit,
        topology: args.topology,
        natives: args.natives,
        device_qubits: args.device_qubits,
        ..Default::default()
    };
    let (mut cfg, seed) = resolve(&args.common, flags)?;
    let path = require(cfg.circuit.clone(), "circuit file")?;
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::config(format!("cannot read circuit {}: {e}", path.display())))?;
    let circuit = Circuit::from_json(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;

    let kind = TopologyKind::parse(cfg.topology.get_or_insert_with(|| "linear".into())).map_err(CliError::config)?;
    let natives = NativeGateSet::parse(cfg.natives.get_or_insert_with(|| "default".into())).map_err(CliError::config)?;
    let width = *cfg.device_qubits.get_or_insert(circuit.num_qubits);
    let topo = Topology::new(kind, width).map_err(CliError::config)?;

    let compiled = compile(&circuit, &natives, &topo).map_err(CliError::runtime)?;
    let bound = circuit.num_params == 0;
    let equivalent = if bound && width <= MAX_VERIFY_QUBITS {
        Some(verify_equivalence(&circuit, &compiled.circuit, &compiled.qubit_map).map_err(CliError::runtime)?)
    } else {
        None
    };
    let non_adjacent = compiled.non_adjacent_count(&topo);
    let stats = json!({
        "topology": kind.name(),
        "device_qubits": width,
        "input_depth": circuit.depth(),
        "input_gate_count": circuit.len(),
        "stats": compiled.stats,
        "swap_inserted": compiled.stats.swap_inserted,
        "non_adjacent_two_qubit_gates": non_adjacent,
        "equivalent": equivalent,
    });

    let mut out = OutDir::create(cfg.out_dir())?;
    out.write_json("compiled.json", &compiled)?;
    out.write_json("stats.json", &stats)?;
    let summary = format!(
        "# Compilation\n\n| quantity | value |\n|---|---|\n| topology | {} ({width} qubits) |\n| input depth | {} |\n| native depth | {} |\n| gates | {} |\n| two-qubit gates | {} |\n| SWAPs inserted | {} |\n| non-adjacent two-qubit gates | {non_adjacent} |\n| equivalent | {} |\n",
        kind.name(),
        circuit.depth(),
        compiled.stats.native_depth,
        compiled.stats.gate_count,
        compiled.stats.two_qubit_count,
        compiled.stats.swap_inserted,
        equivalent.map_or("not checked".to_string(), |e| e.to_string()),
    );
    out.write_text("summary.md", &summary)?;
    out.finish("compile", &cfg, &[("base".into(), seed)])?;
    print!("{summary}");
    if equivalent == Some(false) {
        return Err(CliError::runtime("compiled circuit is not equivalent to the input"));
    }
    Ok(())
}
