use serde_json::{json, Value};

use qutil_core::algo::{
    build_hea_ansatz, classical_kernel_matrix, exact_ground_energy, quantum_kernel_matrix, run_qcbm, run_qvc,
    run_reuploading, run_varqite, run_vqe, tfim, toy, train_kernel_classifier, varqite_circuit_count,
    ClassicalKernel, FeatureMap, KernelMode, LabeledDataset, Optimizer, QcbmConfig, QvcConfig, ReuploadConfig,
    ShotMode, TargetDistribution, TrainingTrace, VarQiteConfig, VqeProblem, MAX_DENSE_QUBITS, MAX_QCBM_QUBITS,
};
use qutil_core::profile::{mirror_benchmark, profile_log, MAX_MIRROR_QUBITS};
use qutil_core::sim::{derive_seed, NoiseModel, PauliSum, MAX_QUBITS};

use crate::config::{RunConfig, SimMode};
use crate::error::{CliError, CliResult};
use crate::output::OutDir;
use crate::{plot, require, resolve, BenchArgs};

pub const APPS: [&str; 7] = ["vqe", "varqite", "qk", "qvc", "reuploading", "qcbm", "mirror"];
const DEFAULT_SHOTS: u64 = 1024;
const DEFAULT_NOISE: f64 = 0.005;

pub fn run(args: BenchArgs) -> CliResult<()> {
    let flags = RunConfig {
        app: args.app,
        qubits: args.qubits,
        layers: args.layers,
        points: args.points,
        iterations: args.iterations,
        dataset: args.dataset,
        hamiltonian: args.hamiltonian,
        mode: if args.exact { Some(SimMode::Exact) } else { args.mode },
        shots: args.shots,
        noise: args.noise,
        sizes: args.sizes,
        ..Default::default()
    };
    let (mut cfg, seed) = resolve(&args.common, flags)?;
    let app = require(cfg.app.clone(), "application id")?.to_ascii_lowercase();
    let app = if app == "re-uploading" { "reuploading".to_string() } else { app };
    if !APPS.contains(&app.as_str()) {
        return Err(CliError::config(format!("unknown application {app:?}; expected one of {}", APPS.join(", "))));
    }
    cfg.app = Some(app.clone());
    if cfg.mode.is_none() {
        cfg.mode = Some(if cfg.noise.is_some() {
            SimMode::Noisy
        } else if cfg.shots.is_some() {
            SimMode::Shots
        } else {
            SimMode::Exact
        });
    }
    if let Some(p) = cfg.noise {
        if !(0.0..=1.0).contains(&p) {
            return Err(CliError::config(format!("noise probability {p} outside [0, 1]")));
        }
    }
    if cfg.mode == Some(SimMode::Noisy) && !matches!(app.as_str(), "qvc" | "mirror") {
        return Err(CliError::config(format!("noisy mode is supported for qvc and mirror, not {app}")));
    }
    if let Some(q) = cfg.qubits {
        let limit = match app.as_str() {
            "qcbm" => MAX_QCBM_QUBITS,
            "mirror" => MAX_MIRROR_QUBITS,
            _ => MAX_QUBITS,
        };
        if q == 0 || q > limit {
            return Err(CliError::config(format!("{q} qubits outside the simulator limit 1..={limit} for {app}")));
        }
    }

    let mut out = OutDir::create(cfg.out_dir())?;
    let (result, summary) = match app.as_str() {
        "vqe" => vqe(&cfg, seed)?,
        "varqite" => varqite(&cfg, seed)?,
        "qk" => qk(&cfg, seed)?,
        "qvc" => classifier(&cfg, seed, false)?,
        "reuploading" => classifier(&cfg, seed, true)?,
        "qcbm" => qcbm(&cfg, seed)?,
        _ => mirror(&cfg, seed, &mut out)?,
    };
    out.write_json("result.json", &result)?;
    out.write_text("summary.md", &summary)?;
    let artifacts = out.finish(&format!("bench run {app}"), &cfg, &[("base".into(), seed)])?;
    print!("{summary}");
    println!("wrote {} files to {}", artifacts.len(), cfg.out_dir().display());
    Ok(())
}

fn mode(cfg: &RunConfig) -> SimMode {
    cfg.mode.unwrap_or(SimMode::Exact)
}

fn shots(cfg: &RunConfig) -> CliResult<Option<u64>> {
    match mode(cfg) {
        SimMode::Exact => Ok(None),
        _ => match cfg.shots.unwrap_or(DEFAULT_SHOTS) {
            0 => Err(CliError::config("shots must be at least 1")),
            s => Ok(Some(s)),
        },
    }
}

fn noise(cfg: &RunConfig) -> CliResult<Option<NoiseModel>> {
    match mode(cfg) {
        SimMode::Noisy => {
            let p = cfg.noise.unwrap_or(DEFAULT_NOISE);
            Ok(Some(NoiseModel::uniform(p).map_err(CliError::config)?))
        }
        _ => Ok(None),
    }
}

fn hamiltonian(cfg: &RunConfig) -> CliResult<PauliSum> {
    match &cfg.hamiltonian {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::config(format!("cannot read Hamiltonian {}: {e}", path.display())))?;
            PauliSum::parse(&text).map_err(|e| CliError::config(format!("malformed Hamiltonian {}: {e}", path.display())))
        }
        None => tfim(cfg.qubits.unwrap_or(2), 1.0).map_err(CliError::config),
    }
}

fn dataset(cfg: &RunConfig, seed: u64, circles: bool) -> CliResult<LabeledDataset> {
    match &cfg.dataset {
        Some(path) => LabeledDataset::from_csv_path(path).map_err(|e| CliError::config(format!("{}: {e}", path.display()))),
        None => {
            let n = cfg.points.unwrap_or(16);
            let s = derive_seed(seed, 1000);
            Ok(if circles { toy::circles(n, s) } else { toy::separable(n, s) })
        }
    }
}

fn optimizer(cfg: &RunConfig, exact_sweeps: usize, spsa_iterations: usize) -> Optimizer {
    match mode(cfg) {
        SimMode::Exact => Optimizer::coordinate_descent(cfg.iterations.unwrap_or(exact_sweeps)),
        _ => Optimizer::spsa(cfg.iterations.unwrap_or(spsa_iterations)),
    }
}

fn ground_energy(h: &PauliSum) -> CliResult<Option<f64>> {
    if h.num_qubits() > MAX_DENSE_QUBITS {
        return Ok(None);
    }
    Ok(Some(exact_ground_energy(h)?))
}

fn trace_json(trace: &TrainingTrace) -> CliResult<Value> {
    let profile = profile_log(&trace.resources).map_err(CliError::runtime)?;
    Ok(json!({ "trace": trace, "profile": profile }))
}

fn vqe(cfg: &RunConfig, seed: u64) -> CliResult<(Value, String)> {
    let h = hamiltonian(cfg)?;
    let layers = cfg.layers.unwrap_or(2);
    let shot_mode = match shots(cfg)? {
        None => ShotMode::Exact,
        Some(shots) => ShotMode::Shots { shots },
    };
    let problem = VqeProblem::new(h.clone(), build_hea_ansatz(h.num_qubits(), layers)?, shot_mode)?;
    let run = run_vqe(&problem, &optimizer(cfg, 100, 200), seed)?;
    let exact = ground_energy(&h)?;
    let error = exact.map(|e| (run.final_energy - e).abs());
    let mut summary = format!(
        "# VQE\n\n| quantity | value |\n|---|---|\n| qubits | {} |\n| layers | {layers} |\n| Pauli terms | {} |\n| measurement groups | {} |\n| final energy | {:.8} |\n",
        h.num_qubits(),
        h.len(),
        run.group_count,
        run.final_energy
    );
    if let (Some(e), Some(err)) = (exact, error) {
        summary += &format!("| exact ground energy | {e:.8} |\n| absolute error | {err:.3e} |\n");
    }
    summary += &format!("| circuits executed | {} |\n| converged | {} |\n", run.trace.circuits_executed, run.trace.converged);
    let result = json!({
        "app": "vqe",
        "qubits": h.num_qubits(),
        "layers": layers,
        "hamiltonian": h,
        "final_energy": run.final_energy,
        "final_standard_error": run.final_standard_error,
        "exact_ground_energy": exact,
        "abs_error": error,
        "group_count": run.group_count,
        "run": trace_json(&run.trace)?,
    });
    Ok((result, summary))
}

fn varqite(cfg: &RunConfig, seed: u64) -> CliResult<(Value, String)> {
    if shots(cfg)?.is_some() {
        return Err(CliError::config("varqite runs in exact mode only"));
    }
    let h = hamiltonian(cfg)?;
    let layers = cfg.layers.unwrap_or(2);
    let ansatz = build_hea_ansatz(h.num_qubits(), layers)?;
    let steps = cfg.iterations.unwrap_or(50);
    let trace = run_varqite(&h, &ansatz, &VarQiteConfig::new(0.05, steps), seed)?;
    let expected = varqite_circuit_count(steps, ansatz.num_params, h.len());
    let exact = ground_energy(&h)?;
    let mut summary = format!(
        "# VarQITE\n\n| quantity | value |\n|---|---|\n| qubits | {} |\n| parameters | {} |\n| steps | {steps} |\n| final energy | {:.8} |\n",
        h.num_qubits(),
        ansatz.num_params,
        trace.final_objective()
    );
    if let Some(e) = exact {
        summary += &format!("| exact ground energy | {e:.8} |\n");
    }
    summary += &format!("| circuits executed | {} (formula {expected}) |\n", trace.circuits_executed);
    let result = json!({
        "app": "varqite",
        "qubits": h.num_qubits(),
        "parameters": ansatz.num_params,
        "steps": steps,
        "dt": 0.05,
        "final_energy": trace.final_objective(),
        "exact_ground_energy": exact,
        "expected_circuits": expected,
        "run": trace_json(&trace)?,
    });
    Ok((result, summary))
}

fn qk(cfg: &RunConfig, seed: u64) -> CliResult<(Value, String)> {
    let data = dataset(cfg, seed, false)?;
    let y = data.binary_targets()?;
    let map = FeatureMap::angle(data.dim())?;
    let mode = match shots(cfg)? {
        None => KernelMode::Exact,
        Some(shots) => KernelMode::Shots { shots },
    };
    let k = quantum_kernel_matrix(&data, &map, mode, seed)?;
    let clf = train_kernel_classifier(&k.values, &y, 1e-3)?;
    let rbf = classical_kernel_matrix(data.features(), ClassicalKernel::Rbf { gamma: 0.5 });
    let baseline = train_kernel_classifier(&rbf, &y, 1e-3)?;
    let summary = format!(
        "# Quantum kernel\n\n| quantity | value |\n|---|---|\n| points | {} |\n| features | {} |\n| kernel circuits | {} |\n| training accuracy | {:.4} |\n| RBF baseline accuracy | {:.4} |\n",
        data.len(),
        data.dim(),
        k.circuits_executed,
        clf.training_accuracy,
        baseline.training_accuracy
    );
    let profile = profile_log(&k.resources).map_err(CliError::runtime)?;
    let result = json!({
        "app": "qk",
        "points": data.len(),
        "kernel": k.values,
        "circuits_executed": k.circuits_executed,
        "classifier": clf,
        "baseline_rbf": baseline,
        "profile": profile,
    });
    Ok((result, summary))
}

fn classifier(cfg: &RunConfig, seed: u64, reupload: bool) -> CliResult<(Value, String)> {
    let data = dataset(cfg, seed, reupload)?;
    let layers = cfg.layers.unwrap_or(if reupload { 3 } else { 2 });
    let (name, run) = if reupload {
        if shots(cfg)?.is_some() {
            return Err(CliError::config("reuploading runs in exact mode only"));
        }
        let rc = ReuploadConfig { layers, optimizer: optimizer(cfg, 10, 100) };
        ("reuploading", run_reuploading(&data, &rc, seed)?)
    } else {
        let mut qc = QvcConfig::new(layers, optimizer(cfg, 20, 100));
        qc.shots = shots(cfg)?;
        qc.noise = noise(cfg)?;
        ("qvc", run_qvc(&data, &qc, seed)?)
    };
    let summary = format!(
        "# {}\n\n| quantity | value |\n|---|---|\n| points | {} |\n| layers | {layers} |\n| initial accuracy | {:.4} |\n| final accuracy | {:.4} |\n| circuits executed | {} |\n",
        if reupload { "Data re-uploading classifier" } else { "Variational classifier" },
        data.len(),
        run.initial_accuracy,
        run.accuracy,
        run.trace.circuits_executed
    );
    let result = json!({
        "app": name,
        "points": data.len(),
        "layers": layers,
        "accuracy": run.accuracy,
        "initial_accuracy": run.initial_accuracy,
        "noise": noise(cfg)?,
        "run": trace_json(&run.trace)?,
    });
    Ok((result, summary))
}

fn qcbm(cfg: &RunConfig, seed: u64) -> CliResult<(Value, String)> {
    let n = cfg.qubits.unwrap_or(3);
    let layers = cfg.layers.unwrap_or(2);
    let mut probs = vec![0.0; 1 << n];
    probs[0] = 0.5;
    probs[(1 << n) - 1] = 0.5;
    let target = TargetDistribution::new(n, probs)?;
    let opt = Optimizer::spsa(cfg.iterations.unwrap_or(200));
    let run = run_qcbm(&target, &QcbmConfig::new(layers, opt, shots(cfg)?), seed)?;
    let summary = format!(
        "# Circuit Born machine\n\n| quantity | value |\n|---|---|\n| qubits | {n} |\n| layers | {layers} |\n| target | cat state |\n| final TVD | {:.6} |\n| circuits executed | {} |\n",
        run.final_tvd, run.trace.circuits_executed
    );
    let result = json!({
        "app": "qcbm",
        "qubits": n,
        "layers": layers,
        "target": target,
        "final_tvd": run.final_tvd,
        "run": trace_json(&run.trace)?,
    });
    Ok((result, summary))
}

fn mirror(cfg: &RunConfig, seed: u64, out: &mut OutDir) -> CliResult<(Value, String)> {
    let sizes = cfg.sizes.clone().unwrap_or_else(|| (2..=8).collect());
    if let Some(&bad) = sizes.iter().find(|&&n| n == 0 || n > MAX_MIRROR_QUBITS) {
        return Err(CliError::config(format!("mirror size {bad} outside 1..={MAX_MIRROR_QUBITS}")));
    }
    let layers = cfg.layers.unwrap_or(2);
    let noise = noise(cfg)?.unwrap_or_else(NoiseModel::ideal);
    let shots = cfg.shots.unwrap_or(DEFAULT_SHOTS);
    let family = |n: usize| {
        let hea = build_hea_ansatz(n, layers).expect("n ≥ 1");
        let angles: Vec<f64> = (0..hea.num_params).map(|k| 0.37 + 0.91 * k as f64).collect();
        hea.bind(&angles).expect("angles match slots")
    };
    let results = mirror_benchmark(&sizes, family, &noise, shots, seed).map_err(CliError::runtime)?;
    out.write_text("mirror_decay.svg", &plot::mirror_plot(&results)?)?;
    let mut summary = format!(
        "# Mirror benchmark\n\nnoise p1 = {}, p2 = {}, {shots} shots, {layers} HEA layers\n\n| qubits | depth | success | std. error |\n|---|---|---|---|\n",
        noise.p1, noise.p2
    );
    for r in &results {
        summary += &format!("| {} | {} | {:.4} | {:.4} |\n", r.num_qubits, r.depth, r.success_probability, r.standard_error());
    }
    Ok((json!({ "app": "mirror", "layers": layers, "results": results }), summary))
}
