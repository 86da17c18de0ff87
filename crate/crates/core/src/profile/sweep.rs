use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{fit_scaling, profile_log, verify_table_row, MeasuredColumn, ProfileError, RowReport, TableColumn};
use crate::algo::{
    build_hea_ansatz, compiled_depth, quantum_kernel_matrix, run_qcbm, run_qvc, run_reuploading, run_varqite,
    run_vqe, shots_to_resolve, tfim, toy, AlgoError, FeatureMap, FeatureMapKind, KernelMode, Optimizer, QcbmConfig,
    QvcConfig, ReuploadConfig, ShotMode, TargetDistribution, TrainingTrace, VarQiteConfig, VqeProblem,
};
use crate::sim::{derive_seed, run_statevector, Circuit, Gate, GateKind};

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("application {app:?} has no sweep over {variable:?} (supported: {supported})")]
    UnsupportedVariable { app: String, variable: String, supported: String },
    #[error("sweep needs at least one size")]
    NoSizes,
    #[error(transparent)]
    Algo(#[from] AlgoError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

/// Swept variables per application; the first is the default.
pub fn sweep_variables(app: &str) -> Option<&'static [&'static str]> {
    Some(match app.to_ascii_lowercase().as_str() {
        "vqe" => &["N"],
        "varqite" => &["q", "t"],
        "qk" => &["|T|", "N"],
        "qvc" => &["|T|", "N"],
        "reuploading" | "re-uploading" => &["|T|", "L"],
        "qcbm" => &["N"],
        _ => return None,
    })
}

/// Sizes used when none are given.
pub fn default_sizes(app: &str, variable: &str) -> Vec<usize> {
    match (app, variable) {
        ("vqe", _) => vec![2, 3, 4, 5, 6],
        ("varqite", "q") => vec![2, 4, 8, 16],
        ("varqite", _) => vec![1, 2, 3, 4, 5],
        ("qk" | "qvc", "N") => vec![2, 3, 4, 5, 6],
        ("qcbm", _) => vec![2, 3, 4, 5],
        (_, "L") => vec![1, 2, 3, 4, 5],
        _ => vec![4, 8, 12, 16, 20],
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub app: String,
    /// Legend symbol to sweep; the application's default when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variable: Option<String>,
    /// Values of the swept variable. For `q` these are ansatz layers and the
    /// samples are recorded at the resulting parameter count.
    #[serde(default)]
    pub sizes: Vec<usize>,
    #[serde(default)]
    pub seed: u64,
    /// Optimizer iterations for trained applications.
    #[serde(default = "default_iterations")]
    pub iterations: usize,
    /// Shots per circuit where the application samples.
    #[serde(default = "default_shots")]
    pub shots: u64,
    /// Target precision for estimator and kernel shot budgets.
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    /// TVD tolerance for the Born-machine shot budget.
    #[serde(default = "default_tvd")]
    pub tvd_tolerance: f64,
    /// Sampling repetitions averaged per candidate shot count.
    #[serde(default = "default_reps")]
    pub reps: u64,
}

fn default_iterations() -> usize {
    2
}

fn default_shots() -> u64 {
    256
}

fn default_epsilon() -> f64 {
    0.1
}

fn default_tvd() -> f64 {
    0.05
}

fn default_reps() -> u64 {
    64
}

impl SweepConfig {
    pub fn new(app: &str) -> Self {
        SweepConfig {
            app: app.to_string(),
            variable: None,
            sizes: Vec::new(),
            seed: 0,
            iterations: default_iterations(),
            shots: default_shots(),
            epsilon: default_epsilon(),
            tvd_tolerance: default_tvd(),
            reps: default_reps(),
        }
    }
}

/// Measured counts at one size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub size: usize,
    /// Value of the swept variable (differs from `size` only for `q`).
    pub value: f64,
    pub circuits: u64,
    pub depth: u64,
    /// Shots per circuit, when the run samples.
    pub shots: Option<f64>,
    pub wall_runtime_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub app: String,
    pub variable: String,
    pub sizes: Vec<usize>,
    pub seed: u64,
    pub points: Vec<SweepPoint>,
    pub fits: Vec<MeasuredColumn>,
    pub row: RowReport,
}

fn counts_from(trace: &TrainingTrace) -> Result<(u64, u64, Option<f64>, f64), SweepError> {
    let p = profile_log(&trace.resources)?;
    let shots = (p.total_shots > 0).then(|| p.total_shots as f64 / p.circuits_executed as f64);
    Ok((p.circuits_executed, p.max_native_depth, shots, p.wall_runtime_seconds))
}

fn uniform_state_circuit(n: usize) -> Circuit {
    let mut c = Circuit::new(n);
    for q in 0..n {
        c.push(Gate::rotation(GateKind::Ry, q, std::f64::consts::FRAC_PI_2));
    }
    c
}

/// Shots for a relative precision `eps` on the mean off-diagonal kernel
/// value `k`: `(1 − k)/(k·eps²)`.
fn kernel_shots(values: &[Vec<f64>], eps: f64) -> f64 {
    let n = values.len();
    let mut sum = 0.0;
    for (i, row) in values.iter().enumerate() {
        for v in &row[i + 1..] {
            sum += v;
        }
    }
    let k = sum / (n * (n - 1) / 2) as f64;
    ((1.0 - k) / (k * eps * eps)).ceil()
}

fn measure(cfg: &SweepConfig, variable: &str, size: usize) -> Result<SweepPoint, SweepError> {
    let seed = derive_seed(cfg.seed, size as u64);
    let spsa = Optimizer::spsa(cfg.iterations);
    let start = std::time::Instant::now();
    let point = |value: f64, (circuits, depth, shots, _): (u64, u64, Option<f64>, f64)| SweepPoint {
        size,
        value,
        circuits,
        depth,
        shots,
        wall_runtime_seconds: start.elapsed().as_secs_f64(),
    };
    let n = size as f64;
    Ok(match (cfg.app.as_str(), variable) {
        ("vqe", _) => {
            let problem = VqeProblem::new(
                tfim(size, 1.0)?,
                build_hea_ansatz(size, 1)?,
                ShotMode::Precision { epsilon: cfg.epsilon },
            )?;
            let run = run_vqe(&problem, &spsa, seed)?;
            point(n, counts_from(&run.trace)?)
        }
        ("varqite", "q") => {
            let ansatz = build_hea_ansatz(1, size)?;
            let trace = run_varqite(&tfim(1, 1.0)?, &ansatz, &VarQiteConfig::new(0.05, 2), seed)?;
            point(ansatz.num_params as f64, counts_from(&trace)?)
        }
        ("varqite", _) => {
            let trace = run_varqite(&tfim(2, 1.0)?, &build_hea_ansatz(2, 1)?, &VarQiteConfig::new(0.05, size), seed)?;
            point(n, counts_from(&trace)?)
        }
        ("qk", "N") => {
            let data = toy::uniform(8, size, seed);
            let map = FeatureMap::new(FeatureMapKind::Layered { layers: 1 }, size)?;
            let km = quantum_kernel_matrix(&data, &map, KernelMode::Exact, seed)?;
            let p = profile_log(&km.resources)?;
            point(n, (p.circuits_executed, p.max_native_depth, Some(kernel_shots(&km.values, cfg.epsilon)), 0.0))
        }
        ("qk", _) => {
            let data = toy::uniform(size, 2, seed);
            let map = FeatureMap::new(FeatureMapKind::Layered { layers: 1 }, 2)?;
            let km = quantum_kernel_matrix(&data, &map, KernelMode::Shots { shots: cfg.shots }, seed)?;
            let p = profile_log(&km.resources)?;
            point(n, (p.circuits_executed, p.max_native_depth, Some(cfg.shots as f64), 0.0))
        }
        ("qvc", var) => {
            let (points, dim) = if var == "N" { (8, size) } else { (size, 2) };
            let data = toy::uniform(points, dim, seed);
            let mut qc = QvcConfig::new(1, spsa);
            qc.shots = Some(cfg.shots);
            let run = run_qvc(&data, &qc, seed)?;
            point(n, counts_from(&run.trace)?)
        }
        ("reuploading" | "re-uploading", var) => {
            let (points, layers) = if var == "L" { (8, size) } else { (size, 1) };
            let data = toy::circles(points, seed);
            let run = run_reuploading(&data, &ReuploadConfig { layers, optimizer: spsa }, seed)?;
            point(n, counts_from(&run.trace)?)
        }
        ("qcbm", _) => {
            let target = TargetDistribution::uniform(size)?;
            let run = run_qcbm(&target, &QcbmConfig::new(1, spsa, Some(cfg.shots)), seed)?;
            let (circuits, depth, _, rt) = counts_from(&run.trace)?;
            let state = run_statevector(&uniform_state_circuit(size), &[]).map_err(AlgoError::from)?;
            let shots = shots_to_resolve(&state, &target, cfg.tvd_tolerance, cfg.reps, seed)?;
            point(n, (circuits, depth, Some(shots as f64), rt))
        }
        _ => unreachable!("variables validated before measuring"),
    })
}

/// Runs the application over `sizes`, fits every measured column and
/// compares the fits against the survey row.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult, SweepError> {
    let app = cfg.app.to_ascii_lowercase();
    let app = if app == "re-uploading" { "reuploading".to_string() } else { app };
    let vars = sweep_variables(&app).ok_or_else(|| ProfileError::UnknownApp(cfg.app.clone()))?;
    let variable = cfg.variable.clone().unwrap_or_else(|| vars[0].to_string());
    if !vars.contains(&variable.as_str()) {
        return Err(SweepError::UnsupportedVariable { app, variable, supported: vars.join(", ") });
    }
    let sizes = if cfg.sizes.is_empty() { default_sizes(&app, &variable) } else { cfg.sizes.clone() };
    if sizes.is_empty() {
        return Err(SweepError::NoSizes);
    }
    let cfg = SweepConfig { app: app.clone(), ..cfg.clone() };
    let points = sizes
        .par_iter()
        .map(|&s| measure(&cfg, &variable, s))
        .collect::<Result<Vec<_>, _>>()?;

    let mut fits = Vec::new();
    for column in TableColumn::ALL {
        let samples: Option<Vec<(f64, f64)>> = points
            .iter()
            .map(|p| {
                let y = match column {
                    TableColumn::Circuits => Some(p.circuits as f64),
                    TableColumn::Depth => Some(p.depth as f64),
                    TableColumn::Shots => p.shots,
                };
                y.map(|y| (p.value, y))
            })
            .collect();
        if let Some(samples) = samples {
            fits.push(MeasuredColumn::new(column, fit_scaling(&variable, &samples)?));
        }
    }
    let row = verify_table_row(&app, &fits)?;
    Ok(SweepResult { app, variable, sizes, seed: cfg.seed, points, fits, row })
}

/// Compiled depth of the hardware-efficient ansatz for each qubit count.
pub fn hea_depth_series(qubits: &[usize], layers: usize) -> Result<Vec<(f64, f64)>, SweepError> {
    qubits
        .iter()
        .map(|&n| Ok((n as f64, compiled_depth(&build_hea_ansatz(n, layers)?)? as f64)))
        .collect()
}
