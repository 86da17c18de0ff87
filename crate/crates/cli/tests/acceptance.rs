//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use serde_json::Value;

use qutil_core::algo::{
    build_hea_ansatz, exact_ground_energy, quantum_kernel_matrix, run_varqite, run_vqe, shots_to_resolve, tfim, toy,
    varqite_circuit_count, FeatureMap, KernelMode, Optimizer, ShotMode, TargetDistribution,
    VarQiteConfig, VqeProblem,
};
use qutil_core::arl::builtin_survey;
use qutil_core::compile::{compile, verify_equivalence, NativeGateSet, Topology, TopologyKind};
use qutil_core::profile::{
    fit_scaling, hea_depth_series, mirror_benchmark, verify_table_row, CellStatus, MeasuredColumn, ScalingClass,
    TableColumn,
};
use qutil_core::sim::{
    random_circuit, rng_from_seed, run_statevector, sample_counts, z_expectation_from_counts, Circuit, Gate, GateKind,
    NoiseModel, PauliSum,
};
use qutil_core::swapc::{score1, score2, utility_verdict, DeviceSpec, RunOutcome, Verdict};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn qutil(args: &[&str], dir: &Path) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_qutil"))
        .args(args)
        .current_dir(dir)
        .env_remove("QUTIL_SEED")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    Ok(String::from_utf8_lossy(&out.stdout).into_owned())
}

fn survey_reproduction() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let stdout = qutil(&["survey", "-o", "out"], dir.path())?;
    let csv = fs::read_to_string(dir.path().join("out/survey.csv")).map_err(|e| e.to_string())?;
    let golden = include_str!("../../core/tests/golden/survey.csv");
    check(csv == golden, || "survey.csv differs from the transcribed table".into())?;
    check(stdout == golden, || "stdout differs from the transcribed table".into())?;
    let survey = builtin_survey();
    check(survey.len() == 11, || format!("{} rows", survey.len()))?;
    for a in &survey {
        let want = if a.id == "vqe" { "3" } else { "2" };
        check(a.level.short() == want, || format!("{} at ARL {}", a.name, a.level))?;
    }
    Ok("11 rows, all cells equal".into())
}

fn score_formulas() -> Outcome {
    check(score1(1000.0, 10.0, 50.0) == Ok(2.0), || "score1(1000,10,50) != 2".into())?;
    check(score2(1000.0, 2.0, 10.0, 50.0) == Ok(1.0), || "score2(1000,2,10,50) != 1".into())?;
    let mut rng = rng_from_seed(2);
    for _ in 0..1000 {
        let (p, v, t, w) = (
            rng.gen_range(1e-3..1e3),
            rng.gen_range(1e-3..1e3),
            rng.gen_range(1e-3..1e3),
            rng.gen_range(1e-3..1e3),
        );
        let k: f64 = rng.gen_range(0.1..10.0);
        let s1 = score1(p, t, w).unwrap();
        let s2 = score2(p, v, t, w).unwrap();
        let close = |a: f64, b: f64| (a / b - 1.0).abs() < 1e-12;
        check(close(score1(k * p, t, w).unwrap(), k * s1), || "score1 not degree 1 in performance".into())?;
        check(close(score1(p, k * t, k * w).unwrap(), s1 / (k * k)), || "score1 not degree −2".into())?;
        check(close(score2(p, k * v, k * t, k * w).unwrap(), s2 / k.powi(3)), || "score2 not degree −3".into())?;
        check(close(score2(p, 1.0, t, w).unwrap(), s1), || "score2 with unit volume != score1".into())?;
    }
    Ok("exact examples, 1000 homogeneity tuples".into())
}

fn random_hamiltonian(n: usize, seed: u64) -> PauliSum {
    let mut rng = rng_from_seed(seed);
    let words: Vec<(f64, String)> = (0..2 * n + 2)
        .map(|_| (rng.gen_range(-1.0..1.0), (0..n).map(|_| ['I', 'X', 'Y', 'Z'][rng.gen_range(0..4)]).collect()))
        .collect();
    PauliSum::new(n, words).unwrap()
}

fn vqe_correctness() -> Outcome {
    let problem = VqeProblem::new(tfim(2, 1.0).unwrap(), build_hea_ansatz(2, 2).unwrap(), ShotMode::Exact).unwrap();
    let run = run_vqe(&problem, &Optimizer::default(), 1).map_err(|e| e.to_string())?;
    let target = -(5f64.sqrt());
    let err = (run.final_energy - target).abs();
    check(err < 1e-3, || format!("TFIM2 energy {} vs {target}", run.final_energy))?;
    let worst = (0..50u64)
        .into_par_iter()
        .map(|seed| {
            let n = 2 + (seed as usize % 5);
            let h = random_hamiltonian(n, seed);
            let e0 = exact_ground_energy(&h).unwrap();
            let p = VqeProblem::new(h, build_hea_ansatz(n, 2).unwrap(), ShotMode::Exact).unwrap();
            let run = run_vqe(&p, &Optimizer::coordinate_descent(3), seed).unwrap();
            run.trace.entries.iter().map(|e| e.objective - e0).fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min);
    check(worst >= -1e-9, || format!("variational bound violated by {}", -worst))?;
    Ok(format!("TFIM2 error {err:.1e}; min E − E0 over 50 seeds {worst:.2e}"))
}

fn varqite_checks() -> Outcome {
    let mut ansatz = Circuit::with_params(1, 1);
    ansatz.push(Gate::parameterized(GateKind::Ry, 0, 0));
    let z = PauliSum::new(1, [(1.0, "Z")]).unwrap();
    let cfg = VarQiteConfig::new(0.1, 100).with_initial(vec![std::f64::consts::FRAC_PI_2]);
    let trace = run_varqite(&z, &ansatz, &cfg, 0).map_err(|e| e.to_string())?;
    let e = trace.final_objective();
    check((e + 1.0).abs() < 1e-3, || format!("H=Z flow ends at {e}"))?;
    check(trace.circuits_executed == varqite_circuit_count(100, 1, 1), || "1-qubit circuit count".into())?;

    let h = tfim(2, 1.0).unwrap();
    let hea = build_hea_ansatz(2, 2).unwrap();
    let trace = run_varqite(&h, &hea, &VarQiteConfig::new(0.05, 60), 4).map_err(|e| e.to_string())?;
    let rise = trace.entries.windows(2).map(|w| w[1].objective - w[0].objective).fold(f64::MIN, f64::max);
    check(rise <= 1e-9, || format!("energy rose by {rise}"))?;
    let (t, q, p) = (60u64, hea.num_params as u64, h.len() as u64);
    let formula = t * (q * (q + 1) / 2 + q * p);
    check(trace.circuits_executed == formula, || format!("{} circuits vs {formula}", trace.circuits_executed))?;
    Ok(format!("H=Z final {e:.6}; max step change {rise:.1e}; {formula} circuits"))
}

fn compiler_soundness() -> Outcome {
    let natives = NativeGateSet::default();
    let failures: Vec<String> = (0..200u64)
        .into_par_iter()
        .flat_map_iter(|seed| {
            let mut rng = rng_from_seed(10_000 + seed);
            let n = rng.gen_range(1..=6);
            let gates = rng.gen_range(1..=20);
            let c = random_circuit(n, gates, seed);
            let natives = natives.clone();
            TopologyKind::ALL.into_iter().filter_map(move |kind| {
                let topo = Topology::new(kind, n).unwrap();
                let out = compile(&c, &natives, &topo).ok()?;
                let eq = verify_equivalence(&c, &out.circuit, &out.qubit_map).unwrap_or(false);
                let bad = out.non_adjacent_count(&topo);
                (!eq || bad > 0).then(|| format!("seed {seed} {}: eq={eq} non-adjacent={bad}", kind.name()))
            })
        })
        .collect();
    check(failures.is_empty(), || failures.join("; "))?;
    Ok("200 circuits × 4 topologies equivalent and adjacent".into())
}

fn fit_recovery() -> Outcome {
    let mut rng = rng_from_seed(6);
    let classes = [ScalingClass::Constant, ScalingClass::Linear, ScalingClass::Poly(2), ScalingClass::Exponential];
    let mut correct = 0;
    for i in 0..100 {
        let class = classes[i % 4];
        let a: f64 = rng.gen_range(0.1..100.0);
        let b: f64 = rng.gen_range(1.5..3.0);
        let m = rng.gen_range(4..=8);
        let start = rng.gen_range(1..=4) as f64;
        let samples: Vec<(f64, f64)> = (0..m)
            .map(|k| {
                let n = start + k as f64;
                let y = match class {
                    ScalingClass::Exponential => a * b.powf(n),
                    c => a * n.powi(c.degree().unwrap() as i32),
                };
                (n, y)
            })
            .collect();
        if fit_scaling("n", &samples).map_err(|e| e.to_string())?.best_class == class {
            correct += 1;
        }
    }
    check(correct == 100, || format!("{correct}/100 synthetic series classified"))?;
    let series = hea_depth_series(&[4, 6, 8, 10, 12], 2).map_err(|e| e.to_string())?;
    let fit = fit_scaling("N", &series).map_err(|e| e.to_string())?;
    let class = fit.best_class;
    let row = verify_table_row("vqe", &[MeasuredColumn::new(TableColumn::Depth, fit)]).map_err(|e| e.to_string())?;
    let status = row.cells_for(TableColumn::Depth).next().map(|c| c.status);
    check(status == Some(CellStatus::Match), || format!("HEA depth {series:?} is {class}"))?;
    Ok(format!("100/100; HEA depth {class} [MATCH]"))
}

fn kernel_properties() -> Outcome {
    let mut worst_sym = 0.0f64;
    let mut worst_direct = 0.0f64;
    let mut min_eig = f64::INFINITY;
    for seed in 0..20u64 {
        let data = toy::uniform(6, 3, seed);
        let map = FeatureMap::angle(3).unwrap();
        let k = quantum_kernel_matrix(&data, &map, KernelMode::Exact, seed).map_err(|e| e.to_string())?;
        check(k.circuits_executed == 15, || format!("{} kernel circuits", k.circuits_executed))?;
        let x = data.features();
        for i in 0..6 {
            check((k.values[i][i] - 1.0).abs() < 1e-12, || "diagonal not 1".into())?;
            for j in 0..6 {
                worst_sym = worst_sym.max((k.values[i][j] - k.values[j][i]).abs());
                let si = run_statevector(map.circuit(), &x[i]).unwrap();
                let sj = run_statevector(map.circuit(), &x[j]).unwrap();
                worst_direct = worst_direct.max((k.values[i][j] - si.fidelity(&sj)).abs());
            }
        }
        let m = nalgebra::DMatrix::from_fn(6, 6, |i, j| k.values[i][j]);
        min_eig = min_eig.min(m.symmetric_eigenvalues().min());
    }
    check(worst_sym <= 1e-12, || format!("asymmetry {worst_sym}"))?;
    check(worst_direct <= 1e-10, || format!("statevector mismatch {worst_direct}"))?;
    check(min_eig >= -1e-9, || format!("min eigenvalue {min_eig}"))?;
    Ok(format!("asym {worst_sym:.0e}, direct {worst_direct:.0e}, min eig {min_eig:.2e}"))
}

fn bound_hea(n: usize, layers: usize) -> Circuit {
    let hea = build_hea_ansatz(n, layers).unwrap();
    let angles: Vec<f64> = (0..hea.num_params).map(|k| 0.37 + 0.91 * k as f64).collect();
    hea.bind(&angles).unwrap()
}

fn mirror_benchmark_checks() -> Outcome {
    let shots = 2000;
    let sizes: Vec<usize> = (2..=8).collect();
    let clean = mirror_benchmark(&sizes, |n| bound_hea(n, 2), &NoiseModel::ideal(), shots, 8).map_err(|e| e.to_string())?;
    for r in &clean {
        // Binomial σ at p = 1 is zero, so the 5σ band collapses to exactly 1.
        let sigma = (r.success_probability * (1.0 - r.success_probability) / shots as f64).sqrt();
        check((1.0 - r.success_probability) <= 5.0 * sigma, || format!("N={} success {}", r.size, r.success_probability))?;
    }
    let noise = NoiseModel::new(0.005, 0.005).unwrap();
    let layers: Vec<usize> = (1..=6).collect();
    let noisy = mirror_benchmark(&layers, |l| bound_hea(4, l), &noise, 4000, 8).map_err(|e| e.to_string())?;
    let curve: Vec<(usize, f64)> = noisy.iter().map(|r| (r.depth, r.success_probability)).collect();
    check(curve.windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 < w[0].1), || format!("not monotone: {curve:?}"))?;
    let text: Vec<String> = curve.iter().map(|(d, s)| format!("{d}:{s:.3}")).collect();
    Ok(format!("noiseless N=2..8 all 1.0; noisy depth:success {}", text.join(" ")))
}

fn outcome(runtime: f64, power: f64, err: f64, scale: f64) -> RunOutcome {
    RunOutcome {
        performance: 1.0,
        performance_metric: "tasks_per_second".into(),
        runtime_seconds: runtime,
        accuracy_error: err,
        accuracy_metric: "abs_energy_error".into(),
        device: DeviceSpec::classical("dev", power, scale, 10.0 * scale, 100.0 * scale),
    }
}

fn utility_verdicts() -> Outcome {
    let v = utility_verdict(&outcome(5.0, 50.0, 1e-3, 1.0), &outcome(4.0, 100.0, 1e-3, 1.0), 2.0).unwrap();
    check(v.verdict == Verdict::QuantumUtility && v.criteria.less_energy && !v.criteria.faster, || {
        format!("energy-win gave {v:?}")
    })?;
    let same = outcome(3.0, 10.0, 0.1, 1.0);
    let v = utility_verdict(&same, &same, 2.0).unwrap();
    check(v.verdict == Verdict::NoUtility, || format!("identical outcomes gave {v:?}"))?;
    let v = utility_verdict(&outcome(1.0, 1.0, 0.0, 10.0), &outcome(9.0, 9.0, 1.0, 1.0), 2.0).unwrap();
    check(v.verdict == Verdict::NotComparable, || format!("dissimilar devices gave {v:?}"))?;

    let mut rng = rng_from_seed(9);
    for _ in 0..1000 {
        let a = outcome(rng.gen_range(0.1..10.0), rng.gen_range(1.0..100.0), rng.gen_range(0.0..1.0), 1.0);
        let b = outcome(rng.gen_range(0.1..10.0), rng.gen_range(1.0..100.0), rng.gen_range(0.0..1.0), 1.0);
        let ab = utility_verdict(&a, &b, 2.0).unwrap().criteria;
        let ba = utility_verdict(&b, &a, 2.0).unwrap().criteria;
        let flip = |x: bool, y: bool, tie: bool| if tie { !x && !y } else { x == !y };
        let ok = flip(ab.faster, ba.faster, a.runtime_seconds == b.runtime_seconds)
            && flip(ab.less_energy, ba.less_energy, a.energy_joules() == b.energy_joules())
            && flip(ab.more_accurate, ba.more_accurate, a.accuracy_error == b.accuracy_error);
        check(ok, || format!("criteria not antisymmetric for {a:?} / {b:?}"))?;
    }
    Ok("3 worked examples, 1000 antisymmetric pairs".into())
}

fn shot_precision_law() -> Outcome {
    let mut c = Circuit::new(1);
    c.push(Gate::ry(0, std::f64::consts::FRAC_PI_3));
    let state = run_statevector(&c, &[]).unwrap();
    let z = 0.5f64;
    let mut report = Vec::new();
    for shots in [100u64, 1_000, 10_000] {
        let estimates: Vec<f64> = (0..200u64)
            .into_par_iter()
            .map(|seed| z_expectation_from_counts(&sample_counts(&state, shots, 70_000 + seed).unwrap(), 0))
            .collect();
        let mean = estimates.iter().sum::<f64>() / 200.0;
        let sd = (estimates.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / 199.0).sqrt();
        let expected = ((1.0 - z * z) / shots as f64).sqrt();
        let rel = (sd / expected - 1.0).abs();
        check(rel <= 0.2, || format!("S={shots}: sd {sd:.5} vs {expected:.5}"))?;
        report.push(format!("S={shots} rel {rel:.3}"));
    }
    Ok(report.join(", "))
}

fn qcbm_shot_growth() -> Outcome {
    let samples: Vec<(f64, f64)> = (2..=5)
        .map(|n| {
            let mut c = Circuit::new(n);
            for q in 0..n {
                c.push(Gate::ry(q, std::f64::consts::FRAC_PI_2));
            }
            let state = run_statevector(&c, &[]).unwrap();
            let target = TargetDistribution::uniform(n).unwrap();
            Ok((n as f64, shots_to_resolve(&state, &target, 0.05, 64, 11).map_err(|e| e.to_string())? as f64))
        })
        .collect::<Result<_, String>>()?;
    let fit = fit_scaling("N", &samples).map_err(|e| e.to_string())?;
    let counts: Vec<String> = samples.iter().map(|s| format!("{}", s.1)).collect();
    check(fit.best_class == ScalingClass::Exponential, || format!("{} for shots {}", fit.best_class, counts.join(",")))?;
    Ok(format!("shots {} → exponential", counts.join(", ")))
}

fn strip_runtime(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.retain(|k, _| !k.contains("runtime"));
            map.values_mut().for_each(strip_runtime);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_runtime),
        _ => {}
    }
}

fn json_artifacts(dir: &Path) -> Result<BTreeMap<String, String>, String> {
    let mut found = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).map_err(|e| e.to_string())? {
            let path = entry.map_err(|e| e.to_string())?.path();
            if path.is_dir() {
                stack.push(path);
            } else if path.extension().is_some_and(|e| e == "json") {
                let text = fs::read_to_string(&path).map_err(|e| e.to_string())?;
                let mut v: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
                strip_runtime(&mut v);
                found.insert(path.display().to_string(), serde_json::to_string_pretty(&v).unwrap());
            }
        }
    }
    Ok(found)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = dir.path();
    fs::write(p.join("tfim2.txt"), "-1 ZZ\n-1 XI\n-1 IX\n").unwrap();
    fs::write(p.join("ghz.json"), r#"{"num_qubits": 3, "gates": [{"kind": "H", "targets": [0]},
        {"kind": "CNOT", "targets": [0, 1]}, {"kind": "CNOT", "targets": [0, 2]}]}"#)
    .unwrap();
    let outcome = |name: &str, w: f64| {
        format!(r#"{{"performance": 1000, "performance_metric": "samples", "runtime_seconds": 10, "accuracy_error": 0.01,
            "accuracy_metric": "abs_error", "device": {{"name": "{name}", "power_watts": {w}, "volume_liters": 2,
            "weight_kg": 3, "cost_currency_units": 100}}}}"#)
    };
    fs::write(p.join("q.json"), outcome("qpu", 25.0)).unwrap();
    fs::write(p.join("c.json"), outcome("cpu", 50.0)).unwrap();
    let runs: [&[&str]; 12] = [
        &["bench", "run", "vqe", "--hamiltonian", "tfim2.txt", "--shots", "256", "--iterations", "30"],
        &["bench", "run", "varqite", "--iterations", "10"],
        &["bench", "run", "qk", "--points", "8", "--shots", "128"],
        &["bench", "run", "qvc", "--points", "8", "--noise", "0.01", "--iterations", "5"],
        &["bench", "run", "reuploading", "--points", "8", "--iterations", "2"],
        &["bench", "run", "qcbm", "--qubits", "3", "--shots", "256", "--iterations", "20"],
        &["bench", "run", "mirror", "--sizes", "2,3,4", "--noise", "0.005", "--shots", "500"],
        &["compile", "ghz.json", "--topology", "linear"],
        &["sweep", "qk", "--variable", "N", "--sizes", "2,3,4,5"],
        &["score", "--outcome", "q.json", "--outcome", "c.json"],
        &["verdict", "--quantum", "q.json", "--classical", "c.json"],
        &["survey"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let out = format!("det{i}");
        let full: Vec<&str> = args.iter().copied().chain(["-o", out.as_str(), "--seed", "17"]).collect();
        qutil(&full, p)?;
        let first = json_artifacts(&p.join(&out))?;
        fs::remove_dir_all(p.join(&out)).map_err(|e| e.to_string())?;
        qutil(&full, p)?;
        let second = json_artifacts(&p.join(&out))?;
        check(!first.is_empty() && first == second, || format!("{args:?} differs between runs"))?;
    }
    qutil(&["report", "--sweep", "det8/sweep.json", "-o", "rep1"], p)?;
    qutil(&["report", "--sweep", "det8/sweep.json", "-o", "rep1b"], p)?;
    let a = fs::read_to_string(p.join("rep1/report.json")).map_err(|e| e.to_string())?;
    let b = fs::read_to_string(p.join("rep1b/report.json")).map_err(|e| e.to_string())?;
    check(a == b, || "report differs".into())?;
    Ok(format!("{} subcommand runs byte-identical", runs.len() + 1))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 12] = [
        ("survey reproduction", Duration::from_secs(1), survey_reproduction),
        ("score formulas", Duration::from_secs(1), score_formulas),
        ("VQE correctness", Duration::from_secs(120), vqe_correctness),
        ("VarQiTE", Duration::from_secs(120), varqite_checks),
        ("compiler soundness", Duration::from_secs(300), compiler_soundness),
        ("scaling-fit recovery", Duration::from_secs(60), fit_recovery),
        ("kernel properties", Duration::from_secs(60), kernel_properties),
        ("mirror benchmark", Duration::from_secs(120), mirror_benchmark_checks),
        ("utility verdicts", Duration::from_secs(1), utility_verdicts),
        ("shot-precision law", Duration::from_secs(120), shot_precision_law),
        ("QCBM shot growth", Duration::from_secs(300), qcbm_shot_growth),
        ("determinism", Duration::from_secs(60), determinism),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (tag, detail) = match result {
            Ok(d) if elapsed <= *limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {elapsed:.2?}, limit {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("[{tag}] {:>2}. {name} ({:.2}s): {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
