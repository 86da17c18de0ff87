use serde_json::json;

use qutil_core::swapc::{score1, score2, RunOutcome, VerdictReport, DEFAULT_SIMILARITY_FACTOR};

use crate::config::{read_json, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::OutDir;
use crate::{plot, require, resolve, ScoreArgs, VerdictArgs};

pub fn run_score(args: ScoreArgs) -> CliResult<()> {
    let flags = RunConfig {
        outcomes: (!args.outcomes.is_empty()).then_some(args.outcomes),
        ..Default::default()
    };
    let (cfg, seed) = resolve(&args.common, flags)?;
    let mut rows = Vec::new();
    let mut named = Vec::new();
    if let Some(perf) = args.performance {
        let (t, p) = (require(args.runtime, "--runtime")?, require(args.power, "--power")?);
        let s1 = score1(perf, t, p)?;
        let s2 = args.volume.map(|v| score2(perf, v, t, p)).transpose()?;
        rows.push(json!({
            "name": "inline",
            "performance": perf,
            "runtime_seconds": t,
            "power_watts": p,
            "volume_liters": args.volume,
            "energy_joules": t * p,
            "score1": s1,
            "score2": s2,
        }));
    }
    for path in cfg.outcomes.iter().flatten() {
        let o: RunOutcome = read_json(path, "run outcome")?;
        o.validate()?;
        rows.push(json!({
            "name": o.device.name,
            "performance": o.performance,
            "performance_metric": o.performance_metric,
            "runtime_seconds": o.runtime_seconds,
            "power_watts": o.device.power_watts,
            "volume_liters": o.device.volume_liters,
            "energy_joules": o.energy_joules(),
            "score1": o.score1()?,
            "score2": o.score2()?,
        }));
        named.push((o.device.name.clone(), o));
    }
    if rows.is_empty() {
        return Err(CliError::config("give --outcome files or --performance/--runtime/--power"));
    }

    let mut out = OutDir::create(cfg.out_dir())?;
    out.write_json("scores.json", &rows)?;
    if !named.is_empty() {
        out.write_text("score_curves.svg", &plot::score_plot(&named)?)?;
    }
    let mut summary =
        String::from("# Scores\n\n| device | energy (J) | score1 | score2 |\n|---|---|---|---|\n");
    for r in &rows {
        let fmt = |v: &serde_json::Value| v.as_f64().map_or("-".to_string(), |x| format!("{x:.6}"));
        summary += &format!(
            "| {} | {} | {} | {} |\n",
            r["name"].as_str().unwrap_or_default(),
            fmt(&r["energy_joules"]),
            fmt(&r["score1"]),
            fmt(&r["score2"])
        );
    }
    out.write_text("summary.md", &summary)?;
    out.finish("score", &cfg, &[("base".into(), seed)])?;
    print!("{summary}");
    Ok(())
}

pub fn run_verdict(args: VerdictArgs) -> CliResult<()> {
    let flags = RunConfig { quantum: args.quantum, classical: args.classical, factor: args.factor, ..Default::default() };
    let (mut cfg, seed) = resolve(&args.common, flags)?;
    let q: RunOutcome = read_json(&require(cfg.quantum.clone(), "--quantum outcome")?, "quantum outcome")?;
    let c: RunOutcome = read_json(&require(cfg.classical.clone(), "--classical outcome")?, "classical outcome")?;
    let f = *cfg.factor.get_or_insert(DEFAULT_SIMILARITY_FACTOR);
    let report = VerdictReport::new(&q, &c, f)?;

    let mut out = OutDir::create(cfg.out_dir())?;
    out.write_json("verdict.json", &report)?;
    out.write_text(
        "score_curves.svg",
        &plot::score_plot(&[(format!("quantum: {}", q.device.name), q), (format!("classical: {}", c.device.name), c)])?,
    )?;
    let summary = report.markdown();
    out.write_text("summary.md", &summary)?;
    out.finish("verdict", &cfg, &[("base".into(), seed)])?;
    print!("{summary}");
    Ok(())
}
