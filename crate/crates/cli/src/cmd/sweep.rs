use qutil_core::profile::{render_rows_markdown, run_sweep, SweepConfig};

use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::OutDir;
use crate::{plot, require, resolve, SweepArgs};

pub fn run(args: SweepArgs) -> CliResult<()> {
    let flags = RunConfig {
        app: args.app,
        sizes: args.sizes,
        variable: args.variable,
        iterations: args.iterations,
        shots: args.shots,
        ..Default::default()
    };
    let (cfg, seed) = resolve(&args.common, flags)?;
    let app = require(cfg.app.clone(), "application id")?;
    let mut sc = SweepConfig::new(&app);
    sc.variable = cfg.variable.clone();
    sc.sizes = cfg.sizes.clone().unwrap_or_default();
    sc.seed = seed;
    if let Some(i) = cfg.iterations {
        sc.iterations = i;
    }
    if let Some(s) = cfg.shots {
        sc.shots = s;
    }
    let result = run_sweep(&sc)?;

    let mut out = OutDir::create(cfg.out_dir())?;
    let var = result.variable.replace('|', "");
    for p in &result.points {
        out.write_json(&format!("points/{var}_{}.json", p.size), p)?;
    }
    out.write_json("sweep.json", &result)?;
    out.write_text("scaling.svg", &plot::scaling_plot(&result)?)?;

    let mut summary = format!("# Sweep of {} over {}\n\n", result.app, result.variable);
    summary += &format!("| {} | circuits | depth | shots |\n|---|---|---|---|\n", result.variable);
    for p in &result.points {
        let shots = p.shots.map_or("-".to_string(), |s| format!("{s:.1}"));
        summary += &format!("| {} | {} | {} | {shots} |\n", p.value, p.circuits, p.depth);
    }
    summary += "\n";
    summary += &render_rows_markdown(std::slice::from_ref(&result.row));
    out.write_text("summary.md", &summary)?;
    let seeds: Vec<(String, u64)> = std::iter::once(("base".to_string(), seed))
        .chain(result.points.iter().map(|p| (format!("size_{}", p.size), qutil_core::sim::derive_seed(seed, p.size as u64))))
        .collect();
    out.finish(&format!("sweep {}", result.app), &cfg, &seeds)?;
    print!("{summary}");
    Ok(())
}
