use qutil_core::arl::{builtin_survey, render_report};
use qutil_core::profile::{RowReport, SweepResult};

use crate::config::{read_json, RunConfig};
use crate::error::CliResult;
use crate::output::OutDir;
use crate::{resolve, ReportArgs, SurveyArgs};

pub fn run_survey(args: SurveyArgs) -> CliResult<()> {
    let (cfg, seed) = resolve(&args.common, RunConfig::default())?;
    let assessments = builtin_survey();
    let report = render_report(&assessments, None);
    let mut out = OutDir::create(cfg.out_dir())?;
    out.write_text("survey.csv", &report.csv)?;
    out.write_text("survey.json", &report.json)?;
    out.write_text("summary.md", &report.markdown)?;
    out.finish("survey", &cfg, &[("base".into(), seed)])?;
    print!("{}", report.csv);
    Ok(())
}

pub fn run_report(args: ReportArgs) -> CliResult<()> {
    let flags = RunConfig { sweeps: (!args.sweeps.is_empty()).then_some(args.sweeps), ..Default::default() };
    let (cfg, seed) = resolve(&args.common, flags)?;
    let mut rows: Vec<RowReport> = Vec::new();
    for path in cfg.sweeps.iter().flatten() {
        let sweep: SweepResult = read_json(path, "sweep result")?;
        match rows.iter_mut().find(|r| r.app == sweep.row.app) {
            Some(row) => row.cells.extend(sweep.row.cells),
            None => rows.push(sweep.row),
        }
    }
    let report = render_report(&builtin_survey(), (!rows.is_empty()).then_some(rows.as_slice()));
    let mut out = OutDir::create(cfg.out_dir())?;
    out.write_text("report.csv", &report.csv)?;
    out.write_text("report.json", &report.json)?;
    out.write_text("summary.md", &report.markdown)?;
    out.finish("report", &cfg, &[("base".into(), seed)])?;
    print!("{}", report.markdown);
    Ok(())
}
