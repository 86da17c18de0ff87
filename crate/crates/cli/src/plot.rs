use plotters::prelude::*;

use qutil_core::profile::{MirrorResult, ScalingClass, ScalingFit, SweepResult};
use qutil_core::swapc::RunOutcome;

use crate::error::{CliError, CliResult};

const SIZE: (u32, u32) = (720, 480);
const PALETTE: [RGBColor; 4] = [BLUE, RED, GREEN, MAGENTA];

pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
    /// Drawn as markers when true, as a line otherwise.
    pub markers: bool,
}

fn bounds(series: &[Series]) -> ((f64, f64), (f64, f64)) {
    let pts = series.iter().flat_map(|s| s.points.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in pts.filter(|p| p.0.is_finite() && p.1.is_finite()) {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x0 > x1 {
        return ((0.0, 1.0), (0.0, 1.0));
    }
    let pad = |lo: f64, hi: f64| {
        let d = if hi > lo { (hi - lo) * 0.05 } else { 0.5 };
        (lo - d, hi + d)
    };
    (pad(x0, x1), pad(y0, y1))
}

pub fn chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> CliResult<String> {
    let mut svg = String::new();
    {
        let err = |e: &dyn std::fmt::Display| CliError::runtime(format!("plot {title:?}: {e}"));
        let root = SVGBackend::with_string(&mut svg, SIZE).into_drawing_area();
        root.fill(&WHITE).map_err(|e| err(&e))?;
        let ((x0, x1), (y0, y1)) = bounds(series);
        let mut ctx = ChartBuilder::on(&root)
            .caption(title, ("sans-serif", 20))
            .margin(12)
            .x_label_area_size(40)
            .y_label_area_size(60)
            .build_cartesian_2d(x0..x1, y0..y1)
            .map_err(|e| err(&e))?;
        ctx.configure_mesh().x_desc(x_label).y_desc(y_label).draw().map_err(|e| err(&e))?;
        for (i, s) in series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let drawn = if s.markers {
                ctx.draw_series(s.points.iter().map(|&p| Circle::new(p, 4, color.filled())))
                    .map_err(|e| err(&e))?
            } else {
                ctx.draw_series(LineSeries::new(s.points.iter().copied(), color)).map_err(|e| err(&e))?
            };
            drawn
                .label(s.name.clone())
                .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 16, y)], color));
        }
        ctx.configure_series_labels()
            .background_style(WHITE.mix(0.8))
            .border_style(BLACK)
            .draw()
            .map_err(|e| err(&e))?;
        root.present().map_err(|e| err(&e))?;
    }
    Ok(svg)
}

fn model(fit: &ScalingFit, class: ScalingClass, n: f64) -> Option<f64> {
    let c = fit.candidate(class)?;
    Some(match class.degree() {
        Some(k) => c.params[0] * n.powi(k as i32),
        None => c.params[0] * c.params[1].powf(n),
    })
}

/// Measured counts and the selected fit per column, on a log10 axis.
pub fn scaling_plot(sweep: &SweepResult) -> CliResult<String> {
    let mut series = Vec::new();
    for m in &sweep.fits {
        let fit = &m.fit;
        let name = m.column.header();
        series.push(Series {
            name: format!("{name} measured"),
            points: fit.samples.iter().map(|&(n, c)| (n, c.log10())).collect(),
            markers: true,
        });
        let (lo, hi) = fit
            .samples
            .iter()
            .fold((f64::MAX, f64::MIN), |(lo, hi), s| (lo.min(s.0), hi.max(s.0)));
        let grid: Vec<(f64, f64)> = (0..=40)
            .filter_map(|i| {
                let n = lo + (hi - lo) * i as f64 / 40.0;
                model(fit, fit.best_class, n).map(|y| (n, y.log10()))
            })
            .collect();
        series.push(Series { name: format!("{name} fit: {}", fit.best_class), points: grid, markers: false });
    }
    chart(
        &format!("{} scaling in {}", sweep.app, sweep.variable),
        &sweep.variable,
        "log10 count",
        &series,
    )
}

pub fn mirror_plot(results: &[MirrorResult]) -> CliResult<String> {
    let points: Vec<(f64, f64)> = results.iter().map(|r| (r.depth as f64, r.success_probability)).collect();
    chart(
        "Mirror circuit success",
        "mirror depth",
        "success probability",
        &[
            Series { name: "success".into(), points: points.clone(), markers: true },
            Series { name: "trend".into(), points, markers: false },
        ],
    )
}

/// `log10 score1` as the runtime is scaled from 1/10 to 10 times the
/// measured value, one curve per outcome.
pub fn score_plot(outcomes: &[(String, RunOutcome)]) -> CliResult<String> {
    let series: Vec<Series> = outcomes
        .iter()
        .map(|(name, o)| Series {
            name: name.clone(),
            points: (-10..=10)
                .map(|i| {
                    let k = 10f64.powf(i as f64 / 10.0);
                    let t = o.runtime_seconds * k;
                    (k.log10(), (o.performance / (t * o.device.power_watts)).log10())
                })
                .collect(),
            markers: false,
        })
        .collect();
    chart("Performance per joule", "log10 runtime factor", "log10 score1", &series)
}
