use std::fmt::Write as _;

use serde::Serialize;

use super::{legend, ArlAssessment};
use crate::profile::{RowReport, TableColumn};

pub const SURVEY_HEADER: [&str; 9] = [
    "Application",
    "ARL",
    "#Circuits",
    "Depth",
    "#Shots",
    "Compilability",
    "Connectivity",
    "Robustness",
    "Parallelizability",
];

pub const REPORT_FOOTER: &str = "Readiness levels are derived from the textual milestone descriptions only \
(concept, proof of concept, extrapolated advantage, noise-free simulation, noisy simulation, hardware); \
roadmap exit strategies are not modeled.";

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub markdown: String,
    pub csv: String,
    pub json: String,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    legend: std::collections::BTreeMap<&'static str, &'static str>,
    assessments: &'a [ArlAssessment],
    #[serde(skip_serializing_if = "Option::is_none")]
    measured: Option<&'a [RowReport]>,
    footer: &'static str,
}

fn cells(a: &ArlAssessment) -> [String; 9] {
    let l = &a.labels;
    [
        a.name.clone(),
        a.level.short().to_string(),
        l.circuits.to_string(),
        l.depth.to_string(),
        l.shots.to_string(),
        l.compilability.to_string(),
        l.connectivity.to_string(),
        l.robustness.to_string(),
        l.parallelizability.to_string(),
    ]
}

fn measured_for<'a>(a: &ArlAssessment, measured: Option<&'a [RowReport]>) -> Option<&'a RowReport> {
    measured?.iter().find(|r| r.app == a.id)
}

/// Survey table in the column order of [`SURVEY_HEADER`].
pub fn survey_csv(assessments: &[ArlAssessment], measured: Option<&[RowReport]>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = SURVEY_HEADER.iter().map(|s| s.to_string()).collect();
    if measured.is_some() {
        header.extend(TableColumn::ALL.iter().map(|c| format!("Measured {}", c.header())));
    }
    w.write_record(&header).expect("in-memory csv");
    for a in assessments {
        let mut row = cells(a).to_vec();
        if measured.is_some() {
            let m = measured_for(a, measured);
            row.extend(TableColumn::ALL.iter().map(|&c| m.map_or(String::new(), |r| r.column_summary(c))));
        }
        w.write_record(&row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
}

fn markdown(assessments: &[ArlAssessment], measured: Option<&[RowReport]>) -> String {
    let mut out = String::from("# Application readiness survey\n\n");
    let mut header: Vec<String> = SURVEY_HEADER.iter().map(|s| s.to_string()).collect();
    if measured.is_some() {
        header.extend(TableColumn::ALL.iter().map(|c| format!("Measured {}", c.header())));
    }
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
    for a in assessments {
        let mut row = cells(a).to_vec();
        if measured.is_some() {
            let m = measured_for(a, measured);
            row.extend(TableColumn::ALL.iter().map(|&c| m.map_or(String::new(), |r| r.column_summary(c))));
        }
        let row: Vec<String> = row.into_iter().map(|c| c.replace('|', "\\|")).collect();
        let _ = writeln!(out, "| {} |", row.join(" | "));
    }
    let gaps: Vec<_> = assessments.iter().filter(|a| !a.inconsistencies.is_empty()).collect();
    if !gaps.is_empty() {
        out.push_str("\n## Evidence inconsistencies\n\n");
        for a in gaps {
            for g in &a.inconsistencies {
                let _ = writeln!(out, "- {}: {}", a.name, g);
            }
        }
    }
    out.push_str("\n## Legend\n\n");
    for (sym, meaning) in legend() {
        let _ = writeln!(out, "- `{sym}`: {meaning}");
    }
    let _ = write!(out, "\n{REPORT_FOOTER}\n");
    out
}

/// Renders assessments, with measured scaling classes beside the survey
/// cells when row reports are given.
pub fn render_report(assessments: &[ArlAssessment], measured: Option<&[RowReport]>) -> Report {
    let json = JsonReport { legend: legend(), assessments, measured, footer: REPORT_FOOTER };
    Report {
        markdown: markdown(assessments, measured),
        csv: survey_csv(assessments, measured),
        json: serde_json::to_string_pretty(&json).expect("report serializes"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arl::builtin_survey;
    use crate::profile::{fit_scaling, verify_table_row, MeasuredColumn};

    #[test]
    fn deterministic() {
        let a = render_report(&builtin_survey(), None);
        let b = render_report(&builtin_survey(), None);
        assert_eq!(a, b);
        assert!(a.markdown.ends_with(&format!("{REPORT_FOOTER}\n")));
    }

    #[test]
    fn empty_is_valid() {
        let r = render_report(&[], None);
        assert_eq!(r.csv.lines().count(), 1);
        let v: serde_json::Value = serde_json::from_str(&r.json).unwrap();
        assert_eq!(v["assessments"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn measured_columns_appear_on_their_row() {
        let samples: Vec<_> = (2..=7).map(|n| (n as f64, 3.0 * n as f64)).collect();
        let fit = fit_scaling("N", &samples).unwrap();
        let row = verify_table_row("vqe", &[MeasuredColumn::new(TableColumn::Depth, fit)]).unwrap();
        let r = render_report(&builtin_survey(), Some(&[row]));
        let vqe = r.csv.lines().nth(1).unwrap();
        assert!(vqe.ends_with("NOT-MEASURED,linear in N [MATCH],NOT-MEASURED"), "{vqe}");
        let qcbm = r.csv.lines().find(|l| l.starts_with("QCBM")).unwrap();
        assert!(qcbm.ends_with(",,,"));
        assert!(r.markdown.contains("Measured Depth"));
        let v: serde_json::Value = serde_json::from_str(&r.json).unwrap();
        assert_eq!(v["measured"][0]["app"], "vqe");
    }
}
