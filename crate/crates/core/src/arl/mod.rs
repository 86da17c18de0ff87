//! Application readiness levels: scaling expressions, extended labels,
//! the milestone rule engine, the built-in survey and report rendering.

mod assess;
mod expr;
mod labels;
mod report;
mod survey;

pub use assess::{assess_arl, evidence_gaps, ArlAssessment, ArlLevel, EvidenceRecord};
pub use expr::{legend, ScalingExpr, LEGEND};
pub use labels::{Compilability, Connectivity, ExtendedLabels, Parallelizability, Robustness};
pub use report::{render_report, survey_csv, Report, REPORT_FOOTER, SURVEY_HEADER};
pub use survey::{builtin_survey, survey_entry};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ArlError {
    #[error("cannot parse scaling expression {expr:?}: {msg}")]
    Parse { expr: String, msg: String },
    #[error("unknown variable {0:?} in scaling expression")]
    UnknownVariable(String),
    #[error("unknown readiness level {0:?}")]
    UnknownLevel(String),
    #[error("evidence without a concept cannot be classified")]
    Unclassifiable,
}
