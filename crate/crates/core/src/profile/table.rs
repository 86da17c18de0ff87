use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{ProfileError, ScalingClass, ScalingFit};
use crate::arl::{survey_entry, ScalingExpr};

/// Applications with runnable implementations.
pub const MEASURABLE_APPS: [&str; 6] = ["vqe", "varqite", "qk", "qvc", "reuploading", "qcbm"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableColumn {
    Circuits,
    Depth,
    Shots,
}

impl TableColumn {
    pub const ALL: [TableColumn; 3] = [TableColumn::Circuits, TableColumn::Depth, TableColumn::Shots];

    pub fn header(self) -> &'static str {
        match self {
            TableColumn::Circuits => "#Circuits",
            TableColumn::Depth => "Depth",
            TableColumn::Shots => "#Shots",
        }
    }
}

impl fmt::Display for TableColumn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableColumn::Circuits => "circuits",
            TableColumn::Depth => "depth",
            TableColumn::Shots => "shots",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CellStatus {
    #[serde(rename = "MATCH")]
    Match,
    #[serde(rename = "MISMATCH")]
    Mismatch,
    #[serde(rename = "NOT-MEASURED")]
    NotMeasured,
}

impl fmt::Display for CellStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellStatus::Match => "MATCH",
            CellStatus::Mismatch => "MISMATCH",
            CellStatus::NotMeasured => "NOT-MEASURED",
        })
    }
}

/// A fitted series for one scaling column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasuredColumn {
    pub column: TableColumn,
    pub fit: ScalingFit,
}

impl MeasuredColumn {
    pub fn new(column: TableColumn, fit: ScalingFit) -> Self {
        MeasuredColumn { column, fit }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub column: TableColumn,
    pub claimed: ScalingExpr,
    pub variable: Option<String>,
    pub expected: Option<ScalingClass>,
    pub measured: Option<ScalingClass>,
    pub r_squared: Option<f64>,
    pub samples: Vec<(f64, f64)>,
    pub status: CellStatus,
}

impl CellReport {
    /// Compact cell text such as `linear in N [MATCH]`.
    pub fn summary(&self) -> String {
        match (&self.measured, &self.variable) {
            (Some(m), Some(v)) => format!("{m} in {v} [{}]", self.status),
            _ => self.status.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowReport {
    pub app: String,
    pub name: String,
    pub cells: Vec<CellReport>,
}

impl RowReport {
    pub fn cells_for(&self, column: TableColumn) -> impl Iterator<Item = &CellReport> {
        self.cells.iter().filter(move |c| c.column == column)
    }

    pub fn column_summary(&self, column: TableColumn) -> String {
        self.cells_for(column).map(CellReport::summary).collect::<Vec<_>>().join("; ")
    }

    pub fn all_match(&self) -> bool {
        self.cells.iter().all(|c| c.status != CellStatus::Mismatch)
    }
}

/// Compares measured fits against the survey row of `app`.
///
/// Each fit's `variable` names the legend symbol that was swept. The
/// expected class is the survey expression's growth in that symbol; a fit
/// matches when the selected class equals it. Columns without fits are
/// reported as `NOT-MEASURED`.
pub fn verify_table_row(app: &str, measured: &[MeasuredColumn]) -> Result<RowReport, ProfileError> {
    let entry = survey_entry(app)
        .filter(|e| MEASURABLE_APPS.contains(&e.id.as_str()))
        .ok_or_else(|| ProfileError::UnknownApp(app.to_string()))?;
    let mut cells = Vec::new();
    for column in TableColumn::ALL {
        let claimed = match column {
            TableColumn::Circuits => &entry.labels.circuits,
            TableColumn::Depth => &entry.labels.depth,
            TableColumn::Shots => &entry.labels.shots,
        };
        let fits: Vec<_> = measured.iter().filter(|m| m.column == column).collect();
        if fits.is_empty() {
            cells.push(CellReport {
                column,
                claimed: claimed.clone(),
                variable: None,
                expected: None,
                measured: None,
                r_squared: None,
                samples: Vec::new(),
                status: CellStatus::NotMeasured,
            });
        }
        for m in fits {
            let expected = claimed.class_in(&m.fit.variable);
            let status = if expected == Some(m.fit.best_class) { CellStatus::Match } else { CellStatus::Mismatch };
            cells.push(CellReport {
                column,
                claimed: claimed.clone(),
                variable: Some(m.fit.variable.clone()),
                expected,
                measured: Some(m.fit.best_class),
                r_squared: Some(m.fit.best_r_squared),
                samples: m.fit.samples.clone(),
                status,
            });
        }
    }
    Ok(RowReport { app: entry.id, name: entry.name, cells })
}

pub fn render_rows_markdown(rows: &[RowReport]) -> String {
    let mut out = String::from("| Application | Column | Claimed | Variable | Expected | Measured | R² | Status |\n");
    out.push_str("|---|---|---|---|---|---|---|---|\n");
    for row in rows {
        for c in &row.cells {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} | {} |",
                row.name,
                c.column.header(),
                c.claimed.to_string().replace('|', "\\|"),
                c.variable.as_deref().unwrap_or("-").replace('|', "\\|"),
                c.expected.map_or("-".to_string(), |e| e.to_string()),
                c.measured.map_or("-".to_string(), |e| e.to_string()),
                c.r_squared.map_or("-".to_string(), |r| format!("{r:.4}")),
                c.status,
            );
        }
    }
    out
}

pub fn render_rows_csv(rows: &[RowReport]) -> String {
    let mut out = String::from("app,column,claimed,variable,expected,measured,r_squared,status\n");
    for row in rows {
        for c in &row.cells {
            let _ = writeln!(
                out,
                "{},{},\"{}\",{},{},{},{},{}",
                row.app,
                c.column,
                c.claimed,
                c.variable.as_deref().unwrap_or(""),
                c.expected.map_or(String::new(), |e| e.to_string()),
                c.measured.map_or(String::new(), |e| e.to_string()),
                c.r_squared.map_or(String::new(), |r| format!("{r:.6}")),
                c.status,
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::fit_scaling;

    fn fit(var: &str, f: impl Fn(f64) -> f64) -> ScalingFit {
        let samples: Vec<_> = (2..=7).map(|n| (n as f64, f(n as f64))).collect();
        fit_scaling(var, &samples).unwrap()
    }

    #[test]
    fn vqe_depth_matches_and_rest_not_measured() {
        let row = verify_table_row("vqe", &[MeasuredColumn::new(TableColumn::Depth, fit("N", |n| 4.0 * n))]).unwrap();
        let depth: Vec<_> = row.cells_for(TableColumn::Depth).collect();
        assert_eq!(depth[0].status, CellStatus::Match);
        assert_eq!(row.cells_for(TableColumn::Shots).next().unwrap().status, CellStatus::NotMeasured);
        assert!(row.all_match());
    }

    #[test]
    fn mismatch_is_reported() {
        let row =
            verify_table_row("VQE", &[MeasuredColumn::new(TableColumn::Circuits, fit("N", |_| 2.0))]).unwrap();
        let cell = row.cells_for(TableColumn::Circuits).next().unwrap();
        assert_eq!(cell.status, CellStatus::Mismatch);
        assert_eq!(cell.expected, Some(ScalingClass::Linear));
        assert_eq!(cell.measured, Some(ScalingClass::Constant));
        assert_eq!(cell.samples.len(), 6);
    }

    #[test]
    fn varqite_two_variables() {
        let row = verify_table_row(
            "varqite",
            &[
                MeasuredColumn::new(TableColumn::Circuits, fit("q", |q| 3.0 * q * q)),
                MeasuredColumn::new(TableColumn::Circuits, fit("t", |t| 5.0 * t)),
            ],
        )
        .unwrap();
        assert_eq!(row.cells_for(TableColumn::Circuits).count(), 2);
        assert!(row.all_match());
        assert!(row.column_summary(TableColumn::Circuits).contains("poly_2 in q [MATCH]"));
    }

    #[test]
    fn unknown_apps() {
        assert!(matches!(verify_table_row("qgnn", &[]), Err(ProfileError::UnknownApp(_))));
        assert!(matches!(verify_table_row("nope", &[]), Err(ProfileError::UnknownApp(_))));
    }

    #[test]
    fn renderings() {
        let row = verify_table_row("qcbm", &[]).unwrap();
        let md = render_rows_markdown(std::slice::from_ref(&row));
        assert_eq!(md.lines().count(), 5);
        let csv = render_rows_csv(&[row]);
        assert!(csv.contains("qcbm,shots,\"O(2^N)\",,,,,NOT-MEASURED"));
    }
}
