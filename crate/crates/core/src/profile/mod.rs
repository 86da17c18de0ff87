//! Resource accounting, empirical scaling fits, the mirror-circuit fidelity
//! benchmark and survey-row verification.

mod events;
mod fit;
mod mirror;
mod sweep;
mod table;

pub use events::{profile, profile_log, ResourceEvent, ResourceLog, ResourceProfile, SizeBreakdown};
pub use fit::{fit_scaling, CandidateFit, ScalingClass, ScalingFit, COMPLEXITY_FACTOR, COMPLEXITY_MARGIN, MIN_SIZES};
pub use mirror::{mirror_benchmark, mirror_circuit, MirrorResult};
pub use sweep::{default_sizes, hea_depth_series, run_sweep, sweep_variables, SweepConfig, SweepError, SweepPoint, SweepResult};
pub use table::{
    render_rows_csv, render_rows_markdown, verify_table_row, CellReport, CellStatus, MeasuredColumn, RowReport, TableColumn,
    MEASURABLE_APPS,
};

use thiserror::Error;

use crate::sim::{GateKind, SimError};

pub const MAX_MIRROR_QUBITS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProfileError {
    #[error("incomplete profile: {0}")]
    Incomplete(String),
    #[error("scaling fit needs at least {need} distinct sizes, got {got}")]
    TooFewSamples { got: usize, need: usize },
    #[error("scaling fit needs positive sizes and counts, got ({size}, {count})")]
    NonPositive { size: f64, count: f64 },
    #[error("mirror circuits cannot invert {0}")]
    UnsupportedGate(GateKind),
    #[error("mirror circuits need fully bound circuits")]
    Unbound,
    #[error("mirror benchmark limited to {max} qubits, got {0}", max = MAX_MIRROR_QUBITS)]
    TooManyQubits(usize),
    #[error("unknown application id {0:?}")]
    UnknownApp(String),
    #[error(transparent)]
    Sim(#[from] SimError),
}
