use serde::{Deserialize, Serialize};

use crate::profile::ResourceLog;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub objective: f64,
    pub param_norm: f64,
}

/// Objective history of an optimization run plus its resource log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingTrace {
    pub entries: Vec<TraceEntry>,
    pub final_params: Vec<f64>,
    pub converged: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub circuits_executed: u64,
    #[serde(skip)]
    pub resources: ResourceLog,
}

impl TrainingTrace {
    pub(crate) fn new(history: Vec<TraceEntry>, final_params: Vec<f64>, converged: bool) -> Self {
        TrainingTrace {
            entries: history,
            final_params,
            converged,
            warnings: Vec::new(),
            circuits_executed: 0,
            resources: ResourceLog::default(),
        }
    }

    pub(crate) fn attach(&mut self, resources: ResourceLog) {
        self.circuits_executed = resources.circuit_count();
        self.resources = resources;
    }

    pub fn final_objective(&self) -> f64 {
        self.entries.last().map_or(f64::NAN, |e| e.objective)
    }

    /// Running minimum of the objective series.
    pub fn best_so_far(&self) -> Vec<f64> {
        let mut best = f64::INFINITY;
        self.entries
            .iter()
            .map(|e| {
                best = best.min(e.objective);
                best
            })
            .collect()
    }
}

pub(crate) fn norm(params: &[f64]) -> f64 {
    params.iter().map(|p| p * p).sum::<f64>().sqrt()
}

pub(crate) fn entry(objective: f64, params: &[f64]) -> TraceEntry {
    TraceEntry { objective, param_norm: norm(params) }
}
