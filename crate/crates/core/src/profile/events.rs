use std::collections::BTreeMap;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use super::ProfileError;

/// Instrumentation emitted by an execution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum ResourceEvent {
    RunStarted { label: String },
    /// `count` executions of circuits sharing size, compiled depth and shots.
    CircuitsExecuted { count: u64, size: u64, native_depth: u64, shots: u64 },
    RunFinished { wall_runtime_seconds: f64 },
}

/// Append-only event log carried by every algorithm run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ResourceLog {
    events: Vec<ResourceEvent>,
}

impl ResourceLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn started(label: impl Into<String>) -> Self {
        ResourceLog { events: vec![ResourceEvent::RunStarted { label: label.into() }] }
    }

    pub fn start(&mut self, label: impl Into<String>) {
        self.events.push(ResourceEvent::RunStarted { label: label.into() });
    }

    pub fn circuits(&mut self, count: u64, size: u64, native_depth: u64, shots: u64) {
        if count == 0 {
            return;
        }
        // Coalesce with the previous record when nothing but the count differs.
        if let Some(ResourceEvent::CircuitsExecuted { count: c, size: s, native_depth: d, shots: sh }) =
            self.events.last_mut()
        {
            if *s == size && *d == native_depth && *sh == shots {
                *c += count;
                return;
            }
        }
        self.events.push(ResourceEvent::CircuitsExecuted { count, size, native_depth, shots });
    }

    pub fn finish(&mut self, wall_runtime_seconds: f64) {
        self.events.push(ResourceEvent::RunFinished { wall_runtime_seconds });
    }

    pub fn events(&self) -> &[ResourceEvent] {
        &self.events
    }

    pub fn extend(&mut self, other: &ResourceLog) {
        self.events.extend(other.events.iter().cloned());
    }

    /// Total circuits recorded so far.
    pub fn circuit_count(&self) -> u64 {
        self.events
            .iter()
            .map(|e| match e {
                ResourceEvent::CircuitsExecuted { count, .. } => *count,
                _ => 0,
            })
            .sum()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SizeBreakdown {
    pub circuits: u64,
    pub max_native_depth: u64,
    pub shots: u64,
}

/// Aggregated resource consumption of one or more runs.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ResourceProfile {
    pub circuits_executed: u64,
    pub total_shots: u64,
    pub max_native_depth: u64,
    pub sum_native_depth: u64,
    pub wall_runtime_seconds: f64,
    pub per_size: BTreeMap<u64, SizeBreakdown>,
}

impl ResourceProfile {
    /// Equality of all counters, ignoring runtime.
    pub fn same_counts(&self, other: &ResourceProfile) -> bool {
        ResourceProfile { wall_runtime_seconds: 0.0, ..self.clone() }
            == ResourceProfile { wall_runtime_seconds: 0.0, ..other.clone() }
    }
}

impl Add for ResourceProfile {
    type Output = ResourceProfile;

    fn add(mut self, rhs: ResourceProfile) -> ResourceProfile {
        self.circuits_executed += rhs.circuits_executed;
        self.total_shots += rhs.total_shots;
        self.max_native_depth = self.max_native_depth.max(rhs.max_native_depth);
        self.sum_native_depth += rhs.sum_native_depth;
        self.wall_runtime_seconds += rhs.wall_runtime_seconds;
        for (size, b) in rhs.per_size {
            let e = self.per_size.entry(size).or_default();
            e.circuits += b.circuits;
            e.shots += b.shots;
            e.max_native_depth = e.max_native_depth.max(b.max_native_depth);
        }
        self
    }
}

/// Aggregates an event stream. Every run must be bracketed by
/// `RunStarted`/`RunFinished`; aggregation does not depend on event order
/// within a run.
pub fn profile(events: &[ResourceEvent]) -> Result<ResourceProfile, ProfileError> {
    let mut open = 0usize;
    let mut runs = 0usize;
    let mut p = ResourceProfile::default();
    for event in events {
        match event {
            ResourceEvent::RunStarted { .. } => {
                open += 1;
                runs += 1;
            }
            ResourceEvent::CircuitsExecuted { count, size, native_depth, shots } => {
                if open == 0 {
                    return Err(ProfileError::Incomplete("circuit event outside a run".into()));
                }
                p.circuits_executed += count;
                p.total_shots += count * shots;
                p.max_native_depth = p.max_native_depth.max(*native_depth);
                p.sum_native_depth += count * native_depth;
                let e = p.per_size.entry(*size).or_default();
                e.circuits += count;
                e.shots += count * shots;
                e.max_native_depth = e.max_native_depth.max(*native_depth);
            }
            ResourceEvent::RunFinished { wall_runtime_seconds } => {
                if open == 0 {
                    return Err(ProfileError::Incomplete("run finished before it started".into()));
                }
                open -= 1;
                p.wall_runtime_seconds += wall_runtime_seconds;
            }
        }
    }
    if runs == 0 {
        return Err(ProfileError::Incomplete("no run-started event".into()));
    }
    if open != 0 {
        return Err(ProfileError::Incomplete("run-finished event missing".into()));
    }
    Ok(p)
}

/// Profiles a complete log.
pub fn profile_log(log: &ResourceLog) -> Result<ResourceProfile, ProfileError> {
    profile(log.events())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(circuits: u64, shots: u64) -> ResourceLog {
        let mut log = ResourceLog::started("t");
        for _ in 0..circuits {
            log.circuits(1, 2, 5, shots);
        }
        log.finish(0.5);
        log
    }

    #[test]
    fn empty_run_is_all_zero() {
        let mut log = ResourceLog::started("empty");
        log.finish(0.0);
        let p = profile_log(&log).unwrap();
        assert_eq!(p, ResourceProfile::default());
    }

    #[test]
    fn additivity_of_counts() {
        let p = profile_log(&run(3, 100)).unwrap();
        assert_eq!(p.circuits_executed, 3);
        assert_eq!(p.total_shots, 300);
        assert_eq!(p.sum_native_depth, 15);
        assert_eq!(p.per_size[&2].circuits, 3);
    }

    #[test]
    fn union_equals_sum() {
        let (a, b) = (run(3, 10), run(4, 7));
        let mut both = a.clone();
        both.extend(&b);
        let merged = profile_log(&both).unwrap();
        let summed = profile_log(&a).unwrap() + profile_log(&b).unwrap();
        assert!(merged.same_counts(&summed));
    }

    #[test]
    fn missing_events_are_errors() {
        let mut log = ResourceLog::new();
        log.circuits(1, 1, 1, 1);
        assert!(matches!(profile_log(&log), Err(ProfileError::Incomplete(_))));
        let log = ResourceLog::started("x");
        assert!(matches!(profile_log(&log), Err(ProfileError::Incomplete(_))));
        assert!(profile(&[]).is_err());
    }

    #[test]
    fn order_independent_within_run() {
        let events = vec![
            ResourceEvent::RunStarted { label: "a".into() },
            ResourceEvent::CircuitsExecuted { count: 2, size: 3, native_depth: 4, shots: 10 },
            ResourceEvent::CircuitsExecuted { count: 1, size: 5, native_depth: 9, shots: 1 },
            ResourceEvent::RunFinished { wall_runtime_seconds: 1.0 },
        ];
        let mut shuffled = events.clone();
        shuffled.swap(1, 2);
        assert_eq!(profile(&events).unwrap(), profile(&shuffled).unwrap());
    }
}
