//! SWaP-C aware scores and utility verdicts.

use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::compile::{NativeGateSet, Topology};

pub const DEFAULT_SIMILARITY_FACTOR: f64 = 2.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SwapcError {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("{name} must be non-negative, got {value}")]
    Negative { name: &'static str, value: f64 },
    #[error("similarity factor must be at least 1, got {0}")]
    BadFactor(f64),
    #[error("accuracy metrics differ: {0:?} vs {1:?}")]
    MetricMismatch(String, String),
}

fn positive(name: &'static str, value: f64) -> Result<f64, SwapcError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(SwapcError::NonPositive { name, value })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviceSpec {
    pub name: String,
    pub power_watts: f64,
    pub volume_liters: f64,
    pub weight_kg: f64,
    pub cost_currency_units: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qubit_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub native_gates: Option<NativeGateSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topology: Option<Topology>,
}

impl DeviceSpec {
    /// A classical device without qubit fields.
    pub fn classical(name: &str, power_watts: f64, volume_liters: f64, weight_kg: f64, cost: f64) -> Self {
        DeviceSpec {
            name: name.to_string(),
            power_watts,
            volume_liters,
            weight_kg,
            cost_currency_units: cost,
            qubit_count: None,
            native_gates: None,
            topology: None,
        }
    }

    pub fn validate(&self) -> Result<(), SwapcError> {
        positive("power_watts", self.power_watts)?;
        positive("volume_liters", self.volume_liters)?;
        positive("weight_kg", self.weight_kg)?;
        if !(self.cost_currency_units >= 0.0 && self.cost_currency_units.is_finite()) {
            return Err(SwapcError::Negative { name: "cost_currency_units", value: self.cost_currency_units });
        }
        Ok(())
    }

    /// Same device with volume, weight and cost multiplied by `k`.
    pub fn rescaled(&self, k: f64) -> Self {
        DeviceSpec {
            volume_liters: self.volume_liters * k,
            weight_kg: self.weight_kg * k,
            cost_currency_units: self.cost_currency_units * k,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOutcome {
    pub performance: f64,
    /// What `performance` measures, e.g. `mirror_successes_per_second`.
    pub performance_metric: String,
    pub runtime_seconds: f64,
    pub accuracy_error: f64,
    /// What `accuracy_error` measures, e.g. `abs_energy_error`.
    pub accuracy_metric: String,
    pub device: DeviceSpec,
}

impl RunOutcome {
    pub fn validate(&self) -> Result<(), SwapcError> {
        positive("performance", self.performance)?;
        positive("runtime_seconds", self.runtime_seconds)?;
        if !(self.accuracy_error >= 0.0 && self.accuracy_error.is_finite()) {
            return Err(SwapcError::Negative { name: "accuracy_error", value: self.accuracy_error });
        }
        self.device.validate()
    }

    pub fn energy_joules(&self) -> f64 {
        self.runtime_seconds * self.device.power_watts
    }

    pub fn score1(&self) -> Result<f64, SwapcError> {
        score1(self.performance, self.runtime_seconds, self.device.power_watts)
    }

    pub fn score2(&self) -> Result<f64, SwapcError> {
        score2(self.performance, self.device.volume_liters, self.runtime_seconds, self.device.power_watts)
    }
}

/// Performance per joule: `performance / (runtime · power)`.
pub fn score1(performance: f64, runtime_seconds: f64, power_watts: f64) -> Result<f64, SwapcError> {
    Ok(positive("performance", performance)?
        / (positive("runtime_seconds", runtime_seconds)? * positive("power_watts", power_watts)?))
}

/// `performance / (volume · runtime · power)`.
pub fn score2(performance: f64, volume_liters: f64, runtime_seconds: f64, power_watts: f64) -> Result<f64, SwapcError> {
    Ok(score1(performance, runtime_seconds, power_watts)? / positive("volume_liters", volume_liters)?)
}

fn within(a: f64, b: f64, f: f64) -> bool {
    if a == b {
        return true;
    }
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    lo > 0.0 && hi / lo <= f
}

/// True when volume, weight and cost of `a` and `b` each differ by at most
/// a factor `f`. A zero cost is only similar to another zero cost.
pub fn similarity_gate(a: &DeviceSpec, b: &DeviceSpec, f: f64) -> Result<bool, SwapcError> {
    if !(f >= 1.0) {
        return Err(SwapcError::BadFactor(f));
    }
    a.validate()?;
    b.validate()?;
    Ok(within(a.volume_liters, b.volume_liters, f)
        && within(a.weight_kg, b.weight_kg, f)
        && within(a.cost_currency_units, b.cost_currency_units, f))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    QuantumUtility,
    NoUtility,
    NotComparable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::QuantumUtility => "quantum_utility",
            Verdict::NoUtility => "no_utility",
            Verdict::NotComparable => "not_comparable",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Criteria {
    pub faster: bool,
    pub less_energy: bool,
    pub more_accurate: bool,
}

impl Criteria {
    pub fn any(self) -> bool {
        self.faster || self.less_energy || self.more_accurate
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UtilityVerdict {
    pub comparable: bool,
    pub criteria: Criteria,
    pub verdict: Verdict,
}

/// Compares a quantum run `q` with a classical baseline `c`.
///
/// Runs are comparable when their devices pass [`similarity_gate`] with
/// factor `f`. "Less power" is judged on energy, `runtime · power`.
pub fn utility_verdict(q: &RunOutcome, c: &RunOutcome, f: f64) -> Result<UtilityVerdict, SwapcError> {
    q.validate()?;
    c.validate()?;
    if q.accuracy_metric != c.accuracy_metric {
        return Err(SwapcError::MetricMismatch(q.accuracy_metric.clone(), c.accuracy_metric.clone()));
    }
    let comparable = similarity_gate(&q.device, &c.device, f)?;
    let criteria = Criteria {
        faster: q.runtime_seconds < c.runtime_seconds,
        less_energy: q.energy_joules() < c.energy_joules(),
        more_accurate: q.accuracy_error < c.accuracy_error,
    };
    let verdict = match (comparable, criteria.any()) {
        (false, _) => Verdict::NotComparable,
        (true, true) => Verdict::QuantumUtility,
        (true, false) => Verdict::NoUtility,
    };
    Ok(UtilityVerdict { comparable, criteria, verdict })
}

/// Verdict together with every input, for reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub quantum: RunOutcome,
    pub classical: RunOutcome,
    pub similarity_factor: f64,
    pub quantum_energy_joules: f64,
    pub classical_energy_joules: f64,
    pub quantum_score1: f64,
    pub quantum_score2: f64,
    pub classical_score1: f64,
    pub classical_score2: f64,
    pub result: UtilityVerdict,
}

impl VerdictReport {
    pub fn new(q: &RunOutcome, c: &RunOutcome, f: f64) -> Result<Self, SwapcError> {
        let result = utility_verdict(q, c, f)?;
        Ok(VerdictReport {
            quantum: q.clone(),
            classical: c.clone(),
            similarity_factor: f,
            quantum_energy_joules: q.energy_joules(),
            classical_energy_joules: c.energy_joules(),
            quantum_score1: q.score1()?,
            quantum_score2: q.score2()?,
            classical_score1: c.score1()?,
            classical_score2: c.score2()?,
            result,
        })
    }

    pub fn markdown(&self) -> String {
        let mut out = String::from("# Utility verdict\n\n");
        let _ = writeln!(out, "**Verdict:** {}\n", self.result.verdict);
        out.push_str("| | Quantum | Classical |\n|---|---|---|\n");
        let rows: [(&str, String, String); 11] = [
            ("device", self.quantum.device.name.clone(), self.classical.device.name.clone()),
            (
                "performance",
                format!("{} ({})", self.quantum.performance, self.quantum.performance_metric),
                format!("{} ({})", self.classical.performance, self.classical.performance_metric),
            ),
            ("runtime [s]", self.quantum.runtime_seconds.to_string(), self.classical.runtime_seconds.to_string()),
            ("power [W]", self.quantum.device.power_watts.to_string(), self.classical.device.power_watts.to_string()),
            ("energy [J]", self.quantum_energy_joules.to_string(), self.classical_energy_joules.to_string()),
            (
                "accuracy error",
                format!("{} ({})", self.quantum.accuracy_error, self.quantum.accuracy_metric),
                format!("{} ({})", self.classical.accuracy_error, self.classical.accuracy_metric),
            ),
            ("volume [L]", self.quantum.device.volume_liters.to_string(), self.classical.device.volume_liters.to_string()),
            ("weight [kg]", self.quantum.device.weight_kg.to_string(), self.classical.device.weight_kg.to_string()),
            (
                "cost",
                self.quantum.device.cost_currency_units.to_string(),
                self.classical.device.cost_currency_units.to_string(),
            ),
            ("score1 [1/J]", format!("{:.6e}", self.quantum_score1), format!("{:.6e}", self.classical_score1)),
            ("score2 [1/(J·L)]", format!("{:.6e}", self.quantum_score2), format!("{:.6e}", self.classical_score2)),
        ];
        for (k, q, c) in rows {
            let _ = writeln!(out, "| {k} | {q} | {c} |");
        }
        let crit = self.result.criteria;
        let _ = write!(
            out,
            "\nSimilar devices (factor {}): {}\n\n- faster: {}\n- less energy: {}\n- more accurate: {}\n",
            self.similarity_factor, self.result.comparable, crit.faster, crit.less_energy, crit.more_accurate
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn device(v: f64, w: f64, cost: f64, power: f64) -> DeviceSpec {
        DeviceSpec::classical("d", power, v, w, cost)
    }

    fn outcome(runtime: f64, power: f64, err: f64) -> RunOutcome {
        RunOutcome {
            performance: 1.0,
            performance_metric: "tasks_per_second".into(),
            runtime_seconds: runtime,
            accuracy_error: err,
            accuracy_metric: "abs_energy_error".into(),
            device: device(1.0, 10.0, 100.0, power),
        }
    }

    #[test]
    fn score_examples() {
        assert_relative_eq!(score1(1000.0, 10.0, 50.0).unwrap(), 2.0);
        assert_relative_eq!(score1(7.5, 1.0, 1.0).unwrap(), 7.5);
        assert_relative_eq!(score2(1000.0, 2.0, 10.0, 50.0).unwrap(), 1.0);
        assert_relative_eq!(score2(3.0, 1.0, 4.0, 5.0).unwrap(), score1(3.0, 4.0, 5.0).unwrap());
        assert!(matches!(score1(0.0, 1.0, 1.0), Err(SwapcError::NonPositive { name: "performance", .. })));
        assert!(score2(1.0, -1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn gate_examples() {
        let a = device(1.0, 5.0, 10.0, 1.0);
        assert!(similarity_gate(&a, &a, 1.0).unwrap());
        assert!(!similarity_gate(&a, &device(3.0, 5.0, 10.0, 1.0), 2.0).unwrap());
        assert!(similarity_gate(&a, &device(2.0, 9.0, 19.0, 1.0), 2.0).unwrap());
        assert!(similarity_gate(&a, &a, 0.5).is_err());
        assert!(similarity_gate(&a, &device(0.0, 1.0, 1.0, 1.0), 2.0).is_err());
        assert!(!similarity_gate(&a, &device(1.0, 5.0, 0.0, 1.0), 2.0).unwrap());
    }

    #[test]
    fn verdict_examples() {
        let v = utility_verdict(&outcome(5.0, 50.0, 1e-3), &outcome(4.0, 100.0, 1e-3), 2.0).unwrap();
        assert_eq!(v.verdict, Verdict::QuantumUtility);
        assert_eq!(v.criteria, Criteria { faster: false, less_energy: true, more_accurate: false });

        let same = outcome(3.0, 10.0, 0.1);
        assert_eq!(utility_verdict(&same, &same, 2.0).unwrap().verdict, Verdict::NoUtility);

        let mut big = outcome(1.0, 1.0, 0.0);
        big.device = big.device.rescaled(10.0);
        assert_eq!(utility_verdict(&big, &outcome(9.0, 9.0, 1.0), 2.0).unwrap().verdict, Verdict::NotComparable);

        let mut other = outcome(1.0, 1.0, 0.0);
        other.accuracy_metric = "accuracy".into();
        assert!(matches!(utility_verdict(&other, &same, 2.0), Err(SwapcError::MetricMismatch(..))));
    }

    #[test]
    fn report_echoes_inputs() {
        let r = VerdictReport::new(&outcome(5.0, 50.0, 1e-3), &outcome(4.0, 100.0, 1e-3), 2.0).unwrap();
        assert_relative_eq!(r.quantum_energy_joules, 250.0);
        assert_relative_eq!(r.classical_energy_joules, 400.0);
        let md = r.markdown();
        assert!(md.contains("quantum_utility"));
        assert!(md.contains("| energy [J] | 250 | 400 |"));
    }

    fn pos() -> impl Strategy<Value = f64> {
        1e-3f64..1e3
    }

    proptest! {
        #[test]
        fn scores_monotone(p in pos(), v in pos(), t in pos(), w in pos(), k in 1.01f64..10.0) {
            let s1 = score1(p, t, w).unwrap();
            prop_assert!(score1(p * k, t, w).unwrap() > s1);
            prop_assert!(score1(p, t * k, w).unwrap() < s1);
            prop_assert!(score1(p, t, w * k).unwrap() < s1);
            let s2 = score2(p, v, t, w).unwrap();
            prop_assert!(score2(p * k, v, t, w).unwrap() > s2);
            prop_assert!(score2(p, v * k, t, w).unwrap() < s2);
            prop_assert!(score2(p, v, t * k, w).unwrap() < s2);
            prop_assert!(score2(p, v, t, w * k).unwrap() < s2);
            let scaled = score2(p, v * k, t * k, w * k).unwrap();
            prop_assert!((scaled * k.powi(3) / s2 - 1.0).abs() < 1e-9);
        }

        #[test]
        fn criteria_antisymmetric(t1 in pos(), t2 in pos(), w1 in pos(), w2 in pos(), e1 in 0.0f64..1.0, e2 in 0.0f64..1.0) {
            let a = outcome(t1, w1, e1);
            let b = outcome(t2, w2, e2);
            let ab = utility_verdict(&a, &b, 2.0).unwrap().criteria;
            let ba = utility_verdict(&b, &a, 2.0).unwrap().criteria;
            let strict = |x: f64, y: f64| x != y;
            if strict(t1, t2) { prop_assert_eq!(ab.faster, !ba.faster); } else { prop_assert!(!ab.faster && !ba.faster); }
            if strict(a.energy_joules(), b.energy_joules()) { prop_assert_eq!(ab.less_energy, !ba.less_energy); }
            if strict(e1, e2) { prop_assert_eq!(ab.more_accurate, !ba.more_accurate); } else { prop_assert!(!ab.more_accurate && !ba.more_accurate); }
        }

        #[test]
        fn verdict_invariant_under_common_rescaling(
            v1 in pos(), v2 in pos(), m1 in pos(), m2 in pos(), c1 in pos(), c2 in pos(),
            t1 in pos(), t2 in pos(), k in 1e-3f64..1e3,
        ) {
            let mut q = outcome(t1, 5.0, 0.1);
            let mut c = outcome(t2, 5.0, 0.1);
            q.device = device(v1, m1, c1, 5.0);
            c.device = device(v2, m2, c2, 5.0);
            let base = utility_verdict(&q, &c, 2.0).unwrap();
            let (mut qs, mut cs) = (q.clone(), c.clone());
            qs.device = q.device.rescaled(k);
            cs.device = c.device.rescaled(k);
            let scaled = utility_verdict(&qs, &cs, 2.0).unwrap();
            let ratios_far_from_edge = [(v1, v2), (m1, m2), (c1, c2)]
                .iter()
                .all(|(a, b)| ((a / b).max(b / a) - 2.0).abs() > 1e-9);
            if ratios_far_from_edge {
                prop_assert_eq!(base, scaled);
            }
        }
    }
}
