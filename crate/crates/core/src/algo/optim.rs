use rand::Rng;
use serde::{Deserialize, Serialize};

use super::trace::{entry, TraceEntry};
use super::AlgoError;
use crate::compile::normalize_angle;
use crate::sim::rng_from_seed;

use std::f64::consts::FRAC_PI_2;

/// Classical optimizer settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Optimizer {
    /// Exact per-coordinate minimization from the two parameter-shift
    /// evaluations `θ_d ± π/2`. Valid for objectives that are a single
    /// sinusoid in each parameter.
    CoordinateDescent { max_sweeps: usize, tolerance: f64 },
    /// Simultaneous-perturbation stochastic approximation with gains
    /// `a/(k+1+stability)^alpha` and `c/(k+1)^gamma`.
    Spsa { iterations: usize, a: f64, c: f64, alpha: f64, gamma: f64, stability: f64 },
}

impl Default for Optimizer {
    fn default() -> Self {
        Optimizer::coordinate_descent(100)
    }
}

impl Optimizer {
    pub fn coordinate_descent(max_sweeps: usize) -> Self {
        Optimizer::CoordinateDescent { max_sweeps, tolerance: 1e-10 }
    }

    pub fn spsa(iterations: usize) -> Self {
        Optimizer::Spsa { iterations, a: 0.6, c: 0.15, alpha: 0.602, gamma: 0.101, stability: 10.0 }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Optimizer::CoordinateDescent { .. } => "coordinate_descent",
            Optimizer::Spsa { .. } => "spsa",
        }
    }

    pub fn iterations(&self) -> usize {
        match self {
            Optimizer::CoordinateDescent { max_sweeps, .. } => *max_sweeps,
            Optimizer::Spsa { iterations, .. } => *iterations,
        }
    }

    pub fn validate(&self) -> Result<(), AlgoError> {
        let ok = match *self {
            Optimizer::CoordinateDescent { tolerance, .. } => tolerance >= 0.0,
            Optimizer::Spsa { a, c, alpha, gamma, stability, .. } => {
                a > 0.0 && c > 0.0 && alpha >= 0.0 && gamma >= 0.0 && stability >= 0.0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(AlgoError::InvalidConfig(format!("invalid optimizer settings {self:?}")))
        }
    }
}

pub(crate) struct Minimized {
    pub params: Vec<f64>,
    pub history: Vec<TraceEntry>,
    pub converged: bool,
}

/// Minimizes `f` from `init`. The history starts with `f(init)` and ends
/// with the objective at the returned parameters.
pub(crate) fn minimize<F>(opt: &Optimizer, init: Vec<f64>, seed: u64, mut f: F) -> Result<Minimized, AlgoError>
where
    F: FnMut(&[f64]) -> Result<f64, AlgoError>,
{
    opt.validate()?;
    match *opt {
        Optimizer::CoordinateDescent { max_sweeps, tolerance } => coordinate_descent(init, max_sweeps, tolerance, f),
        Optimizer::Spsa { iterations, a, c, alpha, gamma, stability } => {
            let mut rng = rng_from_seed(seed);
            let mut theta = init;
            let mut history = vec![entry(f(&theta)?, &theta)];
            for k in 0..iterations {
                let ak = a / (k as f64 + 1.0 + stability).powf(alpha);
                let ck = c / (k as f64 + 1.0).powf(gamma);
                let delta: Vec<f64> = (0..theta.len()).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect();
                let plus: Vec<f64> = theta.iter().zip(&delta).map(|(t, d)| t + ck * d).collect();
                let minus: Vec<f64> = theta.iter().zip(&delta).map(|(t, d)| t - ck * d).collect();
                let (fp, fm) = (f(&plus)?, f(&minus)?);
                let g = (fp - fm) / (2.0 * ck);
                for (t, d) in theta.iter_mut().zip(&delta) {
                    *t = normalize_angle(*t - ak * g * d);
                }
                history.push(entry(0.5 * (fp + fm), &theta));
            }
            if iterations > 0 {
                history.push(entry(f(&theta)?, &theta));
            }
            Ok(Minimized { params: theta, history, converged: false })
        }
    }
}

fn coordinate_descent<F>(mut theta: Vec<f64>, sweeps: usize, tol: f64, mut f: F) -> Result<Minimized, AlgoError>
where
    F: FnMut(&[f64]) -> Result<f64, AlgoError>,
{
    let mut current = f(&theta)?;
    let mut history = vec![entry(current, &theta)];
    let mut converged = false;
    for _ in 0..sweeps {
        let mut e0 = current;
        for d in 0..theta.len() {
            let base = theta[d];
            theta[d] = base + FRAC_PI_2;
            let ep = f(&theta)?;
            theta[d] = base - FRAC_PI_2;
            let em = f(&theta)?;
            // f(base + x) = a + b cos x + c sin x
            let a = 0.5 * (ep + em);
            let c = 0.5 * (ep - em);
            let b = e0 - a;
            let x = (-c).atan2(-b);
            let predicted = a - b.hypot(c);
            if predicted < e0 {
                theta[d] = normalize_angle(base + x);
                e0 = predicted;
            } else {
                theta[d] = base;
            }
        }
        let next = f(&theta)?;
        history.push(entry(next, &theta));
        let change = (current - next).abs();
        current = next;
        if change <= tol {
            converged = true;
            break;
        }
    }
    Ok(Minimized { params: theta, history, converged })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sinusoid(t: &[f64]) -> Result<f64, AlgoError> {
        Ok(t.iter().enumerate().map(|(i, x)| (x - 0.3 * i as f64).cos()).sum())
    }

    #[test]
    fn coordinate_descent_solves_separable_sinusoids() {
        let m = minimize(&Optimizer::coordinate_descent(5), vec![0.1, 2.0, -1.0], 0, sinusoid).unwrap();
        assert!(m.converged);
        assert!((m.history.last().unwrap().objective + 3.0).abs() < 1e-12);
    }

    #[test]
    fn spsa_is_seeded() {
        let opt = Optimizer::spsa(50);
        let a = minimize(&opt, vec![0.5, 0.5], 7, sinusoid).unwrap();
        let b = minimize(&opt, vec![0.5, 0.5], 7, sinusoid).unwrap();
        assert_eq!(a.history, b.history);
        assert!(a.history.last().unwrap().objective < a.history[0].objective);
    }

    #[test]
    fn zero_iterations_records_initial_point() {
        let m = minimize(&Optimizer::coordinate_descent(0), vec![1.0], 0, sinusoid).unwrap();
        assert_eq!(m.history.len(), 1);
        assert_eq!(m.params, vec![1.0]);
    }
}
