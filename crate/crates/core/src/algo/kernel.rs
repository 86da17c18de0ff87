use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::data::LabeledDataset;
use super::{compiled_depth, AlgoError};
use crate::profile::ResourceLog;
use crate::sim::{derive_seed, run_from, run_statevector, sample_counts, Circuit, Gate, GateKind, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FeatureMapKind {
    /// `RY(x_k)` on qubit `k`.
    Angle,
    /// Per layer: `RY(x_k)` on every qubit, a linear `CZ` chain, `RZ(x_k)`.
    Layered { layers: usize },
    /// No gates at all; every point maps to `|0…0⟩`.
    Identity,
}

/// A parameterized circuit `U(x)` with one parameter slot per feature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMap {
    pub kind: FeatureMapKind,
    circuit: Circuit,
}

impl FeatureMap {
    pub fn new(kind: FeatureMapKind, dim: usize) -> Result<Self, AlgoError> {
        if dim == 0 {
            return Err(AlgoError::InvalidConfig("feature map needs at least one feature".into()));
        }
        let mut c = Circuit::with_params(dim, dim);
        match kind {
            FeatureMapKind::Angle => {
                for k in 0..dim {
                    c.push(Gate::parameterized(GateKind::Ry, k, k));
                }
            }
            FeatureMapKind::Layered { layers } => {
                if layers == 0 {
                    return Err(AlgoError::InvalidConfig("layered encoder needs layers ≥ 1".into()));
                }
                for _ in 0..layers {
                    for k in 0..dim {
                        c.push(Gate::parameterized(GateKind::Ry, k, k));
                    }
                    for k in 0..dim - 1 {
                        c.push(Gate::cz(k, k + 1));
                    }
                    for k in 0..dim {
                        c.push(Gate::parameterized(GateKind::Rz, k, k));
                    }
                }
            }
            FeatureMapKind::Identity => {}
        }
        Ok(FeatureMap { kind, circuit: c })
    }

    pub fn angle(dim: usize) -> Result<Self, AlgoError> {
        Self::new(FeatureMapKind::Angle, dim)
    }

    pub fn dim(&self) -> usize {
        self.circuit.num_params
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn state(&self, x: &[f64]) -> Result<StateVector, AlgoError> {
        self.check(x.len())?;
        Ok(run_statevector(&self.circuit, x)?)
    }

    fn check(&self, got: usize) -> Result<(), AlgoError> {
        if got != self.dim() {
            return Err(AlgoError::DimensionMismatch { expected: self.dim(), got });
        }
        Ok(())
    }

    /// The overlap circuit `U†(x_i)·U(x_j)`, fully bound.
    pub fn overlap_circuit(&self, xi: &[f64], xj: &[f64]) -> Result<Circuit, AlgoError> {
        self.check(xi.len())?;
        self.check(xj.len())?;
        let mut c = self.circuit.bind(xj)?;
        c.append(&self.circuit.bind(xi)?.inverse()?)?;
        Ok(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum KernelMode {
    Exact,
    Shots { shots: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelMatrix {
    pub values: Vec<Vec<f64>>,
    pub circuits_executed: u64,
    #[serde(skip)]
    pub resources: ResourceLog,
}

/// Quantum kernel `K_ij = |⟨0|U†(x_i)U(x_j)|0⟩|²`.
///
/// Only the `i < j` entries are executed, as `U(x_j)` followed by the
/// inverse of `U(x_i)` and reading `p(0…0)`; the diagonal is 1 and the lower
/// triangle mirrors the upper. In shot mode pair `k` (row-major over `i < j`)
/// samples with seed `seed + k`.
pub fn quantum_kernel_matrix(
    data: &LabeledDataset,
    map: &FeatureMap,
    mode: KernelMode,
    seed: u64,
) -> Result<KernelMatrix, AlgoError> {
    map.check(data.dim())?;
    if let KernelMode::Shots { shots: 0 } = mode {
        return Err(AlgoError::InvalidConfig("shots must be at least 1".into()));
    }
    let start = Instant::now();
    let n = data.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let x = data.features();
    let entries = pairs
        .par_iter()
        .enumerate()
        .map(|(k, &(i, j))| {
            let forward = run_statevector(&map.circuit, &x[j])?;
            let back = map.circuit.bind(&x[i])?.inverse()?;
            let out = run_from(&back, &[], forward)?;
            match mode {
                KernelMode::Exact => Ok(out.amplitude(0).norm_sqr()),
                KernelMode::Shots { shots } => {
                    let counts = sample_counts(&out, shots, derive_seed(seed, k as u64))?;
                    let zeros = "0".repeat(map.circuit.num_qubits);
                    Ok(counts.get(&zeros).copied().unwrap_or(0) as f64 / shots as f64)
                }
            }
        })
        .collect::<Result<Vec<f64>, AlgoError>>()?;

    let mut values = vec![vec![0.0; n]; n];
    for (i, row) in values.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for (&(i, j), v) in pairs.iter().zip(&entries) {
        values[i][j] = *v;
        values[j][i] = *v;
    }
    let mut log = ResourceLog::started("qk");
    if !pairs.is_empty() {
        let template = map.overlap_circuit(&x[0], &x[1])?;
        let depth = compiled_depth(&template)?;
        let shots = match mode {
            KernelMode::Exact => 0,
            KernelMode::Shots { shots } => shots,
        };
        log.circuits(pairs.len() as u64, n as u64, depth, shots);
    }
    log.finish(start.elapsed().as_secs_f64());
    Ok(KernelMatrix { values, circuits_executed: pairs.len() as u64, resources: log })
}

/// Exact kernel values between `x` and each training point.
pub fn kernel_row(train: &LabeledDataset, x: &[f64], map: &FeatureMap) -> Result<Vec<f64>, AlgoError> {
    let sx = map.state(x)?;
    train.features().iter().map(|t| Ok(map.state(t)?.fidelity(&sx))).collect()
}

/// Classical kernels used as baselines and oracles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassicalKernel {
    Linear,
    Polynomial { degree: u32, offset: f64 },
    Rbf { gamma: f64 },
    /// `Π_k cos²((x_k − y_k)/2)`, the closed form of the angle encoder.
    CosineProduct,
}

impl ClassicalKernel {
    pub fn eval(&self, a: &[f64], b: &[f64]) -> f64 {
        match *self {
            ClassicalKernel::Linear => dot(a, b),
            ClassicalKernel::Polynomial { degree, offset } => (dot(a, b) + offset).powi(degree as i32),
            ClassicalKernel::Rbf { gamma } => {
                (-gamma * a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>()).exp()
            }
            ClassicalKernel::CosineProduct => a.iter().zip(b).map(|(x, y)| ((x - y) / 2.0).cos().powi(2)).product(),
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn classical_kernel_matrix(points: &[Vec<f64>], kernel: ClassicalKernel) -> Vec<Vec<f64>> {
    points.iter().map(|a| points.iter().map(|b| kernel.eval(a, b)).collect()).collect()
}

/// Ridge-regularized least-squares kernel classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelClassifier {
    pub alpha: Vec<f64>,
    pub ridge: f64,
    /// Set when all training labels agree.
    pub constant: Option<f64>,
    pub training_accuracy: f64,
}

impl KernelClassifier {
    pub fn decision(&self, k_row: &[f64]) -> f64 {
        match self.constant {
            Some(c) => c,
            None => self.alpha.iter().zip(k_row).map(|(a, k)| a * k).sum(),
        }
    }

    pub fn predict(&self, k_row: &[f64]) -> f64 {
        if self.decision(k_row) >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn accuracy(&self, k_rows: &[Vec<f64>], labels: &[f64]) -> f64 {
        if labels.is_empty() {
            return 1.0;
        }
        let hits = k_rows.iter().zip(labels).filter(|(r, &y)| self.predict(r) == y).count();
        hits as f64 / labels.len() as f64
    }
}

/// Solves `(K + λI)α = y` for labels in `{−1, +1}`.
pub fn train_kernel_classifier(k: &[Vec<f64>], labels: &[f64], ridge: f64) -> Result<KernelClassifier, AlgoError> {
    if !(ridge > 0.0) {
        return Err(AlgoError::RidgeRequired(ridge));
    }
    let n = labels.len();
    if k.len() != n || k.iter().any(|r| r.len() != n) {
        return Err(AlgoError::DimensionMismatch { expected: n, got: k.len() });
    }
    if labels.iter().any(|&y| y != 1.0 && y != -1.0) {
        return Err(AlgoError::NonBinaryLabels("labels must be ±1".into()));
    }
    if n > 0 && labels.iter().all(|&y| y == labels[0]) {
        return Ok(KernelClassifier { alpha: vec![0.0; n], ridge, constant: Some(labels[0]), training_accuracy: 1.0 });
    }
    let m = DMatrix::from_fn(n, n, |i, j| k[i][j] + if i == j { ridge } else { 0.0 });
    let y = DVector::from_column_slice(labels);
    let alpha = match m.clone().cholesky() {
        Some(ch) => ch.solve(&y),
        None => m.lu().solve(&y).ok_or_else(|| AlgoError::Singular("K + λI".into()))?,
    };
    let mut clf = KernelClassifier { alpha: alpha.iter().copied().collect(), ridge, constant: None, training_accuracy: 0.0 };
    clf.training_accuracy = clf.accuracy(k, labels);
    Ok(clf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algo::toy;

    #[test]
    fn identity_encoder_gives_all_ones() {
        let d = toy::uniform(5, 2, 1);
        let map = FeatureMap::new(FeatureMapKind::Identity, 2).unwrap();
        let k = quantum_kernel_matrix(&d, &map, KernelMode::Exact, 0).unwrap();
        assert!(k.values.iter().flatten().all(|v| (v - 1.0).abs() < 1e-12));
        assert_eq!(k.circuits_executed, 10);
    }

    #[test]
    fn angle_kernel_matches_closed_form() {
        let d = toy::uniform(6, 3, 2);
        let k = quantum_kernel_matrix(&d, &FeatureMap::angle(3).unwrap(), KernelMode::Exact, 0).unwrap();
        let oracle = classical_kernel_matrix(d.features(), ClassicalKernel::CosineProduct);
        for (a, b) in k.values.iter().flatten().zip(oracle.iter().flatten()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn identical_points_overlap_fully() {
        let x = vec![0.3, -1.2];
        let d = LabeledDataset::new(vec![x.clone(), x], vec![1, -1]).unwrap();
        let map = FeatureMap::new(FeatureMapKind::Layered { layers: 2 }, 2).unwrap();
        let k = quantum_kernel_matrix(&d, &map, KernelMode::Exact, 0).unwrap();
        assert!((k.values[0][1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch() {
        let d = toy::uniform(3, 2, 0);
        assert!(matches!(
            quantum_kernel_matrix(&d, &FeatureMap::angle(3).unwrap(), KernelMode::Exact, 0),
            Err(AlgoError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn identity_kernel_classifier() {
        let k: Vec<Vec<f64>> = (0..4).map(|i| (0..4).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        let y = [1.0, -1.0, -1.0, 1.0];
        let clf = train_kernel_classifier(&k, &y, 1e-9).unwrap();
        for (a, b) in clf.alpha.iter().zip(&y) {
            assert!((a - b).abs() < 1e-6);
        }
        assert_eq!(clf.training_accuracy, 1.0);
    }

    #[test]
    fn constant_labels_and_ridge_required() {
        let k = vec![vec![1.0, 0.5], vec![0.5, 1.0]];
        let clf = train_kernel_classifier(&k, &[1.0, 1.0], 0.1).unwrap();
        assert_eq!(clf.constant, Some(1.0));
        assert_eq!(clf.training_accuracy, 1.0);
        assert!(matches!(train_kernel_classifier(&k, &[1.0, -1.0], 0.0), Err(AlgoError::RidgeRequired(_))));
    }
}
