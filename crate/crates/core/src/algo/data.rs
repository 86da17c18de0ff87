use std::collections::BTreeSet;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::AlgoError;

/// Feature vectors with integer class labels (`±1` for binary tasks).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledDataset {
    features: Vec<Vec<f64>>,
    labels: Vec<i64>,
}

impl LabeledDataset {
    pub fn new(features: Vec<Vec<f64>>, labels: Vec<i64>) -> Result<Self, AlgoError> {
        if features.len() != labels.len() {
            return Err(AlgoError::Dataset(format!(
                "{} feature rows but {} labels",
                features.len(),
                labels.len()
            )));
        }
        let dim = features.first().map_or(0, Vec::len);
        if features.iter().any(|f| f.len() != dim) {
            return Err(AlgoError::Dataset("feature vectors differ in length".into()));
        }
        if features.iter().flatten().any(|v| !v.is_finite()) {
            return Err(AlgoError::Dataset("non-finite feature value".into()));
        }
        Ok(LabeledDataset { features, labels })
    }

    /// Reads CSV with a header row; the column named `label` holds the class
    /// and every other column is a feature, in file order.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self, AlgoError> {
        let mut rdr = csv::Reader::from_reader(reader);
        let headers = rdr.headers().map_err(|e| AlgoError::Dataset(e.to_string()))?.clone();
        let label_col = headers
            .iter()
            .position(|h| h.trim() == "label")
            .ok_or_else(|| AlgoError::Dataset("missing `label` column".into()))?;
        let mut features = Vec::new();
        let mut labels = Vec::new();
        for (row, record) in rdr.records().enumerate() {
            let record = record.map_err(|e| AlgoError::Dataset(e.to_string()))?;
            let parse = |s: &str| -> Result<f64, AlgoError> {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| AlgoError::Dataset(format!("row {}: bad number {s:?}", row + 1)))
            };
            let mut f = Vec::with_capacity(record.len().saturating_sub(1));
            for (col, field) in record.iter().enumerate() {
                if col == label_col {
                    let v = parse(field)?;
                    if v.fract() != 0.0 {
                        return Err(AlgoError::Dataset(format!("row {}: label {v} is not an integer", row + 1)));
                    }
                    labels.push(v as i64);
                } else {
                    f.push(parse(field)?);
                }
            }
            features.push(f);
        }
        Self::new(features, labels)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self, AlgoError> {
        let file = std::fs::File::open(path.as_ref())
            .map_err(|e| AlgoError::Dataset(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_csv(file)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for k in 0..self.dim() {
            out.push_str(&format!("x{k},"));
        }
        out.push_str("label\n");
        for (f, l) in self.features.iter().zip(&self.labels) {
            for v in f {
                out.push_str(&format!("{v},"));
            }
            out.push_str(&format!("{l}\n"));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.features.first().map_or(0, Vec::len)
    }

    pub fn features(&self) -> &[Vec<f64>] {
        &self.features
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn classes(&self) -> BTreeSet<i64> {
        self.labels.iter().copied().collect()
    }

    /// Labels as `±1`. Labels already in `{−1, +1}` are kept; any other
    /// pair of classes maps the smaller to `−1` and the larger to `+1`.
    pub fn binary_targets(&self) -> Result<Vec<f64>, AlgoError> {
        let classes = self.classes();
        if classes.iter().all(|c| *c == 1 || *c == -1) {
            return Ok(self.labels.iter().map(|&l| l as f64).collect());
        }
        if classes.len() != 2 {
            return Err(AlgoError::NonBinaryLabels(format!("{classes:?}")));
        }
        let low = *classes.iter().next().expect("two classes");
        Ok(self.labels.iter().map(|&l| if l == low { -1.0 } else { 1.0 }).collect())
    }

    /// The first `n` points.
    pub fn take(&self, n: usize) -> LabeledDataset {
        let n = n.min(self.len());
        LabeledDataset { features: self.features[..n].to_vec(), labels: self.labels[..n].to_vec() }
    }
}

/// Seeded synthetic datasets.
pub mod toy {
    use rand::Rng;

    use super::LabeledDataset;
    use crate::sim::rng_from_seed;

    use std::f64::consts::{FRAC_PI_2, PI};

    /// Two features in `[−π/2, π/2]`, label `sign(x0 + x1)`, with points
    /// closer than `0.3` to the boundary rejected.
    pub fn separable(n: usize, seed: u64) -> LabeledDataset {
        let mut rng = rng_from_seed(seed);
        let mut features = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        while features.len() < n {
            let x = [rng.gen_range(-FRAC_PI_2..FRAC_PI_2), rng.gen_range(-FRAC_PI_2..FRAC_PI_2)];
            let s = x[0] + x[1];
            if s.abs() < 0.3 {
                continue;
            }
            // Alternate classes so prefixes stay balanced.
            let want = if features.len() % 2 == 0 { 1 } else { -1 };
            if (s > 0.0) != (want > 0) {
                continue;
            }
            features.push(x.to_vec());
            labels.push(want);
        }
        LabeledDataset::new(features, labels).expect("well-formed")
    }

    /// Points in `[−π, π]²`; `+1` inside the radius enclosing half the
    /// square's area, `−1` outside. Classes alternate.
    pub fn circles(n: usize, seed: u64) -> LabeledDataset {
        let radius = (2.0 / PI).sqrt() * PI;
        let mut rng = rng_from_seed(seed);
        let mut features = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        while features.len() < n {
            let x = [rng.gen_range(-PI..PI), rng.gen_range(-PI..PI)];
            let inside = x[0].hypot(x[1]) < radius;
            let want = features.len() % 2 == 0;
            if inside != want {
                continue;
            }
            features.push(x.to_vec());
            labels.push(if inside { 1 } else { -1 });
        }
        LabeledDataset::new(features, labels).expect("well-formed")
    }

    /// Single feature: `0 → +1`, `π → −1`, repeated `n` times each.
    pub fn antipodal(n: usize) -> LabeledDataset {
        let mut features = Vec::new();
        let mut labels = Vec::new();
        for _ in 0..n {
            features.push(vec![0.0]);
            labels.push(1);
            features.push(vec![PI]);
            labels.push(-1);
        }
        LabeledDataset::new(features, labels).expect("well-formed")
    }

    /// `n` points with `dim` features uniform in `[−π, π)`, alternating labels.
    pub fn uniform(n: usize, dim: usize, seed: u64) -> LabeledDataset {
        let mut rng = rng_from_seed(seed);
        let features = (0..n).map(|_| (0..dim).map(|_| rng.gen_range(-PI..PI)).collect()).collect();
        let labels = (0..n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
        LabeledDataset::new(features, labels).expect("well-formed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let text = "a,label,b\n0.5,1,2\n-1,-1,3.5\n";
        let d = LabeledDataset::from_csv(text.as_bytes()).unwrap();
        assert_eq!(d.features(), &[vec![0.5, 2.0], vec![-1.0, 3.5]]);
        assert_eq!(d.labels(), &[1, -1]);
        let again = LabeledDataset::from_csv(d.to_csv().as_bytes()).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn csv_errors() {
        assert!(LabeledDataset::from_csv("a,b\n1,2\n".as_bytes()).is_err());
        assert!(LabeledDataset::from_csv("a,label\nx,1\n".as_bytes()).is_err());
        assert!(LabeledDataset::from_csv("a,label\n1,0.5\n".as_bytes()).is_err());
    }

    #[test]
    fn binary_mapping() {
        let d = LabeledDataset::new(vec![vec![0.0]; 3], vec![3, 7, 3]).unwrap();
        assert_eq!(d.binary_targets().unwrap(), vec![-1.0, 1.0, -1.0]);
        let d = LabeledDataset::new(vec![vec![0.0]; 3], vec![0, 1, 2]).unwrap();
        assert!(matches!(d.binary_targets(), Err(AlgoError::NonBinaryLabels(_))));
    }

    #[test]
    fn toys_are_seeded_and_balanced() {
        assert_eq!(toy::circles(20, 3), toy::circles(20, 3));
        let d = toy::separable(10, 1);
        assert_eq!(d.labels().iter().filter(|&&l| l == 1).count(), 5);
    }
}
