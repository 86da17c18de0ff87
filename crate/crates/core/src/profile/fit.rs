use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ProfileError;

/// Margin a more complex class must gain over the incumbent to be selected.
pub const COMPLEXITY_MARGIN: f64 = 0.02;
/// Alternatively, the factor by which it must shrink the incumbent's
/// unexplained share `1 − score`.
pub const COMPLEXITY_FACTOR: f64 = 4.0;
/// Minimum number of distinct sizes for a classification.
pub const MIN_SIZES: usize = 4;
const SCORE_FLOOR: f64 = -1.0e6;

/// Asymptotic growth class, ordered by complexity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScalingClass {
    Constant,
    Linear,
    Poly(u32),
    Exponential,
}

impl ScalingClass {
    pub const CANDIDATES: [ScalingClass; 5] = [
        ScalingClass::Constant,
        ScalingClass::Linear,
        ScalingClass::Poly(2),
        ScalingClass::Poly(3),
        ScalingClass::Exponential,
    ];

    fn free_parameters(self) -> usize {
        match self {
            ScalingClass::Exponential => 2,
            _ => 1,
        }
    }

    /// Polynomial degree, if any (`Constant` is degree 0).
    pub fn degree(self) -> Option<u32> {
        match self {
            ScalingClass::Constant => Some(0),
            ScalingClass::Linear => Some(1),
            ScalingClass::Poly(k) => Some(k),
            ScalingClass::Exponential => None,
        }
    }

    pub fn from_degree(k: u32) -> ScalingClass {
        match k {
            0 => ScalingClass::Constant,
            1 => ScalingClass::Linear,
            k => ScalingClass::Poly(k),
        }
    }
}

impl fmt::Display for ScalingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalingClass::Constant => write!(f, "constant"),
            ScalingClass::Linear => write!(f, "linear"),
            ScalingClass::Poly(k) => write!(f, "poly_{k}"),
            ScalingClass::Exponential => write!(f, "exponential"),
        }
    }
}

impl FromStr for ScalingClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "constant" => Ok(ScalingClass::Constant),
            "linear" => Ok(ScalingClass::Linear),
            "exponential" => Ok(ScalingClass::Exponential),
            _ => s
                .strip_prefix("poly_")
                .and_then(|k| k.parse::<u32>().ok())
                .filter(|&k| k >= 2)
                .map(ScalingClass::Poly)
                .ok_or_else(|| format!("unknown scaling class {s:?}")),
        }
    }
}

impl Serialize for ScalingClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ScalingClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateFit {
    pub class: ScalingClass,
    /// Fitted coefficients: `[a]` for `a·n^k`, `[a, b]` for `a·b^n`.
    pub params: Vec<f64>,
    pub r_squared: f64,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub variable: String,
    pub samples: Vec<(f64, f64)>,
    pub best_class: ScalingClass,
    pub best_r_squared: f64,
    /// Exponent of the free power-law fit `a·n^k`.
    pub power_exponent: f64,
    pub candidates: Vec<CandidateFit>,
}

impl ScalingFit {
    pub fn candidate(&self, class: ScalingClass) -> Option<&CandidateFit> {
        self.candidates.iter().find(|c| c.class == class)
    }
}

/// Fits `samples` of `(size, count)` against constant, `a·n`, `a·n²`,
/// `a·n³` and `a·bⁿ`.
///
/// Power laws are fitted in log–log space, the exponential in semilog
/// space, all by least squares on `ln count`. Each candidate gets the score
/// `1 − (RSS/TSS)·(m−1)/(m−k)` for `m` samples and `k` free parameters;
/// candidates are visited in order of complexity and replace the incumbent
/// only when they beat it by [`COMPLEXITY_MARGIN`] or leave at most
/// `1/`[`COMPLEXITY_FACTOR`] of its unexplained share `1 − score`.
///
/// The exponential is only eligible when it also fits better than a power
/// law `a·n^k` with free exponent, which has the same number of parameters.
/// Counts with an additive overhead such as `n + 3` bend in semilog space
/// much like a slow exponential; against the free power law they do not.
pub fn fit_scaling(variable: &str, samples: &[(f64, f64)]) -> Result<ScalingFit, ProfileError> {
    for &(n, c) in samples {
        if !(n > 0.0 && n.is_finite()) || !(c > 0.0 && c.is_finite()) {
            return Err(ProfileError::NonPositive { size: n, count: c });
        }
    }
    let mut sizes: Vec<f64> = samples.iter().map(|s| s.0).collect();
    sizes.sort_by(f64::total_cmp);
    sizes.dedup();
    if sizes.len() < MIN_SIZES {
        return Err(ProfileError::TooFewSamples { got: sizes.len(), need: MIN_SIZES });
    }

    let m = samples.len() as f64;
    let ly: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let mean = ly.iter().sum::<f64>() / m;
    let tss: f64 = ly.iter().map(|v| (v - mean).powi(2)).sum();
    let flat = tss <= 1e-20 * (1.0 + mean * mean) * m;

    let candidates: Vec<CandidateFit> = ScalingClass::CANDIDATES
        .iter()
        .map(|&class| {
            let (params, rss) = fit_class(class, samples, &ly);
            let k = class.free_parameters() as f64;
            let (r_squared, score) = if flat {
                let v = if rss <= 1e-18 * m { 1.0 } else { SCORE_FLOOR };
                (v, v)
            } else {
                let frac = rss / tss;
                let penalized = if m > k { frac * (m - 1.0) / (m - k) } else { f64::INFINITY };
                ((1.0 - frac).max(SCORE_FLOOR), (1.0 - penalized).max(SCORE_FLOOR))
            };
            CandidateFit { class, params, r_squared, score }
        })
        .collect();

    let log_n: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
    let (_, power_exponent, power_rss) = regress(&log_n, &ly);
    let (_, exp_rss) = fit_class(ScalingClass::Exponential, samples, &ly);
    let exp_eligible = flat || exp_rss < power_rss;

    let mut best = &candidates[0];
    for cand in &candidates[1..] {
        if cand.class == ScalingClass::Exponential && !exp_eligible {
            continue;
        }
        let gain = cand.score > best.score + COMPLEXITY_MARGIN;
        let shrink = (1.0 - cand.score) * COMPLEXITY_FACTOR < 1.0 - best.score;
        if gain || shrink {
            best = cand;
        }
    }
    Ok(ScalingFit {
        variable: variable.to_string(),
        samples: samples.to_vec(),
        best_class: best.class,
        best_r_squared: best.r_squared,
        power_exponent,
        candidates,
    })
}

fn fit_class(class: ScalingClass, samples: &[(f64, f64)], ly: &[f64]) -> (Vec<f64>, f64) {
    let m = samples.len() as f64;
    match class.degree() {
        Some(k) => {
            let resid: Vec<f64> =
                samples.iter().zip(ly).map(|(s, y)| y - k as f64 * s.0.ln()).collect();
            let log_a = resid.iter().sum::<f64>() / m;
            let rss = resid.iter().map(|r| (r - log_a).powi(2)).sum();
            (vec![log_a.exp()], rss)
        }
        None => {
            let xs: Vec<f64> = samples.iter().map(|s| s.0).collect();
            let (icpt, slope, rss) = regress(&xs, ly);
            (vec![icpt.exp(), slope.exp()], rss)
        }
    }
}

/// Ordinary least squares `y ≈ icpt + slope·x`; returns `(icpt, slope, rss)`.
fn regress(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let rss = xs.iter().zip(ys).map(|(x, y)| (y - icpt - slope * x).powi(2)).sum();
    (icpt, slope, rss)
}
