//! Weighted sums of Pauli words.
//!
//! A word is a string over `{I, X, Y, Z}` whose leftmost letter acts on the
//! highest qubit, matching the bitstring rendering convention.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::state::StateVector;
use super::SimError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliTerm {
    pub coeff: f64,
    pub word: String,
}

impl PauliTerm {
    /// Letter acting on `qubit`.
    pub fn letter(&self, qubit: usize) -> char {
        let n = self.word.len();
        self.word.as_bytes()[n - 1 - qubit] as char
    }

    /// Bit masks `(x, z)` with Y contributing to both, plus the Y count.
    pub fn masks(&self) -> (usize, usize, u32) {
        let mut x = 0usize;
        let mut z = 0usize;
        let mut ny = 0u32;
        for q in 0..self.word.len() {
            match self.letter(q) {
                'X' => x |= 1 << q,
                'Z' => z |= 1 << q,
                'Y' => {
                    x |= 1 << q;
                    z |= 1 << q;
                    ny += 1;
                }
                _ => {}
            }
        }
        (x, z, ny)
    }

    pub fn is_identity(&self) -> bool {
        self.word.bytes().all(|b| b == b'I')
    }

    /// Qubits on which the word is not the identity.
    pub fn support(&self) -> Vec<usize> {
        (0..self.word.len()).filter(|&q| self.letter(q) != 'I').collect()
    }
}

/// `i^k` for `k` mod 4.
fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Amplitude factor of `P|k⟩ = factor · |k ⊕ x⟩`.
pub(crate) fn pauli_phase(k: usize, z_mask: usize, ny: u32) -> Complex64 {
    let sign = if (k & z_mask).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
    i_pow(ny) * sign
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliSum {
    num_qubits: usize,
    terms: Vec<PauliTerm>,
}

impl PauliSum {
    /// Builds a sum, validating words and merging duplicates (first
    /// occurrence keeps its position).
    pub fn new<S: Into<String>>(
        num_qubits: usize,
        terms: impl IntoIterator<Item = (f64, S)>,
    ) -> Result<Self, SimError> {
        if num_qubits == 0 {
            return Err(SimError::EmptyRegister);
        }
        let mut merged: Vec<PauliTerm> = Vec::new();
        for (coeff, word) in terms {
            let word: String = word.into();
            if word.len() != num_qubits || !word.bytes().all(|b| b"IXYZ".contains(&b)) {
                return Err(SimError::BadPauliWord { word, num_qubits });
            }
            if !coeff.is_finite() {
                return Err(SimError::Parse(format!("non-finite coefficient for {word}")));
            }
            match merged.iter_mut().find(|t| t.word == word) {
                Some(t) => t.coeff += coeff,
                None => merged.push(PauliTerm { coeff, word }),
            }
        }
        Ok(PauliSum { num_qubits, terms: merged })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of absolute coefficients; bounds the spectral radius.
    pub fn l1_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.abs()).sum()
    }

    /// Parses the text format: one `coefficient word` per line; blank lines
    /// and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self, SimError> {
        let mut terms = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(c), Some(w), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(SimError::Parse(format!("line {}: expected `coefficient word`", lineno + 1)));
            };
            let coeff: f64 = c
                .parse()
                .map_err(|_| SimError::Parse(format!("line {}: bad coefficient {c:?}", lineno + 1)))?;
            terms.push((coeff, w.to_ascii_uppercase()));
        }
        let n = terms.first().map(|(_, w)| w.len()).ok_or_else(|| SimError::Parse("no terms".into()))?;
        PauliSum::new(n, terms)
    }

    pub fn to_text(&self) -> String {
        self.terms.iter().map(|t| format!("{} {}\n", t.coeff, t.word)).collect()
    }

    /// `⟨ψ|H|ψ⟩`.
    pub fn expectation(&self, state: &StateVector) -> Result<f64, SimError> {
        if state.num_qubits() != self.num_qubits {
            return Err(SimError::QubitMismatch { expected: self.num_qubits, got: state.num_qubits() });
        }
        Ok(self.terms.iter().map(|t| t.coeff * term_expectation(t, state)).sum())
    }

    /// Dense matrix as row-major complex entries.
    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let dim = 1usize << self.num_qubits;
        let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for t in &self.terms {
            let (x, z, ny) = t.masks();
            for k in 0..dim {
                m[k ^ x][k] += t.coeff * pauli_phase(k, z, ny);
            }
        }
        m
    }
}

/// `⟨ψ|P|ψ⟩` for a single word (coefficient ignored).
pub fn term_expectation(term: &PauliTerm, state: &StateVector) -> f64 {
    let (x, z, ny) = term.masks();
    let amps = state.amplitudes();
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, a) in amps.iter().enumerate() {
        acc += amps[k ^ x].conj() * pauli_phase(k, z, ny) * a;
    }
    acc.re
}

/// `⟨φ|P|ψ⟩` for a single word (coefficient ignored).
pub fn term_matrix_element(term: &PauliTerm, bra: &StateVector, ket: &StateVector) -> Complex64 {
    let (x, z, ny) = term.masks();
    let b = bra.amplitudes();
    ket.amplitudes()
        .iter()
        .enumerate()
        .map(|(k, a)| b[k ^ x].conj() * pauli_phase(k, z, ny) * a)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{run_statevector, Circuit, Gate};

    fn bell() -> StateVector {
        let mut c = Circuit::new(2);
        c.push(Gate::h(0)).push(Gate::cnot(0, 1));
        run_statevector(&c, &[]).unwrap()
    }

    #[test]
    fn expectation_examples() {
        let z = PauliSum::new(1, [(1.0, "Z")]).unwrap();
        assert!((z.expectation(&StateVector::zero(1).unwrap()).unwrap() - 1.0).abs() < 1e-12);
        let zz = PauliSum::new(2, [(1.0, "ZZ")]).unwrap();
        assert!((zz.expectation(&bell()).unwrap() - 1.0).abs() < 1e-12);
        let zi = PauliSum::new(2, [(1.0, "ZI")]).unwrap();
        assert!(zi.expectation(&bell()).unwrap().abs() < 1e-12);
        let yy = PauliSum::new(2, [(1.0, "YY")]).unwrap();
        assert!((yy.expectation(&bell()).unwrap() + 1.0).abs() < 1e-12);
        assert!(zz.expectation(&StateVector::zero(1).unwrap()).is_err());
    }

    #[test]
    fn word_orientation() {
        // X on qubit 1 flips the most significant bit.
        let mut c = Circuit::new(2);
        c.push(Gate::x(1));
        let s = run_statevector(&c, &[]).unwrap();
        let zi = PauliSum::new(2, [(1.0, "ZI")]).unwrap();
        let iz = PauliSum::new(2, [(1.0, "IZ")]).unwrap();
        assert!((zi.expectation(&s).unwrap() + 1.0).abs() < 1e-12);
        assert!((iz.expectation(&s).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn duplicates_merge_and_text_round_trips() {
        let h = PauliSum::parse("# tfim\n-1.0 ZZ\n-1.0 XI\n\n-1.0 IX\n0.5 zz\n").unwrap();
        assert_eq!(h.len(), 3);
        assert_eq!(h.terms()[0].coeff, -0.5);
        assert_eq!(PauliSum::parse(&h.to_text()).unwrap(), h);
        assert!(PauliSum::parse("1.0 ZQ").is_err());
        assert!(PauliSum::parse("1.0 Z\n1.0 ZZ").is_err());
        assert!(PauliSum::parse("abc Z").is_err());
    }

    #[test]
    fn dense_matrix_is_hermitian() {
        let h = PauliSum::new(2, [(0.3, "XY"), (-1.1, "ZI"), (0.7, "YY")]).unwrap();
        let m = h.to_dense();
        for i in 0..4 {
            for j in 0..4 {
                assert!((m[i][j] - m[j][i].conj()).norm() < 1e-14);
            }
        }
    }
}
