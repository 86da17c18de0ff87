use serde::{Deserialize, Serialize};

use crate::sim::{Gate, PauliSum, PauliTerm};

/// Terms measurable in one shared basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermGroup {
    /// Indices into the source sum's terms.
    pub terms: Vec<usize>,
    /// Measurement basis letter per qubit (`I` where unconstrained).
    pub basis: String,
}

impl TermGroup {
    /// Rotations taking the group's basis to the computational basis.
    pub fn rotations(&self) -> Vec<Gate> {
        let n = self.basis.len();
        let mut gates = Vec::new();
        for (pos, letter) in self.basis.chars().enumerate() {
            let q = n - 1 - pos;
            match letter {
                'X' => gates.push(Gate::h(q)),
                'Y' => gates.push(Gate::rx(q, std::f64::consts::FRAC_PI_2)),
                _ => {}
            }
        }
        gates
    }
}

/// True when the two words agree wherever neither is the identity.
pub fn qubit_wise_commute(a: &str, b: &str) -> bool {
    a.bytes().zip(b.bytes()).all(|(x, y)| x == b'I' || y == b'I' || x == y)
}

fn merge_basis(basis: &mut String, word: &str) {
    *basis = basis
        .chars()
        .zip(word.chars())
        .map(|(b, w)| if b == 'I' { w } else { b })
        .collect();
}

/// Greedy first-fit qubit-wise-commuting grouping in term order. Identity
/// terms join the first group.
pub fn group_pauli_terms(h: &PauliSum) -> Vec<TermGroup> {
    let mut groups: Vec<TermGroup> = Vec::new();
    for (i, PauliTerm { word, .. }) in h.terms().iter().enumerate() {
        match groups.iter_mut().find(|g| qubit_wise_commute(&g.basis, word)) {
            Some(g) => {
                g.terms.push(i);
                merge_basis(&mut g.basis, word);
            }
            None => groups.push(TermGroup { terms: vec![i], basis: word.clone() }),
        }
    }
    groups
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum(words: &[&str]) -> PauliSum {
        PauliSum::new(words[0].len(), words.iter().map(|w| (1.0, *w)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(group_pauli_terms(&sum(&["ZZ", "ZI", "IZ"])).len(), 1);
        assert_eq!(group_pauli_terms(&sum(&["XX", "ZZ"])).len(), 2);
        assert_eq!(group_pauli_terms(&sum(&["XI", "IZ", "XZ"])).len(), 1);
    }

    #[test]
    fn groups_partition_and_commute() {
        let h = sum(&["XYZ", "ZZI", "XII", "IYZ", "ZIX", "YYY", "IIZ"]);
        let groups = group_pauli_terms(&h);
        let mut seen: Vec<usize> = groups.iter().flat_map(|g| g.terms.clone()).collect();
        seen.sort();
        assert_eq!(seen, (0..h.len()).collect::<Vec<_>>());
        for g in &groups {
            for &a in &g.terms {
                for &b in &g.terms {
                    assert!(qubit_wise_commute(&h.terms()[a].word, &h.terms()[b].word));
                }
            }
        }
    }
}
