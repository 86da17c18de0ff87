use nalgebra::DMatrix;
use num_complex::Complex64;

use super::AlgoError;
use crate::sim::PauliSum;

/// Largest register accepted by [`exact_ground_energy`].
pub const MAX_DENSE_QUBITS: usize = 12;

/// Open-boundary transverse-field Ising chain `−Σ Z_i Z_{i+1} − g Σ X_i`.
pub fn tfim(num_qubits: usize, g: f64) -> Result<PauliSum, AlgoError> {
    if num_qubits == 0 {
        return Err(AlgoError::InvalidConfig("TFIM needs at least one site".into()));
    }
    let word = |letters: &[(usize, char)]| -> String {
        (0..num_qubits)
            .rev()
            .map(|q| letters.iter().find(|(p, _)| *p == q).map_or('I', |(_, c)| *c))
            .collect()
    };
    let mut terms = Vec::new();
    for i in 0..num_qubits.saturating_sub(1) {
        terms.push((-1.0, word(&[(i, 'Z'), (i + 1, 'Z')])));
    }
    for i in 0..num_qubits {
        terms.push((-g, word(&[(i, 'X')])));
    }
    Ok(PauliSum::new(num_qubits, terms)?)
}

/// Smallest eigenvalue of the dense matrix of `h`.
pub fn exact_ground_energy(h: &PauliSum) -> Result<f64, AlgoError> {
    let n = h.num_qubits();
    if n > MAX_DENSE_QUBITS {
        return Err(AlgoError::TooLarge { qubits: n, max: MAX_DENSE_QUBITS });
    }
    let dense = h.to_dense();
    let dim = dense.len();
    let real = dense.iter().flatten().all(|z| z.im.abs() < 1e-15);
    let min = if real {
        let m = DMatrix::<f64>::from_fn(dim, dim, |r, c| dense[r][c].re);
        m.symmetric_eigenvalues().min()
    } else {
        let m = DMatrix::<Complex64>::from_fn(dim, dim, |r, c| dense[r][c]);
        m.symmetric_eigenvalues().min()
    };
    Ok(min)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_z() {
        let h = PauliSum::new(1, vec![(1.0, "Z")]).unwrap();
        assert!((exact_ground_energy(&h).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_site_tfim_is_minus_sqrt5() {
        let h = tfim(2, 1.0).unwrap();
        assert_eq!(h.len(), 3);
        assert!((exact_ground_energy(&h).unwrap() + 5f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn identity_term_is_constant() {
        let h = PauliSum::new(3, vec![(0.7, "III")]).unwrap();
        assert!((exact_ground_energy(&h).unwrap() - 0.7).abs() < 1e-12);
    }

    #[test]
    fn complex_hermitian_spectrum() {
        // Y has eigenvalues ±1; X + Y has ±√2.
        let h = PauliSum::new(1, vec![(1.0, "X"), (1.0, "Y")]).unwrap();
        assert!((exact_ground_energy(&h).unwrap() + 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rejects_large_registers() {
        let h = PauliSum::new(13, vec![(1.0, "ZIIIIIIIIIIII")]).unwrap();
        assert!(matches!(exact_ground_energy(&h), Err(AlgoError::TooLarge { .. })));
    }
}
