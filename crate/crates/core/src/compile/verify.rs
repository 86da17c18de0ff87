use num_complex::Complex64;

use super::route::QubitMap;
use super::CompileError;
use crate::sim::{run_from, Circuit, StateVector};

/// Largest logical register the brute-force check accepts.
pub const MAX_VERIFY_QUBITS: usize = 10;
const TOL: f64 = 1e-10;

fn embed(index: usize, layout: &[usize]) -> usize {
    layout.iter().enumerate().fold(0, |acc, (l, &p)| acc | ((index >> l & 1) << p))
}

/// Checks that `physical` implements `logical` up to one global phase.
///
/// Every computational basis state of the logical register is placed via
/// `map.initial`, run through both circuits, and the logical output is
/// compared against the physical one read through `map.final_layout`.
/// Unused physical qubits must start and end in `|0⟩`. Both circuits must be
/// fully bound.
pub fn verify_equivalence(logical: &Circuit, physical: &Circuit, map: &QubitMap) -> Result<bool, CompileError> {
    let n = logical.num_qubits;
    let m = physical.num_qubits;
    if n > MAX_VERIFY_QUBITS {
        return Err(CompileError::VerifyTooLarge(n));
    }
    if m < n || m > 2 * MAX_VERIFY_QUBITS {
        return Err(CompileError::TooManyQubits { logical: n, physical: m });
    }
    if map.initial.len() != n || map.final_layout.len() != n {
        return Err(CompileError::BadQubitMap);
    }
    if logical.num_params != 0 || physical.num_params != 0 {
        return Err(CompileError::Sim(crate::sim::SimError::UnboundParameters));
    }
    let mut phase: Option<Complex64> = None;
    for k in 0..1usize << n {
        let a = run_from(logical, &[], StateVector::basis(n, k)?)?;
        let b = run_from(physical, &[], StateVector::basis(m, embed(k, &map.initial))?)?;
        let mut expected = vec![Complex64::new(0.0, 0.0); 1 << m];
        for (j, amp) in a.amplitudes().iter().enumerate() {
            expected[embed(j, &map.final_layout)] = *amp;
        }
        let got = b.amplitudes();
        let ph = match phase {
            Some(p) => p,
            None => {
                let (idx, _) = expected
                    .iter()
                    .enumerate()
                    .fold((0, -1.0), |best, (i, e)| if e.norm() > best.1 { (i, e.norm()) } else { best });
                if got[idx].norm() < 1e-6 {
                    return Ok(false);
                }
                let p = got[idx] / expected[idx];
                let p = p / p.norm();
                phase = Some(p);
                p
            }
        };
        if expected.iter().zip(got).any(|(e, g)| (g - ph * e).norm() > TOL) {
            return Ok(false);
        }
    }
    Ok(true)
}
