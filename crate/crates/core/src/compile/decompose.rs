//! Lowering to a native gate set.
//!
//! 1-qubit gates go through ZYZ Euler angles (re-framed when the device
//! lacks RY or RZ), CNOT and CZ convert into each other by conjugating the
//! target with H, SWAP becomes three CNOTs and CCNOT the standard 6-CNOT
//! network. Angles are normalized to (-pi, pi]; Euler rotations below 1e-12
//! are dropped.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use super::gateset::NativeGateSet;
use super::CompileError;
use crate::sim::{single_qubit_matrix, Circuit, Gate, GateKind, Matrix2};

const ELIDE: f64 = 1e-12;

/// Rewrites `circuit` so that only kinds from `natives` remain.
pub fn decompose_to_native(circuit: &Circuit, natives: &NativeGateSet) -> Result<Circuit, CompileError> {
    circuit.validate()?;
    let mut out = Circuit::with_params(circuit.num_qubits, circuit.num_params);
    for gate in &circuit.gates {
        lower(gate, natives, &mut out.gates)?;
    }
    Ok(out)
}

/// Maps an angle to (-pi, pi].
pub fn normalize_angle(theta: f64) -> f64 {
    let mut t = theta % (2.0 * PI);
    if t <= -PI {
        t += 2.0 * PI;
    } else if t > PI {
        t -= 2.0 * PI;
    }
    t
}

fn lower(gate: &Gate, natives: &NativeGateSet, out: &mut Vec<Gate>) -> Result<(), CompileError> {
    if gate.kind == GateKind::Measure {
        return Err(CompileError::ClassicalControl);
    }
    if natives.contains(gate.kind) {
        out.push(gate.clone());
        return Ok(());
    }
    let t = &gate.targets;
    match gate.kind {
        GateKind::Cnot => {
            let (c, tg) = (t[0], t[1]);
            if natives.contains(GateKind::Cz) {
                for g in [Gate::h(tg), Gate::cz(c, tg), Gate::h(tg)] {
                    lower(&g, natives, out)?;
                }
            } else {
                return Err(CompileError::NonUniversal("no CZ to build CNOT".into()));
            }
        }
        GateKind::Cz => {
            let (a, b) = (t[0], t[1]);
            for g in [Gate::h(b), Gate::cnot(a, b), Gate::h(b)] {
                lower(&g, natives, out)?;
            }
        }
        GateKind::Swap => {
            let (a, b) = (t[0], t[1]);
            for g in [Gate::cnot(a, b), Gate::cnot(b, a), Gate::cnot(a, b)] {
                lower(&g, natives, out)?;
            }
        }
        GateKind::Ccnot => {
            for g in toffoli_network(t[0], t[1], t[2]) {
                lower(&g, natives, out)?;
            }
        }
        _ => lower_single(gate, natives, out),
    }
    Ok(())
}

/// Standard 6-CNOT Toffoli network with T = RZ(pi/4) up to global phase.
fn toffoli_network(a: usize, b: usize, t: usize) -> Vec<Gate> {
    let tg = |q| Gate::rz(q, FRAC_PI_4);
    let tdg = |q| Gate::rz(q, -FRAC_PI_4);
    vec![
        Gate::h(t),
        Gate::cnot(b, t),
        tdg(t),
        Gate::cnot(a, t),
        tg(t),
        Gate::cnot(b, t),
        tdg(t),
        Gate::cnot(a, t),
        tg(b),
        tg(t),
        Gate::h(t),
        Gate::cnot(a, b),
        tg(a),
        tdg(b),
        Gate::cnot(a, b),
    ]
}

/// Euler frame chosen from the available rotation axes: (outer, inner).
fn euler_frame(natives: &NativeGateSet) -> (GateKind, GateKind) {
    let has = |k| natives.one_qubit().contains(&k);
    if has(GateKind::Rz) && has(GateKind::Ry) {
        (GateKind::Rz, GateKind::Ry)
    } else if has(GateKind::Rz) && has(GateKind::Rx) {
        (GateKind::Rz, GateKind::Rx)
    } else {
        (GateKind::Rx, GateKind::Ry)
    }
}

fn rot(kind: GateKind, q: usize, angle: f64) -> Gate {
    Gate::rotation(kind, q, normalize_angle(angle))
}

fn lower_single(gate: &Gate, natives: &NativeGateSet, out: &mut Vec<Gate>) {
    let q = gate.targets[0];
    if let Some(slot) = gate.param_slot {
        // Keep the slot and conjugate the rotation into an available axis.
        let has = |k| natives.one_qubit().contains(&k);
        let param = |k| Gate::parameterized(k, q, slot);
        let seq = match gate.kind {
            GateKind::Rx if has(GateKind::Ry) && has(GateKind::Rz) => {
                [rot(GateKind::Rz, q, FRAC_PI_2), param(GateKind::Ry), rot(GateKind::Rz, q, -FRAC_PI_2)]
            }
            GateKind::Ry => {
                [rot(GateKind::Rz, q, -FRAC_PI_2), param(GateKind::Rx), rot(GateKind::Rz, q, FRAC_PI_2)]
            }
            GateKind::Rz => {
                [rot(GateKind::Rx, q, -FRAC_PI_2), param(GateKind::Ry), rot(GateKind::Rx, q, FRAC_PI_2)]
            }
            // A universal set lacking RX has both RY and RZ.
            _ => unreachable!("universal gate set covers every rotation axis"),
        };
        out.extend(seq);
        return;
    }
    let m = single_qubit_matrix(gate.kind, gate.angle.unwrap_or(0.0)).expect("1-qubit gate");
    let (outer, inner) = euler_frame(natives);
    // Conjugate into the ZYZ frame: V maps the native frame onto (Z, Y).
    let frame = match (outer, inner) {
        (GateKind::Rz, GateKind::Ry) => None,
        (GateKind::Rz, GateKind::Rx) => Some(single_qubit_matrix(GateKind::Rz, -FRAC_PI_2).unwrap()),
        _ => Some(single_qubit_matrix(GateKind::Ry, FRAC_PI_2).unwrap()),
    };
    let u = match &frame {
        Some(v) => mul(&mul(&dagger(v), &m), v),
        None => m,
    };
    let (alpha, beta, gamma) = zyz_angles(&u);
    for (kind, angle) in [(outer, gamma), (inner, beta), (outer, alpha)] {
        let angle = normalize_angle(angle);
        if angle.abs() >= ELIDE {
            out.push(Gate::rotation(kind, q, angle));
        }
    }
}

/// Angles with `U = e^{iφ} RZ(α) RY(β) RZ(γ)`.
pub fn zyz_angles(u: &Matrix2) -> (f64, f64, f64) {
    let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
    let s = det.sqrt();
    let a = u[0][0] / s;
    let b = u[1][0] / s;
    let beta = 2.0 * b.norm().atan2(a.norm());
    let arg_a = if a.norm() < 1e-14 { 0.0 } else { a.arg() };
    let arg_b = if b.norm() < 1e-14 { 0.0 } else { b.arg() };
    (arg_b - arg_a, beta, -arg_a - arg_b)
}

fn mul(x: &Matrix2, y: &Matrix2) -> Matrix2 {
    let mut r = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    r
}

fn dagger(x: &Matrix2) -> Matrix2 {
    [[x[0][0].conj(), x[1][0].conj()], [x[0][1].conj(), x[1][1].conj()]]
}
