use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use num_complex::Complex64;

use super::circuit::{Circuit, Gate, GateKind};
use crate::spectrum::CMatrix;
use crate::{Error, Result};

pub const MAX_SIM_QUBITS: usize = 20;
pub const MAX_UNITARY_QUBITS: usize = 8;

type Mat2 = [[Complex64; 2]; 2];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn one_qubit_matrix(gate: &Gate) -> Mat2 {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    match gate.kind() {
        GateKind::H => {
            let h = c(FRAC_1_SQRT_2, 0.0);
            [[h, h], [h, -h]]
        }
        GateKind::X => [[z, o], [o, z]],
        GateKind::Z => [[o, z], [z, -o]],
        GateKind::T => [[o, z], [z, Complex64::from_polar(1.0, FRAC_PI_4)]],
        GateKind::Tdg => [[o, z], [z, Complex64::from_polar(1.0, -FRAC_PI_4)]],
        GateKind::Rz => {
            let t = gate.theta().unwrap_or(0.0);
            [
                [Complex64::from_polar(1.0, -t / 2.0), z],
                [z, Complex64::from_polar(1.0, t / 2.0)],
            ]
        }
        GateKind::Cx | GateKind::Swap | GateKind::Mcx => unreachable!("not a one-qubit gate"),
    }
}

/// Apply `gate` in place. Qubit `q` is bit `q` of the amplitude index.
pub fn apply_gate(state: &mut [Complex64], gate: &Gate) {
    let qs = gate.qubits();
    match gate.kind() {
        GateKind::Cx => {
            let (cm, tm) = (1usize << qs[0], 1usize << qs[1]);
            for i in 0..state.len() {
                if i & cm != 0 && i & tm == 0 {
                    state.swap(i, i | tm);
                }
            }
        }
        GateKind::Swap => {
            let (am, bm) = (1usize << qs[0], 1usize << qs[1]);
            for i in 0..state.len() {
                if i & am != 0 && i & bm == 0 {
                    state.swap(i, (i & !am) | bm);
                }
            }
        }
        GateKind::Mcx => {
            let (controls, target) = qs.split_at(qs.len() - 1);
            let cm = controls.iter().fold(0usize, |m, &q| m | 1 << q);
            let tm = 1usize << target[0];
            for i in 0..state.len() {
                if i & cm == cm && i & tm == 0 {
                    state.swap(i, i | tm);
                }
            }
        }
        _ => {
            let m = one_qubit_matrix(gate);
            let mask = 1usize << qs[0];
            for i in 0..state.len() {
                if i & mask == 0 {
                    let (a, b) = (state[i], state[i | mask]);
                    state[i] = m[0][0] * a + m[0][1] * b;
                    state[i | mask] = m[1][0] * a + m[1][1] * b;
                }
            }
        }
    }
}

fn check_size(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::Resource(format!(
            "{n} qubits exceeds the simulator limit of {limit}"
        )));
    }
    Ok(())
}

pub fn basis_state(n_qubits: usize, index: usize) -> Result<Vec<Complex64>> {
    check_size(n_qubits, MAX_SIM_QUBITS)?;
    let dim = 1usize << n_qubits;
    if index >= dim {
        return Err(Error::IndexOutOfRange { what: "basis state", index, len: dim });
    }
    let mut state = vec![Complex64::new(0.0, 0.0); dim];
    state[index] = Complex64::new(1.0, 0.0);
    Ok(state)
}

/// Run `circuit` on an arbitrary initial state of matching length.
pub fn simulate_from(circuit: &Circuit, mut state: Vec<Complex64>) -> Result<Vec<Complex64>> {
    check_size(circuit.n_qubits(), MAX_SIM_QUBITS)?;
    let dim = 1usize << circuit.n_qubits();
    if state.len() != dim {
        return Err(Error::config(format!(
            "state length {} does not match 2^{}",
            state.len(),
            circuit.n_qubits()
        )));
    }
    for g in circuit.gates() {
        apply_gate(&mut state, g);
    }
    Ok(state)
}

/// Final state from |0…0⟩.
pub fn simulate_statevector(circuit: &Circuit) -> Result<Vec<Complex64>> {
    simulate_from(circuit, basis_state(circuit.n_qubits(), 0)?)
}

/// Column `j` is the circuit applied to basis state `j`.
pub fn unitary_of(circuit: &Circuit) -> Result<CMatrix> {
    let n = circuit.n_qubits();
    check_size(n, MAX_UNITARY_QUBITS)?;
    let dim = 1usize << n;
    let mut u = CMatrix::zeros(dim, dim);
    for j in 0..dim {
        let col = simulate_from(circuit, basis_state(n, j)?)?;
        for (i, a) in col.into_iter().enumerate() {
            u[(i, j)] = a;
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn norm(s: &[Complex64]) -> f64 {
        s.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    #[test]
    fn empty_circuit_is_ground_state() {
        let s = simulate_statevector(&Circuit::new(3)).unwrap();
        assert_eq!(s[0], Complex64::new(1.0, 0.0));
        assert!(s[1..].iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn hadamard_amplitudes() {
        let c = Circuit::from_gates(1, vec![Gate::h(0)]).unwrap();
        let s = simulate_statevector(&c).unwrap();
        for a in s {
            assert!((a - Complex64::new(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn little_endian_convention() {
        let c = Circuit::from_gates(3, vec![Gate::x(0)]).unwrap();
        let s = simulate_statevector(&c).unwrap();
        assert_eq!(s[1].re, 1.0);
        let c = Circuit::from_gates(3, vec![Gate::x(2)]).unwrap();
        assert_eq!(simulate_statevector(&c).unwrap()[4].re, 1.0);
    }

    #[test]
    fn cx_and_swap_permutations() {
        let u = unitary_of(&Circuit::from_gates(2, vec![Gate::cx(0, 1)]).unwrap()).unwrap();
        // control is bit 0: |01⟩ (index 1) ↔ |11⟩ (index 3)
        let expect = [(0, 0), (3, 1), (2, 2), (1, 3)];
        for (i, j) in expect {
            assert_eq!(u[(i, j)].re, 1.0);
        }
        assert!((u.iter().map(|a| a.norm()).sum::<f64>() - 4.0).abs() < 1e-15);

        let s = unitary_of(&Circuit::from_gates(2, vec![Gate::swap(0, 1)]).unwrap()).unwrap();
        for (i, j) in [(0, 0), (2, 1), (1, 2), (3, 3)] {
            assert_eq!(s[(i, j)].re, 1.0);
        }
    }

    #[test]
    fn circuit_times_inverse_is_identity() {
        let c = Circuit::from_gates(
            3,
            vec![Gate::h(0), Gate::t(1), Gate::cx(0, 2), Gate::rz(2, 0.7), Gate::swap(1, 2), Gate::tdg(0)],
        )
        .unwrap();
        let mut full = c.clone();
        full.extend(c.inverse().gates().iter().cloned()).unwrap();
        let u = unitary_of(&full).unwrap();
        let dev = (u - CMatrix::identity(8, 8)).camax();
        assert!(dev < 1e-12, "{dev}");
    }

    #[test]
    fn unitary_is_unitary() {
        let c = Circuit::from_gates(3, vec![Gate::h(0), Gate::cx(0, 1), Gate::t(2), Gate::h(2), Gate::cx(2, 0)]).unwrap();
        let u = unitary_of(&c).unwrap();
        let dev = (u.adjoint() * &u - CMatrix::identity(8, 8)).camax();
        assert!(dev < 1e-12);
        let s = simulate_statevector(&c).unwrap();
        assert!((norm(&s) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn size_guards() {
        assert!(matches!(unitary_of(&Circuit::new(9)), Err(Error::Resource(_))));
        assert!(matches!(simulate_statevector(&Circuit::new(21)), Err(Error::Resource(_))));
        assert!(simulate_from(&Circuit::new(2), vec![Complex64::new(1.0, 0.0)]).is_err());
    }
}
