use std::f64::consts::{FRAC_PI_4, PI};

use super::circuit::{Circuit, Gate};
use crate::{Error, Result};

pub const MIN_GROVER_QUBITS: usize = 2;
pub const MAX_GROVER_QUBITS: usize = 10;
pub const MAX_MCX_CONTROLS: usize = 9;

/// floor(π/4 · √(2ⁿ))
pub fn optimal_iterations(n_qubits: usize) -> usize {
    (FRAC_PI_4 * (2f64).powi(n_qubits as i32).sqrt()).floor() as usize
}

fn toffoli(c0: usize, c1: usize, t: usize) -> Vec<Gate> {
    vec![
        Gate::h(t),
        Gate::cx(c1, t),
        Gate::tdg(t),
        Gate::cx(c0, t),
        Gate::t(t),
        Gate::cx(c1, t),
        Gate::tdg(t),
        Gate::cx(c0, t),
        Gate::t(c1),
        Gate::t(t),
        Gate::h(t),
        Gate::cx(c0, c1),
        Gate::t(c0),
        Gate::tdg(c1),
        Gate::cx(c0, c1),
    ]
}

/// Multi-controlled phase diag(1, …, 1, e^{iθ}) on `qubits`, up to global phase.
///
/// The phase on the all-ones state is θ·x₁⋯x_k. Writing the last qubit as the
/// target, the terms containing it are emitted as parity rotations walked in
/// Gray-code order, and the remaining product over the controls recurses
/// with θ/2.
fn mc_phase(qubits: &[usize], theta: f64, out: &mut Vec<Gate>) {
    let (&target, controls) = qubits.split_last().expect("at least one qubit");
    if controls.is_empty() {
        out.push(Gate::rz(target, theta));
        return;
    }
    let m = controls.len();
    let lambda = theta / (1u64 << m) as f64;
    let mut prev = 0usize;
    for i in 0..1usize << m {
        let gray = i ^ (i >> 1);
        let flipped = gray ^ prev;
        if flipped != 0 {
            out.push(Gate::cx(controls[flipped.trailing_zeros() as usize], target));
        }
        let sign = if gray.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        out.push(Gate::rz(target, sign * lambda));
        prev = gray;
    }
    for (bit, &c) in controls.iter().enumerate() {
        if prev >> bit & 1 == 1 {
            out.push(Gate::cx(c, target));
        }
    }
    mc_phase(controls, theta / 2.0, out);
}

/// Ancilla-free multi-controlled X on arbitrary qubits.
pub fn mcx_gates(controls: &[usize], target: usize) -> Result<Vec<Gate>> {
    if controls.is_empty() || controls.len() > MAX_MCX_CONTROLS {
        return Err(Error::config(format!(
            "MCX supports 1..={MAX_MCX_CONTROLS} controls, got {}",
            controls.len()
        )));
    }
    if controls.contains(&target) {
        return Err(Error::config("MCX target is also a control"));
    }
    Ok(match controls {
        [c] => vec![Gate::cx(*c, target)],
        [c0, c1] => toffoli(*c0, *c1, target),
        _ => {
            let mut qubits = controls.to_vec();
            qubits.push(target);
            let mut out = vec![Gate::h(target)];
            mc_phase(&qubits, PI, &mut out);
            out.push(Gate::h(target));
            out
        }
    })
}

/// MCX with controls `0..n_controls` and target `n_controls`.
pub fn mcx_decompose(n_controls: usize) -> Result<Vec<Gate>> {
    let controls: Vec<usize> = (0..n_controls).collect();
    mcx_gates(&controls, n_controls)
}

/// Phase flip of the all-ones state of `qubits`, target the last qubit.
pub fn mcz_gates(qubits: &[usize]) -> Result<Vec<Gate>> {
    let (&target, controls) = qubits
        .split_last()
        .ok_or_else(|| Error::config("MCZ needs qubits"))?;
    if controls.is_empty() {
        return Ok(vec![Gate::z(target)]);
    }
    let mut out = vec![Gate::h(target)];
    out.extend(mcx_gates(controls, target)?);
    out.push(Gate::h(target));
    Ok(out)
}

fn parse_marked(n: usize, marked: &str) -> Result<Vec<bool>> {
    if marked.len() != n {
        return Err(Error::config(format!(
            "marked bitstring '{marked}' must have length {n}"
        )));
    }
    // rightmost character is qubit 0
    marked
        .chars()
        .rev()
        .map(|ch| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Error::config(format!("marked bitstring '{marked}' is not binary"))),
        })
        .collect()
}

/// Grover search over `n_qubits` with the given marked bitstring (all ones by
/// default), decomposed to one-qubit gates and CX.
///
/// The bitstring is read with its rightmost character as qubit 0, so
/// `"011"` marks basis index 3.
pub fn grover_circuit(n_qubits: usize, marked: Option<&str>, iterations: Option<usize>) -> Result<Circuit> {
    if !(MIN_GROVER_QUBITS..=MAX_GROVER_QUBITS).contains(&n_qubits) {
        return Err(Error::config(format!(
            "Grover circuit supports {MIN_GROVER_QUBITS}..={MAX_GROVER_QUBITS} qubits, got {n_qubits}"
        )));
    }
    let bits = match marked {
        Some(s) => parse_marked(n_qubits, s)?,
        None => vec![true; n_qubits],
    };
    let k = iterations.unwrap_or_else(|| optimal_iterations(n_qubits));
    let all: Vec<usize> = (0..n_qubits).collect();
    let mcz = mcz_gates(&all)?;
    let zeros: Vec<usize> = all.iter().copied().filter(|&q| !bits[q]).collect();

    let mut c = Circuit::new(n_qubits);
    c.extend(all.iter().map(|&q| Gate::h(q)))?;
    for _ in 0..k {
        c.extend(zeros.iter().map(|&q| Gate::x(q)))?;
        c.extend(mcz.iter().cloned())?;
        c.extend(zeros.iter().map(|&q| Gate::x(q)))?;

        c.extend(all.iter().map(|&q| Gate::h(q)))?;
        c.extend(all.iter().map(|&q| Gate::x(q)))?;
        c.extend(mcz.iter().cloned())?;
        c.extend(all.iter().map(|&q| Gate::x(q)))?;
        c.extend(all.iter().map(|&q| Gate::h(q)))?;
    }
    Ok(c)
}
