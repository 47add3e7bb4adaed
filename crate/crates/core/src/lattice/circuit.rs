use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    H,
    X,
    Z,
    #[serde(rename = "RZ")]
    Rz,
    T,
    #[serde(rename = "Tdg")]
    Tdg,
    #[serde(rename = "CX")]
    Cx,
    #[serde(rename = "SWAP")]
    Swap,
    /// Multi-controlled X placeholder; operands are controls followed by the target.
    #[serde(rename = "MCX")]
    Mcx,
}

impl GateKind {
    fn arity(self) -> Option<usize> {
        match self {
            GateKind::H | GateKind::X | GateKind::Z | GateKind::Rz | GateKind::T | GateKind::Tdg => {
                Some(1)
            }
            GateKind::Cx | GateKind::Swap => Some(2),
            GateKind::Mcx => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct GateRepr {
    kind: GateKind,
    qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GateRepr", into = "GateRepr")]
pub struct Gate {
    kind: GateKind,
    qubits: Vec<usize>,
    theta: Option<f64>,
}

impl TryFrom<GateRepr> for Gate {
    type Error = Error;

    fn try_from(r: GateRepr) -> Result<Self> {
        Gate::new(r.kind, r.qubits, r.theta)
    }
}

impl From<Gate> for GateRepr {
    fn from(g: Gate) -> Self {
        GateRepr {
            kind: g.kind,
            qubits: g.qubits,
            theta: g.theta,
        }
    }
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<usize>, theta: Option<f64>) -> Result<Self> {
        match kind.arity() {
            Some(n) if qubits.len() != n => {
                return Err(Error::config(format!(
                    "{kind:?} takes {n} operand(s), got {}",
                    qubits.len()
                )))
            }
            None if qubits.len() < 2 => {
                return Err(Error::config("MCX needs at least one control and a target"))
            }
            _ => {}
        }
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(Error::config(format!("repeated operand {q} in {kind:?}")));
            }
        }
        let theta = match (kind, theta) {
            (GateKind::Rz, Some(t)) if t.is_finite() => Some(t),
            (GateKind::Rz, _) => return Err(Error::config("RZ needs a finite theta")),
            (_, Some(_)) => return Err(Error::config(format!("{kind:?} takes no theta"))),
            (_, None) => None,
        };
        Ok(Self { kind, qubits, theta })
    }

    fn single(kind: GateKind, q: usize) -> Self {
        Self { kind, qubits: vec![q], theta: None }
    }

    pub fn h(q: usize) -> Self {
        Self::single(GateKind::H, q)
    }

    pub fn x(q: usize) -> Self {
        Self::single(GateKind::X, q)
    }

    pub fn z(q: usize) -> Self {
        Self::single(GateKind::Z, q)
    }

    pub fn t(q: usize) -> Self {
        Self::single(GateKind::T, q)
    }

    pub fn tdg(q: usize) -> Self {
        Self::single(GateKind::Tdg, q)
    }

    pub fn rz(q: usize, theta: f64) -> Self {
        Self { kind: GateKind::Rz, qubits: vec![q], theta: Some(theta) }
    }

    /// Panics if `control == target`.
    pub fn cx(control: usize, target: usize) -> Self {
        assert_ne!(control, target, "CX operands must differ");
        Self { kind: GateKind::Cx, qubits: vec![control, target], theta: None }
    }

    /// Panics if `a == b`.
    pub fn swap(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "SWAP operands must differ");
        Self { kind: GateKind::Swap, qubits: vec![a, b], theta: None }
    }

    pub fn mcx(controls: &[usize], target: usize) -> Result<Self> {
        let mut qubits = controls.to_vec();
        qubits.push(target);
        Self::new(GateKind::Mcx, qubits, None)
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn theta(&self) -> Option<f64> {
        self.theta
    }

    pub fn is_two_qubit(&self) -> bool {
        self.qubits.len() == 2
    }

    pub fn inverse(&self) -> Self {
        let mut g = self.clone();
        match self.kind {
            GateKind::T => g.kind = GateKind::Tdg,
            GateKind::Tdg => g.kind = GateKind::T,
            GateKind::Rz => g.theta = self.theta.map(|t| -t),
            _ => {}
        }
        g
    }

    /// Same gate with every operand passed through `f`.
    pub fn remapped(&self, f: impl Fn(usize) -> usize) -> Self {
        Self {
            kind: self.kind,
            qubits: self.qubits.iter().map(|&q| f(q)).collect(),
            theta: self.theta,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.kind)?;
        if let Some(t) = self.theta {
            write!(f, "({t})")?;
        }
        write!(f, " {:?}", self.qubits)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct CircuitRepr {
    n: usize,
    gates: Vec<Gate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CircuitRepr", into = "CircuitRepr")]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl TryFrom<CircuitRepr> for Circuit {
    type Error = Error;

    fn try_from(r: CircuitRepr) -> Result<Self> {
        Circuit::from_gates(r.n, r.gates)
    }
}

impl From<Circuit> for CircuitRepr {
    fn from(c: Circuit) -> Self {
        CircuitRepr { n: c.n_qubits, gates: c.gates }
    }
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, gates: Vec::new() }
    }

    pub fn from_gates(n_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Self::new(n_qubits);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        if let Some(&q) = gate.qubits.iter().find(|&&q| q >= self.n_qubits) {
            return Err(Error::IndexOutOfRange { what: "qubit", index: q, len: self.n_qubits });
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.push(g))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn count_two_qubit(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// True when only one-qubit gates and CX remain.
    pub fn is_decomposed(&self) -> bool {
        self.gates
            .iter()
            .all(|g| g.qubits.len() == 1 || g.kind == GateKind::Cx)
    }

    pub fn inverse(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Copy of the circuit over a register of `n_qubits ≥ self.n_qubits()`.
    pub fn widened(&self, n_qubits: usize) -> Result<Self> {
        if n_qubits < self.n_qubits {
            return Err(Error::Capacity { circuit: self.n_qubits, map: n_qubits });
        }
        Ok(Self { n_qubits, gates: self.gates.clone() })
    }

    /// Per-qubit gate counts; the maximum is a lower bound on depth.
    pub fn gate_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n_qubits];
        for g in &self.gates {
            for &q in &g.qubits {
                counts[q] += 1;
            }
        }
        counts
    }
}
