use std::collections::{BTreeSet, VecDeque};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::distance::distance_matrix;
use super::layout::Layout;
use crate::lattice::{Circuit, CouplingMap, Gate, GateKind};
use crate::{Error, Result};

pub const LOOKAHEAD_GATES: usize = 20;
pub const LOOKAHEAD_WEIGHT: f64 = 0.5;
/// Non-productive SWAPs allowed per physical qubit before forcing progress.
pub const ESCAPE_FACTOR: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoutedCircuit {
    pub circuit: Circuit,
    pub initial_layout: Layout,
    pub final_layout: Layout,
    pub swaps_inserted: usize,
}

struct Dag {
    successors: Vec<Vec<usize>>,
    n_preds: Vec<usize>,
}

impl Dag {
    fn new(circuit: &Circuit) -> Self {
        let len = circuit.len();
        let mut successors = vec![Vec::new(); len];
        let mut n_preds = vec![0; len];
        let mut last_on: Vec<Option<usize>> = vec![None; circuit.n_qubits()];
        for (i, g) in circuit.gates().iter().enumerate() {
            for &q in g.qubits() {
                if let Some(p) = last_on[q] {
                    if !successors[p].contains(&i) {
                        successors[p].push(i);
                        n_preds[i] += 1;
                    }
                }
                last_on[q] = Some(i);
            }
        }
        Self { successors, n_preds }
    }
}

struct Router<'a> {
    gates: &'a [Gate],
    map: &'a CouplingMap,
    dist: Vec<Vec<usize>>,
    layout: Layout,
}

impl Router<'_> {
    fn phys_pair(&self, gate: usize) -> (usize, usize) {
        let q = self.gates[gate].qubits();
        (self.layout.physical(q[0]), self.layout.physical(q[1]))
    }

    fn executable(&self, gate: usize) -> bool {
        if !self.gates[gate].is_two_qubit() {
            return true;
        }
        let (a, b) = self.phys_pair(gate);
        self.map.has_edge(a, b)
    }

    /// Up to [`LOOKAHEAD_GATES`] two-qubit successors of the front layer, breadth first.
    fn lookahead(&self, front: &BTreeSet<usize>, dag: &Dag) -> Vec<usize> {
        let mut seen: BTreeSet<usize> = front.clone();
        let mut queue: VecDeque<usize> = front.iter().copied().collect();
        let mut out = Vec::new();
        while let Some(g) = queue.pop_front() {
            for &s in &dag.successors[g] {
                if seen.insert(s) {
                    if self.gates[s].is_two_qubit() {
                        out.push(s);
                        if out.len() == LOOKAHEAD_GATES {
                            return out;
                        }
                    }
                    queue.push_back(s);
                }
            }
        }
        out
    }

    fn score(&self, front: &[usize], ahead: &[usize], swap: (usize, usize)) -> f64 {
        let moved = |p: usize| {
            if p == swap.0 {
                swap.1
            } else if p == swap.1 {
                swap.0
            } else {
                p
            }
        };
        let cost = |set: &[usize]| -> usize {
            set.iter()
                .map(|&g| {
                    let (a, b) = self.phys_pair(g);
                    self.dist[moved(a)][moved(b)]
                })
                .sum()
        };
        cost(front) as f64 + LOOKAHEAD_WEIGHT * cost(ahead) as f64
    }

    /// Lowest-score candidate swap, or `None` when no candidate lowers the score.
    fn best_swap(&self, front: &BTreeSet<usize>, dag: &Dag) -> Option<(usize, usize)> {
        let front_vec: Vec<usize> = front.iter().copied().collect();
        let touched: BTreeSet<usize> = front_vec
            .iter()
            .flat_map(|&g| {
                let (a, b) = self.phys_pair(g);
                [a, b]
            })
            .collect();
        let candidates: BTreeSet<usize> = touched
            .iter()
            .flat_map(|&p| {
                self.map
                    .neighbors(p)
                    .iter()
                    .map(move |&nb| self.map.edge_index(p, nb).expect("neighbor edge"))
            })
            .collect();
        let ahead = self.lookahead(front, dag);
        let current = self.score(&front_vec, &ahead, (usize::MAX, usize::MAX));
        let mut best: Option<(f64, usize)> = None;
        for e in candidates {
            let h = self.score(&front_vec, &ahead, self.map.edges()[e]);
            if h < current && best.is_none_or(|(bh, _)| h < bh) {
                best = Some((h, e));
            }
        }
        best.map(|(_, e)| self.map.edges()[e])
    }

    /// First neighbor swap that brings the oldest blocked gate's operands closer.
    fn forced_swap(&self, front: &BTreeSet<usize>) -> (usize, usize) {
        let oldest = *front.first().expect("front nonempty");
        let (a, b) = self.phys_pair(oldest);
        let x = *self
            .map
            .neighbors(a)
            .iter()
            .find(|&&x| self.dist[x][b] < self.dist[a][b])
            .expect("connected map has a shortest-path step");
        (a, x)
    }
}

/// Insert SWAPs so every two-qubit gate acts on a coupling-map edge.
///
/// Without an explicit layout, seed 0 starts from the identity placement and
/// any other seed from a seeded random permutation.
pub fn route(
    circuit: &Circuit,
    map: &CouplingMap,
    initial_layout: Option<Layout>,
    seed: u64,
) -> Result<RoutedCircuit> {
    let n_phys = map.n_qubits();
    if circuit.n_qubits() > n_phys {
        return Err(Error::Capacity { circuit: circuit.n_qubits(), map: n_phys });
    }
    if circuit.gates().iter().any(|g| g.kind() == GateKind::Mcx) {
        return Err(Error::config("route expects a circuit without MCX placeholders"));
    }
    let layout = match initial_layout {
        Some(l) if l.len() != n_phys => {
            return Err(Error::config(format!(
                "layout has {} entries for a {n_phys}-qubit map",
                l.len()
            )))
        }
        Some(l) => l,
        None if seed == 0 => Layout::identity(n_phys),
        None => Layout::random(n_phys, &mut ChaCha8Rng::seed_from_u64(seed)),
    };
    let initial_layout = layout.clone();
    let circuit = circuit.widened(n_phys)?;
    let dag = Dag::new(&circuit);
    let mut n_preds = dag.n_preds.clone();
    let mut router = Router {
        gates: circuit.gates(),
        map,
        dist: distance_matrix(map)?,
        layout,
    };

    let mut front: BTreeSet<usize> = (0..circuit.len()).filter(|&i| n_preds[i] == 0).collect();
    let mut out = Circuit::new(n_phys);
    let mut swaps = 0;
    let mut stalled = 0;
    // once forced, keep walking the oldest blocked gate until something executes
    let mut escaping = false;
    let escape_after = ESCAPE_FACTOR * n_phys;
    loop {
        // lowest index first, so an unblocked circuit comes out in its original order
        while let Some(g) = front.iter().copied().find(|&g| router.executable(g)) {
            stalled = 0;
            escaping = false;
            front.remove(&g);
            out.push(router.gates[g].remapped(|q| router.layout.physical(q)))?;
            for &s in &dag.successors[g] {
                n_preds[s] -= 1;
                if n_preds[s] == 0 {
                    front.insert(s);
                }
            }
        }
        if front.is_empty() {
            break;
        }
        if stalled >= escape_after {
            escaping = true;
        }
        let choice = if escaping { None } else { router.best_swap(&front, &dag) };
        let (a, b) = choice.unwrap_or_else(|| {
            escaping = true;
            router.forced_swap(&front)
        });
        router.layout.swap_physical(a, b);
        out.push(Gate::swap(a, b))?;
        swaps += 1;
        stalled += 1;
    }

    Ok(RoutedCircuit {
        circuit: out,
        initial_layout,
        final_layout: router.layout,
        swaps_inserted: swaps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{all_to_all_map, grover_circuit, heavy_hex_map, path_map};

    fn on_edges(r: &RoutedCircuit, map: &CouplingMap) -> bool {
        r.circuit
            .gates()
            .iter()
            .filter(|g| g.is_two_qubit())
            .all(|g| map.has_edge(g.qubits()[0], g.qubits()[1]))
    }

    #[test]
    fn all_to_all_needs_no_swaps() {
        let c = grover_circuit(4, None, None).unwrap();
        let r = route(&c, &all_to_all_map(4).unwrap(), None, 0).unwrap();
        assert_eq!(r.swaps_inserted, 0);
        assert_eq!(r.circuit.gates(), c.gates());
    }

    #[test]
    fn one_swap_on_a_path() {
        let c = Circuit::from_gates(3, vec![Gate::cx(0, 2)]).unwrap();
        let map = path_map(3).unwrap();
        let r = route(&c, &map, None, 0).unwrap();
        assert_eq!(r.swaps_inserted, 1);
        assert!(on_edges(&r, &map));
    }

    #[test]
    fn single_qubit_circuits_never_swap() {
        let c = Circuit::from_gates(5, (0..5).map(Gate::h).collect()).unwrap();
        for seed in 0..4 {
            assert_eq!(route(&c, &heavy_hex_map(5).unwrap(), None, seed).unwrap().swaps_inserted, 0);
        }
    }

    #[test]
    fn final_layout_tracks_swaps() {
        let c = grover_circuit(5, None, None).unwrap();
        let map = heavy_hex_map(5).unwrap();
        let r = route(&c, &map, None, 7).unwrap();
        assert!(on_edges(&r, &map));
        let mut layout = r.initial_layout.clone();
        for g in r.circuit.gates().iter().filter(|g| g.kind() == GateKind::Swap) {
            layout.swap_physical(g.qubits()[0], g.qubits()[1]);
        }
        assert_eq!(layout, r.final_layout);
    }

    #[test]
    fn capacity_and_layout_errors() {
        let c = Circuit::new(4);
        assert!(matches!(route(&c, &path_map(3).unwrap(), None, 0), Err(Error::Capacity { .. })));
        let c = Circuit::new(2);
        assert!(route(&c, &path_map(3).unwrap(), Some(Layout::identity(2)), 0).is_err());
        let mut mcx = Circuit::new(3);
        mcx.push(Gate::mcx(&[0, 1], 2).unwrap()).unwrap();
        assert!(route(&mcx, &path_map(3).unwrap(), None, 0).is_err());
    }

    #[test]
    fn deterministic_per_seed() {
        let c = grover_circuit(6, None, None).unwrap();
        let map = heavy_hex_map(6).unwrap();
        let a = serde_json::to_string(&route(&c, &map, None, 5).unwrap()).unwrap();
        let b = serde_json::to_string(&route(&c, &map, None, 5).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
