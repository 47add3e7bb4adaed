use crate::lattice::{Circuit, CouplingMap};

use super::route::RoutedCircuit;

/// ASAP layer assignment. Layers are numbered from 1; skipped gates get `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub layer_of: Vec<Option<usize>>,
    pub depth: usize,
}

/// Place each gate in the earliest layer after its predecessors on shared
/// qubits. With `coupler_contention`, two-qubit gates whose edges belong to
/// the same cluster never share a layer. With `two_qubit_only`, one-qubit
/// gates are ignored.
pub fn schedule_circuit(
    circuit: &Circuit,
    map: &CouplingMap,
    coupler_contention: bool,
    two_qubit_only: bool,
) -> Schedule {
    let mut last_layer = vec![0usize; circuit.n_qubits()];
    let mut busy_clusters: Vec<Vec<usize>> = vec![Vec::new()];
    let mut layer_of = Vec::with_capacity(circuit.len());
    let mut depth = 0;
    for g in circuit.gates() {
        if two_qubit_only && !g.is_two_qubit() {
            layer_of.push(None);
            continue;
        }
        let mut layer = g.qubits().iter().map(|&q| last_layer[q]).max().unwrap_or(0) + 1;
        let cluster = if coupler_contention && g.is_two_qubit() {
            map.cluster_of(g.qubits()[0], g.qubits()[1])
        } else {
            None
        };
        if let Some(c) = cluster {
            while busy_clusters.get(layer).is_some_and(|cs| cs.contains(&c)) {
                layer += 1;
            }
            if busy_clusters.len() <= layer {
                busy_clusters.resize(layer + 1, Vec::new());
            }
            busy_clusters[layer].push(c);
        }
        for &q in g.qubits() {
            last_layer[q] = layer;
        }
        depth = depth.max(layer);
        layer_of.push(Some(layer));
    }
    Schedule { layer_of, depth }
}

/// Number of layers counting every gate as one layer occupant.
pub fn schedule_depth(routed: &RoutedCircuit, map: &CouplingMap, coupler_contention: bool) -> usize {
    schedule_circuit(&routed.circuit, map, coupler_contention, false).depth
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{hybrid_grid_map, path_map, Cluster, Gate};

    fn circuit(n: usize, gates: Vec<Gate>) -> Circuit {
        Circuit::from_gates(n, gates).unwrap()
    }

    #[test]
    fn disjoint_clusters_share_a_layer() {
        let edges = vec![(0, 1), (1, 2), (2, 3)];
        let clusters = vec![
            Cluster { coupler: 0, members: vec![0, 1], edges: vec![(0, 1)] },
            Cluster { coupler: 1, members: vec![2, 3], edges: vec![(2, 3)] },
        ];
        let map = CouplingMap::new(4, edges, clusters).unwrap();
        let c = circuit(4, vec![Gate::cx(0, 1), Gate::cx(2, 3)]);
        assert_eq!(schedule_circuit(&c, &map, true, false).depth, 1);
    }

    #[test]
    fn one_cluster_serializes_under_contention() {
        let map = hybrid_grid_map(2, 2).unwrap();
        let c = circuit(4, vec![Gate::cx(0, 1), Gate::cx(2, 3)]);
        assert_eq!(schedule_circuit(&c, &map, false, false).depth, 1);
        assert_eq!(schedule_circuit(&c, &map, true, false).depth, 2);
    }

    #[test]
    fn chains_are_serial() {
        let map = hybrid_grid_map(2, 2).unwrap();
        let c = circuit(4, vec![Gate::cx(0, 1), Gate::cx(1, 2), Gate::cx(2, 3)]);
        for contention in [false, true] {
            assert_eq!(schedule_circuit(&c, &map, contention, false).depth, 3);
        }
    }

    #[test]
    fn two_qubit_only_ignores_single_gates() {
        let map = path_map(2).unwrap();
        let c = circuit(2, vec![Gate::h(0), Gate::h(0), Gate::cx(0, 1), Gate::t(1)]);
        assert_eq!(schedule_circuit(&c, &map, false, false).depth, 4);
        let s = schedule_circuit(&c, &map, false, true);
        assert_eq!(s.depth, 1);
        assert_eq!(s.layer_of, vec![None, None, Some(1), None]);
    }

    #[test]
    fn later_gates_backfill_free_layers() {
        let map = hybrid_grid_map(2, 2).unwrap();
        // contention delays the second CX; the X after CX(0,1) shares its layer
        let c = circuit(4, vec![Gate::cx(0, 1), Gate::cx(2, 3), Gate::x(0)]);
        let s = schedule_circuit(&c, &map, true, false);
        assert_eq!(s.layer_of, vec![Some(1), Some(2), Some(2)]);
    }
}
