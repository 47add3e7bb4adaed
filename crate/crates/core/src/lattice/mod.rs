//! Coupling maps, Grover benchmark circuits and a statevector simulator.
//!
//! Qubit ordering is little-endian: qubit 0 is the least significant bit of
//! a basis-state index.

mod circuit;
mod coupling;
mod grover;
mod sim;

pub use circuit::{Circuit, Gate, GateKind};
pub use coupling::{
    all_to_all_map, heavy_hex_map, hybrid_grid_map, hybrid_map_for, path_map, Cluster,
    CouplingMap, Topology, HEAVY_HEX_MAX_QUBITS,
};
pub use grover::{grover_circuit, mcx_decompose, mcx_gates, mcz_gates, optimal_iterations};
pub use sim::{
    apply_gate, basis_state, simulate_from, simulate_statevector, unitary_of, MAX_SIM_QUBITS,
    MAX_UNITARY_QUBITS,
};
