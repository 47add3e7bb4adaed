//! SWAP-insertion routing onto coupling maps, depth scheduling, routed-circuit
//! verification and the Grover depth benchmark.

mod bench;
mod distance;
mod layout;
mod route;
mod schedule;
mod verify;

pub use bench::{
    benchmark_grover, BenchConfig, ContentionMode, DepthReport, DepthRow, Reduction, TopologySummary,
};
pub use distance::distance_matrix;
pub use layout::Layout;
pub use route::{route, RoutedCircuit, ESCAPE_FACTOR, LOOKAHEAD_GATES, LOOKAHEAD_WEIGHT};
pub use schedule::{schedule_circuit, schedule_depth, Schedule};
pub use verify::{verify_routed, Verification, RANDOM_BASIS_SAMPLES, VERIFY_TOL};
