//! Truncated multi-transmon spectra and ZZ extraction.
//!
//! Mode ordering is fixed throughout: computational qubits in list order,
//! coupler last. A bare product state is written as its digit string
//! `(n_0, n_1, ..., n_c)`; site 0 is the most significant digit of the
//! Hilbert-space index (Kronecker-product order).

mod cluster;
mod eigen;
mod hamiltonian;
mod labeling;
mod operators;
mod sweep;
mod zz;

pub use cluster::{
    flux_to_frequency, ClusterSpec, Coupling, CouplerSpec, DriveSpec, TransmonSpec, DEFAULT_COUPLING_GHZ,
    DEFAULT_DRIVE_AMPLITUDE_GHZ, DEFAULT_DRIVE_DETUNING_GHZ, DEFAULT_LEVELS,
};
pub use eigen::{diagonalize, Spectrum};
pub use hamiltonian::{build_cluster_hamiltonian, HermitianMatrix, HERMITIAN_TOL};
pub use labeling::{
    bare_digits, bare_index, computational_labels, label_dressed, label_dressed_gated,
    DressedLabeling, OVERLAP_GATE,
};
pub use operators::{annihilation_op, embed_op, identity_op, number_op, CMatrix};
pub use sweep::{
    pair_peak_matrix, sweep_2d, sweep_coupler, sweep_phase, zero_crossings, PairPeakMatrix,
    PointStatus, SweepAxis, SweepResult, ZeroCrossing,
};
pub use zz::{pair_energies, truncation_drift, zz_rate, PairEnergies};
