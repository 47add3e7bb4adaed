use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid truncation: levels must be >= 2, got {0}")]
    InvalidTruncation(usize),

    #[error("{what} index {index} out of range (len {len})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("matrix is not Hermitian (max |H - H^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("eigensolver did not converge")]
    NoConvergence,

    #[error("dressed-state labeling ambiguous for bare state {label:?} (best overlap {overlap:.4})")]
    LabelingAmbiguous { label: Vec<usize>, overlap: f64 },

    #[error("empty result: {0}")]
    EmptyResult(String),

    #[error("resonant drive: detuning is zero, outside the perturbative model")]
    ResonantDrive,

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("circuit needs {circuit} qubits but the coupling map has {map}")]
    Capacity { circuit: usize, map: usize },

    #[error("coupling map is disconnected")]
    Disconnected,

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
