use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit index {qubit} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("gate acts twice on qubit {0}")]
    DuplicateQubit(usize),
    #[error("{gate} expects {expected} parameter(s), got {got}")]
    ParamCount {
        gate: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("{gate} expects {expected} qubit(s), got {got}")]
    QubitCount {
        gate: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("{what} = {value} is not a probability in [0, 1]")]
    InvalidProbability { what: String, value: f64 },
    #[error("no CNOT error rate for pair ({0}, {1})")]
    MissingEdge(usize, usize),
    #[error("no readout error rates for qubit {0}")]
    MissingReadout(usize),
    #[error("gate {0} is not allowed in a classical (encoding) stage")]
    NonClassicalGate(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operator is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("register of {0} qubits is too large for this operation")]
    TooManyQubits(usize),
    #[error("invalid layout: {0}")]
    InvalidLayout(String),
    #[error("bitstring has {got} bits, expected {needed}")]
    LengthMismatch { needed: usize, got: usize },
    #[error("qubit {0} is claimed by more than one layout")]
    OverlappingLayouts(usize),
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("no crossover on [{lo}, {hi}]")]
    NoCrossover { lo: f64, hi: f64 },
    #[error("unsupported Hamiltonian term: {0}")]
    UnsupportedTerm(String),
    #[error("invalid Pauli string {0:?}")]
    InvalidPauli(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid bitstring {0:?}")]
    InvalidBitstring(String),
    #[error("snapshot: {0}")]
    Snapshot(String),
    #[error("parse error at {path} (line {line}, column {column}): {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable variant name, used as the error label of command-line tools.
    pub fn name(&self) -> &'static str {
        match self {
            Error::QubitOutOfRange { .. } => "QubitOutOfRange",
            Error::DuplicateQubit(..) => "DuplicateQubit",
            Error::ParamCount { .. } => "ParamCount",
            Error::QubitCount { .. } => "QubitCount",
            Error::InvalidProbability { .. } => "InvalidProbability",
            Error::MissingEdge(..) => "MissingEdge",
            Error::MissingReadout(..) => "MissingReadout",
            Error::NonClassicalGate(..) => "NonClassicalGate",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotHermitian(..) => "NotHermitian",
            Error::TooManyQubits(..) => "TooManyQubits",
            Error::InvalidLayout(..) => "InvalidLayout",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::OverlappingLayouts(..) => "OverlappingLayouts",
            Error::TooFewSamples { .. } => "TooFewSamples",
            Error::NoCrossover { .. } => "NoCrossover",
            Error::UnsupportedTerm(..) => "UnsupportedTerm",
            Error::InvalidPauli(..) => "InvalidPauli",
            Error::InvalidArgument(..) => "InvalidArgument",
            Error::InvalidBitstring(..) => "InvalidBitstring",
            Error::Snapshot(..) => "Snapshot",
            Error::Parse { .. } => "Parse",
            Error::Io(..) => "Io",
            Error::Csv(..) => "Csv",
            Error::Json(..) => "Json",
        }
    }
}

pub(crate) fn check_probability(what: impl FnOnce() -> String, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::InvalidProbability { what: what(), value })
    }
}
