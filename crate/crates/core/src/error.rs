//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse grouping used by callers that map failures to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Malformed or inconsistent input data.
    Data,
    /// A numerical procedure failed or its preconditions do not hold.
    Numerical,
    /// Underlying I/O failure.
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NonSquareMatrix { rows: usize, cols: usize },

    #[error("{context}: expected {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("photon number mismatch: input carries {input}, output {output}")]
    PhotonMismatch { input: u32, output: u32 },

    #[error("mode count mismatch: {left} vs {right}")]
    ModeMismatch { left: usize, right: usize },

    #[error("photon number {0} exceeds the supported maximum of {max}", max = crate::fock::MAX_PHOTONS)]
    TooManyPhotons(u32),

    #[error("a state needs at least one mode")]
    NoModes,

    #[error("mode index {index} out of range for {modes} modes")]
    ModeOutOfRange { index: usize, modes: usize },

    #[error("beam splitter endpoints must be distinct modes")]
    DegenerateBeamSplitter,

    #[error("no value bound for phase source '{0}'")]
    UnboundPhase(String),

    #[error("matrix is not unitary (max |U\u{2020}U - I| = {0:.3e})")]
    NotUnitary(f64),

    #[error("output occupation {m_out} exceeds photon number {photons}")]
    OutcomeOutOfRange { m_out: u32, photons: u32 },

    #[error("squared distance must be non-negative, got {0}")]
    NegativeDistance(f64),

    #[error("kernel resolution must be positive, got {0}")]
    NonPositiveSigma(f64),

    #[error("regularization weight must be non-negative, got {0}")]
    NegativeAlpha(f64),

    #[error("matrix is not symmetric (max |K - K'| = {0:.3e})")]
    NotSymmetric(f64),

    #[error("system is not positive definite; raise the regularization weight")]
    NotPositiveDefinite,

    #[error("design matrix is rank deficient (rank {rank} of {cols} columns)")]
    RankDeficient { rank: usize, cols: usize },

    #[error("objective evaluated to a non-finite value at the start point")]
    NonFiniteObjective,

    #[error("{0} did not converge")]
    NoConvergence(&'static str),

    #[error("{0} must be at least 1")]
    ZeroIterations(&'static str),

    #[error("step scale must be positive, got {0}")]
    NonPositiveStep(f64),

    #[error("finite box bounds are required for every dimension")]
    MissingBounds,

    #[error("bound {index} is empty or not finite: [{lo}, {hi}]")]
    BadBound { index: usize, lo: f64, hi: f64 },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("unknown character '{ch}' at position {pos}")]
    UnknownCharacter { ch: char, pos: usize },

    #[error("string of length {len} exceeds the encoding capacity {cap}")]
    OverlongString { len: usize, cap: usize },

    #[error("gap {0} eV is outside the labeled range [0.025, 4.0]")]
    GapOutOfRange(f64),

    #[error("class {0} is absent; a stratified split requires every class")]
    ClassAbsent(String),

    #[error("split ratios must sum to 100, got {0}")]
    BadRatios(u32),

    #[error("labels must be +1 or -1, got {0}")]
    BadLabel(f64),

    #[error("feature {value} at row {row} is outside [-1, 1]")]
    FeatureOutOfRange { row: usize, value: f64 },

    #[error("feature {0} is outside [-1, 1]")]
    FeatureOutsideUnitBox(f64),

    #[error("invalid {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("row {row}: {message}")]
    MalformedRow { row: usize, message: String },

    #[error("{file}: {message}")]
    FileFormat { file: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        use Error::*;
        match self {
            NonSquareMatrix { .. }
            | NotUnitary(_)
            | NotSymmetric(_)
            | NotPositiveDefinite
            | RankDeficient { .. }
            | NonFiniteObjective
            | NoConvergence(_)
            | TooManyPhotons(_)
            | OutcomeOutOfRange { .. }
            | NegativeDistance(_)
            | NonPositiveSigma(_)
            | NegativeAlpha(_)
            | ZeroIterations(_)
            | NonPositiveStep(_)
            | MissingBounds
            | BadBound { .. } => ErrorCategory::Numerical,
            Io(_) => ErrorCategory::Io,
            _ => ErrorCategory::Data,
        }
    }
}
