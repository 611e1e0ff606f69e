use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operator length mismatch: {left} vs {right} sites")]
    LengthMismatch { left: usize, right: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("matrix of dimension {dim} is not unitary within {tol}")]
    NotUnitary { dim: usize, tol: f64 },

    #[error("state is not normalized: |norm - 1| = {deviation}")]
    NotNormalized { deviation: f64 },

    #[error("expected a Hermitian Pauli word (phase must be +1 or -1), got phase {phase}")]
    NonHermitianPhase { phase: String },

    #[error("projector set does not resolve the identity on the targeted subspace")]
    IncompleteProjectors,

    #[error("generators must commute pairwise; generators {a} and {b} anticommute")]
    AnticommutingGenerators { a: usize, b: usize },

    #[error("Bell operator carries no generator recipe")]
    MissingRecipe,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid graph: {reason}")]
    InvalidGraph { reason: String },

    #[error("state of {n} qubits exceeds the dense-engine limit of {limit}")]
    SizeLimit { n: usize, limit: usize },

    #[error("invalid Pauli word `{text}`: {reason}")]
    ParseError { text: String, reason: String },

    #[error("encryption key label {label} out of range for dimension {d}")]
    BadKeyLabel { label: usize, d: usize },

    #[error("attack angle {theta} outside [0, pi/2]")]
    ThetaOutOfRange { theta: f64 },

    #[error("invalid teleport configuration: {reason}")]
    InvalidConfig { reason: String },

    #[error("no recovery entry for realized outcome `{outcome}`")]
    MissingRecoveryEntry { outcome: String },

    #[error("measurement setting {setting} not in the declared set for party {party}")]
    SettingOutsideSet { party: String, setting: String },

    #[error("no sifted records to estimate from")]
    NoSiftedRecords,

    #[error("invalid scenario configuration: {reason}")]
    InvalidScenario { reason: String },

    #[error("transcript violates protocol discipline: {reason}")]
    TranscriptViolation { reason: String },

    #[error("serialization: {0}")]
    Serialization(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
