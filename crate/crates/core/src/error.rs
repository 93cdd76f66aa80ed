use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("null state: every amplitude is zero")]
    NullState,

    #[error("out of basis: |{na},{nb}> exceeds cutoffs ({cutoff_a},{cutoff_b})")]
    OutOfBasis {
        na: usize,
        nb: usize,
        cutoff_a: usize,
        cutoff_b: usize,
    },

    #[error("duplicate amplitude for |{na},{nb}>")]
    DuplicateIndex { na: usize, nb: usize },

    #[error("cutoff mismatch: ({0},{1}) vs ({2},{3})")]
    CutoffMismatch(usize, usize, usize, usize),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("internal consistency: variance of {name} is {value:e}")]
    NegativeVariance { name: &'static str, value: f64 },

    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("unsqueezed case is a product state (lambda = 1 has no entangled minimum-uncertainty states)")]
    Unsqueezed,

    #[error("dense algebra dimension {dim} exceeds the limit {max}")]
    DimensionOverflow { dim: usize, max: usize },

    #[error("insufficient data for variance: {0}")]
    InsufficientData(String),

    #[error(
        "Q never changes sign for this (N,m) = ({total_n},{truncation_m}); Q(0.5) = {q_at_half}"
    )]
    NoSignChange {
        total_n: usize,
        truncation_m: usize,
        q_at_half: f64,
    },

    #[error("malformed state file: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
