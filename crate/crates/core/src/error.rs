use thiserror::Error;

/// Errors raised by the library. Every variant names the violated invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown root system label: {0}")]
    UnknownLabel(String),

    #[error("rank {rank} out of range for series {series}")]
    RankOutOfRange { series: String, rank: usize },

    #[error("invalid root datum: {0}")]
    InvalidRootDatum(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("simple reflection index {index} out of range (1..={count})")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("Weyl group order exceeds cap {cap}")]
    WeylCapExceeded { cap: usize },

    #[error("polyhedron is empty")]
    EmptyPolyhedron,

    #[error("polyhedron is not full-dimensional (affine dimension {dim} < {ambient})")]
    LowerDimensional { dim: usize, ambient: usize },

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    #[error("vector is not dominant: {0:?}")]
    NotDominant(Vec<i64>),

    #[error("vanishing set {0:?} is not allowed by the fan")]
    VanishingNotAllowed(Vec<usize>),

    #[error("completion failed verification: {0}")]
    CompletionFailed(String),

    #[error("integer overflow while converting {0}")]
    Overflow(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable snake_case name of the violated invariant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnknownLabel(_) => "unknown_label",
            Error::RankOutOfRange { .. } => "rank_out_of_range",
            Error::InvalidRootDatum(_) => "invalid_root_datum",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::WeylCapExceeded { .. } => "weyl_cap_exceeded",
            Error::EmptyPolyhedron => "empty_polyhedron",
            Error::LowerDimensional { .. } => "lower_dimensional",
            Error::AmbientMismatch(_) => "ambient_mismatch",
            Error::InvalidFan(_) => "invalid_fan",
            Error::InvalidCone(_) => "invalid_cone",
            Error::NotDominant(_) => "not_dominant",
            Error::VanishingNotAllowed(_) => "vanishing_not_allowed",
            Error::CompletionFailed(_) => "completion_failed",
            Error::Overflow(_) => "overflow",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
