//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported field order {0} (supported: 2, 3, 4, 5, 9)")]
    UnsupportedField(u16),
    #[error("field of order {0} has no conjugation (order must be a square)")]
    NoConjugation(u16),
    #[error("division by zero in GF({0})")]
    DivisionByZero(u16),
    #[error("row length {got} does not match ambient dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("subspace backends do not match (linear vs thin)")]
    BackendMismatch,
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("form is degenerate: {0}")]
    DegenerateForm(String),
    #[error("geometry has rank {0} < 2")]
    RankTooSmall(usize),
    #[error("polar-space axiom violated: {0}")]
    AxiomViolation(String),
    #[error("dimension {k} out of range 0..={max}")]
    DimOutOfRange { k: usize, max: usize },
    #[error("subspace is not singular")]
    NotSingular,
    #[error("expected projective dimension {expected}, got {got}")]
    WrongDimension { expected: i64, got: i64 },
    #[error("parameters are not incident")]
    NotIncident,
    #[error("graph is disconnected (vertex {0} unreachable)")]
    Disconnected(u32),
    #[error("vertex id {0} out of range")]
    VertexOutOfRange(u32),
    #[error("assignment is not injective ({0} and {1} share an image)")]
    NotInjective(u32, u32),
    #[error("vertices are not pairwise adjacent")]
    NotClique,
    #[error("input vertices do not form two disjoint triangles: {0}")]
    BadTrianglePair(String),
    #[error("structural inconsistency: {0}")]
    Inconsistent(String),
    #[error("geometry type is C, operation needs type D")]
    TypeCInput,
    #[error("non-uniform maximal-subspace counts over codimension-2 subspaces")]
    MixedTypeCounts,
    #[error("frame rejected: {0}")]
    InvalidFrame(String),
    #[error("frame search exhausted without a solution")]
    FrameSearchExhausted,
    #[error("rank of target geometry is too small ({target_rank} < {source_rank})")]
    RankDeficit {
        source_rank: usize,
        target_rank: usize,
    },
    #[error("point map has not been verified as collinearity preserving: {0}")]
    PointMapRejected(String),
    #[error("geometry mismatch between map and graph")]
    GeometryMismatch,
    #[error("parameters (n={n}, k={k}, n'={np}, k'={kp}) fit no theorem regime")]
    RegimeMismatch { n: usize, k: usize, np: usize, kp: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("bad geometry descriptor: {0}")]
    BadDescriptor(String),
    #[error("cache payload version {got} does not match expected {expected}")]
    CacheVersion { expected: u32, got: u32 },
    #[error("cache payload hash mismatch (corrupt entry)")]
    CacheCorrupt,
    #[error("unsupported export format {0}")]
    UnsupportedFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
