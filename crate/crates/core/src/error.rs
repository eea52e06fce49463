use thiserror::Error;

/// Errors reported by the combinatorial routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse partition {0:?}")]
    ParsePartition(String),
    #[error("inner partition is not contained in the outer one")]
    NotContained,
    #[error("malformed Maya diagram: {0}")]
    MalformedMaya(String),
    #[error("runner count must be at least 1, got {0}")]
    InvalidRunnerCount(usize),
    #[error("matrix size {size} is smaller than a partition length {len}")]
    InvalidPadding { size: usize, len: usize },
    #[error("matrix is not square ({rows} rows, {cols} columns)")]
    NotSquare { rows: usize, cols: usize },
    #[error("row interval [{a},{b}] is out of range for {ncols} columns")]
    BadInterval { a: usize, b: usize, ncols: usize },
    #[error("orientation is not good: {0}")]
    NotGood(String),
    #[error("edge set is not a directed cycle of the orientation: {0}")]
    NotACycle(String),
    #[error("pair is not good: {0}")]
    NotAGoodPair(String),
    #[error("degree {degree} exceeds the configured bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },
    #[error("Schur elimination did not terminate")]
    NonTerminating,
    #[error("generating function does not factor: {0}")]
    Factorization(String),
    #[error("column structure violated: {0}")]
    ColumnStructure(String),
    #[error("unknown {kind} {name:?}")]
    Unknown { kind: &'static str, name: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
