use thiserror::Error;

/// Tesler-matrix validation failures, reported one condition at a time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixDefect {
    NotSquare,
    NotUpperTriangular,
    ZeroRow,
    MixedSigns,
}

impl std::fmt::Display for MatrixDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MatrixDefect::NotSquare => "matrix not square",
            MatrixDefect::NotUpperTriangular => "matrix not upper triangular",
            MatrixDefect::ZeroRow => "zero row",
            MatrixDefect::MixedSigns => "row not sign-homogeneous",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-invertible element")]
    NonInvertible,
    #[error("pole at specialization")]
    PoleAtSpecialization,
    #[error("not a Laurent polynomial")]
    NotLaurent,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} (row {1})")]
    InvalidMatrix(MatrixDefect, usize),
    #[error("cell ({0},{1}) lies outside the diagram")]
    CellOutside(usize, usize),
    #[error("partition must be nonempty")]
    EmptyPartition,
    #[error("monomial evaluation needs a plain alphabet")]
    SignedAlphabet,
    #[error("size {size} exceeds the configured cap {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
