use alloc::string::String;

/// Everything that can go wrong in the exact and numeric pipelines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("row data is ragged or empty")]
    RaggedRows,
    #[error("exponent lists have lengths {alpha} and {beta}; both must equal the rank")]
    ExponentLength { alpha: usize, beta: usize },
    #[error("coefficient {index} is not rational within tolerance (deviation {deviation:e})")]
    SnapFailure { index: usize, deviation: f64 },
    #[error("exponent multiset is not closed under the Galois action t -> t^{multiplier}")]
    NotGaloisStable { multiplier: u64 },
    #[error("not a pseudo-reflection: rank(id - M) = {rank}")]
    NotPseudoReflection { rank: usize },
    #[error("quadratic invariant space has dimension {0}, expected 1")]
    InvariantDimension(usize),
    #[error("invariant spaces of the two-generator subgroup and the full group differ")]
    InvariantMismatch,
    #[error("cannot normalize the Gram matrix: reference entry is zero")]
    NormalizationImpossible,
    #[error("Coxeter element routes disagree: {0}")]
    RouteMismatch(&'static str),
    #[error("slot index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("matrix is not lower unitriangular")]
    NotUnitTriangular,
    #[error("invalid loop: {0}")]
    InvalidLoop(String),
    #[error("integrator step size underflow at path parameter {t}")]
    StepFailure { t: f64 },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
