use thiserror::Error;

/// Errors raised by the exact-arithmetic layers and the constructions built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("conductor {0} exceeds the supported bound {1}")]
    ConductorTooLarge(u64, u64),
    #[error("coefficient vector of length {len} does not fit conductor {n}")]
    TooManyCoefficients { len: usize, n: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("galois exponent {j} is not coprime to conductor {n}")]
    NotCoprime { j: i64, n: u64 },
    #[error("element is not real (not fixed by complex conjugation)")]
    NotReal,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not hermitian")]
    NotHermitian,
    #[error("operation requires a symmetric form but the lattice is alternating")]
    AlternatingForm,
    #[error("operation requires an alternating form")]
    SymmetricForm,
    #[error("matrix does not preserve the form")]
    NotIsometry,
    #[error("no power up to {0} is the identity")]
    InfiniteOrder(u64),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("vector is not in the period ball: {0}")]
    NotInBall(String),
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is singular")]
    Singular,
    #[error("endomorphism does not preserve the hodge piece {0:?}")]
    PieceNotPreserved((i32, i32)),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
