use thiserror::Error;

/// Errors raised by the analysis pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent in affine mode")]
    NegativeExponent,
    #[error("variable index {index} out of range (ambient dimension {dim})")]
    VariableOutOfRange { index: usize, dim: usize },
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("evaluation at a pole: coordinate {0} is zero under a negative exponent")]
    Pole(usize),
    #[error("exponent {0:?} is not in the lattice spanned by the basis")]
    NotInLattice(Vec<i64>),
    #[error("face does not belong to the supplied polytope")]
    ForeignFace,
    #[error("face has dimension {0}; a positive-dimensional face is required")]
    FaceTooSmall(i64),
    #[error("dimension guard exceeded: {0}")]
    Guard(String),
    #[error("dual subdivision is not a fan; full-dimensional Γ_∞ required (dim {dim} < {n})")]
    NotFullDimensional { dim: i64, n: usize },
    #[error("cone has a lineality space; a pointed cone is required")]
    NotPointed,
    #[error("cone is not contained in the nonnegative orthant")]
    NotInOrthant,
    #[error("integer overflow in exact computation")]
    Overflow,
    #[error("critical values not finite")]
    CriticalValuesNotFinite,
    #[error("root clustering ambiguous; increase precision")]
    IncreasePrecision,
    #[error("ε not generic: {0}")]
    EpsilonNotGeneric(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
