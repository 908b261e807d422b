use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum HeckeError {
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("root datum axiom violated: {0}")]
    AxiomViolation(String),

    #[error("root closure exceeded {0} roots (non-crystallographic input?)")]
    RootBoundExceeded(usize),

    #[error("vector {0:?} is not a root")]
    NotARoot(Vec<i64>),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("element does not belong to this group: {0}")]
    ForeignElement(String),

    #[error("enumeration bound {0} exceeded")]
    EnumerationBound(usize),

    #[error("vector {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("inexact Laurent division: {0}")]
    InexactDivision(String),

    #[error("support guard tripped: intermediate element has {0} terms")]
    SupportOverflow(usize),

    #[error("Bernstein support does not fit in box of radius {radius}: found {found:?}")]
    BoxTooSmall { radius: i64, found: Vec<i64> },

    #[error("torus point outside the convergence region: {0}")]
    OutsideRegion(String),

    #[error("torus point is not regular")]
    NotRegular,

    #[error("invalid labels: {0}")]
    InvalidLabels(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, HeckeError>;
