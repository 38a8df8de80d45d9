use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("duplicate constraint label `{0}`")]
    DuplicateLabel(String),
    #[error("pivot limit of {0} exceeded")]
    PivotLimit(usize),
    #[error("cut limit of {0} exceeded")]
    CutLimit(usize),
    #[error("separation oracle failed: {0}")]
    Oracle(String),
    #[error("separation oracle returned cut `{0}` that is not violated")]
    NonViolatedCut(String),
    #[error("the optimal face is empty; the supplied optimum is not attainable")]
    FaceEmpty,
    #[error("probe is unbounded over the optimal face")]
    UnboundedProbe,
    #[error("expected an optimal solution, solver reported {0}")]
    NotOptimal(&'static str),
    #[error("solver self-check failed: {0}")]
    Certificate(String),
}
