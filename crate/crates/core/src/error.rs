use thiserror::Error;

use tcmg_lp::LpError;

use crate::graph::Position;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("{at}: {message}")]
    Syntax { at: Position, message: String },
    #[error("{at}: vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize, at: Position },
    #[error("{at}: self-loop on vertex {vertex}")]
    SelfLoop { vertex: usize, at: Position },
    #[error("{at}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { u: usize, v: usize, at: Position },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ImputationError {
    #[error("expected {expected} payoffs, found {found}")]
    Length { expected: usize, found: usize },
    #[error("payoff of player {0} is negative")]
    Negative(usize),
    #[error("payoffs sum to {0}, not 1")]
    Sum(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TcmgError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Imputation(#[from] ImputationError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("threshold {t} outside [1, {max}]")]
    ThresholdOutOfRange { t: usize, max: usize },
    #[error("no matching of size {t}: the maximum matching has size {max}")]
    NoMatchingOfSize { t: usize, max: usize },
    #[error("vertex cost of player {0} is negative")]
    NegativeCost(usize),
    #[error("expected {expected} vertex costs, found {found}")]
    CostLength { expected: usize, found: usize },
    #[error("{what} exceeds the cap of {cap}")]
    CapExceeded { what: String, cap: usize },
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("operation requires threshold 1, got {0}")]
    ThresholdNotOne(usize),
    #[error("no closed form applies: {0}")]
    NoClosedForm(String),
    #[error("internal check failed: {0}")]
    SelfCheck(String),
}

pub type Result<T, E = TcmgError> = std::result::Result<T, E>;
