use thiserror::Error;

use crate::morse::ViolationReport;
use crate::simplex::{Simplex, VertexId};

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty simplex not allowed")]
    EmptySimplex,
    #[error("duplicate vertex {0} in simplex")]
    DuplicateVertex(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("simplex {0} is not in the complex")]
    UnknownSimplex(Simplex),
    #[error("not an elementary strong collapse: vertex {0} is not dominated")]
    NotDominated(VertexId),
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("missing simplex value: {0}")]
    MissingValue(Simplex),
    #[error("value given for simplex {0} which is not in the complex")]
    ExtraValue(Simplex),
    #[error("not a discrete Morse function: {0}")]
    InvalidMorse(ViolationReport),
    #[error("matching not acyclic")]
    NotAcyclic,
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("invalid build order: {0}")]
    InvalidOrder(String),
    #[error("({0}, {1}) is not a vertex/edge pair of the gradient field")]
    NotGradientPair(Simplex, Simplex),
    #[error("interval not regular: strong critical value {0} lies in it")]
    IntervalNotRegular(String),
    #[error("invalid interval: lower end {0} exceeds upper end {1}")]
    InvalidInterval(String, String),
    #[error("simplicial maps have different source or target")]
    MismatchedMaps,
    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),
    #[error("not a subcomplex")]
    NotSubcomplex,
    #[error("{msg}, line {line}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn budget(what: impl Into<String>) -> Self {
        Error::BudgetExhausted(what.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExhausted(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
