use thiserror::Error;

use crate::budget::BudgetError;
use crate::diagram::DiagramError;
use crate::laurent::LaurentError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Budget(#[from] BudgetError),
    /// Inputs that parse but contradict each other (e.g. a rank table whose
    /// Euler characteristic is not the Jones polynomial).
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
