use serde::Serialize;
use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Error, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("entry {0} is zero")]
    ZeroEntry(usize),
    #[error("F_p-linearly dependent: {0}")]
    Dependent(String),
    #[error("tuple is not in G_a: {0}")]
    NotInGroup(String),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error("not solvable in the truncated model: {0}")]
    Unsolvable(String),
    #[error("schedule violates constraint {constraint}: {detail}")]
    Constraint { constraint: u8, detail: String },
    #[error("search budget of {budget} nodes exhausted; verified {lower} <= R{}", upper.map(|u| format!(" <= {u}")).unwrap_or_default())]
    BudgetExceeded { budget: u64, lower: u64, upper: Option<u64> },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
