use thiserror::Error;

use crate::lattice::Family;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid lattice: {family}_{rank} is not supported")]
    InvalidSpec { family: Family, rank: u32 },

    #[error("enumeration budget exceeded: needs more than {budget} candidates (estimate {needed})")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A cross-check inside the library disagreed with itself. Indicates a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
