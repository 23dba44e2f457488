use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix has rank {rank}, expected full column rank {cols}")]
    RankDeficient { rank: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not unimodular (|det| = {0})")]
    NotUnimodular(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("enumeration budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: String, budget: u64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("generation failed: {0}")]
    Generation(String),

    /// A step that the underlying theory guarantees could not be carried out.
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
