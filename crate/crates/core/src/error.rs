use thiserror::Error;

/// Errors shared by every module in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter combination we never define results for, e.g. `s <= t`,
    /// `t = 0`, a cycle on fewer than three vertices, or an empty color list.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A numeric argument outside the domain of the function being evaluated.
    #[error("domain error: {0}")]
    Domain(String),

    /// A syntactic or semantic problem in a DIMACS stream, reported with the
    /// 1-based line number it occurred on.
    #[error("DIMACS parse error at line {line}: {msg}")]
    DimacsParse { line: usize, msg: String },

    /// A malformed JSON document for lists or colorings.
    #[error("JSON input error: {0}")]
    JsonInput(String),

    /// The partition scheme cannot be instantiated on this input, e.g. the
    /// augmented lists admit no proper total coloring.
    #[error("scheme inapplicable: {0}")]
    SchemeInapplicable(String),

    /// An exhaustive search exceeded its node budget.  `explored` is the
    /// number of search nodes expanded before giving up; the answer on this
    /// instance is unknown, not false.
    #[error("search budget exceeded after {explored} nodes (limit {limit})")]
    BudgetExceeded { explored: u64, limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
