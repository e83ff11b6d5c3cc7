//! CLI error type with the process exit-code contract:
//!
//! * 0 — command ran and every hard check passed;
//! * 1 — command ran but a hard check failed;
//! * 2 — usage, parameter, or input parse error (clap uses 2 as well);
//! * 3 — a search exceeded its node budget.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Budget { explored: u64, limit: u64 },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget { .. } => 3,
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError::Usage(message.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(message) => write!(f, "{message}"),
            CliError::Budget { explored, limit } => write!(
                f,
                "node budget exceeded: explored {explored} of {limit} allowed nodes; \
                 raise it with --budget or LISTCOLOR_NODE_BUDGET"
            ),
        }
    }
}

impl From<listcolor::Error> for CliError {
    fn from(err: listcolor::Error) -> Self {
        match err {
            listcolor::Error::BudgetExceeded { explored, limit } => {
                CliError::Budget { explored, limit }
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
