use thiserror::Error;

/// Statistics carried out of an aborted Gröbner computation.
#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct GroebnerStats {
    pub pairs_processed: usize,
    pub pairs_pruned: usize,
    pub reductions_to_zero: usize,
    pub basis_size: usize,
    pub max_degree: u32,
    pub elapsed_ms: u128,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not allowed here (2 must be invertible)")]
    CharacteristicTwo,
    #[error("coefficient domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("ring mismatch: operands live in different polynomial rings")]
    RingMismatch,
    #[error("leading term of the zero polynomial")]
    ZeroPolynomial,
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("Gröbner budget exhausted ({reason}) after {} pairs, max degree {}", stats.pairs_processed, stats.max_degree)]
    BudgetExhausted {
        reason: String,
        stats: GroebnerStats,
    },
    #[error("identity check failed: {0}")]
    CheckFailed(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
