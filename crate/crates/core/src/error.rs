use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("letter x{letter} exceeds declared arity {arity}")]
    ArityExceeded { letter: usize, arity: usize },

    #[error("group order {order} exceeds index cap {cap}")]
    OrderExceedsCap { order: String, cap: usize },

    #[error("operation requires an indexed group")]
    NotIndexed,

    #[error("budget exceeded: {needed} evaluations requested, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },

    #[error("backend mismatch: {0}")]
    BackendMismatch(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u32, u32),

    #[error("search failed: {0}")]
    SearchFailed(String),

    #[error("certificate failed: {0}")]
    Certificate(String),
}

impl Error {
    /// Errors that report a violated mathematical precondition rather than bad input.
    pub fn is_hypothesis(&self) -> bool {
        matches!(
            self,
            Error::Hypothesis(_) | Error::SearchFailed(_) | Error::Certificate(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
