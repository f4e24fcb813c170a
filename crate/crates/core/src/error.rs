use alloc::string::String;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not divisible")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("degree in T must be at least {needed}, got {got}")]
    DegreeTooLow { needed: usize, got: usize },
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unsupported argument at byte {offset}: only sin(k*x) and cos(k*x) with positive integer k are allowed")]
    UnsupportedArgument { offset: usize },
    #[error("frequency {k} at byte {offset} exceeds the configured maximum {max}")]
    FrequencyTooLarge { offset: usize, k: u64, max: u32 },
    #[error("second parameter `{second}` at byte {offset}; only one parameter (`{first}`) is allowed")]
    MultipleParameters {
        offset: usize,
        first: String,
        second: String,
    },
    #[error("the parameter must appear linearly")]
    NonlinearParameter,
    #[error("not a cosine polynomial")]
    NotCosine,
    #[error("not a sine polynomial")]
    NotSine,
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("expression contains the parameter `{0}`; use minimize")]
    Parametric(String),
    #[error("expression has no parameter")]
    NotParametric,
    #[error("the parameter coefficient must be a positive constant")]
    BadParameterCoefficient,
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
    #[error("no certified violation below the enclosure; an irrational endpoint leaves alpha = {0} undecided")]
    UncertifiedLowerBound(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
