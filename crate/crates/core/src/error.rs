use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("not regular at q = 0: {0}")]
    NotRegularAtZero(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("composition error: {0}")]
    Composition(String),

    #[error("no nonzero intertwiner exists")]
    NoIntertwiner,

    #[error("non-generic parameters: intertwiner space has dimension {0}")]
    NonGenericParameters(usize),

    #[error("existence condition violated: product of gamma is {product}, expected {expected}")]
    ExistenceConditionViolated { product: String, expected: String },

    #[error("highest weight basis incomplete: nonzero residual after expansion")]
    IncompleteBasis,
}

pub type Result<T> = std::result::Result<T, Error>;
