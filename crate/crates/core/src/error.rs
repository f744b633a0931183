use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(
        "polynomial is not integer-valued: coefficient {coeff} of C(x,{index}) is not an integer"
    )]
    NonIntegral { index: usize, coeff: String },

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error(
        "series truncated at order {order} cannot be paired with an element of degree {degree}"
    )]
    TruncationTooShort { order: usize, degree: usize },

    #[error("truncation set mismatch: {0}")]
    TruncationMismatch(String),

    #[error("malformed truncation set: {0}")]
    InvalidTruncation(String),

    #[error("coefficient ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("search space of {size} exceeds the configured bound {bound}")]
    BoundExceeded { size: String, bound: String },

    #[error("associated graded has torsion in weight {weight}: invariants {invariants:?}")]
    TorsionInGraded {
        weight: i64,
        invariants: Vec<String>,
    },

    #[error("filtration is not multiplicative: {0}")]
    NonMultiplicative(String),

    #[error("chain is not a cycle")]
    NotACycle,

    /// A statement that holds as a theorem failed. Never user error.
    #[error("falsification: {0}")]
    Falsified(String),
}

impl Error {
    pub fn is_falsification(&self) -> bool {
        matches!(self, Error::Falsified(_))
    }
}
