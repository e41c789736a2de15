use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic level {level} exceeds the configured maximum {max}")]
    LevelTooLarge { level: u64, max: u64 },

    #[error("{what} = {value} exceeds the configured bound {max}")]
    BoundExceeded { what: &'static str, value: u64, max: u64 },

    #[error("automorphism index {s} is not a unit modulo {level}")]
    NotAUnit { s: i64, level: u64 },

    #[error("element of level {from} does not lie in Q(zeta_{to})")]
    NotInSubfield { from: u64, to: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("{0} is not squarefree (or is 0 or 1)")]
    NotSquarefree(i64),

    #[error("degree {degree} does not divide {order}")]
    DegreeDoesNotDivide { degree: u64, order: u64 },

    #[error("no element of order {order} in {group}")]
    NoElementOfOrder { order: u64, group: String },

    #[error("indeterminate: {0}")]
    Indeterminate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for the variants that report a size guard tripping.
    pub fn is_bound(&self) -> bool {
        matches!(self, Error::LevelTooLarge { .. } | Error::BoundExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
