use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("malformed arrangement JSON: {0}")]
    MalformedJson(String),

    #[error("invalid rational {0:?}: expected p or p/q")]
    InvalidRational(String),

    #[error("hyperplane {index} has a zero normal vector")]
    ZeroNormal { index: usize },

    #[error("hyperplanes {first} and {second} coincide after canonical scaling")]
    DuplicateHyperplane { first: usize, second: usize },

    #[error("hyperplane index {index} out of range (arrangement has {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("cannot restrict an arrangement in ambient dimension 0")]
    ZeroAmbient,

    #[error("unknown family {0:?} (expected braid, boolean or generic)")]
    UnknownFamily(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("unknown format {0:?}")]
    UnknownFormat(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("hyperplane {index} has a coefficient whose denominator is divisible by {prime}")]
    DenominatorDivisible { index: usize, prime: u64 },

    #[error("normal vector of hyperplane {index} vanishes mod {prime}")]
    VanishingNormal { index: usize, prime: u64 },

    #[error("hyperplanes {first} and {second} collide mod {prime}")]
    Collision { first: usize, second: usize, prime: u64 },

    #[error("{points} points exceed the enumeration budget of {budget}; use a smaller prime or dimension")]
    BudgetExceeded { points: BigUint, budget: u64 },

    #[error("identity violated: {0}")]
    IdentityViolated(String),
}

impl Error {
    /// True for errors that make a prime unusable for the finite-field check
    /// without indicating bad input.
    pub fn is_bad_prime(&self) -> bool {
        matches!(self, Error::VanishingNormal { .. } | Error::Collision { .. })
    }
}
