use thiserror::Error;

use crate::poly::ParsePolyError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid polynomial: {0}")]
    Parse(#[from] ParsePolyError),

    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("polynomial is not primitive (content {0})")]
    NotPrimitive(String),

    #[error("polynomial is reducible over the integers")]
    Reducible,

    #[error("polynomial is cyclotomic (Phi_{0}); branch on the cyclotomic tag first")]
    Cyclotomic(u64),

    #[error("degree {0} is below the minimum of 2 for this operation")]
    DegreeTooSmall(usize),

    #[error("{0} is not prime")]
    CompositeModulus(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("n must be at least 2 (got {0})")]
    InvalidN(u64),

    #[error("rational {0} is zero or a root of unity")]
    TrivialRational(String),

    #[error("polynomial is not {0}-Hartley")]
    NotHartley(u64),

    #[error("not an Alexander polynomial: {0}")]
    NotAlexander(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
