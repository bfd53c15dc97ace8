use thiserror::Error;

use crate::report::VerificationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse scalar `{0}`")]
    ScalarParse(String),

    #[error("space mismatch: expected `{expected}`, found `{found}`")]
    SpaceMismatch { expected: String, found: String },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("structure constants violate the axioms:\n{0}")]
    Invalid(VerificationReport),

    #[error("input is not factorisable")]
    NotFactorisable,

    #[error("input is not triangular")]
    NotTriangular,

    #[error("normalization identity fails: {0}")]
    Normalization(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("verification failed:\n{0}")]
    Verification(VerificationReport),
}

pub type Result<T> = std::result::Result<T, Error>;
