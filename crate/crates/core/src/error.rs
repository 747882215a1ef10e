use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid chi: {0}")]
    InvalidChi(String),
    #[error("generator {gen} cannot be eliminated via relator {relator}: {why}")]
    NotEliminable {
        gen: usize,
        relator: usize,
        why: String,
    },
    #[error("coset limit of {0} rows exceeded")]
    CosetLimit(usize),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("degree {0} exceeds guard {1}")]
    DegreeGuard(usize, usize),
    #[error("group order {0} exceeds guard {1}")]
    OrderGuard(usize, usize),
    #[error("relator has height {0}, expected 1")]
    HeightNotOne(i64),
    #[error("exponent sum of the stable letter is {0}, expected 0")]
    NonzeroStableSum(i64),
    #[error("matrix is {0}x{1}, expected square")]
    NonSquare(usize, usize),
    #[error("map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("homomorphism inconsistent with target table: {0}")]
    InconsistentMap(String),
    #[error("{0}")]
    Invalid(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
