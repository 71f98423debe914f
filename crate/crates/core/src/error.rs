use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Dynkin type `{0}`")]
    InvalidType(String),
    #[error("root string undefined: {0}")]
    RootString(String),
    #[error("singular matrix")]
    Singular,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("pair is not admissible: {0}")]
    Pair(String),
    #[error("structure constant check failed: {0}")]
    Structure(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("non-integral coefficient: {0}")]
    NonIntegral(String),
    #[error("module dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: u64, cap: u64 },
    #[error("weight is not dominant: {0:?}")]
    NotDominant(Vec<i64>),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
