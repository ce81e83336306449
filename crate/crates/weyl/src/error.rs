use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable lists differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] jacobi_core::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
