use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("point is outside the domain: {0}")]
    Domain(String),
    #[error("jet order {have} is below the required order {need}")]
    JetOrder { have: usize, need: usize },
    #[error("jet variable counts differ: {0} vs {1}")]
    JetVars(usize, usize),
    #[error("constant term is zero, series inverse undefined")]
    ZeroConstantTerm,
    #[error("matrix is not symplectic (defect {0:e})")]
    NotSymplectic(f64),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("unsupported test function: {0}")]
    Unsupported(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
}
