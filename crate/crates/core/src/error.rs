use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular input: {0}")]
    Singular(String),
    #[error("point {0} lies on the branch cut [0, 4tau]")]
    BranchCut(String),
    #[error("point {0} is not on the droplet boundary")]
    NotOnBoundary(String),
    #[error("matrix is not antisymmetric (max |M + M^T| = {0:e})")]
    Asymmetric(f64),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("tail truncation failed: {0}")]
    Truncation(String),
    #[error("eigensolver did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
