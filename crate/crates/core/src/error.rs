use thiserror::Error;

use crate::cli::config::ConfigError;
use crate::quadrature::QuadError;
use crate::specfun::SpecFunError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid {name}: {message}")]
    InvalidParameter { name: &'static str, message: String },
    #[error("model error: {0}")]
    Model(String),
    #[error("Fock index ({n}, {n_prime}) outside dimension {dim}")]
    FockIndex { n: usize, n_prime: usize, dim: usize },
    #[error("invalid density matrix: {0}")]
    DensityMatrix(String),
    #[error("validity condition violated: {0}")]
    Validity(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            message: format!("must be positive and finite, got {value}"),
        })
    }
}
