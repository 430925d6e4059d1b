pub mod bathmodel;
pub mod cli;
pub mod constants;
pub mod devices;
pub mod error;
pub mod exactsum;
pub mod quadrature;
pub mod specfun;
pub mod sum;

pub use error::{Error, Result};
pub use num_complex::Complex64;
