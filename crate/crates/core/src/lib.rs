pub mod alexander;
pub mod braiding;
pub mod center;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod repn;
pub mod scalar;
pub mod tangle;

pub use error::{Error, Result};
pub use num_complex::Complex64;
