//! Small zeros of diagonal quadratic forms and the numerics around them.

pub mod error;
pub mod analysis;
pub mod campaign;
pub mod cli;
pub mod dirichlet;
pub mod exponents;
pub mod forms;
pub mod precision;
pub mod rational;
pub mod report;
pub mod solver;

pub use error::{Error, Result};
