pub mod cli;
pub mod error;
pub mod geometry;
pub mod quad;
pub mod solver;
pub mod specfun;
pub mod stability;

pub use error::{Error, Result};
