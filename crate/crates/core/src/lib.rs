pub mod audit;
pub mod cli;
pub mod dunkl;
pub mod error;
pub mod expr;
pub mod grid;
pub mod matrix;
pub mod model;
pub mod operator;
pub mod poly;
pub mod scalar;
pub mod sl2;

pub use error::{QesError, Result};
