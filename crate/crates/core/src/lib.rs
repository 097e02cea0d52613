pub mod algebra;
pub mod biquotient;
pub mod catalog;
pub mod cli;
pub mod curvature;
pub mod detectors;
pub mod error;
pub mod freeness;
pub mod metric;

pub use error::{BiqError, Result};
