pub mod combinatorics;
pub mod cli;
pub mod extcalc;
pub mod error;
pub mod report;
pub mod resolution;
pub mod tableaux;
pub mod zlinalg;

pub use error::{Error, Result};
