pub mod asymptotic;
pub mod cli;
pub mod codec;
pub mod constructions;
pub mod error;
pub mod field;
pub mod funcfield;
pub mod matrix;
pub mod semigroup;
pub mod sim;

pub use error::{Error, Result};
