pub mod error;
pub mod eval;
pub mod hopf;
pub mod label;
pub mod scalar;
pub mod tangle;
pub mod uqsl2;

pub use error::{Error, Result};
