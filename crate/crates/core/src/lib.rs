pub mod cli;
pub mod enumerate;
pub mod error;
pub mod fibgen;
pub mod finset;
pub mod fixtures;
pub mod monad;
pub mod reflect;
pub mod tspace;

pub use error::{Error, Result};
