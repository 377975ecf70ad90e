pub mod colored_graph;
pub mod error;
pub mod groups;
pub mod random;
pub mod realization;
pub mod render;
pub mod scalar;
pub mod selftest;
pub mod sparsity;

pub use error::{Error, ParseError, Result};
