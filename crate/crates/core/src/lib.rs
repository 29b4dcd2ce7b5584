//! Finitary containers with monadic and directed structure, distributive
//! laws between them, and exhaustive checking and search at small sizes.

pub mod cli;
pub mod compose;
pub mod container;
pub mod directed;
pub mod error;
mod eval;
pub mod kernel;
pub mod laws;
pub mod monadic;
pub mod search;
pub mod zoo;

pub use error::{Error, Result};
