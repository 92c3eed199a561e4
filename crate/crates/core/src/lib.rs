//! Formal multiple polylogarithms: correlators, their cobracket and specializations,
//! relation spaces, iterated integrals and functional-equation verifiers.

pub mod cli;
pub mod coalg;
pub mod error;
pub mod field;
pub mod hopf;
pub mod relations;
pub mod special;

pub use error::{Error, Result};
