//! Exact tools for deciding whether two complex space forms share a common
//! Kähler submanifold, with machine-checkable certificates.

pub mod algebra;
pub mod cli;
pub mod decider;
pub mod error;
pub mod expansion;
pub mod search;
mod serde_util;
pub mod signature;

pub use error::{Error, Result};
