//! Exact symbolic computation for the rational reduction of the fractional
//! Volterra hierarchy.

pub mod algebra;
pub mod error;

pub use error::{Error, Result};
pub mod expr;
pub mod diffpoly;
pub mod shift;
pub mod hierarchy;
pub mod fixtures;
pub mod gap;
pub mod genus0;
