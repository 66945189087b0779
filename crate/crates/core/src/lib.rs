//! Exact symbolic computation for noncommutative tori, their finite cyclic
//! symmetries, crossed products and K-theory of the associated quotients.

pub mod actions;
pub mod check;
pub mod crossed;
pub mod error;
pub mod ktheory;
pub mod linalg;
pub mod nctorus;
pub mod sampling;
pub mod scalar;

pub use error::{Error, Result};
