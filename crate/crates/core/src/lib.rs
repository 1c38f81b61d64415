//! Verbal width, twisted commutator equations and polynomial surjectivity
//! certificates for finite groups.

pub mod acceptance;
pub mod equations;
pub mod error;
pub mod field;
pub mod group;
pub mod matrix;
pub mod perm;
pub mod poly;
pub mod rng;
pub mod set;
pub mod width;
pub mod words;

pub use error::{Error, Result};
