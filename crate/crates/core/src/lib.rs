#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod exactlin;

pub use error::{Error, Result};
pub mod liealg;
pub mod symmetry;
pub mod commutant;
pub mod strata;
pub mod pipeline;
