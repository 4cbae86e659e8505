//! Exact computations for the monodromy group and Stokes matrices of the
//! quantum differential equation of complex projective space.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod combinat;
pub mod error;
pub mod exact;
pub mod group;
pub mod invariant;
pub mod levelt;
pub mod mellin;
pub mod mutation;
pub mod numeric;
pub mod series;
pub mod stokes;

pub use error::{Error, Result};
pub use exact::{Matrix, Scalar};
