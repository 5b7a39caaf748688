//! Numerical core for multiplier norms on spaces with unitarily invariant
//! kernels on the unit ball: kernel families, n-point Pick norms, degree
//! constrained Nevanlinna–Pick solving, weighted shifts and the τ-embedding.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod embeddings;
pub mod error;
pub mod exact;
pub mod interpolation;
pub mod kernels;
pub mod linalg;
pub mod picknorm;
pub mod poly;
pub mod shifts;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

/// Complex matrix type used throughout.
pub type CMatrix = nalgebra::DMatrix<C64>;
