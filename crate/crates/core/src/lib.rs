//! Reliable low-rank approximation of symmetric positive semidefinite
//! (kernel) matrices via spectrum-revealing Cholesky factorization.
//!
//! The crate provides three factorization drivers — a blocked left-looking
//! Cholesky, a diagonal-pivoted right-looking baseline, and a randomized
//! blocked pivoted Cholesky steered by Gaussian sketches — plus the
//! swap-based spectrum-revealing post-process, Gaussian-process prediction
//! on the low-rank factors, and a verification suite for the approximation
//! bounds.
//!
//! Data-parallel inner loops run on rayon when the default `parallel`
//! feature is enabled; the sequential path produces bit-identical results.

pub mod dense_linalg;
pub mod error;
pub mod gp;
pub mod kernels;
pub mod par;
pub mod pivoted_cholesky;
pub mod srch;
pub mod verify;

pub use error::{Error, Result};
