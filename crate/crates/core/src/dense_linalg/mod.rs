//! Dense matrix container and the factorization primitives the drivers
//! compose: partial column-pivoted QR, unblocked Cholesky, triangular
//! solves, Givens restoration, seeded Gaussian sampling, and the dense
//! symmetric eigenvalue / singular value oracles used for verification.

mod chol;
mod eig;
mod givens;
mod matrix;
mod perm;
mod qrcp;
mod rng;
mod svd;

pub use chol::{backward_solve_t, chol_unblocked, forward_solve, tri_solve_right};
pub use eig::{sym_eig, sym_eigvals};
pub use givens::givens_restore;
pub use matrix::DenseMatrix;
pub use perm::PermutationVector;
pub use qrcp::partial_qrcp;
pub use rng::{gaussian_matrix, RngStream};
pub use svd::{singular_values_squared, svd_truncate};

pub(crate) use chol::tri_solve_right_in_place;
pub(crate) use givens::givens_restore_in_place;
pub(crate) use matrix::{axpy, dot};
pub(crate) use qrcp::partial_qrcp_steps;
