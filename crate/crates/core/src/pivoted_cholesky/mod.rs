//! The three factorization drivers: full blocked left-looking Cholesky,
//! the diagonal-pivoted right-looking baseline, and the randomized blocked
//! pivoted Cholesky steered by partial QRCP on a Gaussian sketch.

mod diag_pivot;
mod left_looking;
mod randomized;
mod state;

pub use diag_pivot::diag_pivoted_cholesky;
pub use left_looking::left_looking_cholesky;
pub use randomized::{randomized_blocked_cholesky, update_projection};
pub use state::{PartialCholeskyState, PivotedFactor, ProjectionState};

pub(crate) use left_looking::panel_update;
pub(crate) use randomized::randomized_blocked_state;
pub(crate) use state::{argmax_from, row_norm2};
