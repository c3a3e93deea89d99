use crate::dense_linalg::DenseMatrix;
use crate::error::{Error, Result};
use crate::par;
use crate::pivoted_cholesky::state::PartialCholeskyState;

/// Left-looking panel update: copies `A(j:n, j:j+bb)` into the factor
/// storage and subtracts the contributions of the committed columns,
/// `panel -= L(j:n, 0:j) L(j:j+bb, 0:j)^T`. The trailing Schur complement
/// is never formed.
pub(crate) fn panel_update(state: &mut PartialCholeskyState, j: usize, bb: usize) {
    let n = state.n();
    let a_perm = &state.a_perm;
    let (left, right) = state.factor.split_cols_mut(j);
    par::for_each_col_mut(right, n, 0, bb, n * (j + 1), |c, col| {
        let gc = j + c;
        col[..j].fill(0.0);
        col[j..].copy_from_slice(&a_perm.col(gc)[j..]);
        for l in 0..j {
            let f = left[l * n + gc]; // L(gc, l)
            if f != 0.0 {
                let src = &left[l * n + j..(l + 1) * n];
                for (dst, sv) in col[j..].iter_mut().zip(src) {
                    *dst -= f * sv;
                }
            }
        }
    });
}

/// Full blocked left-looking Cholesky factorization `A = L L^T`.
///
/// Per block: panel update against already-committed columns, Cholesky of
/// the diagonal block, then a triangular solve for the below-block rows.
pub fn left_looking_cholesky(a: &DenseMatrix, b: usize) -> Result<DenseMatrix> {
    let n = a.rows();
    if b < 1 || b > n.max(1) {
        return Err(Error::Parameter(format!(
            "block size must satisfy 1 <= b <= {n}, got {b}"
        )));
    }
    let mut state = PartialCholeskyState::new(a, n)?;
    let mut j = 0;
    while j < n {
        let bb = b.min(n - j);
        panel_update(&mut state, j, bb);
        let done = state.factor_diag_block(j, bb);
        if done < bb {
            return Err(Error::NotPositiveDefinite { index: j + done });
        }
        state.clear_block_upper(j, bb);
        state.solve_below_block(j, bb);
        state.rank_done = j + bb;
        j += bb;
    }
    Ok(state.factor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense_linalg::{chol_unblocked, gaussian_matrix, RngStream};

    #[test]
    fn identity_any_block() {
        for b in [1, 2, 5] {
            let l = left_looking_cholesky(&DenseMatrix::identity(5), b).unwrap();
            assert_eq!(l, DenseMatrix::identity(5));
        }
    }

    #[test]
    fn single_block_matches_unblocked() {
        let mut rng = RngStream::new(8);
        let g = gaussian_matrix(6, 6, &mut rng).unwrap();
        let mut m = g.matmul_tn(&g);
        for i in 0..6 {
            m.set(i, i, m.get(i, i) + 1.0);
        }
        let blocked = left_looking_cholesky(&m, 6).unwrap();
        let reference = chol_unblocked(&m, 1e-14).unwrap();
        assert!(blocked.sub(&reference).max_abs() <= 1e-12 * m.max_abs());
    }

    #[test]
    fn block_sizes_agree() {
        let mut rng = RngStream::new(12);
        let g = gaussian_matrix(50, 50, &mut rng).unwrap();
        let mut m = g.matmul_tn(&g);
        for i in 0..50 {
            m.set(i, i, m.get(i, i) + 5.0);
        }
        let reference = chol_unblocked(&m, 1e-14).unwrap();
        for b in [1, 7, 50] {
            let l = left_looking_cholesky(&m, b).unwrap();
            let resid = l.matmul_nt(&l).sub(&m);
            assert!(resid.frob_norm() <= 1e-12 * m.frob_norm(), "b={b}");
            assert!(l.sub(&reference).frob_norm() <= 1e-12 * reference.frob_norm());
        }
    }

    #[test]
    fn indefinite_propagates_global_index() {
        let mut m = DenseMatrix::identity(6);
        m.set(4, 4, -2.0);
        match left_looking_cholesky(&m, 2) {
            Err(Error::NotPositiveDefinite { index }) => assert_eq!(index, 4),
            other => panic!("expected failure, got {other:?}"),
        }
    }
}
