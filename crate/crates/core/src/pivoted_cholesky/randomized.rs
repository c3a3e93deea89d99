use crate::dense_linalg::{
    dot, gaussian_matrix, partial_qrcp_steps, DenseMatrix, RngStream,
};
use crate::error::{Error, Result};
use crate::par;
use crate::pivoted_cholesky::left_looking::panel_update;
use crate::pivoted_cholesky::state::{
    argmax_from, row_norm2, PartialCholeskyState, PivotedFactor, ProjectionState,
};

/// Randomized blocked left-looking pivoted Cholesky.
///
/// Draws a Gaussian sketch `B = Omega A` once, then per round picks a block
/// of diagonal pivots by partial QRCP on the trailing columns of `B`,
/// applies them symmetrically, runs a left-looking block step, and downdates
/// `B` so its trailing columns remain the sketch of the current Schur
/// complement. The Schur complement itself is never formed.
pub fn randomized_blocked_cholesky(
    a: &DenseMatrix,
    b: usize,
    p: usize,
    k: usize,
    rng: &mut RngStream,
) -> Result<(PivotedFactor, ProjectionState)> {
    let (state, proj) = randomized_blocked_state(a, b, p, k, rng)?;
    Ok((
        PivotedFactor {
            l: state.factor(),
            schur_diag: state.schur_cached().to_vec(),
            perm: state.perm.clone(),
            requested_rank: k,
        },
        proj,
    ))
}

pub(crate) fn randomized_blocked_state(
    a: &DenseMatrix,
    b: usize,
    p: usize,
    k: usize,
    rng: &mut RngStream,
) -> Result<(PartialCholeskyState, ProjectionState)> {
    let n = a.rows();
    if b < 1 {
        return Err(Error::Parameter("block size must be at least 1".into()));
    }
    if p < b {
        return Err(Error::Parameter(format!(
            "over-sampling size p = {p} must be at least the block size b = {b}"
        )));
    }
    if k < 1 || k > n {
        return Err(Error::Dimension(format!("rank {k} out of range 1..={n}")));
    }
    let mut state = PartialCholeskyState::new(a, (k + 1).min(n))?;

    let omega = gaussian_matrix(p, n, rng)?;
    // B = Omega * A through the transpose so the inner products run down
    // contiguous columns.
    let omega_t = omega.transpose();
    let b_mat = omega_t.matmul_tn(a);
    let mut proj = ProjectionState { omega, b: b_mat };

    let mut j = 0usize;
    while j < k {
        let top = argmax_from(&state.schur, j);
        if !(state.schur[top] > state.tol) {
            break; // numerical rank reached
        }
        let mut bb = b.min(k - j);

        // block pivots from partial QRCP on a copy of B(:, j..n)
        let bsub = proj.b.sub_matrix(0, p, j, n - j);
        let max_norm2 = (0..bsub.cols())
            .map(|c| dot(bsub.col(c), bsub.col(c)))
            .fold(0.0f64, f64::max);
        let guard = n as f64 * f64::EPSILON;
        let steps = partial_qrcp_steps(&bsub, bb, guard * guard * max_norm2);
        for (t, &pv) in steps.swaps.iter().enumerate() {
            debug_assert!(j + t >= state.rank_done && j + pv >= state.rank_done);
            state.swap_uncommitted(j + t, j + pv);
            proj.swap_cols(j + t, j + pv);
        }
        // sketch went rank deficient: fall back to the largest Schur
        // diagonal for the rest of the block
        for t in steps.valid..bb {
            let piv = argmax_from(&state.schur, j + t);
            if !(state.schur[piv] > state.tol) {
                bb = t;
                break;
            }
            state.swap_uncommitted(j + t, piv);
            proj.swap_cols(j + t, piv);
        }
        if bb == 0 {
            break;
        }

        panel_update(&mut state, j, bb);
        let done = state.factor_diag_block(j, bb);
        state.clear_block_upper(j, bb);
        state.solve_below_block(j, done);
        if done < bb {
            // wipe the unfactored scratch columns
            for c in done..bb {
                state.factor.col_mut(j + c).fill(0.0);
            }
        }

        // downdate the cached Schur diagonal
        for i in j + done..n {
            state.schur[i] -= row_norm2(&state.factor, i, j..j + done);
        }
        state.rank_done = j + done;
        if done < bb {
            break; // pivot fell below tolerance inside the block
        }

        if j + bb < k {
            let panel = state.factor.sub_matrix(0, n, j, bb);
            update_projection(&mut proj, &panel, j, bb);
        }
        j += bb;
    }
    Ok((state, proj))
}

/// Sketch downdate after a block step: with the just-factored panel
/// `[C; L21]` in global columns `j..j+bb`,
/// `B(:, j+bb..n) -= Omega(:, j..n) * panel(j..n, :) * L21^T`
/// so the trailing columns of `B` become the projection of the new Schur
/// complement.
pub fn update_projection(proj: &mut ProjectionState, panel: &DenseMatrix, j: usize, bb: usize) {
    let p = proj.b.rows();
    let n = proj.b.cols();
    assert_eq!(panel.rows(), n, "panel must span all rows");
    assert_eq!(panel.cols(), bb);
    let lo = j + bb;
    if lo >= n {
        return;
    }
    // T = Omega(:, j..n) * panel(j..n, :), p x bb
    let mut t_mat = DenseMatrix::zeros(p, bb);
    for c in 0..bb {
        let t_col = t_mat.col_mut(c);
        for l in j..n {
            let f = panel.get(l, c);
            if f != 0.0 {
                let om = proj.omega.col(l);
                for (tv, ov) in t_col.iter_mut().zip(om) {
                    *tv += f * ov;
                }
            }
        }
    }
    // B(:, jc) -= T * panel(jc, :)^T for each trailing column
    let cols = n - lo;
    par::for_each_col_mut(proj.b.data_mut(), p, lo, cols, p * bb, |jc, col| {
        for c in 0..bb {
            let f = panel.get(jc, c);
            if f != 0.0 {
                for (bv, tv) in col.iter_mut().zip(t_mat.col(c)) {
                    *bv -= f * tv;
                }
            }
        }
    });
}
