use crate::dense_linalg::{DenseMatrix, PermutationVector};
use crate::error::{Error, Result};
use crate::par;
use crate::pivoted_cholesky::state::{argmax_from, PivotedFactor};

/// Panel width for the right-looking trailing updates.
const PANEL: usize = 32;

/// Greedy diagonal-pivoted Cholesky, the pstrf-style baseline.
///
/// At each step the largest Schur-complement diagonal entry is swapped to
/// the pivot position and eliminated; the trailing Schur complement is
/// explicitly updated per panel (right-looking), which is where essentially
/// all the work goes for small ranks. Stops early when the largest
/// remaining diagonal falls below `n * eps * max(diag(A))`, reporting the
/// achieved rank.
pub fn diag_pivoted_cholesky(a: &DenseMatrix, k: usize) -> Result<PivotedFactor> {
    let n = a.rows();
    if a.cols() != n || n == 0 {
        return Err(Error::Dimension(format!(
            "factorization needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if k > n {
        return Err(Error::Dimension(format!("rank {k} exceeds dimension {n}")));
    }
    let asym = a.max_asymmetry();
    if asym > 128.0 * n as f64 * f64::EPSILON * a.max_abs().max(f64::MIN_POSITIVE) {
        return Err(Error::NotSymmetric { max_asym: asym });
    }

    let mut work = a.clone();
    let mut perm = PermutationVector::identity(n);
    let mut dwork: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    let tol = n as f64 * f64::EPSILON * dwork.iter().fold(0.0f64, |m, &v| m.max(v));

    let mut achieved = k;
    let mut panel_start = 0usize;
    'outer: while panel_start < k {
        let panel_end = (panel_start + PANEL).min(k);
        let mut t = panel_start;
        while t < panel_end {
            let piv = argmax_from(&dwork, t);
            if !(dwork[piv] > tol) || !dwork[piv].is_finite() {
                achieved = t;
                break 'outer;
            }
            if piv != t {
                work.sym_swap(t, piv);
                perm.swap(t, piv);
                dwork.swap(t, piv);
            }
            // column t against the panel's earlier columns (left-looking
            // inside the panel; earlier panels are already folded in)
            {
                let (left, right) = work.split_cols_mut(t);
                let col_t = &mut right[..n];
                for s in panel_start..t {
                    let f = left[s * n + t]; // L(t, s)
                    if f != 0.0 {
                        let src = &left[s * n + t..(s + 1) * n];
                        for (dst, sv) in col_t[t..].iter_mut().zip(src) {
                            *dst -= f * sv;
                        }
                    }
                }
                let d = col_t[t];
                if !(d > tol) || !d.is_finite() {
                    achieved = t;
                    break 'outer;
                }
                let djj = d.sqrt();
                col_t[t] = djj;
                let inv = 1.0 / djj;
                for v in col_t[t + 1..].iter_mut() {
                    *v *= inv;
                }
            }
            // keep both triangles live so symmetric swaps stay simple
            for i in t + 1..n {
                let v = work.get(i, t);
                work.set(t, i, v);
                dwork[i] -= v * v;
            }
            t += 1;
        }
        // level-3 trailing update: S -= L_panel L_panel^T on the full
        // trailing square (both triangles, bit-symmetric by construction)
        if t < n {
            let (left, right) = work.split_cols_mut(t);
            let cols = n - t;
            par::for_each_col_mut(right, n, 0, cols, n * (t - panel_start), |c, col| {
                let gc = t + c;
                for s in panel_start..t {
                    let f = left[s * n + gc]; // L(gc, s)
                    if f != 0.0 {
                        let src = &left[s * n + t..(s + 1) * n];
                        for (dst, sv) in col[t..].iter_mut().zip(src) {
                            *dst -= f * sv;
                        }
                    }
                }
            });
        }
        panel_start = t;
    }

    let mut l = DenseMatrix::zeros(n, achieved);
    for c in 0..achieved {
        l.col_mut(c)[c..].copy_from_slice(&work.col(c)[c..]);
    }
    Ok(PivotedFactor {
        perm,
        l,
        schur_diag: dwork[achieved..].to_vec(),
        requested_rank: k,
    })
}
