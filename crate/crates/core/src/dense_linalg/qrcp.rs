use crate::dense_linalg::matrix::dot;
use crate::dense_linalg::DenseMatrix;
use crate::error::{Error, Result};

/// Outcome of a partial QR factorization with column pivoting.
///
/// `swaps[t]` is the column (index relative to the working matrix, `>= t`)
/// exchanged into position `t` at step `t`. `valid` counts the steps taken
/// before the residual collapsed to numerical zero; `valid == swaps.len()`
/// when the factorization ran to the requested depth.
#[derive(Debug, Clone)]
pub(crate) struct QrcpSteps {
    pub swaps: Vec<usize>,
    pub valid: usize,
}

/// First `nb` column pivots of Householder QR with column pivoting,
/// returned as indices into the columns of `m` in selection order.
///
/// Greedy on residual column norms, ties broken by lowest index. `m` is not
/// mutated; the elimination runs on a copy.
pub fn partial_qrcp(m: &DenseMatrix, nb: usize) -> Result<Vec<usize>> {
    if nb > m.rows().min(m.cols()) {
        return Err(Error::Dimension(format!(
            "requested {nb} pivots from a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let steps = partial_qrcp_steps(m, nb, 0.0);
    let mut orig: Vec<usize> = (0..m.cols()).collect();
    let mut pivots = Vec::with_capacity(nb);
    for (t, &p) in steps.swaps.iter().enumerate() {
        orig.swap(t, p);
        pivots.push(orig[t]);
    }
    Ok(pivots)
}

/// Runs up to `nb` pivot steps, stopping early once the largest residual
/// column norm squared drops to `zero_tol2` or below.
pub(crate) fn partial_qrcp_steps(m: &DenseMatrix, nb: usize, zero_tol2: f64) -> QrcpSteps {
    let p = m.rows();
    let ncols = m.cols();
    let mut w = m.clone();
    let mut norms2: Vec<f64> = (0..ncols).map(|j| dot(w.col(j), w.col(j))).collect();
    let mut ref_norms2 = norms2.clone();
    let mut swaps = Vec::with_capacity(nb);
    let mut v = vec![0.0; p];

    for t in 0..nb {
        let mut best = t;
        let mut best_norm = norms2[t];
        for j in t + 1..ncols {
            if norms2[j] > best_norm {
                best = j;
                best_norm = norms2[j];
            }
        }
        if best_norm <= zero_tol2 {
            return QrcpSteps { swaps, valid: t };
        }
        w.swap_cols(t, best);
        norms2.swap(t, best);
        ref_norms2.swap(t, best);
        swaps.push(best);

        // Householder reflector for the pivot column below row t.
        let len = p - t;
        let x = &w.col(t)[t..];
        let sigma = dot(x, x).sqrt();
        if sigma > 0.0 {
            let x0 = x[0];
            let alpha = if x0 >= 0.0 { -sigma } else { sigma };
            v[..len].copy_from_slice(x);
            v[0] -= alpha;
            let vtv = dot(&v[..len], &v[..len]);
            if vtv > 0.0 {
                let beta = 2.0 / vtv;
                for j in t + 1..ncols {
                    let col = &mut w.col_mut(j)[t..];
                    let f = beta * dot(&v[..len], col);
                    for (c, vv) in col.iter_mut().zip(&v[..len]) {
                        *c -= f * vv;
                    }
                }
                let col_t = &mut w.col_mut(t)[t..];
                col_t[0] = alpha;
                for c in col_t[1..].iter_mut() {
                    *c = 0.0;
                }
            }
        }

        // Downdate residual norms; recompute when half the digits are gone.
        for j in t + 1..ncols {
            let wt = w.get(t, j);
            let mut nn = norms2[j] - wt * wt;
            if nn < 1e-8 * ref_norms2[j] {
                let tail = &w.col(j)[t + 1..];
                nn = dot(tail, tail);
                ref_norms2[j] = nn;
            }
            norms2[j] = nn.max(0.0);
        }
    }
    QrcpSteps {
        valid: swaps.len(),
        swaps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense_linalg::rng::{gaussian_matrix, RngStream};

    /// Greedy oracle that recomputes every residual norm from scratch after
    /// each explicit Householder deflation.
    fn brute_force_pivots(m: &DenseMatrix, nb: usize) -> Vec<usize> {
        let p = m.rows();
        let ncols = m.cols();
        let mut w = m.clone();
        let mut orig: Vec<usize> = (0..ncols).collect();
        let mut pivots = Vec::new();
        for t in 0..nb {
            let norms2: Vec<f64> = (t..ncols)
                .map(|j| {
                    let tail = &w.col(j)[t..];
                    dot(tail, tail)
                })
                .collect();
            let mut best = 0;
            for (idx, n2) in norms2.iter().enumerate() {
                if *n2 > norms2[best] {
                    best = idx;
                }
            }
            let piv = t + best;
            w.swap_cols(t, piv);
            orig.swap(t, piv);
            pivots.push(orig[t]);
            let x: Vec<f64> = w.col(t)[t..].to_vec();
            let sigma = dot(&x, &x).sqrt();
            if sigma == 0.0 {
                continue;
            }
            let alpha = if x[0] >= 0.0 { -sigma } else { sigma };
            let mut v = x;
            v[0] -= alpha;
            let vtv = dot(&v, &v);
            if vtv == 0.0 {
                continue;
            }
            let beta = 2.0 / vtv;
            for j in t..ncols {
                let col = &mut w.col_mut(j)[t..];
                let f = beta * dot(&v, col);
                for (c, vv) in col.iter_mut().zip(&v) {
                    *c -= f * vv;
                }
            }
            for r in t + 1..p {
                w.set(r, t, 0.0);
            }
        }
        pivots
    }

    #[test]
    fn dominant_column_selected() {
        let m = DenseMatrix::from_rows(2, 2, &[10.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(partial_qrcp(&m, 1).unwrap(), vec![0]);
    }

    #[test]
    fn equal_norms_tie_break_lowest_index() {
        let m = DenseMatrix::identity(3);
        assert_eq!(partial_qrcp(&m, 2).unwrap(), vec![0, 1]);
    }

    #[test]
    fn matches_brute_force_greedy() {
        for seed in 0..20 {
            let mut rng = RngStream::new(seed);
            let m = gaussian_matrix(5, 8, &mut rng).unwrap();
            assert_eq!(
                partial_qrcp(&m, 3).unwrap(),
                brute_force_pivots(&m, 3),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn too_many_pivots_rejected() {
        let m = DenseMatrix::identity(3);
        assert!(partial_qrcp(&m, 4).is_err());
    }

    #[test]
    fn rank_deficient_stops_early() {
        let mut m = DenseMatrix::zeros(4, 5);
        m.set(0, 2, 3.0);
        let steps = partial_qrcp_steps(&m, 3, 1e-24);
        assert_eq!(steps.valid, 1);
        assert_eq!(steps.swaps[0], 2);
    }
}
