use crate::dense_linalg::{DenseMatrix, PermutationVector};
use crate::error::{Error, Result};

/// Workspace of a partial pivoted Cholesky factorization.
///
/// Holds the symmetrically permuted input `P^T A P` (both triangles, so
/// swaps stay cheap), the lower-trapezoidal factor committed so far, and the
/// running Schur-complement diagonal. The reconstruction contract is
/// `P^T A P - L L^T = [[0, 0], [0, S]]` with `S` starting at `rank_done`.
#[derive(Debug, Clone)]
pub struct PartialCholeskyState {
    pub(crate) a_perm: DenseMatrix,
    pub(crate) factor: DenseMatrix,
    pub(crate) perm: PermutationVector,
    pub(crate) rank_done: usize,
    /// Incrementally downdated Schur diagonal; entries below `rank_done`
    /// are stale and unused.
    pub(crate) schur: Vec<f64>,
    /// Absolute pivot threshold: n * eps * max initial diagonal.
    pub(crate) tol: f64,
}

impl PartialCholeskyState {
    /// Starts a factorization of `a` with room for `cap` factor columns.
    pub(crate) fn new(a: &DenseMatrix, cap: usize) -> Result<Self> {
        let n = a.rows();
        if a.cols() != n || n == 0 {
            return Err(Error::Dimension(format!(
                "factorization needs a square matrix, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let asym = a.max_asymmetry();
        let scale = a.max_abs().max(f64::MIN_POSITIVE);
        if asym > 128.0 * n as f64 * f64::EPSILON * scale {
            return Err(Error::NotSymmetric { max_asym: asym });
        }
        let diag: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
        let max_diag = diag.iter().fold(0.0f64, |m, &v| m.max(v));
        Ok(Self {
            a_perm: a.clone(),
            factor: DenseMatrix::zeros(n, cap.min(n)),
            perm: PermutationVector::identity(n),
            rank_done: 0,
            schur: diag,
            tol: n as f64 * f64::EPSILON * max_diag,
        })
    }

    pub fn n(&self) -> usize {
        self.a_perm.rows()
    }

    pub fn rank_done(&self) -> usize {
        self.rank_done
    }

    pub fn perm(&self) -> &PermutationVector {
        &self.perm
    }

    pub fn pivot_tolerance(&self) -> f64 {
        self.tol
    }

    /// The committed factor `L` as an `n x rank_done` matrix.
    pub fn factor(&self) -> DenseMatrix {
        self.factor.sub_matrix(0, self.n(), 0, self.rank_done)
    }

    /// Diagonal of the implicit Schur complement, recomputed from scratch:
    /// entry `i` is `(P^T A P)[k+i, k+i] - ||L(k+i, 0..k)||^2`.
    pub fn schur_diagonal(&self) -> Vec<f64> {
        let k = self.rank_done;
        (k..self.n())
            .map(|i| self.a_perm.get(i, i) - row_norm2(&self.factor, i, 0..k))
            .collect()
    }

    /// Cached (incrementally downdated) trailing Schur diagonal.
    pub fn schur_cached(&self) -> &[f64] {
        &self.schur[self.rank_done..]
    }

    /// Residual trace `trace(A) - ||L||_F^2`, read off the cached diagonal.
    pub fn residual_trace(&self) -> f64 {
        self.schur[self.rank_done..].iter().sum()
    }

    /// Symmetric swap of positions `i`, `j` across all bookkeeping. Both
    /// indices must lie in the uncommitted region.
    pub(crate) fn swap_uncommitted(&mut self, i: usize, j: usize) {
        debug_assert!(
            i >= self.rank_done && j >= self.rank_done,
            "pivot swaps must not cross the committed boundary"
        );
        if i == j {
            return;
        }
        self.a_perm.sym_swap(i, j);
        self.factor.swap_rows(i, j);
        self.perm.swap(i, j);
        self.schur.swap(i, j);
    }

    /// Right-looking Cholesky of the `bb x bb` diagonal block of the panel
    /// at global column `j`, in place inside the factor storage. Returns how
    /// many block columns cleared the pivot tolerance.
    pub(crate) fn factor_diag_block(&mut self, j: usize, bb: usize) -> usize {
        for t in 0..bb {
            let d = self.factor.get(j + t, j + t);
            if !(d > self.tol) || !d.is_finite() {
                return t;
            }
            let djj = d.sqrt();
            self.factor.set(j + t, j + t, djj);
            for r in t + 1..bb {
                let v = self.factor.get(j + r, j + t) / djj;
                self.factor.set(j + r, j + t, v);
            }
            for s in t + 1..bb {
                let f = self.factor.get(j + s, j + t);
                if f != 0.0 {
                    for r in s..bb {
                        let v = self.factor.get(j + r, j + s) - f * self.factor.get(j + r, j + t);
                        self.factor.set(j + r, j + s, v);
                    }
                }
            }
        }
        bb
    }

    /// Turns the below-block rows of the panel into factor columns:
    /// `L21 <- L21 * C^{-T}` with `C` the `bb x bb` diagonal block at `j`.
    pub(crate) fn solve_below_block(&mut self, j: usize, bb: usize) {
        let rows = self.n();
        let lo = j + bb;
        if lo >= rows {
            return;
        }
        for t in 0..bb {
            let (left, right) = self.factor.split_cols_mut(j + t);
            let col_t = &mut right[..rows];
            for s in 0..t {
                let f = left[(j + s) * rows + (j + t)]; // C(t, s)
                if f != 0.0 {
                    let src = &left[(j + s) * rows + lo..(j + s) * rows + rows];
                    for (dst, sv) in col_t[lo..].iter_mut().zip(src) {
                        *dst -= f * sv;
                    }
                }
            }
            let inv = 1.0 / col_t[j + t];
            for v in col_t[lo..].iter_mut() {
                *v *= inv;
            }
        }
    }

    /// Zeros the above-diagonal scratch the panel copy left inside the
    /// committed block columns, keeping the factor lower-trapezoidal.
    pub(crate) fn clear_block_upper(&mut self, j: usize, bb: usize) {
        for c in 1..bb {
            for r in j..j + c {
                self.factor.set(r, j + c, 0.0);
            }
        }
    }
}

/// Gaussian sketch maintained alongside the randomized driver: trailing
/// columns of `B` stay equal to `Omega` applied to the current Schur
/// complement.
#[derive(Debug, Clone)]
pub struct ProjectionState {
    pub(crate) omega: DenseMatrix,
    pub(crate) b: DenseMatrix,
}

impl ProjectionState {
    pub fn omega(&self) -> &DenseMatrix {
        &self.omega
    }

    pub fn b(&self) -> &DenseMatrix {
        &self.b
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        self.omega.swap_cols(i, j);
        self.b.swap_cols(i, j);
    }
}

/// Result of a rank-limited pivoted factorization.
#[derive(Debug, Clone)]
pub struct PivotedFactor {
    pub perm: PermutationVector,
    /// Lower-trapezoidal factor, `n x achieved_rank` under `perm` ordering.
    pub l: DenseMatrix,
    /// Trailing Schur-complement diagonal (`n - achieved_rank` entries).
    pub schur_diag: Vec<f64>,
    /// Rank that was asked for; a smaller achieved rank means the matrix
    /// ran out of numerical rank early.
    pub requested_rank: usize,
}

impl PivotedFactor {
    pub fn achieved_rank(&self) -> usize {
        self.l.cols()
    }

    pub fn early_stopped(&self) -> bool {
        self.achieved_rank() < self.requested_rank
    }

    /// `trace(A) - ||L||_F^2` via the Schur diagonal.
    pub fn residual_trace(&self) -> f64 {
        self.schur_diag.iter().sum()
    }
}

/// Argmax with lowest-index tie-breaking.
pub(crate) fn argmax_from(values: &[f64], from: usize) -> usize {
    let mut best = from;
    let mut best_v = values[from];
    for (i, &v) in values.iter().enumerate().skip(from + 1) {
        if v > best_v {
            best = i;
            best_v = v;
        }
    }
    best
}

/// `sum_c L(i, c)^2` over a factor row segment.
pub(crate) fn row_norm2(factor: &DenseMatrix, i: usize, cols: std::ops::Range<usize>) -> f64 {
    let mut s = 0.0;
    for c in cols {
        let v = factor.get(i, c);
        s += v * v;
    }
    s
}
