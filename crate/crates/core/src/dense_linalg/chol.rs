use crate::dense_linalg::matrix::dot;
use crate::dense_linalg::DenseMatrix;
use crate::error::{Error, Result};

/// Unblocked Cholesky factorization of a symmetric matrix.
///
/// Returns lower-triangular `C` with `C C^T = M` and positive diagonal.
/// Fails with the offending column index when a pivot falls at or below
/// `tol` times the initial maximum diagonal entry.
pub fn chol_unblocked(m: &DenseMatrix, tol: f64) -> Result<DenseMatrix> {
    let n = m.rows();
    if n == 0 || m.cols() != n {
        return Err(Error::Dimension(format!(
            "cholesky needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let max_diag = (0..n).map(|i| m.get(i, i)).fold(f64::NEG_INFINITY, f64::max);
    let thresh = tol * max_diag.max(0.0);
    let mut c = DenseMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = m.get(j, j);
        for k in 0..j {
            let v = c.get(j, k);
            d -= v * v;
        }
        if !(d > thresh) || !d.is_finite() {
            return Err(Error::NotPositiveDefinite { index: j });
        }
        let djj = d.sqrt();
        c.set(j, j, djj);
        for i in j + 1..n {
            let mut s = m.get(i, j);
            for k in 0..j {
                s -= c.get(i, k) * c.get(j, k);
            }
            c.set(i, j, s / djj);
        }
    }
    Ok(c)
}

/// Solves `X = B * C^{-T}` for lower-triangular `C`, i.e. the panel update
/// step that turns an off-diagonal block into factor columns.
pub fn tri_solve_right(b: &DenseMatrix, c: &DenseMatrix) -> Result<DenseMatrix> {
    let k = c.rows();
    if c.cols() != k || b.cols() != k {
        return Err(Error::Dimension(format!(
            "tri_solve_right: B is {}x{}, C is {}x{}",
            b.rows(),
            b.cols(),
            c.rows(),
            c.cols()
        )));
    }
    let mut x = b.clone();
    tri_solve_right_in_place(&mut x, c)?;
    Ok(x)
}

/// In-place form of [`tri_solve_right`] operating on contiguous columns.
pub(crate) fn tri_solve_right_in_place(x: &mut DenseMatrix, c: &DenseMatrix) -> Result<()> {
    let k = c.rows();
    let rows = x.rows();
    for t in 0..k {
        if c.get(t, t) == 0.0 {
            return Err(Error::SingularTriangular { index: t });
        }
        let (done, rest) = x.split_cols_mut(t);
        let col_t = &mut rest[..rows];
        // X(:,t) <- (B(:,t) - sum_{s<t} X(:,s) C(t,s)) / C(t,t)
        for s in 0..t {
            let f = c.get(t, s);
            if f != 0.0 {
                let prev = &done[s * rows..(s + 1) * rows];
                for (xv, pv) in col_t.iter_mut().zip(prev) {
                    *xv -= f * pv;
                }
            }
        }
        let inv = 1.0 / c.get(t, t);
        for v in col_t.iter_mut() {
            *v *= inv;
        }
    }
    Ok(())
}

/// Forward substitution `L z = b` for lower-triangular `L`.
pub fn forward_solve(l: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let n = l.rows();
    assert_eq!(b.len(), n);
    let mut z = b.to_vec();
    for j in 0..n {
        let d = l.get(j, j);
        if d == 0.0 {
            return Err(Error::SingularTriangular { index: j });
        }
        z[j] /= d;
        let zj = z[j];
        let col = l.col(j);
        for i in j + 1..n {
            z[i] -= col[i] * zj;
        }
    }
    Ok(z)
}

/// Back substitution `L^T z = b` for lower-triangular `L`.
pub fn backward_solve_t(l: &DenseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let n = l.rows();
    assert_eq!(b.len(), n);
    let mut z = b.to_vec();
    for j in (0..n).rev() {
        let col = l.col(j);
        let s = dot(&col[j + 1..], &z[j + 1..]);
        let d = col[j];
        if d == 0.0 {
            return Err(Error::SingularTriangular { index: j });
        }
        z[j] = (z[j] - s) / d;
    }
    Ok(z)
}
