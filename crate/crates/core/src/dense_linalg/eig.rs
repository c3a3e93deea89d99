use crate::dense_linalg::matrix::dot;
use crate::dense_linalg::DenseMatrix;
use crate::error::{Error, Result};
use crate::par;

/// Eigenvalues of a symmetric matrix, sorted descending.
///
/// Householder tridiagonalization followed by implicit-shift QL iteration.
/// Serves as the dense verification oracle throughout the crate; intended
/// for n up to a few thousand.
pub fn sym_eigvals(a: &DenseMatrix) -> Result<Vec<f64>> {
    let (d, _) = sym_eig_impl(a, false)?;
    Ok(d)
}

/// Eigen-decomposition `A = Q diag(lambda) Q^T` with eigenvalues sorted
/// descending and eigenvectors in the columns of `Q`.
pub fn sym_eig(a: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    let (d, q) = sym_eig_impl(a, true)?;
    Ok((d, q.expect("eigenvectors requested")))
}

fn sym_eig_impl(a: &DenseMatrix, want_q: bool) -> Result<(Vec<f64>, Option<DenseMatrix>)> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::Dimension(format!(
            "eigensolver needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let max_abs = a.max_abs();
    let asym = a.max_asymmetry();
    if asym > 128.0 * (n.max(1) as f64) * f64::EPSILON * max_abs.max(f64::MIN_POSITIVE) {
        return Err(Error::NotSymmetric { max_asym: asym });
    }
    if n == 0 {
        return Ok((Vec::new(), want_q.then(|| DenseMatrix::zeros(0, 0))));
    }

    // Work on a symmetrized copy so roundoff asymmetry cannot bias the
    // column-dot matvec below.
    let mut w = a.clone();
    for j in 0..n {
        for i in 0..j {
            let v = 0.5 * (w.get(i, j) + w.get(j, i));
            w.set(i, j, v);
            w.set(j, i, v);
        }
    }

    let (mut d, mut e, betas) = tridiagonalize(&mut w);
    let mut q = want_q.then(|| accumulate_q(&w, &betas));
    tql_implicit(&mut d, &mut e, q.as_mut())?;

    // Sort descending, carrying eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[j].partial_cmp(&d[i]).unwrap());
    let sorted: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let q = q.map(|qm| {
        let mut out = DenseMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            out.col_mut(dst).copy_from_slice(qm.col(src));
        }
        out
    });
    Ok((sorted, q))
}

/// Reduces `w` to tridiagonal form, returning the diagonal, subdiagonal and
/// reflector scalings. Reflector vectors are left in the zeroed part of each
/// column of `w` for later accumulation of `Q`.
fn tridiagonalize(w: &mut DenseMatrix) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = w.rows();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut betas = vec![0.0; n];
    if n == 1 {
        d[0] = w.get(0, 0);
        return (d, e, betas);
    }

    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for j in 0..n.saturating_sub(2) {
        d[j] = w.get(j, j);
        let m = n - j - 1;
        v[..m].copy_from_slice(&w.col(j)[j + 1..]);
        let tail2 = dot(&v[1..m], &v[1..m]);
        if tail2 == 0.0 {
            e[j] = v[0];
            betas[j] = 0.0;
            continue;
        }
        let norm = (v[0] * v[0] + tail2).sqrt();
        let alpha = if v[0] >= 0.0 { -norm } else { norm };
        v[0] -= alpha;
        let vtv = v[0] * v[0] + tail2;
        let beta = 2.0 / vtv;
        e[j] = alpha;
        betas[j] = beta;

        // p = beta * A22 * v, using symmetry for contiguous column dots
        {
            let vv = &v[..m];
            let wref = &*w;
            par::fill_indexed(&mut p[..m], m, |r| {
                beta * dot(&wref.col(j + 1 + r)[j + 1..], vv)
            });
        }
        let kappa = 0.5 * beta * dot(&v[..m], &p[..m]);
        for (pv, vv) in p[..m].iter_mut().zip(&v[..m]) {
            *pv -= kappa * vv;
        }

        // A22 -= v p^T + p v^T (both triangles, keeping the block symmetric)
        {
            let vv = &v[..m];
            let pp = &p[..m];
            let rows = w.rows();
            par::for_each_col_mut(w.data_mut(), rows, j + 1, m, m, |gc, col| {
                let c = gc - (j + 1);
                let (vc, pc) = (vv[c], pp[c]);
                for ((x, &vr), &pr) in col[j + 1..].iter_mut().zip(vv).zip(pp) {
                    *x -= vr * pc + pr * vc;
                }
            });
        }

        // stash the reflector in the eliminated column
        w.col_mut(j)[j + 1..].copy_from_slice(&v[..m]);
    }
    d[n - 2] = w.get(n - 2, n - 2);
    e[n - 2] = w.get(n - 1, n - 2);
    d[n - 1] = w.get(n - 1, n - 1);
    (d, e, betas)
}

/// Back-accumulates the orthogonal reduction `Q = H_0 H_1 ... H_{n-3}`.
fn accumulate_q(w: &DenseMatrix, betas: &[f64]) -> DenseMatrix {
    let n = w.rows();
    let mut q = DenseMatrix::identity(n);
    for j in (0..n.saturating_sub(2)).rev() {
        let beta = betas[j];
        if beta == 0.0 {
            continue;
        }
        let v = &w.col(j)[j + 1..];
        for c in j + 1..n {
            let col = &mut q.col_mut(c)[j + 1..];
            let f = beta * dot(v, col);
            for (x, vv) in col.iter_mut().zip(v) {
                *x -= f * vv;
            }
        }
    }
    q
}

/// Implicit-shift QL iteration on a tridiagonal matrix, rotating the
/// columns of `q` along when eigenvectors are wanted.
fn tql_implicit(d: &mut [f64], e: &mut [f64], mut q: Option<&mut DenseMatrix>) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 64 {
                return Err(Error::Parameter(
                    "eigensolver failed to converge".to_string(),
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r.abs() } else { -r.abs() });
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(qm) = q.as_deref_mut() {
                    let (ci, ci1) = qm.col_pair_mut(i, i + 1);
                    for (vi, vi1) in ci.iter_mut().zip(ci1.iter_mut()) {
                        let f = *vi1;
                        *vi1 = s * *vi + c * f;
                        *vi = c * *vi - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense_linalg::rng::{gaussian_matrix, RngStream};

    /// Independent oracle: cyclic Jacobi rotations.
    fn jacobi_eigvals(a: &DenseMatrix) -> Vec<f64> {
        let n = a.rows();
        let mut m = a.clone();
        for _ in 0..200 {
            let mut off = 0.0f64;
            for j in 0..n {
                for i in 0..j {
                    off = off.max(m.get(i, j).abs());
                }
            }
            if off <= 1e-13 * m.max_abs().max(1e-300) {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = m.get(p, q);
                    if apq.abs() <= 1e-300 {
                        continue;
                    }
                    let theta = (m.get(q, q) - m.get(p, p)) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = m.get(k, p);
                        let akq = m.get(k, q);
                        m.set(k, p, c * akp - s * akq);
                        m.set(k, q, s * akp + c * akq);
                    }
                    for k in 0..n {
                        let apk = m.get(p, k);
                        let aqk = m.get(q, k);
                        m.set(p, k, c * apk - s * aqk);
                        m.set(q, k, s * apk + c * aqk);
                    }
                }
            }
        }
        let mut vals: Vec<f64> = (0..n).map(|i| m.get(i, i)).collect();
        vals.sort_by(|x, y| y.partial_cmp(x).unwrap());
        vals
    }

    #[test]
    fn diagonal_matrix_sorted() {
        let mut m = DenseMatrix::zeros(3, 3);
        m.set(0, 0, 3.0);
        m.set(1, 1, 1.0);
        m.set(2, 2, 2.0);
        let vals = sym_eigvals(&m).unwrap();
        assert_eq!(vals, vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn identity_all_ones() {
        let vals = sym_eigvals(&DenseMatrix::identity(5)).unwrap();
        assert!(vals.iter().all(|v| (v - 1.0).abs() < 1e-14));
    }

    #[test]
    fn matches_jacobi_oracle() {
        let mut rng = RngStream::new(17);
        let g = gaussian_matrix(20, 20, &mut rng).unwrap();
        let mut a = g.matmul_tn(&g);
        for i in 0..20 {
            a.set(i, i, a.get(i, i) + 1.0);
        }
        let mine = sym_eigvals(&a).unwrap();
        let oracle = jacobi_eigvals(&a);
        for (x, y) in mine.iter().zip(&oracle) {
            assert!((x - y).abs() <= 1e-9 * oracle[0].abs(), "{x} vs {y}");
        }
    }

    #[test]
    fn eigvals_sum_to_trace_and_nonincreasing() {
        let mut rng = RngStream::new(23);
        let g = gaussian_matrix(30, 30, &mut rng).unwrap();
        let a = g.matmul_tn(&g);
        let vals = sym_eigvals(&a).unwrap();
        let sum: f64 = vals.iter().sum();
        assert!((sum - a.trace()).abs() <= 1e-10 * a.trace().abs());
        for w in vals.windows(2) {
            assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn eigenvectors_reconstruct() {
        let mut rng = RngStream::new(31);
        let g = gaussian_matrix(12, 12, &mut rng).unwrap();
        let a = g.matmul_tn(&g);
        let (vals, q) = sym_eig(&a).unwrap();
        // A q_j = lambda_j q_j
        for j in 0..12 {
            let qj = q.col(j);
            let aq = a.matvec(qj);
            for (r, &qv) in qj.iter().enumerate() {
                assert!(
                    (aq[r] - vals[j] * qv).abs() <= 1e-8 * vals[0].abs(),
                    "j={j} r={r}"
                );
            }
        }
        // orthonormal columns
        let qtq = q.matmul_tn(&q);
        assert!(qtq.sub(&DenseMatrix::identity(12)).max_abs() < 1e-12);
    }

    #[test]
    fn non_symmetric_rejected() {
        let m = DenseMatrix::from_rows(2, 2, &[1.0, 2.0, 0.0, 1.0]).unwrap();
        assert!(matches!(sym_eigvals(&m), Err(Error::NotSymmetric { .. })));
    }
}
