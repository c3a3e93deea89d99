use crate::dense_linalg::eig::sym_eig;
use crate::dense_linalg::DenseMatrix;
use crate::error::{Error, Result};

/// Squared singular values of `L`, descending: the eigenvalues of `L^T L`.
///
/// Computed through the Gram matrix, which is accurate to roundoff relative
/// to `sigma_1^2`; ample for the ratio diagnostics this crate reports.
pub fn singular_values_squared(l: &DenseMatrix) -> Result<Vec<f64>> {
    let gram = l.matmul_tn(l);
    let vals = sym_eig(&gram)?.0;
    Ok(vals.into_iter().map(|v| v.max(0.0)).collect())
}

/// Best rank-`k` compression of `L L^T`: returns `L_k` (n x k) with
/// `L_k L_k^T` the rank-`k` truncated eigen-expansion of `L L^T` and
/// `sigma_j(L_k) = sigma_j(L)` for `j <= k`.
pub fn svd_truncate(l: &DenseMatrix, k: usize) -> Result<DenseMatrix> {
    let k_hat = l.cols();
    if k > k_hat {
        return Err(Error::Dimension(format!(
            "cannot truncate a rank-{k_hat} factor to rank {k}"
        )));
    }
    let gram = l.matmul_tn(l);
    let (_, v) = sym_eig(&gram)?;
    // L V_k carries exactly the top-k singular directions of L.
    let vk = v.sub_matrix(0, k_hat, 0, k);
    Ok(l.matmul(&vk))
}
