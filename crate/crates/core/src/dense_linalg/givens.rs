use crate::dense_linalg::DenseMatrix;

/// Restores lower-triangular form after a cyclic row shift by applying a
/// sequence of Givens rotations from the right.
///
/// Right rotations are orthogonal, so the Gram product `L L^T` is preserved
/// to roundoff. Already-triangular input passes through unchanged. Entries
/// above the diagonal come out exactly zero.
pub fn givens_restore(l: &DenseMatrix) -> DenseMatrix {
    let mut out = l.clone();
    givens_restore_in_place(&mut out);
    out
}

pub(crate) fn givens_restore_in_place(l: &mut DenseMatrix) {
    let rows = l.rows();
    let cols = l.cols();
    for r in 0..rows.min(cols) {
        for c in (r + 1..cols).rev() {
            let b = l.get(r, c);
            if b == 0.0 {
                continue;
            }
            let a = l.get(r, c - 1);
            let h = a.hypot(b);
            let (cs, sn) = (a / h, b / h);
            rotate_col_pair(l, c - 1, c, cs, sn);
            l.set(r, c, 0.0); // exact zero by construction
        }
    }
}

/// Applies the rotation `[cs sn; -sn cs]` to columns `(c1, c2)`.
fn rotate_col_pair(m: &mut DenseMatrix, c1: usize, c2: usize, cs: f64, sn: f64) {
    let (col1, col2) = m.col_pair_mut(c1, c2);
    for (v1, v2) in col1.iter_mut().zip(col2.iter_mut()) {
        let a = *v1;
        let b = *v2;
        *v1 = cs * a + sn * b;
        *v2 = cs * b - sn * a;
    }
}
