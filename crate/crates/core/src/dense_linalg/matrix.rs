use crate::error::{Error, Result};

/// Dense 64-bit float matrix in column-major order.
///
/// Columns are contiguous, which is what every factorization kernel in this
/// crate leans on: `col(j)` is a plain slice and the committed/uncommitted
/// split of a factor is a single `split_at_mut`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds a matrix from column-major data, rejecting non-finite entries.
    pub fn from_col_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::Parameter(format!(
                "non-finite entry at ({}, {})",
                pos % rows.max(1),
                pos / rows.max(1)
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from row-major data (convenient in tests).
    pub fn from_rows(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, data[i * cols + j]);
            }
        }
        if let Some(v) = m.data.iter().find(|v| !v.is_finite()) {
            return Err(Error::Parameter(format!("non-finite entry {v}")));
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[j * self.rows + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[j * self.rows + i] = v;
    }

    #[inline]
    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Splits the backing storage at column `c`: `(cols 0..c, cols c..)`.
    pub(crate) fn split_cols_mut(&mut self, c: usize) -> (&[f64], &mut [f64]) {
        let (left, right) = self.data.split_at_mut(c * self.rows);
        (left, right)
    }

    /// Mutable access to two distinct columns at once.
    pub(crate) fn col_pair_mut(&mut self, c1: usize, c2: usize) -> (&mut [f64], &mut [f64]) {
        assert!(c1 < c2 && c2 < self.cols);
        let rows = self.rows;
        let (head, tail) = self.data.split_at_mut(c2 * rows);
        (&mut head[c1 * rows..(c1 + 1) * rows], &mut tail[..rows])
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for j in 0..self.cols {
            let col = self.col(j);
            for i in 0..self.rows {
                t.set(j, i, col[i]);
            }
        }
        t
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(j * self.rows + a, j * self.rows + b);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (a, b) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(b * self.rows);
        head[a * self.rows..(a + 1) * self.rows].swap_with_slice(&mut tail[..self.rows]);
    }

    /// Swaps rows and columns `a`, `b` (symmetric two-sided permutation).
    pub fn sym_swap(&mut self, a: usize, b: usize) {
        self.swap_rows(a, b);
        self.swap_cols(a, b);
    }

    pub fn frob_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest Euclidean column norm (the (2,1) operator norm).
    pub fn norm_2_1(&self) -> f64 {
        (0..self.cols)
            .map(|j| self.col(j).iter().map(|v| v * v).sum::<f64>().sqrt())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut m = 0.0f64;
        for j in 0..self.cols {
            for i in 0..j {
                m = m.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        m
    }

    /// Copies the block with rows `r0..r0+nr`, cols `c0..c0+nc`.
    pub fn sub_matrix(&self, r0: usize, nr: usize, c0: usize, nc: usize) -> DenseMatrix {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols);
        let mut out = DenseMatrix::zeros(nr, nc);
        for j in 0..nc {
            out.col_mut(j)
                .copy_from_slice(&self.col(c0 + j)[r0..r0 + nr]);
        }
        out
    }

    /// `self - other`, entrywise.
    pub fn sub(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// `self * other`.
    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        let rows = self.rows;
        let inner = self.cols;
        let a = &self.data;
        crate::par::for_each_col_mut(
            &mut out.data,
            rows,
            0,
            other.cols,
            rows * inner,
            |j, col| {
                let b_col = other.col(j);
                for l in 0..inner {
                    let s = b_col[l];
                    if s != 0.0 {
                        let a_col = &a[l * rows..(l + 1) * rows];
                        for (c, av) in col.iter_mut().zip(a_col) {
                            *c += s * av;
                        }
                    }
                }
            },
        );
        out
    }

    /// `self^T * other`, computed as contiguous column dot products.
    pub fn matmul_tn(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.rows, other.rows, "matmul_tn dimension mismatch");
        let mut out = DenseMatrix::zeros(self.cols, other.cols);
        let p = self.cols;
        crate::par::for_each_col_mut(
            &mut out.data,
            p,
            0,
            other.cols,
            p * self.rows,
            |j, col| {
                let b_col = other.col(j);
                for (i, c) in col.iter_mut().enumerate() {
                    *c = dot(self.col(i), b_col);
                }
            },
        );
        out
    }

    /// `self * other^T`.
    pub fn matmul_nt(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.cols, "matmul_nt dimension mismatch");
        let rows = self.rows;
        let inner = self.cols;
        let mut out = DenseMatrix::zeros(rows, other.rows);
        let a = &self.data;
        crate::par::for_each_col_mut(
            &mut out.data,
            rows,
            0,
            other.rows,
            rows * inner,
            |j, col| {
                for l in 0..inner {
                    let s = other.get(j, l);
                    if s != 0.0 {
                        let a_col = &a[l * rows..(l + 1) * rows];
                        for (c, av) in col.iter_mut().zip(a_col) {
                            *c += s * av;
                        }
                    }
                }
            },
        );
        out
    }

    /// `self * v` for a vector.
    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![0.0; self.rows];
        for (l, s) in v.iter().enumerate() {
            if *s != 0.0 {
                let col = self.col(l);
                for (o, c) in out.iter_mut().zip(col) {
                    *o += s * c;
                }
            }
        }
        out
    }

    /// `self^T * v`.
    pub fn matvec_t(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.rows, v.len());
        (0..self.cols).map(|j| dot(self.col(j), v)).collect()
    }
}

#[inline]
pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

#[inline]
pub(crate) fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yv, xv) in y.iter_mut().zip(x) {
        *yv += a * xv;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite() {
        assert!(DenseMatrix::from_col_major(2, 1, vec![1.0, f64::NAN]).is_err());
        assert!(DenseMatrix::from_col_major(2, 1, vec![1.0, f64::INFINITY]).is_err());
        assert!(DenseMatrix::from_col_major(2, 2, vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn norm_2_1_identity_is_one() {
        assert_eq!(DenseMatrix::identity(4).norm_2_1(), 1.0);
    }

    #[test]
    fn norm_2_1_three_four_five() {
        let mut m = DenseMatrix::zeros(2, 3);
        m.set(0, 1, 3.0);
        m.set(1, 1, 4.0);
        assert_eq!(m.norm_2_1(), 5.0);
    }

    #[test]
    fn matmul_agrees_with_by_hand() {
        let a = DenseMatrix::from_rows(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = DenseMatrix::from_rows(2, 2, &[5.0, 6.0, 7.0, 8.0]).unwrap();
        let c = a.matmul(&b);
        assert_eq!(c.get(0, 0), 19.0);
        assert_eq!(c.get(0, 1), 22.0);
        assert_eq!(c.get(1, 0), 43.0);
        assert_eq!(c.get(1, 1), 50.0);
        let ct = b.matmul_tn(&a.transpose()); // B^T A^T = (A B)^T
        assert_eq!(ct.get(0, 0), 19.0);
        assert_eq!(ct.get(1, 0), 22.0);
        let cnt = a.matmul_nt(&b.transpose());
        assert_eq!(cnt.get(1, 1), 50.0);
    }

    #[test]
    fn sym_swap_matches_explicit_permutation() {
        let a = DenseMatrix::from_rows(3, 3, &[1., 2., 3., 2., 5., 6., 3., 6., 9.]).unwrap();
        let mut b = a.clone();
        b.sym_swap(0, 2);
        assert_eq!(b.get(0, 0), 9.0);
        assert_eq!(b.get(2, 2), 1.0);
        assert_eq!(b.get(0, 1), 6.0);
        assert_eq!(b.max_asymmetry(), 0.0);
    }
}
