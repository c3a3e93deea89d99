use crate::dense_linalg::DenseMatrix;
use crate::error::{Error, Result};

/// Pivot record: `entries[i]` is the original index now sitting at
/// permuted position `i`, so `(P^T A P)(i, j) = A(entries[i], entries[j])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationVector {
    entries: Vec<usize>,
}

impl PermutationVector {
    pub fn identity(n: usize) -> Self {
        Self {
            entries: (0..n).collect(),
        }
    }

    pub fn from_entries(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n];
        for &e in &entries {
            if e >= n || seen[e] {
                return Err(Error::Parameter(format!(
                    "entries do not form a bijection of 0..{n}"
                )));
            }
            seen[e] = true;
        }
        Ok(Self { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn swap(&mut self, a: usize, b: usize) {
        self.entries.swap(a, b);
    }

    /// Cyclically shifts positions `from..=to` up by one, sending the entry
    /// at `from` to position `to`.
    pub fn cycle_up(&mut self, from: usize, to: usize) {
        self.entries[from..=to].rotate_left(1);
    }

    pub fn inverse(&self) -> PermutationVector {
        let mut inv = vec![0usize; self.entries.len()];
        for (pos, &orig) in self.entries.iter().enumerate() {
            inv[orig] = pos;
        }
        PermutationVector { entries: inv }
    }

    /// Forms `P^T A P` explicitly.
    pub fn permute_symmetric(&self, a: &DenseMatrix) -> DenseMatrix {
        let n = self.entries.len();
        assert_eq!(a.rows(), n);
        assert_eq!(a.cols(), n);
        let mut out = DenseMatrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                out.set(i, j, a.get(self.entries[i], self.entries[j]));
            }
        }
        out
    }

    /// Applies the permutation to a vector: `out[i] = v[entries[i]]`.
    pub fn gather(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.entries.len());
        self.entries.iter().map(|&e| v[e]).collect()
    }

    /// Inverse of [`gather`](Self::gather): `out[entries[i]] = v[i]`.
    pub fn scatter(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.entries.len());
        let mut out = vec![0.0; v.len()];
        for (i, &e) in self.entries.iter().enumerate() {
            out[e] = v[i];
        }
        out
    }
}
