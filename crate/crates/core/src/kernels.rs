//! Turns raw data into the SPD matrices the factorization drivers consume:
//! CSV ingestion, RBF Gram construction, the Kahan pathological matrix, and
//! synthetic SPD generators with a controllable spectrum.

use std::io::Write;
use std::path::Path;

use crate::dense_linalg::{dot, gaussian_matrix, DenseMatrix, RngStream};
use crate::error::{Error, Result};
use crate::par;

/// Raw samples: `n` rows by `d` feature columns, with an optional target.
#[derive(Debug, Clone)]
pub struct Dataset {
    x: DenseMatrix,
    y: Option<Vec<f64>>,
}

impl Dataset {
    pub fn new(x: DenseMatrix, y: Option<Vec<f64>>) -> Result<Self> {
        if x.rows() == 0 || x.cols() == 0 {
            return Err(Error::Parameter(
                "dataset needs at least one row and one feature".into(),
            ));
        }
        if let Some(ref yv) = y {
            if yv.len() != x.rows() {
                return Err(Error::Dimension(format!(
                    "target has {} entries for {} rows",
                    yv.len(),
                    x.rows()
                )));
            }
            if yv.iter().any(|v| !v.is_finite()) {
                return Err(Error::Parameter("non-finite target value".into()));
            }
        }
        Ok(Self { x, y })
    }

    pub fn n(&self) -> usize {
        self.x.rows()
    }

    pub fn dim(&self) -> usize {
        self.x.cols()
    }

    pub fn features(&self) -> &DenseMatrix {
        &self.x
    }

    pub fn target(&self) -> Option<&[f64]> {
        self.y.as_deref()
    }

    /// Zero-mean, unit-variance scaling per feature column. Constant
    /// features are centered only.
    pub fn standardize(&self) -> Dataset {
        let (n, d) = (self.x.rows(), self.x.cols());
        let mut x = self.x.clone();
        for j in 0..d {
            let col = x.col_mut(j);
            let mean = col.iter().sum::<f64>() / n as f64;
            let var = col.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n as f64;
            let scale = if var > 0.0 { var.sqrt() } else { 1.0 };
            for v in col.iter_mut() {
                *v = (*v - mean) / scale;
            }
        }
        Dataset {
            x,
            y: self.y.clone(),
        }
    }

    /// Writes the samples (and target, when present) as numeric CSV using
    /// the shortest round-trip float representation.
    pub fn write_csv<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        for i in 0..self.n() {
            let mut fields: Vec<String> =
                (0..self.dim()).map(|j| format!("{}", self.x.get(i, j))).collect();
            if let Some(y) = &self.y {
                fields.push(format!("{}", y[i]));
            }
            writeln!(out, "{}", fields.join(","))?;
        }
        Ok(())
    }
}

/// Kernel family and bandwidth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub kind: KernelKind,
    pub sigma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Rbf,
}

impl KernelSpec {
    pub fn rbf(sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::Parameter(format!("sigma must be positive, got {sigma}")));
        }
        Ok(Self {
            kind: KernelKind::Rbf,
            sigma,
        })
    }
}

/// Loads a rectangular numeric CSV. A non-numeric first line is treated as
/// a header and skipped; with `has_target` the last column becomes `y`.
pub fn load_csv<P: AsRef<Path>>(path: P, has_target: bool) -> Result<Dataset> {
    let text = std::fs::read_to_string(path)?;
    parse_csv(&text, has_target)
}

fn parse_csv(text: &str, has_target: bool) -> Result<Dataset> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width = None;
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: std::result::Result<Vec<f64>, _> =
            cells.iter().map(|c| c.parse::<f64>()).collect();
        match parsed {
            Ok(vals) => {
                if let Some(w) = width {
                    if vals.len() != w {
                        return Err(Error::Parse {
                            line: lineno + 1,
                            msg: format!("expected {w} fields, found {}", vals.len()),
                        });
                    }
                } else {
                    width = Some(vals.len());
                }
                if let Some(bad) = vals.iter().find(|v| !v.is_finite()) {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        msg: format!("non-finite value {bad}"),
                    });
                }
                rows.push(vals);
            }
            Err(e) => {
                // only the very first line may be a header
                if lineno == 0 && rows.is_empty() {
                    continue;
                }
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("non-numeric cell: {e}"),
                });
            }
        }
    }
    let n = rows.len();
    let w = width.ok_or_else(|| Error::Parse {
        line: 0,
        msg: "empty file".into(),
    })?;
    if has_target && w < 2 {
        return Err(Error::Parse {
            line: 1,
            msg: "target column requested but file has a single column".into(),
        });
    }
    let d = if has_target { w - 1 } else { w };
    let mut x = DenseMatrix::zeros(n, d);
    let mut y = has_target.then(|| Vec::with_capacity(n));
    for (i, row) in rows.iter().enumerate() {
        for j in 0..d {
            x.set(i, j, row[j]);
        }
        if let Some(yv) = y.as_mut() {
            yv.push(row[w - 1]);
        }
    }
    Dataset::new(x, y)
}

/// RBF Gram matrix `k(x_i, x_j) = exp(-||x_i - x_j||^2 / (2 sigma^2))`.
///
/// Symmetric to the bit by construction, with exactly unit diagonal.
pub fn rbf_gram(data: &Dataset, spec: &KernelSpec) -> DenseMatrix {
    cross_gram(data, data, spec)
}

/// Cross-covariance `K(i, j) = k(rows_i of a, rows_j of b)`, `a.n() x b.n()`.
pub fn cross_gram(a: &Dataset, b: &Dataset, spec: &KernelSpec) -> DenseMatrix {
    assert_eq!(a.dim(), b.dim(), "feature dimension mismatch");
    let KernelKind::Rbf = spec.kind;
    let inv = 1.0 / (2.0 * spec.sigma * spec.sigma);
    // points as contiguous columns
    let at = a.features().transpose();
    let bt = b.features().transpose();
    let asq: Vec<f64> = (0..a.n()).map(|i| dot(at.col(i), at.col(i))).collect();
    let bsq: Vec<f64> = (0..b.n()).map(|j| dot(bt.col(j), bt.col(j))).collect();
    let mut out = DenseMatrix::zeros(a.n(), b.n());
    let rows = a.n();
    par::for_each_col_mut(out.data_mut(), rows, 0, b.n(), rows * a.dim(), |j, col| {
        let bj = bt.col(j);
        for (i, v) in col.iter_mut().enumerate() {
            let d2 = (asq[i] + bsq[j] - 2.0 * dot(at.col(i), bj)).max(0.0);
            *v = (-d2 * inv).exp();
        }
    });
    out
}

/// Gram matrix `K_n^T K_n` of the Kahan matrix `K_n = S_n C_n` with
/// `s = sqrt(0.9999 - c^2)`: the classic pathology that defeats greedy
/// diagonal pivoting.
pub fn kahan_gram(n: usize, c: f64) -> Result<DenseMatrix> {
    if !(c > 0.0 && c < 1.0) || c * c > 0.9999 {
        return Err(Error::Parameter(format!(
            "kahan constant must satisfy 0 < c < 1 and c^2 <= 0.9999, got {c}"
        )));
    }
    if n == 0 {
        return Err(Error::Parameter("kahan matrix needs n >= 1".into()));
    }
    let s = (0.9999 - c * c).sqrt();
    let mut k = DenseMatrix::zeros(n, n);
    let mut pow = 1.0;
    for i in 0..n {
        k.set(i, i, pow);
        for j in i + 1..n {
            k.set(i, j, -c * pow);
        }
        pow *= s;
    }
    let mut a = DenseMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..=j {
            let v = dot(&k.col(i)[..=i.min(j)], &k.col(j)[..=i.min(j)]);
            a.set(i, j, v);
            a.set(j, i, v);
        }
    }
    Ok(a)
}

/// Synthetic SPD matrix `Q diag(decay^0, ..., decay^{rank-1}, 0, ...) Q^T`
/// with Haar-ish orthonormal `Q` drawn from the seeded stream.
pub fn random_spd(n: usize, rank: usize, decay: f64, rng: &mut RngStream) -> Result<DenseMatrix> {
    if rank == 0 || rank > n {
        return Err(Error::Parameter(format!(
            "rank must be in 1..={n}, got {rank}"
        )));
    }
    if !(decay > 0.0 && decay <= 1.0) {
        return Err(Error::Parameter(format!(
            "decay must be in (0, 1], got {decay}"
        )));
    }
    let g = gaussian_matrix(n, rank, rng)?;
    let q = orthonormal_columns(&g);
    let lambdas: Vec<f64> = (0..rank).map(|j| decay.powi(j as i32)).collect();
    // lower triangle of Q diag(lambda) Q^T, mirrored for bit symmetry
    let mut a = DenseMatrix::zeros(n, n);
    let rows = n;
    par::for_each_col_mut(a.data_mut(), rows, 0, n, rows * rank / 2, |j, col| {
        for i in j..rows {
            let mut s = 0.0;
            for (l, &lam) in lambdas.iter().enumerate() {
                s += lam * q.get(i, l) * q.get(j, l);
            }
            col[i] = s;
        }
    });
    for j in 0..n {
        for i in 0..j {
            let v = a.get(j, i);
            a.set(i, j, v);
        }
    }
    Ok(a)
}

/// Thin Householder QR, returning the explicit orthonormal `Q` (n x r).
fn orthonormal_columns(g: &DenseMatrix) -> DenseMatrix {
    let (n, r) = (g.rows(), g.cols());
    assert!(r <= n);
    let mut w = g.clone();
    let mut vs: Vec<Vec<f64>> = Vec::with_capacity(r);
    let mut betas = Vec::with_capacity(r);
    for t in 0..r {
        let x = &w.col(t)[t..];
        let sigma = dot(x, x).sqrt();
        let mut v = x.to_vec();
        let mut beta = 0.0;
        if sigma > 0.0 {
            let alpha = if v[0] >= 0.0 { -sigma } else { sigma };
            v[0] -= alpha;
            let vtv = dot(&v, &v);
            if vtv > 0.0 {
                beta = 2.0 / vtv;
                for j in t..r {
                    let col = &mut w.col_mut(j)[t..];
                    let f = beta * dot(&v, col);
                    for (cv, vv) in col.iter_mut().zip(&v) {
                        *cv -= f * vv;
                    }
                }
            }
        }
        vs.push(v);
        betas.push(beta);
    }
    // Q = H_0 ... H_{r-1} [I_r; 0]
    let mut q = DenseMatrix::zeros(n, r);
    for j in 0..r {
        q.set(j, j, 1.0);
    }
    for t in (0..r).rev() {
        if betas[t] == 0.0 {
            continue;
        }
        let v = &vs[t];
        for j in t..r {
            let col = &mut q.col_mut(j)[t..];
            let f = betas[t] * dot(v, col);
            for (cv, vv) in col.iter_mut().zip(v) {
                *cv -= f * vv;
            }
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense_linalg::sym_eigvals;

    #[test]
    fn csv_basic_and_target() {
        let ds = parse_csv("1,2\n3,4\n5,6\n", false).unwrap();
        assert_eq!((ds.n(), ds.dim()), (3, 2));
        assert_eq!(ds.features().get(2, 1), 6.0);
        let ds = parse_csv("1,2\n3,4\n5,6\n", true).unwrap();
        assert_eq!((ds.n(), ds.dim()), (3, 1));
        assert_eq!(ds.target().unwrap(), &[2.0, 4.0, 6.0]);
    }

    #[test]
    fn csv_header_skipped_and_roundtrip() {
        let ds = parse_csv("a,b\n0.1,2.25\n-3.5e-7,4\n", false).unwrap();
        assert_eq!(ds.n(), 2);
        assert_eq!(ds.features().get(1, 0), -3.5e-7);

        let dir = std::env::temp_dir().join(format!("srch_csv_{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("roundtrip.csv");
        ds.write_csv(&path).unwrap();
        let back = load_csv(&path, false).unwrap();
        assert_eq!(back.features().data(), ds.features().data());
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn csv_errors_carry_line_numbers() {
        match parse_csv("1,2\n3\n", false) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_csv("1,2\n3,x\n", false) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rbf_gram_unit_diagonal_symmetric() {
        let mut rng = RngStream::new(4);
        let x = gaussian_matrix(5, 3, &mut rng).unwrap();
        let ds = Dataset::new(x, None).unwrap();
        let g = rbf_gram(&ds, &KernelSpec::rbf(1.0).unwrap());
        for i in 0..5 {
            assert_eq!(g.get(i, i), 1.0);
        }
        assert_eq!(g.max_asymmetry(), 0.0);
        // entrywise brute force
        for i in 0..5 {
            for j in 0..5 {
                let mut d2 = 0.0;
                for f in 0..3 {
                    let diff = ds.features().get(i, f) - ds.features().get(j, f);
                    d2 += diff * diff;
                }
                let expect = (-d2 / 2.0).exp();
                assert!((g.get(i, j) - expect).abs() <= 1e-14);
            }
        }
        let min_eig = sym_eigvals(&g).unwrap().pop().unwrap();
        assert!(min_eig >= -1e-10);
    }

    #[test]
    fn duplicate_rows_give_unit_entry() {
        let x = DenseMatrix::from_rows(2, 2, &[1.5, -2.0, 1.5, -2.0]).unwrap();
        let ds = Dataset::new(x, None).unwrap();
        let g = rbf_gram(&ds, &KernelSpec::rbf(0.7).unwrap());
        assert_eq!(g.get(0, 1), 1.0);
    }

    #[test]
    fn kahan_small_cases() {
        let a = kahan_gram(1, 0.285).unwrap();
        assert_eq!(a.get(0, 0), 1.0);

        // n=2: K = [[1, -c], [0, s]], A = K^T K
        let c = 0.285;
        let s = (0.9999f64 - c * c).sqrt();
        let a = kahan_gram(2, c).unwrap();
        assert!((a.get(0, 0) - 1.0).abs() < 1e-15);
        assert!((a.get(0, 1) + c).abs() < 1e-15);
        assert!((a.get(1, 0) + c).abs() < 1e-15);
        assert!((a.get(1, 1) - (c * c + s * s)).abs() < 1e-15);
    }

    #[test]
    fn kahan_positive_definite_at_paper_size() {
        let a = kahan_gram(130, 0.285).unwrap();
        let eigs = sym_eigvals(&a).unwrap();
        assert!(*eigs.last().unwrap() >= 1e-16);
        assert!(kahan_gram(4, 1.2).is_err());
    }

    #[test]
    fn random_spd_spectrum_matches_construction() {
        let mut rng = RngStream::new(6);
        let a = random_spd(10, 10, 1.0, &mut rng).unwrap();
        assert!(a.sub(&DenseMatrix::identity(10)).max_abs() <= 1e-12);

        let a = random_spd(10, 3, 0.5, &mut rng).unwrap();
        let eigs = sym_eigvals(&a).unwrap();
        assert!(eigs[2] > 1e-10 && eigs[3].abs() < 1e-10);

        let a = random_spd(8, 8, 0.5, &mut rng).unwrap();
        let eigs = sym_eigvals(&a).unwrap();
        for (j, e) in eigs.iter().enumerate() {
            assert!((e - 0.5f64.powi(j as i32)).abs() <= 1e-10, "j={j}: {e}");
        }
    }

    #[test]
    fn standardize_centers_and_scales() {
        let x = DenseMatrix::from_rows(4, 2, &[1., 10., 2., 20., 3., 30., 4., 40.]).unwrap();
        let ds = Dataset::new(x, None).unwrap().standardize();
        for j in 0..2 {
            let col: Vec<f64> = (0..4).map(|i| ds.features().get(i, j)).collect();
            let mean: f64 = col.iter().sum::<f64>() / 4.0;
            let var: f64 = col.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / 4.0;
            assert!(mean.abs() < 1e-14);
            assert!((var - 1.0).abs() < 1e-12);
        }
    }
}
