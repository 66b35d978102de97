//! Minimal dense linear algebra used by the solvers and problem assembly.
//!
//! Row-major `f64` matrices, Cholesky factorization, and small helpers. The
//! solvers deliberately avoid external linear-algebra dependencies so that
//! every numerical step stays auditable.

use crate::error::Error;
use crate::Result;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_assign_at(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn fill(&mut self, v: f64) {
        self.data.fill(v);
    }

    /// `out = self * x`.
    pub fn mul_vec(&self, x: &[f64], out: &mut [f64]) {
        assert_eq!(x.len(), self.cols);
        assert_eq!(out.len(), self.rows);
        for (i, o) in out.iter_mut().enumerate() {
            *o = dot(self.row(i), x);
        }
    }

    /// `out = self^T * y`.
    pub fn mul_transpose_vec(&self, y: &[f64], out: &mut [f64]) {
        assert_eq!(y.len(), self.rows);
        assert_eq!(out.len(), self.cols);
        out.fill(0.0);
        for (i, &yi) in y.iter().enumerate() {
            if yi != 0.0 {
                axpy(yi, self.row(i), out);
            }
        }
    }

    /// Accumulates `out += self^T * diag(d) * self` on the upper triangle
    /// (the strict lower triangle of `out` is left untouched).
    pub fn accumulate_normal_upper(&self, d: &[f64], out: &mut Mat) {
        assert_eq!(d.len(), self.rows);
        assert_eq!(out.rows, self.cols);
        assert_eq!(out.cols, self.cols);
        let n = self.cols;
        for (i, &di) in d.iter().enumerate() {
            if di == 0.0 {
                continue;
            }
            let row = self.row(i);
            for l in 0..n {
                let f = di * row[l];
                if f != 0.0 {
                    let dst = &mut out.data[l * n + l..(l + 1) * n];
                    let src = &row[l..];
                    for (o, &s) in dst.iter_mut().zip(src) {
                        *o += f * s;
                    }
                }
            }
        }
    }
}

/// Dot product.
#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `y += alpha * x`.
#[inline]
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Euclidean norm.
#[inline]
pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Cholesky factor of a symmetric positive definite matrix given by its
/// upper triangle. Stores `L` (lower triangular, row-major) and solves
/// `A x = b` by forward/back substitution.
#[derive(Debug, Clone)]
pub struct Cholesky {
    n: usize,
    l: Vec<f64>,
}

impl Cholesky {
    /// Factors `a` (upper triangle referenced). Fails on a non-positive
    /// pivot, which signals loss of definiteness.
    pub fn factor(a: &Mat) -> Result<Self> {
        assert_eq!(a.rows(), a.cols());
        let n = a.rows();
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut diag = a.get(j, j);
            for k in 0..j {
                diag -= l[j * n + k] * l[j * n + k];
            }
            if !(diag > 0.0) || !diag.is_finite() {
                return Err(Error::NumericalFailure(format!(
                    "cholesky breakdown at pivot {j} (value {diag:e})"
                )));
            }
            let dsqrt = diag.sqrt();
            l[j * n + j] = dsqrt;
            for i in j + 1..n {
                // a(j, i) from the upper triangle.
                let mut v = a.get(j, i);
                let (ri, rj) = (&l[i * n..i * n + j], &l[j * n..j * n + j]);
                v -= dot(ri, rj);
                l[i * n + j] = v / dsqrt;
            }
        }
        Ok(Cholesky { n, l })
    }

    /// Solves `A x = b` in place.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.n;
        assert_eq!(b.len(), n);
        // Forward: L u = b.
        for i in 0..n {
            let s = dot(&self.l[i * n..i * n + i], &b[..i]);
            b[i] = (b[i] - s) / self.l[i * n + i];
        }
        // Back: L^T x = u.
        for i in (0..n).rev() {
            let mut s = b[i];
            for k in i + 1..n {
                s -= self.l[k * n + i] * b[k];
            }
            b[i] = s / self.l[i * n + i];
        }
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x);
        x
    }
}

/// Solves a small dense linear system `a x = b` by Gaussian elimination with
/// partial pivoting. Used by test oracles and small subproblems.
pub fn solve_dense(a: &Mat, b: &[f64]) -> Result<Vec<f64>> {
    assert_eq!(a.rows(), a.cols());
    let n = a.rows();
    assert_eq!(b.len(), n);
    let mut m = a.data.clone();
    let mut x = b.to_vec();
    for col in 0..n {
        let mut piv = col;
        let mut best = m[col * n + col].abs();
        for r in col + 1..n {
            let v = m[r * n + col].abs();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 || !best.is_finite() {
            return Err(Error::NumericalFailure("singular system".into()));
        }
        if piv != col {
            for k in 0..n {
                m.swap(col * n + k, piv * n + k);
            }
            x.swap(col, piv);
        }
        let d = m[col * n + col];
        for r in col + 1..n {
            let f = m[r * n + col] / d;
            if f != 0.0 {
                for k in col..n {
                    m[r * n + k] -= f * m[col * n + k];
                }
                x[r] -= f * x[col];
            }
        }
    }
    for i in (0..n).rev() {
        let mut s = x[i];
        for k in i + 1..n {
            s -= m[i * n + k] * x[k];
        }
        x[i] = s / m[i * n + i];
    }
    Ok(x)
}
