//! Self-contained dense convex solvers.
//!
//! [`solve_lp`] is a primal-dual path-following interior-point method with
//! Mehrotra predictor-corrector steps for linear programs in the form
//! `min c'x  s.t.  G x <= h,  A x = b,  x_j >= 0 (flagged)`. [`solve_nnls`]
//! is an active-set nonnegative least-squares routine. Both use the dense
//! normal-equations factorizations from [`crate::linalg`]; there are no
//! external solver dependencies.

mod lp;
mod nnls;

pub use lp::solve_lp;
pub use nnls::solve_nnls;

use crate::error::Error;
use crate::linalg::Mat;
use crate::Result;

/// Abstract inequality-constraint matrix. The interior-point solver only
/// needs products with vectors and the weighted normal matrix, so structured
/// problems (like the polygon epigraph forms) can plug in without
/// materializing their dense rows.
pub trait ConstraintMatrix {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    /// `out = G x`.
    fn mul(&self, x: &[f64], out: &mut [f64]);
    /// `out = G' y`.
    fn mul_transpose(&self, y: &[f64], out: &mut [f64]);
    /// `out += G' diag(d) G`, upper triangle.
    fn add_normal(&self, d: &[f64], out: &mut Mat);
}

impl ConstraintMatrix for Mat {
    fn rows(&self) -> usize {
        Mat::rows(self)
    }
    fn cols(&self) -> usize {
        Mat::cols(self)
    }
    fn mul(&self, x: &[f64], out: &mut [f64]) {
        self.mul_vec(x, out);
    }
    fn mul_transpose(&self, y: &[f64], out: &mut [f64]) {
        self.mul_transpose_vec(y, out);
    }
    fn add_normal(&self, d: &[f64], out: &mut Mat) {
        self.accumulate_normal_upper(d, out);
    }
}

/// Linear program in inequality standard form.
#[derive(Debug, Clone)]
pub struct LpStandardForm<M: ConstraintMatrix = Mat> {
    /// Objective vector `c`.
    pub objective: Vec<f64>,
    /// Inequality matrix `G` with `G x <= rhs`.
    pub ineq: M,
    pub rhs: Vec<f64>,
    /// Per-variable `x_j >= 0` flag.
    pub nonneg: Vec<bool>,
    /// Optional equality rows `A x = b`.
    pub eq: Option<(Mat, Vec<f64>)>,
}

impl<M: ConstraintMatrix> LpStandardForm<M> {
    pub(crate) fn validate(&self) -> Result<()> {
        let n = self.objective.len();
        if n == 0 {
            return Err(Error::invalid("LP needs at least one variable"));
        }
        if self.ineq.cols() != n || self.nonneg.len() != n {
            return Err(Error::invalid("LP dimension mismatch"));
        }
        if self.rhs.len() != self.ineq.rows() {
            return Err(Error::invalid("inequality rhs length mismatch"));
        }
        if self.objective.iter().chain(self.rhs.iter()).any(|v| !v.is_finite()) {
            return Err(Error::invalid("non-finite LP data"));
        }
        if let Some((a, b)) = &self.eq {
            if a.cols() != n || a.rows() != b.len() {
                return Err(Error::invalid("equality block dimension mismatch"));
            }
        }
        Ok(())
    }
}

/// Nonnegative least-squares problem `min ||A x - b||, x >= 0`.
#[derive(Debug, Clone)]
pub struct NnlsProblem {
    pub design: Mat,
    pub target: Vec<f64>,
}

impl NnlsProblem {
    pub(crate) fn validate(&self) -> Result<()> {
        if self.design.rows() != self.target.len() {
            return Err(Error::invalid("NNLS dimension mismatch"));
        }
        if self.design.cols() == 0 || self.design.rows() == 0 {
            return Err(Error::invalid("NNLS needs a nonempty design matrix"));
        }
        if self.target.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("non-finite NNLS target"));
        }
        Ok(())
    }
}

/// Termination status of a solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    MaxIter,
    Infeasible,
    Unbounded,
    NumericalFailure,
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::MaxIter => "max-iter",
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::Unbounded => "unbounded",
            SolveStatus::NumericalFailure => "numerical-failure",
        };
        f.write_str(s)
    }
}

/// Solution report. For the LP, `gap` is the relative duality gap at exit;
/// for NNLS it is the KKT residual.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub x: Vec<f64>,
    pub objective: f64,
    pub gap: f64,
    pub iterations: usize,
}
