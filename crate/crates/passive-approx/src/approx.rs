//! Assembly of the sampled passive approximation problem.
//!
//! The approximating function is `h(x) = b1 x + a_{-1}/x + sum_n c_n
//! [p_hat_n(x) - p_hat_n(-x)] + i sum_n c_n [p_n(x) + p_n(-x)]` with
//! nonnegative variables: spline coefficients `c_n`, optionally the slope
//! `b1`, and optionally `u = -a_{-1}` for a point mass at the origin. Sampled
//! on a band grid against a target `F`, the weighted residuals are affine in
//! the variable vector, and the `p = infinity`, `1`, `2` objectives become a
//! minimax LP (complex modulus linearized over `K` polygon directions), an
//! L1 LP, and a nonnegative least-squares problem respectively.

use num_complex::Complex64;

use crate::bspline::{make_partition, BSplineBasis};
use crate::cauchy::hilbert_pp;
use crate::error::Error;
use crate::linalg::{dot, Mat};
use crate::solver::{ConstraintMatrix, LpStandardForm, NnlsProblem};
use crate::Result;

/// Uniform sample grid on the extended band `omega0 [1-2B, 1+2B]` with the
/// approximation window `Omega = omega0 [1-B/2, 1+B/2]` marked. Cell-midpoint
/// sampling makes the mask an exact quarter of the band points.
#[derive(Debug, Clone)]
pub struct SampleGrid {
    points: Vec<f64>,
    omega_mask: Vec<bool>,
    extended_band: (f64, f64),
    dx: f64,
}

impl SampleGrid {
    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn omega_mask(&self) -> &[bool] {
        &self.omega_mask
    }

    pub fn extended_band(&self) -> (f64, f64) {
        self.extended_band
    }

    /// Grid spacing `Delta x`.
    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// The masked (in-window) sample points.
    pub fn omega_points(&self) -> impl Iterator<Item = f64> + '_ {
        self.points
            .iter()
            .zip(&self.omega_mask)
            .filter(|(_, &m)| m)
            .map(|(&x, _)| x)
    }

    pub fn masked_count(&self) -> usize {
        self.omega_mask.iter().filter(|&&m| m).count()
    }
}

/// Builds the band grid: `n_band` midpoint samples on `omega0 [1-2B, 1+2B]`,
/// of which exactly `n_band / 4` fall in the window `omega0 [1-B/2, 1+B/2]`.
pub fn make_grid(omega0: f64, b: f64, n_band: usize) -> Result<SampleGrid> {
    if !(omega0 > 0.0) || !omega0.is_finite() {
        return Err(Error::invalid("omega0 must be positive"));
    }
    if !(b > 0.0 && b < 2.0) {
        return Err(Error::invalid("relative bandwidth must lie in (0, 2)"));
    }
    if n_band < 8 || n_band % 4 != 0 {
        return Err(Error::invalid("grid size must be >= 8 and divisible by 4"));
    }
    let lo = omega0 * (1.0 - 2.0 * b);
    let hi = omega0 * (1.0 + 2.0 * b);
    if lo <= 0.0 {
        return Err(Error::invalid(
            "band touches the origin (weight 1/x undefined there)",
        ));
    }
    let dx = 4.0 * b * omega0 / n_band as f64;
    let points: Vec<f64> = (0..n_band).map(|j| lo + (j as f64 + 0.5) * dx).collect();
    // Window membership by integer arithmetic: lo + 3B/2 <= x < lo + 5B/2
    // becomes 3n <= 8j + 4 < 5n. The upper end is open so the mask holds
    // exactly n/4 samples even when both window edges land on midpoints
    // (n = 4 mod 8).
    let omega_mask: Vec<bool> = (0..n_band)
        .map(|j| {
            let v = 8 * j + 4;
            v >= 3 * n_band && v < 5 * n_band
        })
        .collect();
    Ok(SampleGrid {
        points,
        omega_mask,
        extended_band: (lo, hi),
        dx,
    })
}

/// Basis for the band experiments: `n` order-`m` B-splines with uniform
/// knots spanning exactly `[lo, lo + len]`, so the generated density vanishes
/// at the band edges. Realized as the full translate family of an inner
/// partition inset by `m - 1` knots.
pub fn band_spanning_basis(lo: f64, len: f64, n: usize, m: usize) -> Result<BSplineBasis> {
    if n < m {
        return Err(Error::invalid(format!(
            "need at least m = {m} basis functions to span the band"
        )));
    }
    let n_sub = n + 1 - m;
    let h = len / (n + m - 1) as f64;
    let inner = make_partition(lo + (m - 1) as f64 * h, n_sub as f64 * h, n_sub, m)?;
    BSplineBasis::new(inner)
}

/// Target function on the grid.
#[derive(Debug, Clone)]
pub enum TargetSpec {
    /// `F = -h0` for the Herglotz function `h0(z) = b1_0 z`.
    NegativeSlope { b1_0: f64 },
    /// `F(x) = x eps_t`, the permittivity target.
    Permittivity { eps_t: Complex64 },
    /// Tabulated values, one per grid point.
    Tabulated { values: Vec<Complex64> },
}

impl TargetSpec {
    /// Target values at the grid points.
    pub fn values_on(&self, grid: &SampleGrid) -> Result<Vec<Complex64>> {
        match self {
            TargetSpec::NegativeSlope { b1_0 } => {
                if !(*b1_0 >= 0.0) {
                    return Err(Error::invalid("slope target needs b1_0 >= 0"));
                }
                Ok(grid
                    .points()
                    .iter()
                    .map(|&x| Complex64::new(-b1_0 * x, 0.0))
                    .collect())
            }
            TargetSpec::Permittivity { eps_t } => {
                Ok(grid.points().iter().map(|&x| x * eps_t).collect())
            }
            TargetSpec::Tabulated { values } => {
                if values.len() != grid.points().len() {
                    return Err(Error::invalid("tabulated target length mismatch"));
                }
                if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
                    return Err(Error::invalid("non-finite tabulated target"));
                }
                Ok(values.clone())
            }
        }
    }
}

/// Weight function on the window.
#[derive(Debug, Clone)]
pub enum WeightKind {
    Unit,
    /// `w(x) = 1/x` (the permittivity-norm weight).
    InverseX,
    /// Tabulated weights, one per grid point.
    Tabulated(Vec<f64>),
}

impl WeightKind {
    fn at(&self, grid: &SampleGrid, grid_index: usize) -> f64 {
        match self {
            WeightKind::Unit => 1.0,
            WeightKind::InverseX => 1.0 / grid.points()[grid_index],
            WeightKind::Tabulated(w) => w[grid_index],
        }
    }
}

/// Lp norm selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpNorm {
    One,
    Two,
    Inf,
}

impl std::fmt::Display for LpNorm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LpNorm::One => f.write_str("1"),
            LpNorm::Two => f.write_str("2"),
            LpNorm::Inf => f.write_str("inf"),
        }
    }
}

/// Problem options for the assembly.
#[derive(Debug, Clone)]
pub struct ProblemOptions {
    pub norm: LpNorm,
    pub weight: WeightKind,
    /// Fixed slope folded into the target; `None` keeps `b1 >= 0` as a
    /// variable.
    pub fix_b1: Option<f64>,
    /// Adds the origin point-mass variable `u = -a_{-1} >= 0`.
    pub allow_origin_atom: bool,
    /// Polygon directions for the complex-modulus linearization.
    pub directions: usize,
}

impl Default for ProblemOptions {
    fn default() -> Self {
        ProblemOptions {
            norm: LpNorm::Inf,
            weight: WeightKind::InverseX,
            fix_b1: Some(1.0),
            allow_origin_atom: true,
            directions: 64,
        }
    }
}

impl ProblemOptions {
    fn validate(&self) -> Result<()> {
        if self.directions < 8 || self.directions % 2 != 0 {
            return Err(Error::invalid(
                "polygon direction count must be even and >= 8",
            ));
        }
        if let Some(b1) = self.fix_b1 {
            if !(b1 >= 0.0) || !b1.is_finite() {
                return Err(Error::invalid("fixed b1 must be nonnegative"));
            }
        }
        Ok(())
    }
}

/// Variable layout of the assembled system: spline coefficients first, then
/// the optional free slope, then the optional origin-atom amplitude.
#[derive(Debug, Clone, Copy)]
pub struct VariableLayout {
    pub n_splines: usize,
    pub b1_col: Option<usize>,
    pub atom_col: Option<usize>,
    pub total: usize,
}

/// Sampled affine map from the nonnegative variables to weighted complex
/// residuals on the window.
#[derive(Debug, Clone)]
pub struct ResidualSystem {
    /// Real-part columns at the masked samples.
    pub a_re: Mat,
    /// Imaginary-part columns at the masked samples.
    pub a_im: Mat,
    pub f_re: Vec<f64>,
    pub f_im: Vec<f64>,
    pub weights: Vec<f64>,
    /// Masked sample abscissae.
    pub samples: Vec<f64>,
    /// Riemann-sum cell width for the p = 1, 2 norms.
    pub dx: f64,
    pub layout: VariableLayout,
}

/// Evaluates the basis columns on every grid point:
/// `A_im[i][n] = p_n(x_i) + p_n(-x_i)` and
/// `A_re[i][n] = p_hat_n(x_i) - p_hat_n(-x_i)`.
///
/// The mirrored Hilbert term `p_hat_n(-x_i)` never vanishes and must be kept
/// even though `p_n(-x_i) = 0` for positive-axis grids.
pub fn build_basis_columns(basis: &BSplineBasis, grid: &SampleGrid) -> Result<(Mat, Mat)> {
    let (band_lo, band_hi) = grid.extended_band();
    let rows = grid.points().len();
    let cols = basis.len();
    let mut a_im = Mat::zeros(rows, cols);
    let mut a_re = Mat::zeros(rows, cols);
    for (n, p) in basis.functions().enumerate() {
        let (lo, hi) = p.support();
        if lo <= 0.0 {
            return Err(Error::invalid(
                "basis support crosses the origin; symmetrization would double-count",
            ));
        }
        if lo < band_lo - 1e-9 * band_hi || hi > band_hi + 1e-9 * band_hi {
            return Err(Error::invalid("basis support leaves the extended band"));
        }
        let ph = hilbert_pp(p)?;
        for (i, &x) in grid.points().iter().enumerate() {
            a_im.set(i, n, p.eval(x) + p.eval(-x));
            a_re.set(i, n, ph.eval(x)? - ph.eval(-x)?);
        }
    }
    Ok((a_im, a_re))
}

/// Assembles the residual system over the masked window samples.
pub fn assemble(
    options: &ProblemOptions,
    basis: &BSplineBasis,
    grid: &SampleGrid,
    target: &TargetSpec,
) -> Result<ResidualSystem> {
    options.validate()?;
    let (full_im, full_re) = build_basis_columns(basis, grid)?;
    let targets = target.values_on(grid)?;

    let n_splines = basis.len();
    let mut total = n_splines;
    let b1_col = if options.fix_b1.is_none() {
        total += 1;
        Some(total - 1)
    } else {
        None
    };
    let atom_col = if options.allow_origin_atom {
        total += 1;
        Some(total - 1)
    } else {
        None
    };
    let layout = VariableLayout {
        n_splines,
        b1_col,
        atom_col,
        total,
    };

    let masked: Vec<usize> = (0..grid.points().len())
        .filter(|&i| grid.omega_mask()[i])
        .collect();
    let m = masked.len();
    let mut a_re = Mat::zeros(m, total);
    let mut a_im = Mat::zeros(m, total);
    let mut f_re = vec![0.0; m];
    let mut f_im = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mut samples = vec![0.0; m];
    for (row, &i) in masked.iter().enumerate() {
        let x = grid.points()[i];
        samples[row] = x;
        let w = options.weight.at(grid, i);
        if !(w > 0.0) || !w.is_finite() {
            return Err(Error::invalid(format!("nonpositive weight at x = {x}")));
        }
        weights[row] = w;
        for n in 0..n_splines {
            a_re.set(row, n, full_re.get(i, n));
            a_im.set(row, n, full_im.get(i, n));
        }
        if let Some(col) = b1_col {
            a_re.set(row, col, x);
        }
        if let Some(col) = atom_col {
            // h gains a_{-1}/x = -u/x from the origin atom.
            a_re.set(row, col, -1.0 / x);
        }
        f_re[row] = targets[i].re;
        f_im[row] = targets[i].im;
        if let Some(b1) = options.fix_b1 {
            f_re[row] -= b1 * x;
        }
    }
    Ok(ResidualSystem {
        a_re,
        a_im,
        f_re,
        f_im,
        weights,
        samples,
        dx: grid.dx(),
        layout,
    })
}

impl ResidualSystem {
    pub fn n_samples(&self) -> usize {
        self.f_re.len()
    }

    /// Unweighted complex residuals `(A v - F)_i`.
    pub fn residuals(&self, v: &[f64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.layout.total, "variable vector length");
        let m = self.n_samples();
        let mut re = vec![0.0; m];
        let mut im = vec![0.0; m];
        self.a_re.mul_vec(v, &mut re);
        self.a_im.mul_vec(v, &mut im);
        (0..m)
            .map(|i| Complex64::new(re[i] - self.f_re[i], im[i] - self.f_im[i]))
            .collect()
    }

    /// Weighted Lp objective of a variable vector.
    pub fn objective(&self, v: &[f64], p: LpNorm) -> f64 {
        let r = self.residuals(v);
        match p {
            LpNorm::Inf => r
                .iter()
                .zip(&self.weights)
                .fold(0.0f64, |mx, (ri, w)| mx.max(w * ri.norm())),
            LpNorm::Two => r
                .iter()
                .zip(&self.weights)
                .map(|(ri, w)| w * ri.norm_sqr() * self.dx)
                .sum::<f64>()
                .sqrt(),
            LpNorm::One => r
                .iter()
                .zip(&self.weights)
                .map(|(ri, w)| w * ri.norm() * self.dx)
                .sum(),
        }
    }
}

/// Epigraph column layout of the polygon LPs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Epigraph {
    /// One shared bound `t` (minimax).
    Shared,
    /// One bound `t_i` per sample (L1).
    PerSample,
}

/// Structured inequality matrix of the polygon epigraph LPs. Row `(i, k)`
/// reads `cos(theta_k) w_i (A v - F)_re + sin(theta_k) w_i (A v - F)_im <=
/// t`, so the whole block is generated by two dense sample-row matrices and
/// the direction table; the weighted normal matrix costs `O(M n^2)` instead
/// of `O(M K n^2)`.
#[derive(Debug, Clone)]
pub struct PolygonMatrix {
    w_re: Mat,
    w_im: Mat,
    cos: Vec<f64>,
    sin: Vec<f64>,
    epigraph: Epigraph,
    n_vars: usize,
}

impl PolygonMatrix {
    fn directions(&self) -> usize {
        self.cos.len()
    }

    fn samples(&self) -> usize {
        self.w_re.rows()
    }

    fn epi_col(&self, sample: usize) -> usize {
        match self.epigraph {
            Epigraph::Shared => self.n_vars,
            Epigraph::PerSample => self.n_vars + sample,
        }
    }
}

impl ConstraintMatrix for PolygonMatrix {
    fn rows(&self) -> usize {
        self.samples() * self.directions()
    }

    fn cols(&self) -> usize {
        self.n_vars
            + match self.epigraph {
                Epigraph::Shared => 1,
                Epigraph::PerSample => self.samples(),
            }
    }

    fn mul(&self, x: &[f64], out: &mut [f64]) {
        let k = self.directions();
        let xv = &x[..self.n_vars];
        for i in 0..self.samples() {
            let u_re = dot(self.w_re.row(i), xv);
            let u_im = dot(self.w_im.row(i), xv);
            let t = x[self.epi_col(i)];
            for (kk, o) in out[i * k..(i + 1) * k].iter_mut().enumerate() {
                *o = self.cos[kk] * u_re + self.sin[kk] * u_im - t;
            }
        }
    }

    fn mul_transpose(&self, y: &[f64], out: &mut [f64]) {
        let k = self.directions();
        out.fill(0.0);
        for i in 0..self.samples() {
            let block = &y[i * k..(i + 1) * k];
            let mut yc = 0.0;
            let mut ys = 0.0;
            let mut ysum = 0.0;
            for (kk, &yv) in block.iter().enumerate() {
                yc += yv * self.cos[kk];
                ys += yv * self.sin[kk];
                ysum += yv;
            }
            for (j, o) in out[..self.n_vars].iter_mut().enumerate() {
                *o += yc * self.w_re.get(i, j) + ys * self.w_im.get(i, j);
            }
            out[self.epi_col(i)] -= ysum;
        }
    }

    fn add_normal(&self, d: &[f64], out: &mut Mat) {
        let k = self.directions();
        let n = self.n_vars;
        let mut p = vec![0.0; n];
        let mut q = vec![0.0; n];
        for i in 0..self.samples() {
            let block = &d[i * k..(i + 1) * k];
            let (mut scc, mut sss, mut scs, mut sc1, mut ss1, mut s0) =
                (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
            for (kk, &dv) in block.iter().enumerate() {
                let (c, s) = (self.cos[kk], self.sin[kk]);
                scc += dv * c * c;
                sss += dv * s * s;
                scs += dv * c * s;
                sc1 += dv * c;
                ss1 += dv * s;
                s0 += dv;
            }
            let a = self.w_re.row(i);
            let b = self.w_im.row(i);
            // 2x2 Cholesky of [scc scs; scs sss] gives two rank-1 updates.
            let l11 = scc.max(0.0).sqrt();
            let (l21, l22) = if l11 > 0.0 {
                let l21 = scs / l11;
                (l21, (sss - l21 * l21).max(0.0).sqrt())
            } else {
                (0.0, sss.max(0.0).sqrt())
            };
            for j in 0..n {
                p[j] = l11 * a[j] + l21 * b[j];
                q[j] = l22 * b[j];
            }
            for l in 0..n {
                let (fp, fq) = (p[l], q[l]);
                if fp != 0.0 || fq != 0.0 {
                    let row = out.row_mut(l);
                    for j in l..n {
                        row[j] += fp * p[j] + fq * q[j];
                    }
                }
            }
            // Epigraph cross terms (the epigraph column sits after the
            // variable block, so these land in the upper triangle).
            let tc = self.epi_col(i);
            for j in 0..n {
                out.add_assign_at(j, tc, -(sc1 * a[j] + ss1 * b[j]));
            }
            out.add_assign_at(tc, tc, s0);
        }
    }
}

/// Polygon directions `theta_k = 2 pi k / K`.
fn direction_tables(k: usize) -> (Vec<f64>, Vec<f64>) {
    let cos = (0..k)
        .map(|kk| (2.0 * std::f64::consts::PI * kk as f64 / k as f64).cos())
        .collect();
    let sin = (0..k)
        .map(|kk| (2.0 * std::f64::consts::PI * kk as f64 / k as f64).sin())
        .collect();
    (cos, sin)
}

fn weighted_rows(system: &ResidualSystem) -> (Mat, Mat) {
    let m = system.n_samples();
    let n = system.layout.total;
    let mut w_re = Mat::zeros(m, n);
    let mut w_im = Mat::zeros(m, n);
    for i in 0..m {
        let w = system.weights[i];
        for j in 0..n {
            w_re.set(i, j, w * system.a_re.get(i, j));
            w_im.set(i, j, w * system.a_im.get(i, j));
        }
    }
    (w_re, w_im)
}

fn polygon_rhs(system: &ResidualSystem, cos: &[f64], sin: &[f64]) -> Vec<f64> {
    let k = cos.len();
    let mut rhs = Vec::with_capacity(system.n_samples() * k);
    for i in 0..system.n_samples() {
        let w = system.weights[i];
        for kk in 0..k {
            rhs.push(cos[kk] * w * system.f_re[i] + sin[kk] * w * system.f_im[i]);
        }
    }
    rhs
}

/// Epigraph LP for the weighted minimax objective: minimize `t` subject to
/// the `K`-direction linearization of `w_i |r_i| <= t` for every window
/// sample. The polygonal norm under-approximates the modulus by the factor
/// `cos(pi/K)`; see [`minimax_bracket`].
pub fn to_minimax_lp(
    system: &ResidualSystem,
    k: usize,
) -> Result<LpStandardForm<PolygonMatrix>> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::invalid("direction count must be even and >= 4"));
    }
    let (cos, sin) = direction_tables(k);
    let rhs = polygon_rhs(system, &cos, &sin);
    let (w_re, w_im) = weighted_rows(system);
    let n = system.layout.total;
    let ineq = PolygonMatrix {
        w_re,
        w_im,
        cos,
        sin,
        epigraph: Epigraph::Shared,
        n_vars: n,
    };
    let mut objective = vec![0.0; n + 1];
    objective[n] = 1.0;
    Ok(LpStandardForm {
        objective,
        ineq,
        rhs,
        // The polygonal bound t is a max over antipodal direction pairs, so
        // t >= 0 holds at any optimum and the bound flag is harmless.
        nonneg: vec![true; n + 1],
        eq: None,
    })
}

/// Epigraph LP for the weighted L1 objective: one bound `t_i` per sample,
/// objective `sum dx t_i`.
pub fn to_l1_lp(system: &ResidualSystem, k: usize) -> Result<LpStandardForm<PolygonMatrix>> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::invalid("direction count must be even and >= 4"));
    }
    let (cos, sin) = direction_tables(k);
    let rhs = polygon_rhs(system, &cos, &sin);
    let (w_re, w_im) = weighted_rows(system);
    let n = system.layout.total;
    let m = system.n_samples();
    let ineq = PolygonMatrix {
        w_re,
        w_im,
        cos,
        sin,
        epigraph: Epigraph::PerSample,
        n_vars: n,
    };
    let mut objective = vec![0.0; n + m];
    for t in objective.iter_mut().skip(n) {
        *t = system.dx;
    }
    Ok(LpStandardForm {
        objective,
        ineq,
        rhs,
        nonneg: vec![true; n + m],
        eq: None,
    })
}

/// Certified bracket for the exact objective of a polygon-LP solution: the
/// true modulus norm lies in `[t, t / cos(pi/K)]`.
pub fn minimax_bracket(t: f64, k: usize) -> (f64, f64) {
    (t, t / (std::f64::consts::PI / k as f64).cos())
}

/// Stacked real least-squares form of the p = 2 problem:
/// `[sqrt(w dx) A_re; sqrt(w dx) A_im] v ~ [sqrt(w dx) F_re; sqrt(w dx) F_im]`
/// with `v >= 0`; the residual norm equals the weighted L2 objective.
pub fn to_l2_problem(system: &ResidualSystem) -> NnlsProblem {
    let m = system.n_samples();
    let n = system.layout.total;
    let mut design = Mat::zeros(2 * m, n);
    let mut target = vec![0.0; 2 * m];
    for i in 0..m {
        let s = (system.weights[i] * system.dx).sqrt();
        for j in 0..n {
            design.set(i, j, s * system.a_re.get(i, j));
            design.set(m + i, j, s * system.a_im.get(i, j));
        }
        target[i] = s * system.f_re[i];
        target[m + i] = s * system.f_im[i];
    }
    NnlsProblem { design, target }
}

/// Permittivity view `eps(x_i) = h(x_i) / x_i` of sampled Herglotz values.
pub fn permittivity_view(h_values: &[Complex64], grid: &SampleGrid) -> Result<Vec<Complex64>> {
    if h_values.len() != grid.points().len() {
        return Err(Error::invalid("value count does not match the grid"));
    }
    if grid.points().contains(&0.0) {
        return Err(Error::invalid("grid contains the origin"));
    }
    Ok(h_values
        .iter()
        .zip(grid.points())
        .map(|(h, &x)| h / x)
        .collect())
}

/// Sampled `h` values on the full grid from basis columns and a variable
/// vector (used for reporting fits outside the window).
pub fn sampled_h(
    full_im: &Mat,
    full_re: &Mat,
    grid: &SampleGrid,
    layout: &VariableLayout,
    fix_b1: Option<f64>,
    v: &[f64],
) -> Vec<Complex64> {
    assert_eq!(v.len(), layout.total);
    let mut out = Vec::with_capacity(grid.points().len());
    for (i, &x) in grid.points().iter().enumerate() {
        let mut re = fix_b1.unwrap_or(0.0) * x;
        let mut im = 0.0;
        for n in 0..layout.n_splines {
            re += full_re.get(i, n) * v[n];
            im += full_im.get(i, n) * v[n];
        }
        if let Some(col) = layout.b1_col {
            re += x * v[col];
        }
        if let Some(col) = layout.atom_col {
            re += -v[col] / x;
        }
        out.push(Complex64::new(re, im));
    }
    out
}
