//! Uniform partitions, prototype B-splines of arbitrary order built by box
//! convolution, and finite B-spline expansions, all represented as exact
//! piecewise polynomials.
//!
//! The piecewise-polynomial representation keeps per-interval coefficients in
//! the local variable `x - t_j` (power basis). That choice makes box
//! convolution and principal-value integration exact closed-form operations,
//! which is what the `cauchy` module relies on.

use crate::error::Error;
use crate::Result;

// ---------------------------------------------------------------------------
// Polynomial helpers (local power basis, ascending degree).
// ---------------------------------------------------------------------------

/// Horner evaluation of `sum c[i] u^i`.
#[inline]
pub(crate) fn poly_eval(c: &[f64], u: f64) -> f64 {
    let mut acc = 0.0;
    for &ci in c.iter().rev() {
        acc = acc * u + ci;
    }
    acc
}

/// Coefficients of `p(u + delta)` given those of `p(u)` (Taylor shift).
pub(crate) fn poly_shift(c: &[f64], delta: f64) -> Vec<f64> {
    let n = c.len();
    let mut out = c.to_vec();
    if delta == 0.0 || n <= 1 {
        return out;
    }
    // Synthetic Horner shift: repeated in-place accumulation.
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            let next = out[j + 1];
            out[j] += delta * next;
        }
    }
    out
}

/// Coefficients of the derivative.
pub(crate) fn poly_derivative(c: &[f64]) -> Vec<f64> {
    if c.len() <= 1 {
        return vec![0.0];
    }
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &ci)| ci * i as f64)
        .collect()
}

/// `int_0^L p(u) du`.
pub(crate) fn poly_integral(c: &[f64], len: f64) -> f64 {
    let mut acc = 0.0;
    for (i, &ci) in c.iter().enumerate().rev() {
        acc = acc * len + ci / (i + 1) as f64;
    }
    acc * len
}

// ---------------------------------------------------------------------------
// PiecewisePolynomial
// ---------------------------------------------------------------------------

/// Compactly supported piecewise polynomial.
///
/// `breakpoints` is the strictly increasing sequence `t_0 < ... < t_J`;
/// `coeffs[j]` holds the coefficients (ascending degree, local variable
/// `x - t_j`) of the polynomial on `[t_j, t_{j+1})`. The value is 0 outside
/// `[t_0, t_J]` and evaluation is right-continuous at breakpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePolynomial {
    breakpoints: Vec<f64>,
    coeffs: Vec<Vec<f64>>,
    degree: usize,
}

impl PiecewisePolynomial {
    /// Builds a piecewise polynomial, validating shape invariants.
    pub fn new(breakpoints: Vec<f64>, coeffs: Vec<Vec<f64>>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::invalid("need at least two breakpoints"));
        }
        if coeffs.len() + 1 != breakpoints.len() {
            return Err(Error::invalid(format!(
                "{} coefficient rows for {} intervals",
                coeffs.len(),
                breakpoints.len() - 1
            )));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::invalid("breakpoints must be strictly increasing"));
        }
        if breakpoints.iter().any(|t| !t.is_finite()) {
            return Err(Error::invalid("non-finite breakpoint"));
        }
        let width = coeffs.iter().map(Vec::len).max().unwrap_or(1).max(1);
        let mut coeffs = coeffs;
        for row in &mut coeffs {
            row.resize(width, 0.0);
            if row.iter().any(|c| !c.is_finite()) {
                return Err(Error::invalid("non-finite coefficient"));
            }
        }
        Ok(PiecewisePolynomial {
            breakpoints,
            coeffs,
            degree: width - 1,
        })
    }

    /// The zero function represented on `[a, b]`.
    pub fn zero(a: f64, b: f64) -> Self {
        PiecewisePolynomial {
            breakpoints: vec![a, b],
            coeffs: vec![vec![0.0]],
            degree: 0,
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn coeff_rows(&self) -> &[Vec<f64>] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Support interval `[t_0, t_J]`.
    pub fn support(&self) -> (f64, f64) {
        (self.breakpoints[0], *self.breakpoints.last().unwrap())
    }

    /// Index of the interval containing `x`, or `None` outside the support.
    #[inline]
    fn interval_of(&self, x: f64) -> Option<usize> {
        let t = &self.breakpoints;
        if x < t[0] || x >= *t.last().unwrap() {
            return None;
        }
        // partition_point returns the first index with t[i] > x.
        Some(t.partition_point(|&ti| ti <= x) - 1)
    }

    /// Evaluates the function at `x`. Right-continuous at breakpoints, zero
    /// outside the support.
    ///
    /// Panics on NaN input.
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        assert!(!x.is_nan(), "eval: NaN abscissa");
        match self.interval_of(x) {
            Some(j) => poly_eval(&self.coeffs[j], x - self.breakpoints[j]),
            None => 0.0,
        }
    }

    /// Evaluates the `r`-th derivative at `x` (one-sided from the right).
    pub fn eval_derivative(&self, x: f64, r: usize) -> f64 {
        assert!(!x.is_nan(), "eval_derivative: NaN abscissa");
        match self.interval_of(x) {
            Some(j) => {
                let mut c = self.coeffs[j].clone();
                for _ in 0..r {
                    c = poly_derivative(&c);
                }
                poly_eval(&c, x - self.breakpoints[j])
            }
            None => 0.0,
        }
    }

    /// Exact integral over the real line.
    pub fn integral(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| poly_integral(c, self.breakpoints[j + 1] - self.breakpoints[j]))
            .sum()
    }

    /// Translation `x -> f(x - s)`.
    pub fn translate(&self, s: f64) -> Self {
        PiecewisePolynomial {
            breakpoints: self.breakpoints.iter().map(|t| t + s).collect(),
            coeffs: self.coeffs.clone(),
            degree: self.degree,
        }
    }

    /// Pointwise scaling `a * f`.
    pub fn scale(&self, a: f64) -> Self {
        PiecewisePolynomial {
            breakpoints: self.breakpoints.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|c| a * c).collect())
                .collect(),
            degree: self.degree,
        }
    }

    /// Reflection `x -> f(-x)`.
    pub fn mirror(&self) -> Self {
        let j_count = self.coeffs.len();
        let breakpoints: Vec<f64> = self.breakpoints.iter().rev().map(|t| -t).collect();
        let mut coeffs = Vec::with_capacity(j_count);
        for j in (0..j_count).rev() {
            // Piece on [t_j, t_{j+1}) maps to [-t_{j+1}, -t_j); with local
            // v = x + t_{j+1} the value is p(L - v), L the piece length.
            let len = self.breakpoints[j + 1] - self.breakpoints[j];
            let c = &self.coeffs[j];
            // p(L - v): shift to L then negate odd powers.
            let mut shifted = poly_shift(c, len);
            for (i, ci) in shifted.iter_mut().enumerate() {
                if i % 2 == 1 {
                    *ci = -*ci;
                }
            }
            coeffs.push(shifted);
        }
        PiecewisePolynomial {
            breakpoints,
            coeffs,
            degree: self.degree,
        }
    }

    /// Pointwise sum on the union of the two breakpoint grids.
    pub fn add(&self, other: &Self) -> Self {
        let mut grid: Vec<f64> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .copied()
            .collect();
        grid.sort_by(f64::total_cmp);
        let scale = grid
            .iter()
            .fold(1.0f64, |m, t| m.max(t.abs()));
        grid.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * scale);
        let width = self.coeffs[0].len().max(other.coeffs[0].len());
        let mut coeffs = vec![vec![0.0; width]; grid.len() - 1];
        for (j, row) in coeffs.iter_mut().enumerate() {
            let mid = 0.5 * (grid[j] + grid[j + 1]);
            for part in [self, other] {
                if let Some(src) = part.interval_of(mid) {
                    let shifted =
                        poly_shift(&part.coeffs[src], grid[j] - part.breakpoints[src]);
                    for (dst, v) in row.iter_mut().zip(shifted) {
                        *dst += v;
                    }
                }
            }
        }
        PiecewisePolynomial {
            breakpoints: grid,
            coeffs,
            degree: width - 1,
        }
    }

    /// Largest `q` such that the function is C^q across every junction
    /// (including the jump to zero at the support edges), or `None` if the
    /// function itself is discontinuous. Derivative matches are accepted at
    /// relative tolerance `rel_tol`.
    pub fn continuity_order(&self, rel_tol: f64) -> Option<usize> {
        let mut order: Option<usize> = None;
        for r in 0..=self.degree {
            let mut ok = true;
            for j in 0..=self.coeffs.len() {
                // Junction at breakpoint j between piece j-1 and piece j,
                // with the zero function outside the support.
                let t = self.breakpoints[j];
                let left = if j == 0 {
                    0.0
                } else {
                    let mut c = self.coeffs[j - 1].clone();
                    for _ in 0..r {
                        c = poly_derivative(&c);
                    }
                    poly_eval(&c, t - self.breakpoints[j - 1])
                };
                let right = if j == self.coeffs.len() {
                    0.0
                } else {
                    let mut c = self.coeffs[j].clone();
                    for _ in 0..r {
                        c = poly_derivative(&c);
                    }
                    poly_eval(&c, 0.0)
                };
                let scale = self
                    .coeffs
                    .iter()
                    .flat_map(|row| row.iter())
                    .fold(1.0f64, |m, c| m.max(c.abs()));
                if (left - right).abs() > rel_tol * scale.max(left.abs()).max(right.abs()) {
                    ok = false;
                    break;
                }
            }
            if ok {
                order = Some(r);
            } else {
                break;
            }
        }
        order
    }
}

/// Convolution with the normalized square pulse of width `h`:
/// `(1/h) * int_0^h f(x - u) du`, computed exactly. The degree rises by one,
/// the support widens by `h`, and the total mass is preserved.
pub fn box_convolve(f: &PiecewisePolynomial, h: f64) -> Result<PiecewisePolynomial> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::invalid("box width must be positive"));
    }
    let t = &f.breakpoints;
    let t_last = *t.last().unwrap();
    // Antiderivative data: cumulative integral at each breakpoint plus the
    // per-piece antiderivative coefficients (local, F_j(0) = 0).
    let mut cumulative = Vec::with_capacity(t.len());
    let mut anti = Vec::with_capacity(f.coeffs.len());
    let mut acc = 0.0;
    for (j, c) in f.coeffs.iter().enumerate() {
        cumulative.push(acc);
        let mut a = vec![0.0; c.len() + 1];
        for (i, &ci) in c.iter().enumerate() {
            a[i + 1] = ci / (i + 1) as f64;
        }
        acc += poly_integral(c, t[j + 1] - t[j]);
        anti.push(a);
    }
    cumulative.push(acc);
    let total = acc;

    // F(x) as a polynomial in (x - base) for x in the union interval whose
    // midpoint is `probe`; constant 0 before the support, `total` after.
    let antiderivative_at = |probe: f64, base: f64| -> Vec<f64> {
        if probe < t[0] {
            vec![0.0]
        } else if probe >= t_last {
            vec![total]
        } else {
            let j = t.partition_point(|&ti| ti <= probe) - 1;
            let mut p = poly_shift(&anti[j], base - t[j]);
            p[0] += cumulative[j];
            p
        }
    };

    // Union grid of {t_j} and {t_j + h}.
    let mut grid: Vec<f64> = t.iter().copied().chain(t.iter().map(|ti| ti + h)).collect();
    grid.sort_by(f64::total_cmp);
    let scale = grid.iter().fold(h, |m, v| m.max(v.abs()));
    grid.dedup_by(|a, b| (*a - *b).abs() <= 1e-13 * scale);

    let width = f.coeffs[0].len() + 1;
    let mut coeffs = Vec::with_capacity(grid.len() - 1);
    for j in 0..grid.len() - 1 {
        let mid = 0.5 * (grid[j] + grid[j + 1]);
        let upper = antiderivative_at(mid, grid[j]);
        let lower = antiderivative_at(mid - h, grid[j] - h);
        let mut row = vec![0.0; width];
        for (i, &u) in upper.iter().enumerate() {
            row[i] += u / h;
        }
        for (i, &l) in lower.iter().enumerate() {
            row[i] -= l / h;
        }
        coeffs.push(row);
    }
    PiecewisePolynomial::new(grid, coeffs)
}

/// Prototype B-spline of order `m` on knot spacing `h`: the `m-1` times box
/// convolution of the unit square pulse. Support is exactly `[0, m h]`, the
/// peak value of the linear prototype (`m = 2`) is 1 at `x = h`, and the mass
/// equals `h` for every order.
pub fn prototype_bspline(m: usize, h: f64) -> Result<PiecewisePolynomial> {
    if m < 1 {
        return Err(Error::invalid("order must be at least 1"));
    }
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::invalid("knot spacing must be positive"));
    }
    let mut p = PiecewisePolynomial::new(vec![0.0, h], vec![vec![1.0]])?;
    for _ in 1..m {
        p = box_convolve(&p, h)?;
        // The union grid is uniform by construction; regenerate the
        // breakpoints from the integer index to keep knots exact.
        let count = p.breakpoints.len();
        p.breakpoints = (0..count).map(|i| i as f64 * h).collect();
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// Partition and basis
// ---------------------------------------------------------------------------

/// Uniform partition of a band `[omega_start, omega_start + omega_len]` into
/// `N` subintervals, extended by `m - 1` external knots on each side.
///
/// Knots are `x_k = omega_start + k |Omega| / N` for `k = 1-m, ..., N+m-1`,
/// generated from the integer index to avoid accumulation drift.
#[derive(Debug, Clone)]
pub struct Partition {
    omega_start: f64,
    omega_len: f64,
    n_sub: usize,
    order: usize,
    knots: Vec<f64>,
}

impl Partition {
    pub fn omega_start(&self) -> f64 {
        self.omega_start
    }

    pub fn omega_len(&self) -> f64 {
        self.omega_len
    }

    /// Number of subintervals of the band.
    pub fn n_sub(&self) -> usize {
        self.n_sub
    }

    /// Spline order `m`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Knot spacing `|Omega| / N`.
    pub fn spacing(&self) -> f64 {
        self.omega_len / self.n_sub as f64
    }

    /// All knots, `k = 1-m ..= N+m-1`.
    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    /// Knot `x_k` by signed index.
    pub fn knot(&self, k: i64) -> f64 {
        let idx = k + self.order as i64 - 1;
        self.knots[usize::try_from(idx).expect("knot index out of range")]
    }
}

/// Builds a uniform partition. See [`Partition`].
pub fn make_partition(
    omega_start: f64,
    omega_len: f64,
    n_sub: usize,
    order: usize,
) -> Result<Partition> {
    if !(omega_len > 0.0) || !omega_len.is_finite() || !omega_start.is_finite() {
        return Err(Error::invalid("band must have positive finite length"));
    }
    if n_sub < 1 {
        return Err(Error::invalid("need at least one subinterval"));
    }
    if order < 2 {
        return Err(Error::invalid("spline order must be at least 2"));
    }
    let h = omega_len / n_sub as f64;
    let lo = 1 - order as i64;
    let hi = n_sub as i64 + order as i64 - 1;
    let knots = (lo..=hi).map(|k| omega_start + k as f64 * h).collect();
    Ok(Partition {
        omega_start,
        omega_len,
        n_sub,
        order,
        knots,
    })
}

/// The translated prototype family `p(x - x_{k-1})`, `k = 2-m, ..., N`, on a
/// uniform partition. Each member is nonnegative, supported on `m + 1`
/// consecutive knots, and the family sums to a constant on the band.
#[derive(Debug, Clone)]
pub struct BSplineBasis {
    partition: Partition,
    prototypes: Vec<PiecewisePolynomial>,
}

impl BSplineBasis {
    pub fn new(partition: Partition) -> Result<Self> {
        let proto = prototype_bspline(partition.order(), partition.spacing())?;
        let lo = 2 - partition.order() as i64;
        let hi = partition.n_sub() as i64;
        let prototypes = (lo..=hi)
            .map(|k| proto.translate(partition.knot(k - 1)))
            .collect();
        Ok(BSplineBasis {
            partition,
            prototypes,
        })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// Number of basis functions, `N + m - 1`.
    pub fn len(&self) -> usize {
        self.prototypes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prototypes.is_empty()
    }

    /// Basis member by zero-based index (index 0 is `k = 2-m`).
    pub fn function(&self, i: usize) -> &PiecewisePolynomial {
        &self.prototypes[i]
    }

    pub fn functions(&self) -> impl Iterator<Item = &PiecewisePolynomial> {
        self.prototypes.iter()
    }

    /// Interpolation coefficients for samples taken at the knots
    /// `x_k, k = 2-m, ..., N`: the order-2 expansion with these coefficients
    /// interpolates the samples, and the order-m expansion reuses them.
    pub fn interpolation_coeffs(&self, samples: &[f64]) -> Result<Vec<f64>> {
        if samples.len() != self.len() {
            return Err(Error::invalid(format!(
                "{} samples for a basis of size {}",
                samples.len(),
                self.len()
            )));
        }
        Ok(samples.to_vec())
    }

    /// Samples a function at the interpolation knots, extending it by
    /// constants beyond the band edges.
    pub fn sample_function<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        let p = &self.partition;
        let lo = 2 - p.order() as i64;
        (lo..=p.n_sub() as i64)
            .map(|k| {
                let x = p
                    .knot(k)
                    .clamp(p.omega_start(), p.omega_start() + p.omega_len());
                f(x)
            })
            .collect()
    }
}

/// Finite B-spline expansion `sum_k c_k p(x - x_{k-1})` as an exact piecewise
/// polynomial supported inside `[x_{1-m}, x_{N+m-1}]`.
pub fn expansion(coeffs: &[f64], basis: &BSplineBasis) -> Result<PiecewisePolynomial> {
    if coeffs.len() != basis.len() {
        return Err(Error::invalid(format!(
            "{} coefficients for a basis of size {}",
            coeffs.len(),
            basis.len()
        )));
    }
    let p = basis.partition();
    let m = p.order();
    let proto = prototype_bspline(m, p.spacing())?;
    let knots = p.knots().to_vec();
    let width = proto.coeffs[0].len();
    let mut rows = vec![vec![0.0; width]; knots.len() - 1];
    for (n, &c) in coeffs.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        for (piece, pc) in proto.coeffs.iter().enumerate() {
            for (i, &v) in pc.iter().enumerate() {
                rows[n + piece][i] += c * v;
            }
        }
    }
    PiecewisePolynomial::new(knots, rows)
}

/// Grid lower bound for the Hoelder seminorm
/// `sup |f(x) - f(y)| / |x - y|^alpha` from samples. Diagnostic only.
pub fn holder_seminorm_estimate(samples: &[(f64, f64)], alpha: f64) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::invalid("need at least two samples"));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid("alpha must lie in (0, 1)"));
    }
    let mut best = 0.0f64;
    for (i, &(xi, fi)) in samples.iter().enumerate() {
        for &(xj, fj) in &samples[i + 1..] {
            let dx = (xi - xj).abs();
            if dx > 0.0 {
                best = best.max((fi - fj).abs() / dx.powf(alpha));
            }
        }
    }
    Ok(best)
}
