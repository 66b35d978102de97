//! Generating measures and Herglotz-function evaluation.
//!
//! A measure here is the triple (linear slope, point masses, piecewise
//! polynomial density). Evaluation in the open upper half-plane uses exact
//! per-segment complex logarithms; boundary values on the real axis come from
//! the closed-form Hilbert transform of the density plus `i pi` times the
//! density itself. Stieltjes inversion, the k = 0 and k = 1 sum rules, the
//! auxiliary band function `h_delta`, and the bandwidth lower bounds complete
//! the module.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::bspline::{poly_integral, poly_shift, PiecewisePolynomial};
use crate::cauchy::{hilbert_pp, LogPolynomial};
use crate::error::Error;
use crate::quad;
use crate::Result;

/// Absolute tolerance used for all adaptive quadrature in this module.
pub const QUAD_TOL: f64 = 1e-9;

/// Generating measure of a Herglotz function: `h(z) = b1 z + c +
/// sum w_i / (xi_i - z) + int density(xi) / (xi - z) dxi`.
///
/// In symmetric mode (`h(z) = -h(-conj(z))^*`, real impulse response) the
/// constant `c` is forced to 0, the density must be even, and point masses
/// must come in +/- pairs or sit at the origin.
#[derive(Debug, Clone)]
pub struct HerglotzMeasure {
    b1: f64,
    c: f64,
    point_masses: Vec<(f64, f64)>,
    density: PiecewisePolynomial,
    symmetric: bool,
    density_hilbert: LogPolynomial,
}

impl HerglotzMeasure {
    /// Builds a measure, validating positivity and (if requested) symmetry.
    pub fn new(
        b1: f64,
        c: f64,
        point_masses: Vec<(f64, f64)>,
        density: PiecewisePolynomial,
        symmetric: bool,
    ) -> Result<Self> {
        if !(b1 >= 0.0) || !b1.is_finite() {
            return Err(Error::invalid("b1 must be nonnegative"));
        }
        if !c.is_finite() {
            return Err(Error::invalid("c must be finite"));
        }
        for &(x, w) in &point_masses {
            if !x.is_finite() || !(w >= 0.0) || !w.is_finite() {
                return Err(Error::invalid(
                    "point masses need finite location and weight >= 0",
                ));
            }
        }
        let scale = density
            .coeff_rows()
            .iter()
            .flat_map(|r| r.iter())
            .fold(1.0f64, |m, v| m.max(v.abs()));
        {
            let (lo, hi) = density.support();
            let steps = 64 * density.coeff_rows().len();
            for i in 0..steps {
                let x = lo + (hi - lo) * i as f64 / steps as f64;
                if density.eval(x) < -1e-12 * scale {
                    return Err(Error::invalid(format!("density negative near x = {x}")));
                }
            }
        }
        if symmetric {
            if c != 0.0 {
                return Err(Error::invalid("symmetric mode forces c = 0"));
            }
            let mirrored = density.mirror();
            let (lo, hi) = density.support();
            for i in 0..=512 {
                let x = lo + (hi - lo) * i as f64 / 512.0;
                if (density.eval(x) - mirrored.eval(x)).abs() > 1e-10 * scale {
                    return Err(Error::invalid("symmetric mode needs an even density"));
                }
            }
            for &(x, w) in &point_masses {
                if x == 0.0 {
                    continue;
                }
                let partner = point_masses.iter().any(|&(x2, w2)| {
                    (x2 + x).abs() <= 1e-12 * x.abs() && (w2 - w).abs() <= 1e-12 * w.max(1.0)
                });
                if !partner {
                    return Err(Error::invalid(format!(
                        "symmetric mode needs a mirrored partner for the atom at {x}"
                    )));
                }
            }
        }
        let density_hilbert = hilbert_pp(&density)?;
        Ok(HerglotzMeasure {
            b1,
            c,
            point_masses,
            density,
            symmetric,
            density_hilbert,
        })
    }

    /// Symmetric measure without a density (atoms and slope only).
    pub fn atoms_only(b1: f64, point_masses: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(
            b1,
            0.0,
            point_masses,
            PiecewisePolynomial::zero(-1.0, 1.0),
            true,
        )
    }

    pub fn b1(&self) -> f64 {
        self.b1
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn point_masses(&self) -> &[(f64, f64)] {
        &self.point_masses
    }

    pub fn density(&self) -> &PiecewisePolynomial {
        &self.density
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// The closed-form Hilbert transform of the density.
    pub fn density_hilbert(&self) -> &LogPolynomial {
        &self.density_hilbert
    }

    /// Weight of the atom at the origin, if present.
    pub fn origin_atom(&self) -> f64 {
        self.point_masses
            .iter()
            .filter(|(x, _)| *x == 0.0)
            .map(|(_, w)| w)
            .sum()
    }

    /// Total measure mass `beta(R)`.
    pub fn total_mass(&self) -> f64 {
        self.density.integral() + self.point_masses.iter().map(|(_, w)| w).sum::<f64>()
    }

    /// Evaluates `h` in the open upper half-plane.
    pub fn eval_upper(&self, z: Complex64) -> Result<Complex64> {
        if !(z.im > 0.0) {
            return Err(Error::invalid(format!(
                "eval_upper needs Im z > 0, got {}",
                z.im
            )));
        }
        let mut acc = self.b1 * z + self.c;
        for &(x, w) in &self.point_masses {
            acc += w / (Complex64::new(x, 0.0) - z);
        }
        acc += PI * self.density_hilbert.eval_complex(z);
        Ok(acc)
    }

    /// Boundary value `h(x) = b1 x + c + sum w_i/(xi_i - x)
    /// + PV int density/(xi - x) + i pi density(x)`.
    ///
    /// Errors at an atom location (pole) and at a density discontinuity
    /// (genuine logarithmic singularity).
    pub fn boundary_value(&self, x: f64) -> Result<Complex64> {
        if x.is_nan() {
            return Err(Error::invalid("NaN abscissa"));
        }
        for &(xi, w) in &self.point_masses {
            if w > 0.0 && (x - xi).abs() <= 1e-12 * xi.abs().max(1.0) {
                return Err(Error::Pole(xi));
            }
        }
        let mut re = self.b1 * x + self.c;
        for &(xi, w) in &self.point_masses {
            re += w / (xi - x);
        }
        re += PI * self.density_hilbert.eval(x)?;
        let im = PI * self.density.eval(x);
        Ok(Complex64::new(re, im))
    }

    /// Stieltjes inversion: for each `y` in the decreasing sequence, the
    /// quadrature `(1/pi) int_{x1}^{x2} Im h(xi + i y) dxi`. The sequence
    /// converges to the measure of `(x1, x2)` plus half the weight of atoms
    /// sitting exactly at the endpoints.
    pub fn stieltjes_invert(&self, x1: f64, x2: f64, y_seq: &[f64]) -> Result<Vec<f64>> {
        if !(x1 < x2) {
            return Err(Error::invalid("window must satisfy x1 < x2"));
        }
        if y_seq.is_empty()
            || y_seq.windows(2).any(|w| !(w[0] > w[1]))
            || !(*y_seq.last().unwrap() > 0.0)
        {
            return Err(Error::invalid(
                "y sequence must be positive and strictly decreasing",
            ));
        }
        let mut out = Vec::with_capacity(y_seq.len());
        for &y in y_seq {
            let f = |xi: f64| {
                self.eval_upper(Complex64::new(xi, y))
                    .expect("Im z > 0 by construction")
                    .im
            };
            let r = quad::adaptive(f, x1, x2, QUAD_TOL, 50_000)?;
            out.push(r.value / PI);
        }
        Ok(out)
    }

    /// Asymptotic expansion coefficients of the measure.
    pub fn asymptotics(&self) -> Asymptotics {
        let a_minus1 = -self.origin_atom();
        let b_minus1 = -self.total_mass();
        let a_1 = self.inverse_square_moment().ok().map(|m| self.b1 + m);
        Asymptotics {
            a_minus1,
            b_1: self.b1,
            b_minus1,
            a_1,
        }
    }

    /// `int dbeta(xi)/xi^2` over the full line; requires the measure to stay
    /// away from the origin.
    fn inverse_square_moment(&self) -> Result<f64> {
        let mut acc = 0.0;
        for &(x, w) in &self.point_masses {
            if w > 0.0 {
                if x == 0.0 {
                    return Err(Error::invalid(
                        "inverse-square moment needs no atom at the origin",
                    ));
                }
                acc += w / (x * x);
            }
        }
        acc += density_inverse_square_integral(&self.density, Side::Both)?;
        Ok(acc)
    }

    /// Sum rule of order `k` in {0, 1}: returns `(lhs, rhs)` where
    /// `lhs = (2/pi) int_{0+}^inf Im h(x) / x^{2k} dx` evaluated in closed
    /// form from the measure, and `rhs = a_{2k-1} - b_{2k-1}` from the
    /// asymptotics. The two sides are computed by independent routes.
    pub fn sum_rule(&self, k: usize) -> Result<(f64, f64)> {
        if !self.symmetric {
            return Err(Error::invalid("sum rules require a symmetric measure"));
        }
        match k {
            0 => {
                let density_pos = integral_positive_axis(&self.density);
                let atoms_pos: f64 = self
                    .point_masses
                    .iter()
                    .filter(|(x, _)| *x > 0.0)
                    .map(|(_, w)| w)
                    .sum();
                let lhs = 2.0 * (density_pos + atoms_pos);
                let asy = self.asymptotics();
                let rhs = asy.a_minus1 - asy.b_minus1;
                Ok((lhs, rhs))
            }
            1 => {
                if self.origin_atom() > 0.0 {
                    return Err(Error::invalid("k = 1 sum rule needs no atom at the origin"));
                }
                let lhs_density =
                    2.0 * density_inverse_square_integral(&self.density, Side::Positive)?;
                let lhs_atoms: f64 = self
                    .point_masses
                    .iter()
                    .filter(|(x, _)| *x > 0.0)
                    .map(|(x, w)| 2.0 * w / (x * x))
                    .sum();
                let lhs = lhs_density + lhs_atoms;
                // rhs = a_1 - b_1 with a_1 = b_1 + int dbeta/xi^2.
                let rhs = self.inverse_square_moment()?;
                Ok((lhs, rhs))
            }
            _ => Err(Error::invalid("sum rules implemented for k in {0, 1} only")),
        }
    }
}

/// Low- and high-frequency expansion coefficients (`h ~ a_{-1}/z + a_1 z + ...`
/// at 0 and `h ~ b_1 z + b_{-1}/z + ...` at infinity).
#[derive(Debug, Clone, Copy)]
pub struct Asymptotics {
    pub a_minus1: f64,
    pub b_1: f64,
    pub b_minus1: f64,
    /// Present only when the measure admits it (no origin atom, support away
    /// from the origin).
    pub a_1: Option<f64>,
}

#[derive(Clone, Copy)]
enum Side {
    Positive,
    Both,
}

/// Exact integral of the density over the positive axis.
fn integral_positive_axis(f: &PiecewisePolynomial) -> f64 {
    let t = f.breakpoints();
    let mut acc = 0.0;
    for (j, row) in f.coeff_rows().iter().enumerate() {
        let (a, b) = (t[j], t[j + 1]);
        if b <= 0.0 {
            continue;
        }
        let len = b - a;
        if a >= 0.0 {
            acc += poly_integral(row, len);
        } else {
            // Straddling segment: integrate the local polynomial over
            // [-a, len], i.e. xi in [0, b].
            acc += poly_integral(row, len) - poly_integral(row, -a);
        }
    }
    acc
}

/// Exact `int density(xi)/xi^2 dxi` over the full line or the positive axis.
/// Errors when a nonzero segment touches the origin (the moment does not
/// exist there).
fn density_inverse_square_integral(f: &PiecewisePolynomial, side: Side) -> Result<f64> {
    let t = f.breakpoints();
    let mut acc = 0.0;
    for (j, row) in f.coeff_rows().iter().enumerate() {
        if row.iter().all(|&c| c == 0.0) {
            continue;
        }
        let (a, b) = (t[j], t[j + 1]);
        if matches!(side, Side::Positive) && b <= 0.0 {
            continue;
        }
        if a <= 0.0 && b >= 0.0 {
            return Err(Error::invalid(
                "density support must stay away from the origin for this moment",
            ));
        }
        // Global coefficients: q(xi) = sum g_m xi^m on [a, b].
        let g = poly_shift(row, -a);
        let mut seg = 0.0;
        for (m, &gm) in g.iter().enumerate() {
            seg += match m {
                0 => gm * (1.0 / a - 1.0 / b),
                1 => gm * (b.abs().ln() - a.abs().ln()),
                _ => gm * (b.powi(m as i32 - 1) - a.powi(m as i32 - 1)) / (m as f64 - 1.0),
            };
        }
        acc += seg;
    }
    Ok(acc)
}

/// Auxiliary Herglotz function of the band `[-delta, delta]`:
/// `h_delta(z) = (1/pi) ln((z - delta)/(z + delta))`, principal branch, for
/// `Im z >= 0` away from the branch points `z = +/- delta`.
pub fn aux_hdelta(z: Complex64, delta: f64) -> Result<Complex64> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::invalid("delta must be positive"));
    }
    let scale = delta.max(z.norm()).max(1.0);
    // Tolerate rounding dust below the axis; reject genuinely lower-half z.
    let z = if z.im < 0.0 {
        if z.im < -1e-12 * scale {
            return Err(Error::invalid("aux_hdelta needs Im z >= 0"));
        }
        Complex64::new(z.re, 0.0)
    } else {
        z
    };
    let zm = z - delta;
    let zp = z + delta;
    if zm.norm() <= 1e-14 * scale || zp.norm() <= 1e-14 * scale {
        return Err(Error::BranchPoint(format!("z = {z} at +/-{delta}")));
    }
    // For Im z >= 0 both arguments lie in [0, pi] and arg(z - delta) >=
    // arg(z + delta), so the principal logs subtract without crossing a cut.
    Ok((zm.ln() - zp.ln()) / PI)
}

/// Composition `h1(z) = h_delta(h(z) + h0(z))` of two Herglotz evaluators.
pub fn composed_h1<H, H0>(h: H, h0: H0, delta: f64, z: Complex64) -> Result<Complex64>
where
    H: Fn(Complex64) -> Result<Complex64>,
    H0: Fn(Complex64) -> Result<Complex64>,
{
    let inner = h(z)? + h0(z)?;
    aux_hdelta(inner, delta)
}

/// Generic lower bound `(b1 + b1_0) |Omega| / 2` on the max-norm
/// approximation error when the target is the negative of a Herglotz
/// function with high-frequency slope `b1_0`.
pub fn lower_bound_generic(b1: f64, b1_0: f64, omega_len: f64) -> Result<f64> {
    if !(b1 >= 0.0) || !(b1_0 >= 0.0) {
        return Err(Error::invalid("slopes must be nonnegative"));
    }
    if !(omega_len > 0.0) {
        return Err(Error::invalid("band length must be positive"));
    }
    Ok((b1 + b1_0) * omega_len / 2.0)
}

/// Metamaterial bound on `||eps - eps_t||_inf` over the band of relative
/// width `B`: `max{(eps_inf - Re eps_t)(B/2)/(1 + B/2) - Im eps_t, 0}`.
pub fn metamaterial_bound(eps_inf: f64, eps_t: Complex64, b: f64) -> Result<f64> {
    if !(b > 0.0 && b < 2.0) {
        return Err(Error::invalid("relative bandwidth must lie in (0, 2)"));
    }
    if !(eps_t.im >= 0.0) {
        return Err(Error::invalid("target permittivity needs Im >= 0"));
    }
    if !(eps_inf > eps_t.re) {
        return Err(Error::invalid("eps_inf must exceed Re eps_t"));
    }
    let raw = (eps_inf - eps_t.re) * (b / 2.0) / (1.0 + b / 2.0) - eps_t.im;
    Ok(raw.max(0.0))
}

/// Builds the even density `(1/pi) (f(xi) + f(-xi))` from a positive-axis
/// spline expansion `f`.
pub fn symmetrized_density(f: &PiecewisePolynomial) -> PiecewisePolynomial {
    f.add(&f.mirror()).scale(1.0 / PI)
}
