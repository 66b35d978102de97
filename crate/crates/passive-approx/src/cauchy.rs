//! Exact principal-value Cauchy integrals and Hilbert transforms of
//! compactly supported piecewise polynomials.
//!
//! For a polynomial segment the PV integral splits into a polynomial part
//! (a divided difference) plus `q(x) ln|b-x| - q(x) ln|a-x|`. Summing over
//! segments and grouping the logs by knot yields the log-polynomial closed
//! form: a global polynomial plus terms `r_j(x) ln|x - t_j|`. When the source
//! density is continuous at a knot, `r_j(t_j) = 0` and the logarithmic
//! singularities cancel, so the transform extends continuously.
//!
//! Evaluating the grouped closed form far from the support cancels
//! catastrophically (the polynomial pieces grow while the true value decays
//! like `1/x`), so evaluation switches to a moment series about the support
//! center once `|x - c|` exceeds twice the support radius.

use num_complex::Complex64;

use crate::bspline::PiecewisePolynomial;
use crate::error::Error;
use crate::Result;

use crate::bspline::{poly_eval, poly_shift};

/// Maximum supported polynomial degree of a transformed density. The segment
/// recurrences are validated only up to this degree.
pub const MAX_DEGREE: usize = 10;

const FAR_FIELD_FACTOR: f64 = 2.0;
const MOMENT_COUNT: usize = 64;

/// `t ln|t|` with the limit value 0 at `t = 0`.
#[inline]
fn xlnx(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t * t.abs().ln()
    }
}

/// Divided-difference polynomial of a segment: coefficients (in the local
/// variable `X = x - a`) of `int_0^L (q(u) - q(X)) / (u - X) du`.
fn divided_difference_poly(c: &[f64], len: f64) -> Vec<f64> {
    let d = c.len() - 1;
    if d == 0 {
        return vec![0.0];
    }
    let mut out = vec![0.0; d];
    for (p, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        let mut lpow = len;
        for i in p + 1..=d {
            acc += c[i] * lpow / (i - p) as f64;
            lpow *= len;
        }
        *o = acc;
    }
    out
}

/// PV integral of one polynomial segment:
/// `PV int_a^b q(xi) / (xi - x) dxi` with `q` given by local coefficients in
/// `xi - a`. Valid for `x` inside, outside, or (when `q` vanishes there) at an
/// endpoint of the segment.
pub fn pv_segment_integral(coeffs: &[f64], a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a < b) {
        return Err(Error::invalid("segment must satisfy a < b"));
    }
    if coeffs.is_empty() || coeffs.len() > MAX_DEGREE + 1 {
        return Err(Error::invalid(format!(
            "segment degree must be between 0 and {MAX_DEGREE}"
        )));
    }
    if x.is_nan() {
        return Err(Error::invalid("NaN abscissa"));
    }
    let len = b - a;
    let cap_x = x - a;
    let poly = divided_difference_poly(coeffs, len);
    let p_val = poly_eval(&poly, cap_x);
    let q_val = poly_eval(coeffs, cap_x);
    let scale = coeffs.iter().fold(1.0f64, |m, c| m.max(c.abs()));
    if x == a || x == b {
        if q_val.abs() <= 1e-12 * scale {
            // One-sided improper value: the log terms vanish in the limit.
            return Ok(p_val);
        }
        return Err(Error::SingularEvaluation(format!(
            "PV integral endpoint x = {x} with nonzero density"
        )));
    }
    Ok(p_val + q_val * ((b - x).abs().ln() - (a - x).abs().ln()))
}

/// One log term `r(x) ln|x - knot|` with `r` in the local variable
/// `x - knot`.
#[derive(Debug, Clone)]
pub struct LogTerm {
    pub knot: f64,
    pub r: Vec<f64>,
    /// True when the source density jumps at this knot, so the logarithmic
    /// singularity is genuine.
    pub singular: bool,
}

#[derive(Debug, Clone)]
struct Segment {
    a: f64,
    b: f64,
    /// Source coefficients scaled by 1/pi, local in `xi - a`.
    q: Vec<f64>,
    /// Divided-difference polynomial of `q`, local in `x - a`.
    p: Vec<f64>,
}

/// Closed form of a Hilbert transform of a piecewise polynomial:
/// a global polynomial plus knot-anchored log terms, with a moment series
/// for stable far-field evaluation.
#[derive(Debug, Clone)]
pub struct LogPolynomial {
    poly: Vec<f64>,
    log_terms: Vec<LogTerm>,
    segments: Vec<Segment>,
    center: f64,
    radius: f64,
    /// `mu_n / radius^n` with `mu_n = (1/pi) int f(xi) (xi - c)^n dxi`.
    scaled_moments: Vec<f64>,
    knot_scale: f64,
}

impl LogPolynomial {
    /// Global polynomial coefficients (ascending degree in `x`).
    pub fn poly(&self) -> &[f64] {
        &self.poly
    }

    pub fn log_terms(&self) -> &[LogTerm] {
        &self.log_terms
    }

    /// True when the source density had jumps, so the transform has genuine
    /// logarithmic singularities at the flagged knots.
    pub fn has_singularities(&self) -> bool {
        self.log_terms.iter().any(|t| t.singular)
    }

    fn near_guard(&self) -> f64 {
        1e-12 * self.knot_scale
    }

    /// Evaluates the transform at a real point. Within `1e-12` of a knot the
    /// analytic limit is used; at a genuinely singular knot this is an error.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return Err(Error::invalid("NaN abscissa"));
        }
        if (x - self.center).abs() > FAR_FIELD_FACTOR * self.radius {
            return Ok(self.eval_far(x));
        }
        let guard = self.near_guard();
        let mut acc = poly_eval(&self.poly, x);
        for term in &self.log_terms {
            let u = x - term.knot;
            if u.abs() <= guard {
                if term.singular {
                    return Err(Error::SingularEvaluation(format!(
                        "transform has a logarithmic singularity at knot {}",
                        term.knot
                    )));
                }
                // r(knot) = 0: the contribution vanishes in the limit.
                continue;
            }
            acc += poly_eval(&term.r, u) * u.abs().ln();
        }
        Ok(acc)
    }

    fn eval_far(&self, x: f64) -> f64 {
        let dx = x - self.center;
        let q = self.radius / dx;
        let mut sum = 0.0;
        let mut qn = 1.0;
        let mut small = 0;
        for &m in &self.scaled_moments {
            let term = m * qn;
            sum += term;
            // Odd moments of even densities vanish, so demand two
            // consecutive negligible terms before truncating.
            if term.abs() <= 1e-17 * sum.abs().max(1e-300) {
                small += 1;
                if small >= 2 {
                    break;
                }
            } else {
                small = 0;
            }
            qn *= q;
        }
        -sum / dx
    }

    /// Analytic continuation `(1/pi) int f(xi) / (xi - z) dxi` into the open
    /// upper half-plane.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        debug_assert!(z.im > 0.0, "eval_complex expects Im z > 0");
        let dz = z - self.center;
        if dz.norm() > FAR_FIELD_FACTOR * self.radius {
            let q = self.radius / dz;
            let mut sum = Complex64::new(0.0, 0.0);
            let mut qn = Complex64::new(1.0, 0.0);
            let mut small = 0;
            for &m in &self.scaled_moments {
                let term = m * qn;
                sum += term;
                if term.norm() <= 1e-17 * sum.norm().max(1e-300) {
                    small += 1;
                    if small >= 2 {
                        break;
                    }
                } else {
                    small = 0;
                }
                qn *= q;
            }
            return -sum / dz;
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for seg in &self.segments {
            let u = z - seg.a;
            let p_val = poly_eval_complex(&seg.p, u);
            let q_val = poly_eval_complex(&seg.q, u);
            let log = (Complex64::new(seg.b, 0.0) - z).ln()
                - (Complex64::new(seg.a, 0.0) - z).ln();
            acc += p_val + q_val * log;
        }
        acc
    }

    /// Support-scale mass `(1/pi) int f`, the coefficient of the `-1/x`
    /// far-field decay.
    pub fn far_field_mass(&self) -> f64 {
        self.scaled_moments[0]
    }
}

#[inline]
fn poly_eval_complex(c: &[f64], u: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &ci in c.iter().rev() {
        acc = acc * u + ci;
    }
    acc
}

/// Hilbert transform `p_hat(x) = (1/pi) PV int f(xi) / (xi - x) dxi` of a
/// compactly supported piecewise polynomial, as a closed-form
/// [`LogPolynomial`].
///
/// A continuous `f` yields cancelling log singularities (`r_j(t_j) = 0`); a
/// discontinuous one (order-1 pulse) is allowed but the result is flagged as
/// genuinely singular at the jump knots.
pub fn hilbert_pp(f: &PiecewisePolynomial) -> Result<LogPolynomial> {
    if f.degree() > MAX_DEGREE {
        return Err(Error::invalid(format!(
            "density degree {} exceeds the validated cap {MAX_DEGREE}",
            f.degree()
        )));
    }
    let t = f.breakpoints();
    let rows = f.coeff_rows();
    let inv_pi = 1.0 / std::f64::consts::PI;
    let f_scale = rows
        .iter()
        .flat_map(|r| r.iter())
        .fold(1.0f64, |m, c| m.max(c.abs()));

    let mut segments = Vec::with_capacity(rows.len());
    let mut poly = vec![0.0];
    for (j, row) in rows.iter().enumerate() {
        let len = t[j + 1] - t[j];
        let q: Vec<f64> = row.iter().map(|c| c * inv_pi).collect();
        let p = divided_difference_poly(&q, len);
        // Accumulate the global polynomial: p in local (x - t_j).
        let global = poly_shift(&p, -t[j]);
        if global.len() > poly.len() {
            poly.resize(global.len(), 0.0);
        }
        for (dst, v) in poly.iter_mut().zip(global) {
            *dst += v;
        }
        segments.push(Segment {
            a: t[j],
            b: t[j + 1],
            q,
            p,
        });
    }

    // Log terms grouped by knot: r_j = q_{j-1} - q_j rebased to (x - t_j).
    let zero = vec![0.0];
    let mut log_terms = Vec::with_capacity(t.len());
    for (j, &knot) in t.iter().enumerate() {
        let prev = if j == 0 {
            zero.clone()
        } else {
            poly_shift(&segments[j - 1].q, knot - t[j - 1])
        };
        let next = if j == rows.len() {
            zero.clone()
        } else {
            segments[j].q.clone()
        };
        let width = prev.len().max(next.len());
        let mut r = vec![0.0; width];
        for (i, ri) in r.iter_mut().enumerate() {
            let a = prev.get(i).copied().unwrap_or(0.0);
            let b = next.get(i).copied().unwrap_or(0.0);
            *ri = a - b;
        }
        let singular = r[0].abs() > 1e-12 * f_scale * inv_pi;
        if !singular {
            r[0] = 0.0;
        }
        log_terms.push(LogTerm { knot, r, singular });
    }

    // Moments about the support center for the far-field series.
    let (lo, hi) = f.support();
    let center = 0.5 * (lo + hi);
    let radius = 0.5 * (hi - lo);
    let mut scaled_moments = vec![0.0; MOMENT_COUNT];
    for seg in &segments {
        // Rebase q to v = xi - c, then integrate q(v) v^n exactly with the
        // endpoints pre-scaled by the radius.
        let qc = poly_shift(&seg.q, center - seg.a);
        let a_hat = (seg.a - center) / radius;
        let b_hat = (seg.b - center) / radius;
        for (n, out) in scaled_moments.iter_mut().enumerate() {
            let mut rpow = radius;
            let mut a_pow = a_hat.powi(n as i32 + 1);
            let mut b_pow = b_hat.powi(n as i32 + 1);
            let mut acc = 0.0;
            for (i, &qi) in qc.iter().enumerate() {
                acc += qi * rpow * (b_pow - a_pow) / (n + i + 1) as f64;
                rpow *= radius;
                a_pow *= a_hat;
                b_pow *= b_hat;
            }
            *out += acc;
        }
    }

    let knot_scale = t.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    Ok(LogPolynomial {
        poly,
        log_terms,
        segments,
        center,
        radius,
        scaled_moments,
        knot_scale,
    })
}

/// Direct evaluation of the closed-form Hilbert transform of the centered
/// roof-top pulse of half-width `delta` (apex 1 at the origin):
/// `(1/(pi delta)) (2x ln|x| - (x-delta) ln|x-delta| - (x+delta) ln|x+delta|)`.
///
/// Independent oracle for [`hilbert_pp`] applied to the roof-top.
pub fn rooftop_hilbert_reference(x: f64, delta: f64) -> Result<f64> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::invalid("delta must be positive"));
    }
    if x.is_nan() {
        return Err(Error::invalid("NaN abscissa"));
    }
    Ok((2.0 * xlnx(x) - xlnx(x - delta) - xlnx(x + delta)) / (std::f64::consts::PI * delta))
}

/// The centered roof-top pulse of half-width `delta` as a piecewise
/// polynomial (value `1 - |x|/delta` on `[-delta, delta]`).
pub fn rooftop(delta: f64) -> Result<PiecewisePolynomial> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::invalid("delta must be positive"));
    }
    PiecewisePolynomial::new(
        vec![-delta, 0.0, delta],
        vec![vec![0.0, 1.0 / delta], vec![1.0, -1.0 / delta]],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn pv_segment_known_values() {
        // Odd kernel symmetry.
        assert_close(pv_segment_integral(&[1.0], -1.0, 1.0, 0.0).unwrap(), 0.0, 1e-15);
        // Plain integral outside the segment.
        assert_close(
            pv_segment_integral(&[1.0], 0.0, 1.0, 2.0).unwrap(),
            0.5f64.ln(),
            1e-15,
        );
        // q(xi) = xi on [0,1] at the endpoint x = 0 where q vanishes.
        assert_close(pv_segment_integral(&[0.0, 1.0], 0.0, 1.0, 0.0).unwrap(), 1.0, 1e-15);
        // Nonzero density at an endpoint is singular.
        assert!(pv_segment_integral(&[1.0], 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn pv_segment_matches_series_far_away() {
        // For x far outside, PV int_0^1 xi^2/(xi - x) dxi from the closed
        // form must match the geometric series -sum mu_n / x^{n+1}.
        let x = 50.0;
        let got = pv_segment_integral(&[0.0, 0.0, 1.0], 0.0, 1.0, x).unwrap();
        let mut expect = 0.0;
        for n in 0..60 {
            // mu_n = int_0^1 xi^{2+n} = 1/(n+3)
            expect -= 1.0 / ((n + 3) as f64 * x.powi(n + 1));
        }
        assert_close(got, expect, 1e-12);
    }

    #[test]
    fn rooftop_transform_matches_reference() {
        let delta = 1.0;
        let p = rooftop(delta).unwrap();
        let ph = hilbert_pp(&p).unwrap();
        assert!(!ph.has_singularities());
        // Oddness at 0 and the apex value at delta.
        assert_close(ph.eval(0.0).unwrap(), 0.0, 1e-14);
        assert_close(
            ph.eval(1.0).unwrap(),
            -(2.0 / PI) * 2.0f64.ln(),
            1e-13,
        );
        assert_close(
            rooftop_hilbert_reference(1.0, 1.0).unwrap(),
            -0.441271200305303,
            1e-12,
        );
        // Dense sweep against the closed form, including near-knot points.
        for i in 0..=4000 {
            let x = -4.0 + 8.0 * i as f64 / 4000.0;
            let want = rooftop_hilbert_reference(x, delta).unwrap();
            assert_close(ph.eval(x).unwrap(), want, 1e-12);
        }
    }

    #[test]
    fn rooftop_reference_far_field_value() {
        // Direct evaluation at x = 10: (1/pi)(20 ln 10 - 9 ln 9 - 11 ln 11).
        let v = rooftop_hilbert_reference(10.0, 1.0).unwrap();
        let direct = (20.0 * 10.0f64.ln() - 9.0 * 9.0f64.ln() - 11.0 * 11.0f64.ln()) / PI;
        assert_close(v, direct, 1e-15);
        assert_close(v, -0.03188, 1e-4);
        // Consistent with the -mass/(pi x) decay of the transform.
        assert_close(v, -1.0 / (PI * 10.0), 2e-3);
    }

    #[test]
    fn transform_is_odd_for_even_density() {
        let p = rooftop(0.7).unwrap();
        let ph = hilbert_pp(&p).unwrap();
        for i in 1..200 {
            let x = 3.0 * i as f64 / 200.0;
            assert_close(ph.eval(-x).unwrap(), -ph.eval(x).unwrap(), 1e-10);
        }
    }

    #[test]
    fn transform_is_linear() {
        let f = rooftop(1.0).unwrap();
        let g = rooftop(0.5).unwrap().translate(0.25);
        let combo = f.scale(2.5).add(&g.scale(-1.25));
        let tf = hilbert_pp(&f).unwrap();
        let tg = hilbert_pp(&g).unwrap();
        let tc = hilbert_pp(&combo).unwrap();
        for i in 0..=100 {
            let x = -2.0 + 4.0 * i as f64 / 100.0;
            let want = 2.5 * tf.eval(x).unwrap() - 1.25 * tg.eval(x).unwrap();
            assert_close(tc.eval(x).unwrap(), want, 1e-12);
        }
    }

    #[test]
    fn transform_translation_covariance() {
        let f = rooftop(1.0).unwrap();
        let s = 0.8;
        let tf = hilbert_pp(&f).unwrap();
        let tfs = hilbert_pp(&f.translate(s)).unwrap();
        for i in 0..=100 {
            let x = -2.0 + 6.0 * i as f64 / 100.0;
            assert_close(tfs.eval(x).unwrap(), tf.eval(x - s).unwrap(), 1e-12);
        }
    }

    #[test]
    fn far_field_decay_matches_mass() {
        let f = rooftop(1.0).unwrap().translate(0.3);
        let ph = hilbert_pp(&f).unwrap();
        let mass = f.integral();
        for x in [2000.0, -2000.0, 5000.0] {
            let got = x * ph.eval(x).unwrap();
            let want = -mass / PI;
            assert!(
                (got - want).abs() <= 1e-3 * want.abs(),
                "x={x}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn box_transform_is_flagged_singular() {
        let pulse = crate::bspline::prototype_bspline(1, 1.0).unwrap();
        let ph = hilbert_pp(&pulse).unwrap();
        assert!(ph.has_singularities());
        // Evaluation away from the knots still works...
        assert!(ph.eval(0.5).is_ok());
        // ...but hitting a jump knot is an error.
        assert!(ph.eval(0.0).is_err());
        assert!(ph.eval(1.0).is_err());
    }

    #[test]
    fn complex_continuation_approaches_boundary_values() {
        let f = rooftop(1.0).unwrap();
        let ph = hilbert_pp(&f).unwrap();
        for &x in &[0.3, -0.9, 1.4] {
            let b = ph.eval(x).unwrap();
            let mut prev = f64::INFINITY;
            for &y in &[1e-2, 1e-4, 1e-6] {
                let v = ph.eval_complex(Complex64::new(x, y));
                let d = (v.re - b).abs();
                assert!(d < prev, "real part not converging at x={x}");
                prev = d;
            }
        }
        // Far-field complex path agrees with the series decay.
        let z = Complex64::new(0.0, 4000.0);
        let v = ph.eval_complex(z);
        let want = -(f.integral() / PI) / z;
        assert!((v - want).norm() < 1e-3 * want.norm());
    }

    proptest::proptest! {
        #[test]
        fn transform_linearity_for_arbitrary_weights(a in -5.0f64..5.0, b in -5.0f64..5.0) {
            let f = rooftop(1.0).unwrap();
            let g = rooftop(0.5).unwrap().translate(0.3);
            let combo = f.scale(a).add(&g.scale(b));
            let (tf, tg, tc) = (
                hilbert_pp(&f).unwrap(),
                hilbert_pp(&g).unwrap(),
                hilbert_pp(&combo).unwrap(),
            );
            for i in 0..=60 {
                let x = -2.0 + 4.5 * i as f64 / 60.0;
                let want = a * tf.eval(x).unwrap() + b * tg.eval(x).unwrap();
                proptest::prop_assert!((tc.eval(x).unwrap() - want).abs() <= 1e-11);
            }
        }

        #[test]
        fn transform_covariant_under_translation(s in -4.0f64..4.0) {
            let f = rooftop(0.8).unwrap();
            let tf = hilbert_pp(&f).unwrap();
            let ts = hilbert_pp(&f.translate(s)).unwrap();
            for i in 0..=60 {
                let x = s - 2.0 + 4.0 * i as f64 / 60.0;
                proptest::prop_assert!(
                    (ts.eval(x).unwrap() - tf.eval(x - s).unwrap()).abs() <= 1e-11
                );
            }
        }
    }

    #[test]
    fn zero_density_transforms_to_zero() {
        let z = PiecewisePolynomial::zero(-1.0, 1.0);
        let t = hilbert_pp(&z).unwrap();
        for x in [-5.0, -0.3, 0.0, 0.7, 4.0] {
            assert_eq!(t.eval(x).unwrap(), 0.0);
        }
    }

    #[test]
    fn degree_cap_enforced() {
        let c = vec![1.0; MAX_DEGREE + 2];
        let f = PiecewisePolynomial::new(vec![0.0, 1.0], vec![c]).unwrap();
        assert!(hilbert_pp(&f).is_err());
    }
}
