//! Primal-dual interior-point method for dense linear programs.
//!
//! Infeasible-start path following with Mehrotra predictor-corrector steps.
//! Each iteration eliminates the slack and bound blocks, factors the normal
//! matrix `H = G' (lambda/s) G + diag(z/x) + delta I` once, and reuses the
//! factorization for the predictor and corrector solves. Equality rows are
//! handled by a Schur complement on the (small) equality block.

use crate::error::Error;
use crate::linalg::{axpy, dot, Cholesky, Mat};
use crate::Result;

use super::{ConstraintMatrix, LpStandardForm, SolveResult, SolveStatus};

/// Fraction of the step to the boundary.
const STEP_FRACTION: f64 = 0.995;
/// Diagonal regularization of the normal matrix, scaled up on breakdown.
const BASE_REGULARIZATION: f64 = 1e-12;
/// Divergence threshold for the certificate checks.
const DIVERGENCE: f64 = 1e8;
/// Iterations without a 10% improvement in any convergence measure before
/// the best iterate is returned.
const STALL_WINDOW: usize = 40;

struct Iterate {
    x: Vec<f64>,
    s: Vec<f64>,
    y: Vec<f64>,
    lam: Vec<f64>,
    z: Vec<f64>,
}

struct Residuals {
    dual: Vec<f64>,
    primal: Vec<f64>,
    eq: Vec<f64>,
}

struct Delta {
    x: Vec<f64>,
    s: Vec<f64>,
    y: Vec<f64>,
    lam: Vec<f64>,
    z: Vec<f64>,
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Solves the linear program to relative tolerance `tol`.
///
/// Infeasibility and unboundedness are reported through the result status
/// when a diverging iterate yields an approximate Farkas certificate;
/// factorization breakdown maps to `NumericalFailure`. A `MaxIter` status
/// means the iteration stopped before reaching `tol` (budget exhausted or
/// progress stalled at the floating-point accuracy floor); the best iterate
/// and its achieved gap are returned. The method is deterministic: identical
/// inputs produce identical iterates.
pub fn solve_lp<M: ConstraintMatrix>(
    problem: &LpStandardForm<M>,
    tol: f64,
    max_iter: usize,
) -> Result<SolveResult> {
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    problem.validate()?;
    let n = problem.objective.len();
    let m = problem.ineq.rows();
    if m == 0 {
        return Err(Error::invalid("LP needs at least one inequality row"));
    }
    let (eq_a, eq_b) = match &problem.eq {
        Some((a, b)) => (Some(a), b.as_slice()),
        None => (None, &[][..]),
    };
    let p = eq_b.len();
    let c = &problem.objective;
    let h = &problem.rhs;
    let bounded: Vec<usize> = (0..n).filter(|&j| problem.nonneg[j]).collect();
    let n_compl = m + bounded.len();

    // Starting point: unit bound variables and multipliers, slacks clamped
    // away from zero.
    let mut it = Iterate {
        x: (0..n).map(|j| if problem.nonneg[j] { 1.0 } else { 0.0 }).collect(),
        s: vec![1.0; m],
        y: vec![0.0; p],
        lam: vec![1.0; m],
        z: (0..n).map(|j| if problem.nonneg[j] { 1.0 } else { 0.0 }).collect(),
    };
    {
        let mut gx = vec![0.0; m];
        problem.ineq.mul(&it.x, &mut gx);
        for i in 0..m {
            it.s[i] = (h[i] - gx[i]).max(1.0);
        }
    }

    let h_scale = 1.0 + inf_norm(h) + inf_norm(eq_b);
    let c_scale = 1.0 + inf_norm(c);

    let mut scratch_m = vec![0.0; m];
    let mut scratch_n = vec![0.0; n];
    let mut best: Option<SolveResult> = None;
    let mut best_score = f64::INFINITY;
    let mut stalled = 0usize;

    for iteration in 0..max_iter {
        let res = residuals(problem, eq_a, eq_b, &it, &mut scratch_m, &mut scratch_n);
        let mu = complementarity(&it, &bounded) / n_compl as f64;

        let primal_obj = dot(c, &it.x);
        let dual_obj = -dot(h, &it.lam) - dot(eq_b, &it.y);
        let rel_gap = (primal_obj - dual_obj).abs() / (1.0 + primal_obj.abs() + dual_obj.abs());
        let rel_p = (inf_norm(&res.primal).max(inf_norm(&res.eq))) / h_scale;
        let rel_d = inf_norm(&res.dual) / c_scale;

        // The exact algebraic identity behind weak duality:
        // P - D = lam's + z'x + r_d'x - lam'r_p - y'r_e; once the residuals
        // vanish the complementarity products give P >= D.
        debug_assert!({
            let lhs = primal_obj - dual_obj;
            let rhs = dot(&it.lam, &it.s)
                + dot(&it.z, &it.x)
                + dot(&res.dual, &it.x)
                - dot(&it.lam, &res.primal)
                - dot(&it.y, &res.eq);
            (lhs - rhs).abs() <= 1e-7 * (1.0 + lhs.abs() + rhs.abs())
        });

        if rel_p <= tol && rel_d <= tol && rel_gap <= tol {
            return Ok(SolveResult {
                status: SolveStatus::Optimal,
                x: it.x,
                objective: primal_obj,
                gap: rel_gap,
                iterations: iteration,
            });
        }
        // Track the best iterate and stop once the normal-equations accuracy
        // floor is reached: past that point further centering steps shrink mu
        // without improving any convergence measure.
        let score = rel_p.max(rel_d).max(rel_gap);
        if score < 0.9 * best_score {
            best_score = score;
            stalled = 0;
            best = Some(SolveResult {
                status: SolveStatus::MaxIter,
                x: it.x.clone(),
                objective: primal_obj,
                gap: rel_gap,
                iterations: iteration,
            });
        } else {
            stalled += 1;
            if stalled >= STALL_WINDOW || mu < 1e-280 {
                return Ok(best.expect("stall implies a recorded iterate"));
            }
        }

        // Diverging-certificate checks.
        let dual_mag = inf_norm(&it.lam).max(inf_norm(&it.z)).max(inf_norm(&it.y));
        if dual_mag > DIVERGENCE {
            // Farkas: G'lam + A'y - z ~ 0, lam >= 0, with h'lam + b'y < 0.
            problem.ineq.mul_transpose(&it.lam, &mut scratch_n);
            if let Some(a) = eq_a {
                let mut aty = vec![0.0; n];
                a.mul_transpose_vec(&it.y, &mut aty);
                axpy(1.0, &aty, &mut scratch_n);
            }
            for (v, &zj) in scratch_n.iter_mut().zip(&it.z) {
                *v -= zj;
            }
            let cert = inf_norm(&scratch_n) / dual_mag;
            let value = (dot(h, &it.lam) + dot(eq_b, &it.y)) / dual_mag;
            if cert <= 1e-8 && value < -1e-10 {
                return Ok(SolveResult {
                    status: SolveStatus::Infeasible,
                    x: it.x,
                    objective: primal_obj,
                    gap: rel_gap,
                    iterations: iteration,
                });
            }
        }
        let primal_mag = inf_norm(&it.x);
        if primal_mag > DIVERGENCE {
            // Ray: c'd < 0 with G d <= 0, A d = 0 along d = x / |x|.
            let descent = primal_obj / primal_mag;
            let mut ae = 0.0;
            if let Some(a) = eq_a {
                let mut ax = vec![0.0; p];
                a.mul_vec(&it.x, &mut ax);
                for (axi, bi) in ax.iter().zip(eq_b) {
                    ae = f64::max(ae, (axi - bi).abs());
                }
            }
            if descent < -1e-10 && ae / primal_mag <= 1e-8 {
                return Ok(SolveResult {
                    status: SolveStatus::Unbounded,
                    x: it.x,
                    objective: primal_obj,
                    gap: rel_gap,
                    iterations: iteration,
                });
            }
        }

        // Normal matrix H = G' (lam/s) G + diag(z/x on bounds) + delta I.
        let d_g: Vec<f64> = it.lam.iter().zip(&it.s).map(|(l, s)| l / s).collect();
        let mut hmat = Mat::zeros(n, n);
        problem.ineq.add_normal(&d_g, &mut hmat);
        for &j in &bounded {
            hmat.add_assign_at(j, j, it.z[j] / it.x[j]);
        }
        let mut factor = None;
        let mut reg = BASE_REGULARIZATION;
        for _ in 0..4 {
            let mut reg_h = hmat.clone();
            for j in 0..n {
                reg_h.add_assign_at(j, j, reg * (1.0 + reg_h.get(j, j).abs()));
            }
            match Cholesky::factor(&reg_h) {
                Ok(f) => {
                    factor = Some(f);
                    break;
                }
                Err(_) => reg *= 1e4,
            }
        }
        let Some(factor) = factor else {
            let mut r = best.unwrap();
            r.status = SolveStatus::NumericalFailure;
            return Ok(r);
        };
        // Schur complement for the equality block.
        let eq_solver = match eq_a {
            Some(a) => match EqSchur::build(a, &factor) {
                Ok(s) => Some(s),
                Err(_) => {
                    let mut r = best.unwrap();
                    r.status = SolveStatus::NumericalFailure;
                    return Ok(r);
                }
            },
            None => None,
        };

        // Predictor (affine) step: sigma = 0.
        let r_slam: Vec<f64> = it.s.iter().zip(&it.lam).map(|(s, l)| s * l).collect();
        let r_xz: Vec<f64> = (0..n)
            .map(|j| if problem.nonneg[j] { it.x[j] * it.z[j] } else { 0.0 })
            .collect();
        let aff = newton_step(
            problem, eq_a, &it, &res, &r_slam, &r_xz, &factor, eq_solver.as_ref(), &bounded,
        );
        let (ap_aff, ad_aff) = max_steps(&it, &aff, &bounded);
        let mu_aff = complementarity_after(&it, &aff, ap_aff, ad_aff, &bounded) / n_compl as f64;
        let sigma = if mu > 0.0 { (mu_aff / mu).powi(3).clamp(0.0, 1.0) } else { 0.0 };

        // Corrector step reusing the factorization.
        let r_slam: Vec<f64> = (0..m)
            .map(|i| it.s[i] * it.lam[i] + aff.s[i] * aff.lam[i] - sigma * mu)
            .collect();
        let r_xz: Vec<f64> = (0..n)
            .map(|j| {
                if problem.nonneg[j] {
                    it.x[j] * it.z[j] + aff.x[j] * aff.z[j] - sigma * mu
                } else {
                    0.0
                }
            })
            .collect();
        let step = newton_step(
            problem, eq_a, &it, &res, &r_slam, &r_xz, &factor, eq_solver.as_ref(), &bounded,
        );
        let (ap, ad) = max_steps(&it, &step, &bounded);
        let ap = (STEP_FRACTION * ap).min(1.0);
        let ad = (STEP_FRACTION * ad).min(1.0);

        for j in 0..n {
            it.x[j] += ap * step.x[j];
            it.z[j] += ad * step.z[j];
        }
        for i in 0..m {
            it.s[i] += ap * step.s[i];
            it.lam[i] += ad * step.lam[i];
        }
        for k in 0..p {
            it.y[k] += ad * step.y[k];
        }
    }

    Ok(best.expect("at least one iteration"))
}

fn residuals<M: ConstraintMatrix>(
    problem: &LpStandardForm<M>,
    eq_a: Option<&Mat>,
    eq_b: &[f64],
    it: &Iterate,
    scratch_m: &mut [f64],
    scratch_n: &mut [f64],
) -> Residuals {
    let n = problem.objective.len();
    let m = problem.ineq.rows();
    // r_d = c + G'lam + A'y - z
    let mut dual = problem.objective.clone();
    problem.ineq.mul_transpose(&it.lam, scratch_n);
    axpy(1.0, scratch_n, &mut dual);
    if let Some(a) = eq_a {
        let mut aty = vec![0.0; n];
        a.mul_transpose_vec(&it.y, &mut aty);
        axpy(1.0, &aty, &mut dual);
    }
    for (d, z) in dual.iter_mut().zip(&it.z) {
        *d -= z;
    }
    // r_p = G x + s - h
    let mut primal = vec![0.0; m];
    problem.ineq.mul(&it.x, scratch_m);
    for i in 0..m {
        primal[i] = scratch_m[i] + it.s[i] - problem.rhs[i];
    }
    // r_e = A x - b
    let eq = match eq_a {
        Some(a) => {
            let mut ax = vec![0.0; eq_b.len()];
            a.mul_vec(&it.x, &mut ax);
            ax.iter().zip(eq_b).map(|(axi, bi)| axi - bi).collect()
        }
        None => Vec::new(),
    };
    Residuals { dual, primal, eq }
}

fn complementarity(it: &Iterate, bounded: &[usize]) -> f64 {
    dot(&it.s, &it.lam) + bounded.iter().map(|&j| it.x[j] * it.z[j]).sum::<f64>()
}

fn complementarity_after(
    it: &Iterate,
    d: &Delta,
    ap: f64,
    ad: f64,
    bounded: &[usize],
) -> f64 {
    let mut acc = 0.0;
    for i in 0..it.s.len() {
        acc += (it.s[i] + ap * d.s[i]) * (it.lam[i] + ad * d.lam[i]);
    }
    for &j in bounded {
        acc += (it.x[j] + ap * d.x[j]) * (it.z[j] + ad * d.z[j]);
    }
    acc
}

fn max_steps(it: &Iterate, d: &Delta, bounded: &[usize]) -> (f64, f64) {
    let mut ap = 1.0f64;
    let mut ad = 1.0f64;
    for i in 0..it.s.len() {
        if d.s[i] < 0.0 {
            ap = ap.min(-it.s[i] / d.s[i]);
        }
        if d.lam[i] < 0.0 {
            ad = ad.min(-it.lam[i] / d.lam[i]);
        }
    }
    for &j in bounded {
        if d.x[j] < 0.0 {
            ap = ap.min(-it.x[j] / d.x[j]);
        }
        if d.z[j] < 0.0 {
            ad = ad.min(-it.z[j] / d.z[j]);
        }
    }
    (ap, ad)
}

/// Schur complement solver for the equality block: factors `A H^{-1} A'`.
struct EqSchur {
    /// Rows of `H^{-1} A'` (one per equality).
    hinv_at: Vec<Vec<f64>>,
    factor: Cholesky,
}

impl EqSchur {
    fn build(a: &Mat, h: &Cholesky) -> Result<Self> {
        let p = a.rows();
        let mut hinv_at = Vec::with_capacity(p);
        for k in 0..p {
            hinv_at.push(h.solve(a.row(k)));
        }
        let mut schur = Mat::zeros(p, p);
        for k in 0..p {
            for l in k..p {
                schur.set(k, l, dot(a.row(k), &hinv_at[l]));
            }
        }
        let factor = Cholesky::factor(&schur)?;
        Ok(EqSchur { hinv_at, factor })
    }
}

#[allow(clippy::too_many_arguments)]
fn newton_step<M: ConstraintMatrix>(
    problem: &LpStandardForm<M>,
    eq_a: Option<&Mat>,
    it: &Iterate,
    res: &Residuals,
    r_slam: &[f64],
    r_xz: &[f64],
    factor: &Cholesky,
    eq_solver: Option<&EqSchur>,
    bounded: &[usize],
) -> Delta {
    let n = problem.objective.len();
    let m = problem.ineq.rows();
    // rhs_x = -r_d - G'[(lam r_p - r_slam)/s] - r_xz / x (on bounds)
    let w: Vec<f64> = (0..m)
        .map(|i| (it.lam[i] * res.primal[i] - r_slam[i]) / it.s[i])
        .collect();
    let mut rhs = vec![0.0; n];
    problem.ineq.mul_transpose(&w, &mut rhs);
    for j in 0..n {
        rhs[j] = -res.dual[j] - rhs[j];
    }
    for &j in bounded {
        rhs[j] -= r_xz[j] / it.x[j];
    }

    let dx = match (eq_a, eq_solver) {
        (Some(a), Some(schur)) => {
            // (A H^{-1} A') dy = A H^{-1} rhs + r_e; dx = H^{-1}(rhs - A'dy).
            let hinv_rhs = factor.solve(&rhs);
            let p = a.rows();
            let mut rhs_y = vec![0.0; p];
            for k in 0..p {
                rhs_y[k] = dot(a.row(k), &hinv_rhs) + res.eq[k];
            }
            schur.factor.solve_in_place(&mut rhs_y);
            let mut dx = hinv_rhs;
            for k in 0..p {
                axpy(-rhs_y[k], &schur.hinv_at[k], &mut dx);
            }
            return finish_step(problem, it, res, r_slam, r_xz, dx, rhs_y, bounded);
        }
        _ => factor.solve(&rhs),
    };
    finish_step(problem, it, res, r_slam, r_xz, dx, Vec::new(), bounded)
}

fn finish_step<M: ConstraintMatrix>(
    problem: &LpStandardForm<M>,
    it: &Iterate,
    res: &Residuals,
    r_slam: &[f64],
    r_xz: &[f64],
    dx: Vec<f64>,
    dy: Vec<f64>,
    bounded: &[usize],
) -> Delta {
    let n = problem.objective.len();
    let m = problem.ineq.rows();
    let mut gdx = vec![0.0; m];
    problem.ineq.mul(&dx, &mut gdx);
    let mut ds = vec![0.0; m];
    let mut dlam = vec![0.0; m];
    for i in 0..m {
        ds[i] = -res.primal[i] - gdx[i];
        dlam[i] = (-r_slam[i] - it.lam[i] * ds[i]) / it.s[i];
    }
    let mut dz = vec![0.0; n];
    for &j in bounded {
        dz[j] = (-r_xz[j] - it.z[j] * dx[j]) / it.x[j];
    }
    Delta {
        x: dx,
        s: ds,
        y: dy,
        lam: dlam,
        z: dz,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn dense_lp(
        c: Vec<f64>,
        g: Vec<Vec<f64>>,
        h: Vec<f64>,
        nonneg: Vec<bool>,
    ) -> LpStandardForm {
        LpStandardForm {
            objective: c,
            ineq: Mat::from_rows(&g),
            rhs: h,
            nonneg,
            eq: None,
        }
    }

    #[test]
    fn vertex_solution_of_small_lp() {
        // min -x1 - 2 x2 s.t. x1 + x2 <= 1, x >= 0 -> (0, 1), objective -2.
        let p = dense_lp(
            vec![-1.0, -2.0],
            vec![vec![1.0, 1.0]],
            vec![1.0],
            vec![true, true],
        );
        let r = solve_lp(&p, 1e-8, 100).unwrap();
        assert_eq!(r.status, SolveStatus::Optimal);
        assert!((r.x[0]).abs() < 1e-6 && (r.x[1] - 1.0).abs() < 1e-6, "{:?}", r.x);
        assert!((r.objective + 2.0).abs() < 1e-7);
    }

    #[test]
    fn single_residual_epigraph() {
        // min t s.t. 0.5 - t <= 0 and -0.5 - t <= 0 -> t = 0.5.
        let p = dense_lp(
            vec![1.0],
            vec![vec![-1.0], vec![-1.0]],
            vec![-0.5, 0.5],
            vec![true],
        );
        let r = solve_lp(&p, 1e-8, 100).unwrap();
        assert_eq!(r.status, SolveStatus::Optimal);
        assert!((r.x[0] - 0.5).abs() < 1e-7, "{:?}", r.x);
    }

    #[test]
    fn equality_rows_are_respected() {
        // min x1 + x2 s.t. x1 + 2 x2 = 1, x <= 10 box, x >= 0 -> (0, 0.5).
        let p = LpStandardForm {
            objective: vec![1.0, 1.0],
            ineq: Mat::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]),
            rhs: vec![10.0, 10.0],
            nonneg: vec![true, true],
            eq: Some((Mat::from_rows(&[vec![1.0, 2.0]]), vec![1.0])),
        };
        let r = solve_lp(&p, 1e-8, 100).unwrap();
        assert_eq!(r.status, SolveStatus::Optimal);
        assert!(r.x[0].abs() < 1e-6 && (r.x[1] - 0.5).abs() < 1e-6, "{:?}", r.x);
    }

    #[test]
    fn detects_infeasible() {
        // x <= -1 with x >= 0.
        let p = dense_lp(vec![1.0], vec![vec![1.0]], vec![-1.0], vec![true]);
        let r = solve_lp(&p, 1e-8, 200).unwrap();
        assert_eq!(r.status, SolveStatus::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        // min -x with x >= 0 and a vacuous row.
        let p = dense_lp(vec![-1.0], vec![vec![-1.0]], vec![0.0], vec![true]);
        let r = solve_lp(&p, 1e-8, 200).unwrap();
        assert_eq!(r.status, SolveStatus::Unbounded);
    }

    /// Brute-force oracle: enumerate all candidate vertices (choosing active
    /// sets among inequality rows and variable bounds) and keep the feasible
    /// one with the lowest objective.
    pub(crate) fn vertex_enumeration_optimum(p: &LpStandardForm) -> Option<(Vec<f64>, f64)> {
        let n = p.objective.len();
        let m = p.ineq.rows();
        let mut rows: Vec<(Vec<f64>, f64)> = (0..m)
            .map(|i| (p.ineq.row(i).to_vec(), p.rhs[i]))
            .collect();
        for j in 0..n {
            if p.nonneg[j] {
                let mut r = vec![0.0; n];
                r[j] = -1.0;
                rows.push((r, 0.0));
            }
        }
        let total = rows.len();
        let mut best: Option<(Vec<f64>, f64)> = None;
        let mut active = vec![0usize; n];
        // Iterate over all n-subsets of rows by simple recursion.
        fn recurse(
            rows: &[(Vec<f64>, f64)],
            p: &LpStandardForm,
            active: &mut Vec<usize>,
            depth: usize,
            start: usize,
            total: usize,
            best: &mut Option<(Vec<f64>, f64)>,
        ) {
            let n = p.objective.len();
            if depth == n {
                let a = Mat::from_rows(
                    &active.iter().map(|&i| rows[i].0.clone()).collect::<Vec<_>>(),
                );
                let b: Vec<f64> = active.iter().map(|&i| rows[i].1).collect();
                if let Ok(x) = crate::linalg::solve_dense(&a, &b) {
                    if x.iter().any(|v| !v.is_finite()) {
                        return;
                    }
                    // Feasibility.
                    for (row, rhs) in rows {
                        if dot(row, &x) > rhs + 1e-7 {
                            return;
                        }
                    }
                    let obj = dot(&p.objective, &x);
                    if best.as_ref().is_none_or(|(_, o)| obj < *o) {
                        *best = Some((x, obj));
                    }
                }
                return;
            }
            for i in start..total {
                active[depth] = i;
                recurse(rows, p, active, depth + 1, i + 1, total, best);
            }
        }
        recurse(&rows, p, &mut active, 0, 0, total, &mut best);
        best
    }

    /// Generates a random LP with a compact feasible region: random rows
    /// through a strictly interior point plus box constraints.
    pub(crate) fn random_boxed_lp(rng: &mut StdRng, n: usize, extra_rows: usize) -> LpStandardForm {
        let x_inner: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..1.0)).collect();
        let mut g = Vec::new();
        let mut h = Vec::new();
        for _ in 0..extra_rows {
            let row: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let slack = rng.gen_range(0.1..1.0);
            h.push(dot(&row, &x_inner) + slack);
            g.push(row);
        }
        // Box: x_j <= u_j keeps every instance bounded.
        for j in 0..n {
            let mut row = vec![0.0; n];
            row[j] = 1.0;
            g.push(row);
            h.push(rng.gen_range(1.5..3.0));
        }
        LpStandardForm {
            objective: (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            ineq: Mat::from_rows(&g),
            rhs: h,
            nonneg: vec![true; n],
            eq: None,
        }
    }

    #[test]
    fn matches_vertex_enumeration_on_random_lps() {
        let mut rng = StdRng::seed_from_u64(31);
        for trial in 0..25 {
            let n = rng.gen_range(2..5);
            let extra = rng.gen_range(1..=(12 - n));
            let p = random_boxed_lp(&mut rng, n, extra);
            let r = solve_lp(&p, 1e-8, 200).unwrap();
            assert_eq!(r.status, SolveStatus::Optimal, "trial {trial}");
            let (_, oracle_obj) = vertex_enumeration_optimum(&p).expect("feasible by construction");
            assert!(
                (r.objective - oracle_obj).abs() <= 1e-7 * (1.0 + oracle_obj.abs()),
                "trial {trial}: ipm {} vs oracle {oracle_obj}",
                r.objective
            );
        }
    }

    #[test]
    fn deterministic_and_scale_invariant() {
        let mut rng = StdRng::seed_from_u64(5);
        let p = random_boxed_lp(&mut rng, 4, 6);
        let r1 = solve_lp(&p, 1e-9, 200).unwrap();
        let r2 = solve_lp(&p, 1e-9, 200).unwrap();
        assert_eq!(r1.iterations, r2.iterations);
        assert_eq!(r1.x, r2.x);

        let mut scaled = p.clone();
        for v in &mut scaled.objective {
            *v *= 1000.0;
        }
        let r3 = solve_lp(&scaled, 1e-9, 200).unwrap();
        for (a, b) in r1.x.iter().zip(&r3.x) {
            assert!((a - b).abs() < 1e-5, "argmin moved: {a} vs {b}");
        }
    }
}
