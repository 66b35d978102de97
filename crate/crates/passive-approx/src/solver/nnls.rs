//! Active-set nonnegative least squares (Lawson-Hanson).
//!
//! Passive-set columns are solved by normal equations with a fresh Cholesky
//! per outer iteration; the classical inner loop clips variables that would
//! go negative. The residual norm never increases across outer iterations,
//! which is asserted in debug builds.

use crate::error::Error;
use crate::linalg::{dot, Cholesky, Mat};
use crate::Result;

use super::{NnlsProblem, SolveResult, SolveStatus};

/// Solves `min ||A x - b||, x >= 0` to KKT tolerance `tol`: at exit the
/// gradient of the squared residual is `>= -tol` on active bounds and has
/// magnitude `<= tol` on the passive set (both relative to the data scale).
pub fn solve_nnls(problem: &NnlsProblem, tol: f64) -> Result<SolveResult> {
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    problem.validate()?;
    let a = &problem.design;
    let b = &problem.target;
    let (m, n) = (a.rows(), a.cols());

    // Scale for the dual/gradient test.
    let mut atb = vec![0.0; n];
    a.mul_transpose_vec(b, &mut atb);
    let scale = 1.0 + atb.iter().fold(0.0f64, |mx, v| mx.max(v.abs()));
    let w_tol = tol * scale;

    let mut x = vec![0.0; n];
    let mut passive = vec![false; n];
    let mut residual = b.to_vec(); // b - A x
    let mut prev_norm = f64::INFINITY;
    let max_outer = 3 * n.max(10);

    for outer in 0..max_outer {
        let rnorm = dot(&residual, &residual).sqrt();
        debug_assert!(
            rnorm <= prev_norm * (1.0 + 1e-12) + 1e-12,
            "NNLS residual increased: {rnorm} after {prev_norm}"
        );
        prev_norm = prev_norm.min(rnorm);

        // Dual vector w = A'(b - A x); optimal when no active column wants in.
        let mut w = vec![0.0; n];
        a.mul_transpose_vec(&residual, &mut w);
        let candidate = (0..n)
            .filter(|&j| !passive[j])
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let enter = match candidate {
            Some(j) if w[j] > w_tol => j,
            _ => {
                let kkt = kkt_residual(&w, &passive);
                return Ok(SolveResult {
                    status: SolveStatus::Optimal,
                    x,
                    objective: rnorm,
                    gap: kkt / scale,
                    iterations: outer,
                });
            }
        };
        passive[enter] = true;

        // Inner loop: solve on the passive set, clipping negatives.
        for _ in 0..max_outer {
            let cols: Vec<usize> = (0..n).filter(|&j| passive[j]).collect();
            let z = match passive_ls(a, b, &cols) {
                Ok(z) => z,
                Err(_) => {
                    return Ok(SolveResult {
                        status: SolveStatus::NumericalFailure,
                        x,
                        objective: prev_norm,
                        gap: f64::NAN,
                        iterations: outer,
                    })
                }
            };
            if z.iter().all(|&v| v > 0.0) {
                for (k, &j) in cols.iter().enumerate() {
                    x[j] = z[k];
                }
                break;
            }
            // Step toward z until the first passive variable hits zero.
            let mut alpha = f64::INFINITY;
            for (k, &j) in cols.iter().enumerate() {
                if z[k] <= 0.0 {
                    let t = x[j] / (x[j] - z[k]);
                    if t < alpha {
                        alpha = t;
                    }
                }
            }
            for (k, &j) in cols.iter().enumerate() {
                x[j] += alpha * (z[k] - x[j]);
                if x[j] <= 1e-14 * scale || z[k] <= 0.0 && x[j] <= 0.0 {
                    x[j] = x[j].max(0.0);
                }
            }
            for &j in &cols {
                if x[j] <= 0.0 {
                    x[j] = 0.0;
                    passive[j] = false;
                }
            }
            if !passive.iter().any(|&p| p) {
                break;
            }
        }

        // Refresh the residual.
        let mut ax = vec![0.0; m];
        a.mul_vec(&x, &mut ax);
        for i in 0..m {
            residual[i] = b[i] - ax[i];
        }
    }

    Ok(SolveResult {
        status: SolveStatus::NumericalFailure,
        x,
        objective: prev_norm,
        gap: f64::NAN,
        iterations: max_outer,
    })
}

/// Largest KKT violation: |gradient| on the passive set, positive dual on
/// the active set.
fn kkt_residual(w: &[f64], passive: &[bool]) -> f64 {
    let mut worst = 0.0f64;
    for (j, &wj) in w.iter().enumerate() {
        if passive[j] {
            worst = worst.max(wj.abs());
        } else {
            worst = worst.max(wj.max(0.0));
        }
    }
    worst
}

/// Unconstrained least squares restricted to `cols`, by normal equations.
fn passive_ls(a: &Mat, b: &[f64], cols: &[usize]) -> Result<Vec<f64>> {
    let k = cols.len();
    let m = a.rows();
    let mut gram = Mat::zeros(k, k);
    let mut rhs = vec![0.0; k];
    for (p, &jp) in cols.iter().enumerate() {
        for (q, &jq) in cols.iter().enumerate().skip(p) {
            let mut acc = 0.0;
            for i in 0..m {
                acc += a.get(i, jp) * a.get(i, jq);
            }
            gram.set(p, q, acc);
        }
        let mut acc = 0.0;
        for (i, bi) in b.iter().enumerate() {
            acc += a.get(i, jp) * bi;
        }
        rhs[p] = acc;
    }
    let chol = Cholesky::factor(&gram)?;
    chol.solve_in_place(&mut rhs);
    Ok(rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn identity_design_clips_negative_target() {
        let p = NnlsProblem {
            design: Mat::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]),
            target: vec![1.0, -1.0],
        };
        let r = solve_nnls(&p, 1e-10).unwrap();
        assert_eq!(r.status, SolveStatus::Optimal);
        assert!((r.x[0] - 1.0).abs() < 1e-12 && r.x[1] == 0.0, "{:?}", r.x);
        assert!((r.objective - 1.0).abs() < 1e-12);
    }

    #[test]
    fn recovers_target_inside_cone() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..20 {
            // Overdetermined, so the zero-residual point is unique.
            let n = rng.gen_range(2..6);
            let m = rng.gen_range(n + 2..n + 8);
            let rows: Vec<Vec<f64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            let a = Mat::from_rows(&rows);
            let x_true: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..2.0)).collect();
            let mut b = vec![0.0; m];
            a.mul_vec(&x_true, &mut b);
            let r = solve_nnls(&NnlsProblem { design: a, target: b }, 1e-12).unwrap();
            assert_eq!(r.status, SolveStatus::Optimal);
            assert!(r.objective < 1e-9, "residual {}", r.objective);
            for (got, want) in r.x.iter().zip(&x_true) {
                assert!((got - want).abs() < 1e-7, "{got} vs {want}");
            }
        }
    }

    #[test]
    fn zero_target_gives_zero_solution() {
        let p = NnlsProblem {
            design: Mat::from_rows(&[vec![1.0, -2.0], vec![3.0, 0.5]]),
            target: vec![0.0, 0.0],
        };
        let r = solve_nnls(&p, 1e-12).unwrap();
        assert_eq!(r.status, SolveStatus::Optimal);
        assert_eq!(r.x, vec![0.0, 0.0]);
        assert_eq!(r.objective, 0.0);
    }

    #[test]
    fn sign_constraint_binds() {
        let p = NnlsProblem {
            design: Mat::from_rows(&[vec![1.0]]),
            target: vec![-1.0],
        };
        let r = solve_nnls(&p, 1e-10).unwrap();
        assert_eq!(r.status, SolveStatus::Optimal);
        assert_eq!(r.x[0], 0.0);
        assert!((r.objective - 1.0).abs() < 1e-14);
    }

    /// Brute-force oracle: try every support set, solve the unconstrained LS
    /// on it, and keep the best nonnegative solution.
    pub(crate) fn exhaustive_nnls(a: &Mat, b: &[f64]) -> (Vec<f64>, f64) {
        let n = a.cols();
        let m = a.rows();
        assert!(n <= 12, "oracle is exponential");
        let mut best_x = vec![0.0; n];
        let mut best = dot(b, b).sqrt();
        for mask in 1u32..(1 << n) {
            let cols: Vec<usize> = (0..n).filter(|j| mask & (1 << j) != 0).collect();
            let Ok(z) = passive_ls(a, b, &cols) else {
                continue;
            };
            if z.iter().any(|&v| v < 0.0) {
                continue;
            }
            let mut x = vec![0.0; n];
            for (k, &j) in cols.iter().enumerate() {
                x[j] = z[k];
            }
            let mut r2 = 0.0;
            for i in 0..m {
                let mut ax = 0.0;
                for j in 0..n {
                    ax += a.get(i, j) * x[j];
                }
                r2 += (b[i] - ax) * (b[i] - ax);
            }
            let rn = r2.sqrt();
            if rn < best {
                best = rn;
                best_x = x;
            }
        }
        (best_x, best)
    }

    #[test]
    fn matches_exhaustive_enumeration() {
        let mut rng = StdRng::seed_from_u64(17);
        for trial in 0..30 {
            let (m, n) = (rng.gen_range(3..9), rng.gen_range(2..7));
            let rows: Vec<Vec<f64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect();
            let a = Mat::from_rows(&rows);
            let b: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let r = solve_nnls(&NnlsProblem { design: a.clone(), target: b.clone() }, 1e-12)
                .unwrap();
            assert_eq!(r.status, SolveStatus::Optimal);
            let (_, oracle) = exhaustive_nnls(&a, &b);
            assert!(
                (r.objective - oracle).abs() <= 1e-9 * (1.0 + oracle),
                "trial {trial}: {} vs oracle {oracle}",
                r.objective
            );
        }
    }
}
