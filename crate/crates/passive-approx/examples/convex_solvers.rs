//! The built-in convex solvers on small problems.
//!
//! Solves a toy linear program with the primal-dual interior-point method
//! and a nonnegative least-squares problem with the active-set routine.
//!
//! ```bash
//! cargo run --example convex_solvers
//! ```

use passive_approx::linalg::Mat;
use passive_approx::solver::{solve_lp, solve_nnls, LpStandardForm, NnlsProblem};

fn main() -> passive_approx::Result<()> {
    // min -x1 - 2 x2  s.t.  x1 + x2 <= 1, x >= 0.
    let lp = LpStandardForm {
        objective: vec![-1.0, -2.0],
        ineq: Mat::from_rows(&[vec![1.0, 1.0]]),
        rhs: vec![1.0],
        nonneg: vec![true, true],
        eq: None,
    };
    let r = solve_lp(&lp, 1e-9, 100)?;
    println!(
        "LP: status {}, x = ({:.6}, {:.6}), objective {:.6}, {} iterations, gap {:.1e}",
        r.status, r.x[0], r.x[1], r.objective, r.iterations, r.gap
    );

    // Overdetermined NNLS where the sign constraint binds.
    let nnls = NnlsProblem {
        design: Mat::from_rows(&[
            vec![1.0, 0.5],
            vec![0.0, 1.0],
            vec![0.5, -1.0],
        ]),
        target: vec![1.0, -0.8, 0.3],
    };
    let r = solve_nnls(&nnls, 1e-12)?;
    println!(
        "NNLS: status {}, x = ({:.6}, {:.6}), residual {:.6}, KKT {:.1e}",
        r.status, r.x[0], r.x[1], r.objective, r.gap
    );
    Ok(())
}
