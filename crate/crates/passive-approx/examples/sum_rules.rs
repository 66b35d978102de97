//! Sum-rule identities of symmetric measures.
//!
//! The moments `(2/pi) int_{0+}^inf Im h(x) / x^{2k} dx` equal differences
//! of asymptotic expansion coefficients. Both sides are evaluated in closed
//! form by independent routes and compared.
//!
//! ```bash
//! cargo run --example sum_rules
//! ```

use passive_approx::cauchy::rooftop;
use passive_approx::herglotz::{symmetrized_density, HerglotzMeasure};
use std::f64::consts::PI;

fn main() -> passive_approx::Result<()> {
    // Roof-top pair at +/-1 carrying mass 0.5 each, plus an origin atom.
    let pair = symmetrized_density(&rooftop(0.25)?.translate(1.0)).scale(2.0 * PI);
    let with_atom = HerglotzMeasure::new(0.0, 0.0, vec![(0.0, 0.3)], pair.clone(), true)?;
    let (lhs, rhs) = with_atom.sum_rule(0)?;
    println!("k = 0 with origin atom: lhs = {lhs:.15}, rhs = {rhs:.15}, diff = {:.2e}", lhs - rhs);
    let asy = with_atom.asymptotics();
    println!(
        "  asymptotics: a_-1 = {:.3}, b_-1 = {:.3} (total mass {:.3})",
        asy.a_minus1,
        asy.b_minus1,
        with_atom.total_mass()
    );

    let no_atom = HerglotzMeasure::new(0.1, 0.0, vec![], pair, true)?;
    let (lhs, rhs) = no_atom.sum_rule(1)?;
    println!("k = 1 without atom:     lhs = {lhs:.15}, rhs = {rhs:.15}, diff = {:.2e}", lhs - rhs);
    println!("  (the k = 1 moment is the inverse-square mass of the measure)");

    // The k = 1 rule requires the measure to stay away from the origin.
    let through_zero = HerglotzMeasure::new(
        0.0,
        0.0,
        vec![],
        passive_approx::bspline::PiecewisePolynomial::new(vec![-1.0, 1.0], vec![vec![1.0 / PI]])?,
        true,
    )?;
    println!("k = 1 on a density through 0: {:?}", through_zero.sum_rule(1).err());
    Ok(())
}
