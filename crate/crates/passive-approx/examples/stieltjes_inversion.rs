//! Recovering measure masses from boundary limits.
//!
//! The Stieltjes inversion integral `(1/pi) int Im h(x + iy) dx` over a
//! window converges, as `y` decreases, to the measure of the open window
//! plus half the weight of any atom sitting exactly on an endpoint.
//!
//! ```bash
//! cargo run --example stieltjes_inversion
//! ```

use passive_approx::herglotz::HerglotzMeasure;

fn main() -> passive_approx::Result<()> {
    let y_seq = [1e-2, 1e-3, 1e-4, 1e-5];

    let atom = HerglotzMeasure::atoms_only(0.0, vec![(0.0, 0.3)])?;
    println!("atom of weight 0.3 at the origin, window (-1, 1):");
    for (y, v) in y_seq.iter().zip(atom.stieltjes_invert(-1.0, 1.0, &y_seq)?) {
        println!("  y = {y:<7.0e} mass = {v:.8}");
    }

    let pair = HerglotzMeasure::atoms_only(0.0, vec![(1.0, 0.3), (-1.0, 0.3)])?;
    println!("atoms of weight 0.3 at +/-1, window (-0.5, 1) (endpoint atom):");
    for (y, v) in y_seq.iter().zip(pair.stieltjes_invert(-0.5, 1.0, &y_seq)?) {
        println!("  y = {y:<7.0e} mass = {v:.8}  (half weight expected)");
    }
    Ok(())
}
