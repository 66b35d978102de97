//! Bandwidth lower bounds for passive approximation.
//!
//! Tabulates the generic bound `(b1 + b1_0) |Omega| / 2` on the plain
//! max-norm and the permittivity-error bound
//! `(eps_inf - Re eps_t)(B/2)/(1 + B/2) - Im eps_t` over a range of relative
//! bandwidths and target losses.
//!
//! ```bash
//! cargo run --example bandwidth_bounds
//! ```

use num_complex::Complex64;
use passive_approx::herglotz::{lower_bound_generic, metamaterial_bound};

fn main() -> passive_approx::Result<()> {
    println!("target F(x) = -x (negative of a unit-slope Herglotz function):");
    println!(
        "  any passive approximant with slope 0 misses by at least {:.3} on a unit band",
        lower_bound_generic(0.0, 1.0, 1.0)?
    );

    println!("\npermittivity bound, eps_inf = 1, Re eps_t = -1:");
    println!("B      Im=0       Im=0.05    Im=0.1     Im=0.2");
    for &b in &[0.05, 0.1, 0.2, 0.3, 0.5] {
        print!("{b:<6.2}");
        for &im in &[0.0, 0.05, 0.1, 0.2] {
            let bound = metamaterial_bound(1.0, Complex64::new(-1.0, im), b)?;
            print!(" {bound:<10.6}");
        }
        println!();
    }
    println!("\nlosses relax the bound; wider bands tighten it");
    Ok(())
}
