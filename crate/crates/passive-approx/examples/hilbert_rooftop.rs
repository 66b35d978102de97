//! Closed-form Hilbert transform of the roof-top pulse.
//!
//! Builds the transform of the piecewise-linear pulse through the generic
//! log-polynomial machinery and compares it against the direct closed-form
//! expression, including the points where the logarithmic singularities
//! cancel.
//!
//! ```bash
//! cargo run --example hilbert_rooftop
//! ```

use passive_approx::cauchy::{hilbert_pp, rooftop, rooftop_hilbert_reference};

fn main() -> passive_approx::Result<()> {
    let delta = 1.0;
    let pulse = rooftop(delta)?;
    let transform = hilbert_pp(&pulse)?;

    println!("x       p(x)     p_hat(x)   reference  |diff|");
    let mut worst = 0.0f64;
    for i in 0..=16 {
        let x = -2.0 + 4.0 * i as f64 / 16.0;
        let ph = transform.eval(x)?;
        let reference = rooftop_hilbert_reference(x, delta)?;
        worst = worst.max((ph - reference).abs());
        println!(
            "{x:<7.3} {:8.5} {:10.6} {:10.6}  {:.2e}",
            pulse.eval(x),
            ph,
            reference,
            (ph - reference).abs()
        );
    }
    println!("\nmax |p_hat - reference| on the table: {worst:.3e}");
    println!(
        "log terms anchor at knots {:?}; all cancel (continuous transform): {}",
        transform
            .log_terms()
            .iter()
            .map(|t| t.knot)
            .collect::<Vec<_>>(),
        !transform.has_singularities()
    );
    // Far field: x * p_hat(x) -> -mass/pi.
    let x = 2000.0;
    println!(
        "far field: x p_hat(x) at x = {x}: {:.6} (expect {:.6})",
        x * transform.eval(x)?,
        -pulse.integral() / std::f64::consts::PI
    );
    Ok(())
}
