//! Upper half-plane evaluation versus boundary values.
//!
//! Builds a Herglotz function from a spline measure and shows
//! `h(x + iy) -> h(x)` as `y` decreases: the real part converges to the
//! principal-value integral, the imaginary part to `pi` times the density.
//!
//! ```bash
//! cargo run --example herglotz_boundary
//! ```

use num_complex::Complex64;
use passive_approx::bspline::{expansion, make_partition, BSplineBasis};
use passive_approx::herglotz::{symmetrized_density, HerglotzMeasure};

fn main() -> passive_approx::Result<()> {
    let basis = BSplineBasis::new(make_partition(1.0, 1.0, 8, 2)?)?;
    let coeffs: Vec<f64> = (0..basis.len()).map(|i| 0.3 + 0.2 * (i % 4) as f64).collect();
    let density = symmetrized_density(&expansion(&coeffs, &basis)?);
    let measure = HerglotzMeasure::new(0.5, 0.0, vec![(0.0, 0.2), (0.0, 0.0)], density, true)?;

    let x = 1.4;
    let boundary = measure.boundary_value(x)?;
    println!("boundary value at x = {x}: {boundary}");
    println!("\ny          |h(x+iy) - h(x)|");
    for &y in &[1e-1, 1e-2, 1e-3, 1e-4, 1e-5] {
        let v = measure.eval_upper(Complex64::new(x, y))?;
        println!("{y:<10.0e} {:.3e}", (v - boundary).norm());
    }
    println!(
        "\nIm h(x) = pi * density(x): {:.12} vs {:.12}",
        boundary.im,
        std::f64::consts::PI * measure.density().eval(x)
    );
    println!(
        "symmetry h(-conj z) = -conj h(z): {:.2e}",
        (measure.eval_upper(Complex64::new(-x, 0.3))?
            + measure.eval_upper(Complex64::new(x, 0.3))?.conj())
        .norm()
    );
    Ok(())
}
