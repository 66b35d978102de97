//! Prototype B-splines of order 1 through 4 built by box convolution.
//!
//! Prints a value table over the common support along with the mass and
//! smoothness of each prototype.
//!
//! ```bash
//! cargo run --example basis_prototypes
//! ```

use passive_approx::bspline::prototype_bspline;

fn main() -> passive_approx::Result<()> {
    let h = 1.0;
    let orders = [1usize, 2, 3, 4];
    let protos: Vec<_> = orders
        .iter()
        .map(|&m| prototype_bspline(m, h))
        .collect::<Result<_, _>>()?;

    println!("x      p1      p2      p3      p4");
    for i in 0..=20 {
        let x = 4.0 * i as f64 / 20.0;
        print!("{x:<6.2}");
        for p in &protos {
            print!(" {:7.4}", p.eval(x));
        }
        println!();
    }
    println!();
    for (m, p) in orders.iter().zip(&protos) {
        println!(
            "order {m}: support {:?}, mass {:.6}, continuity C^{:?}",
            p.support(),
            p.integral(),
            p.continuity_order(1e-10)
        );
    }
    Ok(())
}
