//! Max-norm convergence of spline expansions on a Hoelder-1/2 function.
//!
//! Interpolates `f(x) = |x - 1/2|^{1/2}` with expansions of order 2, 3, 4
//! over finer and finer uniform partitions. The max error decays like
//! `N^{-1/2}`, matching the Hoelder exponent of the target.
//!
//! ```bash
//! cargo run --release --example convergence_rates
//! ```

use passive_approx::bspline::{
    expansion, holder_seminorm_estimate, make_partition, BSplineBasis,
};

fn max_error(m: usize, n: usize) -> f64 {
    let f = |x: f64| (x - 0.5).abs().sqrt();
    let basis = BSplineBasis::new(make_partition(0.0, 1.0, n, m).unwrap()).unwrap();
    let coeffs = basis.interpolation_coeffs(&basis.sample_function(f)).unwrap();
    let g = expansion(&coeffs, &basis).unwrap();
    let mut worst = 0.0f64;
    for i in 0..=20000 {
        let x = i as f64 / 20000.0;
        worst = worst.max((g.eval(x) - f(x)).abs());
    }
    worst
}

fn main() {
    let f = |x: f64| (x - 0.5).abs().sqrt();
    let samples: Vec<(f64, f64)> = (0..=1000).map(|i| {
        let x = i as f64 / 1000.0;
        (x, f(x))
    }).collect();
    println!(
        "Hoelder-1/2 seminorm estimate of the target: {:.4}",
        holder_seminorm_estimate(&samples, 0.5).unwrap()
    );
    let n_values = [16usize, 32, 64, 128, 256, 512, 1024];
    println!("\nN      m=2        m=3        m=4");
    let mut logs: Vec<Vec<f64>> = vec![Vec::new(); 3];
    for &n in &n_values {
        print!("{n:<6}");
        for (idx, m) in [2usize, 3, 4].iter().enumerate() {
            let e = max_error(*m, n);
            logs[idx].push(e.ln());
            print!(" {e:<10.3e}");
        }
        println!();
    }
    let ln_n: Vec<f64> = n_values.iter().map(|&n| (n as f64).ln()).collect();
    for (idx, m) in [2, 3, 4].iter().enumerate() {
        let slope = regression_slope(&ln_n, &logs[idx]);
        println!("order {m}: log-log slope {slope:.3} (Hoelder exponent -0.5 expected)");
    }
}

fn regression_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let cov: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let var: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    cov / var
}
