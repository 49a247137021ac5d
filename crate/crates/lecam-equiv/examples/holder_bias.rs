//! Worst-case bias of piecewise constant interpolation over a Hoelder ball.
//!
//! On the equidistant one-dimensional design the squared worst-case `L2`
//! error has the sharp value `R^2 n^(-2 alpha) / (2 alpha + 1)`; perturbed
//! designs get a chained bound with the design's deviation sum. The
//! resulting total-variation bound on the experiment distance follows by
//! the Gaussian shift formula.

use lecam_equiv::design::{equidistant_grid, perturbed_design};
use lecam_equiv::funclass::{holder_worst_bias_bound, HoelderBall};
use lecam_equiv::lecam::holder_design_bound;
use lecam_equiv::Result;

fn main() -> Result<()> {
    let ball = HoelderBall::new(1.0, 1.0)?;

    // the sharp constant: alpha = 1, R = 1, n = 10 gives exactly 1/300
    let bias = holder_worst_bias_bound(&ball, 10)?;
    println!("worst bias^2 at n = 10, alpha = 1: {bias:.16e}");
    println!("                        exact 1/300: {:.16e}", 1.0 / 300.0);

    println!("\nequidistant design, sigma = 1:");
    println!("{:>6}  {:>12}  {:>12}", "n", "bias^2", "tv bound");
    for n in [10usize, 40, 160, 640] {
        let design = equidistant_grid(n, 1)?;
        let report = holder_design_bound(&ball, &design, 1.0)?;
        println!(
            "{n:>6}  {:>12.4e}  {:>12.4e}",
            report.component("worst_bias_sq").unwrap(),
            report.value
        );
    }

    // a perturbed design pays for its deviations from the lattice
    let n = 40;
    let deviations: Vec<f64> = (0..n).map(|i| 0.004 * if i % 2 == 0 { 1.0 } else { -1.0 }).collect();
    let design = perturbed_design(n, &deviations)?;
    let report = holder_design_bound(&ball, &design, 1.0)?;
    println!(
        "\nperturbed design, n = {n}: chained bias^2 = {:.4e}, tv bound = {:.4e}",
        report.component("worst_bias_sq_chained").unwrap(),
        report.value
    );
    Ok(())
}
