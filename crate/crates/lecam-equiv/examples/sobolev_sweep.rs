//! Distance bound decay across grid sizes for Fourier-Sobolev balls.
//!
//! For each odd grid size `m` the bound needs the worst-case squared
//! interpolation error over the ball, which splits into the classical
//! projection part and the aliasing part. The root of `n` times that
//! error is the Gaussian shift entering the total-variation bound, and its
//! log-log slope against `n` is the rate of the construction.

use lecam_equiv::funclass::SobolevBall;
use lecam_equiv::lecam::{fit_rate_slope, multidim_bound, sup_interpolation_bias};
use lecam_equiv::Result;

fn main() -> Result<()> {
    let ball = SobolevBall::new(1, 1.0, 1.0)?;

    println!("d = 1, s = 1, R = 1, sigma = 1:");
    println!(
        "{:>6} {:>13} {:>13} {:>13} {:>11} {:>10}",
        "m", "classical^2", "sup^2 lower", "sup^2 upper", "shift", "bound"
    );
    let mut ns = Vec::new();
    let mut shifts = Vec::new();
    for m in [5usize, 9, 17, 31, 63, 127, 255] {
        let bias = sup_interpolation_bias(&ball, m, 64)?;
        let report = multidim_bound(m, 1.0, &ball, 64)?;
        let shift = report.component("rmse_shift").unwrap();
        println!(
            "{m:>6} {:>13.4e} {:>13.4e} {:>13.4e} {:>11.4e} {:>10.4e}",
            bias.classical_sq, bias.sup_sq_lower, bias.sup_sq_upper, shift, report.value
        );
        ns.push(m as f64);
        shifts.push(shift);
    }
    let (slope, _) = fit_rate_slope(&ns, &shifts)?;
    println!("fitted shift slope: {slope:.4} (the s = 1 rate is -1/2)");

    // two dimensions: the same machinery runs per residue class of the
    // grid, and the slope halves
    let ball = SobolevBall::new(2, 1.5, 1.0)?;
    let mut ns = Vec::new();
    let mut shifts = Vec::new();
    for m in [5usize, 9, 17, 31] {
        let report = multidim_bound(m * m, 1.0, &ball, 24)?;
        ns.push((m * m) as f64);
        shifts.push(report.component("rmse_shift").unwrap());
    }
    let (slope, _) = fit_rate_slope(&ns, &shifts)?;
    println!("d = 2, s = 3/2: fitted shift slope {slope:.4} (expected -1/4)");
    Ok(())
}
