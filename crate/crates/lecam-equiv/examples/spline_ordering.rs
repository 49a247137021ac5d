//! Periodic linear splines and the randomized interpolation map.
//!
//! The interpolation map has noise covariance `(sigma^2 / n) G^{-1}`,
//! which sits below the white-noise level exactly when every eigenvalue of
//! the Gram matrix against the continuous spline geometry is at least one.
//! For the orthonormalized periodic linear splines on an equidistant
//! design this ordering holds with room to spare, so the randomized map
//! can top the noise up to an exact multiple of the identity.

use lecam_equiv::basis::spline_linear;
use lecam_equiv::design::{equidistant_grid, uniform_random_design};
use lecam_equiv::emp::{spline_pencil_eigenvalues, EmpiricalGeometry};
use lecam_equiv::funclass::C64;
use lecam_equiv::rng::replicate_rng;
use lecam_equiv::transform::{randomized_interpolation, RegressionSample};
use lecam_equiv::Result;

fn main() -> Result<()> {
    println!("eigenvalues of the spline Gram pencil (continuous vs sampled):");
    for (m, d, grid) in [(4usize, 1usize, 4usize), (8, 1, 8), (16, 1, 16), (4, 2, 4)] {
        let design = equidistant_grid(grid, d)?;
        let eigs = spline_pencil_eigenvalues(m, d, &design)?;
        let min = eigs.first().copied().unwrap();
        let max = eigs.last().copied().unwrap();
        println!("  m = {m:>2}, d = {d}: min = {min:.6}, max = {max:.6}");
    }

    // with the ordering certified, run the randomized interpolation map
    let m = 8;
    let design = equidistant_grid(m, 1)?;
    let geo = EmpiricalGeometry::new(spline_linear(m, 1)?, design)?;
    let truth: Vec<C64> = geo
        .design()
        .points()
        .iter()
        .map(|x| C64::new((std::f64::consts::TAU * x[0]).sin(), 0.0))
        .collect();
    let mut rng = replicate_rng(99, 0);
    let sample = RegressionSample::simulate(&truth, 0.1, &mut rng)?;
    let mut noise_rng = replicate_rng(99, 1);
    let obs = randomized_interpolation(&geo, &sample, &mut noise_rng)?;
    println!(
        "\nrandomized interpolation on m = {m}: noise {:?}, {} coefficients",
        obs.noise,
        obs.coeffs.len()
    );

    // at a design that violates the ordering the map refuses instead of
    // delivering a miscalibrated observation
    let crowded = uniform_random_design(9, 1, 3)?;
    let geo = EmpiricalGeometry::new(spline_linear(8, 1)?, crowded)?;
    let sample = RegressionSample::new(vec![C64::new(0.0, 0.0); 9], 0.1)?;
    let mut noise_rng = replicate_rng(99, 2);
    match randomized_interpolation(&geo, &sample, &mut noise_rng) {
        Ok(_) => println!("ordering held at the random design as well"),
        Err(e) => println!("\nrandom design with n = 9: {e}"),
    }
    Ok(())
}
