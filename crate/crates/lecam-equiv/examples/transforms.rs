//! The observation maps on one simulated data set.
//!
//! On an odd equidistant grid with the matching Fourier block the design
//! is an exact isometry, so the raw coefficients already have independent
//! noise of variance `sigma^2 / n`. The whitened and interpolation maps
//! agree with it there; their differences only appear at designs with a
//! nontrivial Gram matrix, where each map trades bias against noise shape
//! differently.

use lecam_equiv::basis::{fourier_block, fourier_leading};
use lecam_equiv::design::{equidistant_grid, uniform_random_design};
use lecam_equiv::emp::EmpiricalGeometry;
use lecam_equiv::funclass::{C64, FourierFunction};
use lecam_equiv::rng::replicate_rng;
use lecam_equiv::transform::{
    coefficient_observation, interpolation_observation, isometric_observation,
    whitened_observation, RegressionSample,
};
use lecam_equiv::Result;

fn main() -> Result<()> {
    let f = FourierFunction::new(
        1,
        [
            (vec![0], C64::new(0.8, 0.0)),
            (vec![1], C64::new(0.3, -0.2)),
            (vec![2], C64::new(-0.1, 0.05)),
        ],
    )?;
    let sigma = 0.25;

    // exact isometry on the grid
    let m = 31;
    let geo = EmpiricalGeometry::new(fourier_block(m, 1)?, equidistant_grid(m, 1)?)?;
    let mut rng = replicate_rng(2024, 0);
    let sample = RegressionSample::simulate(&f.values_at(geo.design()), sigma, &mut rng)?;
    let obs = isometric_observation(&geo, &sample)?;
    println!("grid design, m = {m}: map `{}`, noise {:?}", obs.label, obs.noise);
    let freqs = geo.basis().freqs().unwrap();
    println!("  freq   estimate                true coefficient");
    for (j, l) in freqs.iter().enumerate().take(5) {
        let truth = f.coeff(l);
        println!(
            "  {:>4}   {:+.4} {:+.4}i       {:+.4} {:+.4}i",
            l[0], obs.coeffs[j].re, obs.coeffs[j].im, truth.re, truth.im
        );
    }

    // a random design breaks the isometry; the three general maps answer
    // with different noise descriptors
    let geo = EmpiricalGeometry::new(fourier_leading(1, 7)?, uniform_random_design(200, 1, 7)?)?;
    let mut rng = replicate_rng(2024, 1);
    let sample = RegressionSample::simulate(&f.values_at(geo.design()), sigma, &mut rng)?;
    println!("\nuniform design, n = 200, 7 leading frequencies:");
    for obs in [
        coefficient_observation(&geo, &sample)?,
        whitened_observation(&geo, &sample)?,
        interpolation_observation(&geo, &sample)?,
    ] {
        println!("  map `{}`: noise {:?}", obs.label, obs.noise);
    }
    if let Err(e) = isometric_observation(&geo, &sample) {
        println!("  map `isometric` refuses: {e}");
    }
    Ok(())
}
