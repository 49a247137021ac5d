//! The discrete/continuous isometry on equidistant grids.
//!
//! Sampling the centered Fourier block of size `m` on the equidistant grid
//! with `m` points per axis makes the empirical inner product agree with
//! the `L2` inner product exactly: the Gram matrix is the identity and the
//! norm-equivalence constants are both one. The same holds in several
//! dimensions with `n = m^d` grid points.

use lecam_equiv::basis::fourier_block;
use lecam_equiv::design::equidistant_grid;
use lecam_equiv::emp::{hs_distance_identity, EmpiricalGeometry};
use lecam_equiv::funclass::C64;
use lecam_equiv::Result;

fn report(m: usize, d: usize) -> Result<()> {
    let geo = EmpiricalGeometry::new(fourier_block(m, d)?, equidistant_grid(m, d)?)?;
    let defect = hs_distance_identity(geo.gram(), false)?;
    let (a, b) = geo.isomorphism_constants();
    println!(
        "m = {m:>3}, d = {d}: n = {:>4}, ||G - Id||_HS = {defect:.3e}, A = {a:.12}, B = {b:.12}",
        geo.n_points()
    );
    Ok(())
}

fn main() -> Result<()> {
    for (m, d) in [(5, 1), (31, 1), (101, 1), (7, 2), (5, 3)] {
        report(m, d)?;
    }

    // the isometry also means noiseless interpolation recovers Fourier
    // coefficients of in-block functions exactly
    let m = 31;
    let geo = EmpiricalGeometry::new(fourier_block(m, 1)?, equidistant_grid(m, 1)?)?;
    let f = lecam_equiv::funclass::FourierFunction::new(
        1,
        [
            (vec![0], C64::new(0.4, 0.0)),
            (vec![3], C64::new(0.2, -0.1)),
            (vec![-5], C64::new(-0.3, 0.25)),
        ],
    )?;
    let values = f.values_at(geo.design());
    let coeffs = geo.interpolate(&values)?;
    let freqs = geo.basis().freqs().unwrap();
    let mut worst: f64 = 0.0;
    for (j, l) in freqs.iter().enumerate() {
        let truth = f.coeff(l);
        worst = worst.max((coeffs[j] - truth).norm());
    }
    println!("coefficient recovery on the m = {m} grid: max error {worst:.3e}");
    Ok(())
}
