//! Empirical Gram-Schmidt and the two-level transform at a random design.
//!
//! At a uniform random design the leading Fourier frequencies are no
//! longer empirically orthonormal. Gram-Schmidt in the empirical inner
//! product produces a triangular coefficient factor `T` with `T T^* =
//! G^{-1}`, and the two-level transform keeps the exact mean structure on
//! a small leading block while handing the remaining coordinates over with
//! white noise at the idealized level.

use lecam_equiv::basis::fourier_leading;
use lecam_equiv::design::uniform_random_design;
use lecam_equiv::emp::EmpiricalGeometry;
use lecam_equiv::funclass::{C64, FourierFunction};
use lecam_equiv::rng::replicate_rng;
use lecam_equiv::transform::{empirical_gram_schmidt, two_level_observation, RegressionSample};
use lecam_equiv::Result;

fn main() -> Result<()> {
    let n = 256;
    let dim = 12;
    let geo = EmpiricalGeometry::new(fourier_leading(1, dim)?, uniform_random_design(n, 1, 31)?)?;
    let (a, b) = geo.isomorphism_constants();
    println!("n = {n}, {dim} leading frequencies: A = {a:.4}, B = {b:.4}");

    let gs = empirical_gram_schmidt(&geo)?;
    // T T^* must reproduce the inverse Gram matrix
    let g = geo.gram();
    let tt = &gs.t * gs.t.adjoint();
    let mut defect: f64 = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let expect = if i == j { 1.0 } else { 0.0 };
            let recovered = (g * &tt)[(i, j)];
            defect = defect.max((recovered - C64::new(expect, 0.0)).norm());
        }
    }
    println!("Gram-Schmidt factor: ||G (T T^*) - Id||_max = {defect:.3e}");
    let diag: Vec<String> = (0..4).map(|j| format!("{:.4}", gs.t[(j, j)].re)).collect();
    println!("leading diagonal of T: [{}, ...] (1 at an exact isometry)", diag.join(", "));

    // two-level transform: exact mean on the leading block
    let n0 = 4;
    let f = FourierFunction::new(
        1,
        [
            (vec![0], C64::new(0.5, 0.0)),
            (vec![1], C64::new(0.25, -0.1)),
            (vec![-1], C64::new(-0.2, 0.15)),
        ],
    )?;
    let mut rng = replicate_rng(31, 1);
    let sample = RegressionSample::simulate(&f.values_at(geo.design()), 0.0001, &mut rng)?;
    let obs = two_level_observation(&geo, &sample, n0)?;
    println!(
        "\ntwo-level transform with n0 = {n0}: noise {:?}",
        obs.noise
    );
    println!("  leading coefficients (drift in the ball basis, near-noiseless sample):");
    let freqs = geo.basis().freqs().unwrap();
    for (j, freq) in freqs.iter().enumerate().take(n0) {
        println!(
            "  freq {:>2}: {:+.4} {:+.4}i vs true {:+.4} {:+.4}i",
            freq[0],
            obs.coeffs[j].re,
            obs.coeffs[j].im,
            f.coeff(freq).re,
            f.coeff(freq).im
        );
    }
    Ok(())
}
