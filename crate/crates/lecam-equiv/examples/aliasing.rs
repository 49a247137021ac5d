//! Frequency folding under grid interpolation.
//!
//! On the grid with `m` points per axis, the exponential with frequency
//! `l + k m` is indistinguishable from the one with frequency `l`, so
//! interpolation folds every coefficient onto its residue class mod `m`.

use lecam_equiv::basis::fourier_block;
use lecam_equiv::design::equidistant_grid;
use lecam_equiv::emp::{fold_onto_block, EmpiricalGeometry};
use lecam_equiv::funclass::{C64, FourierFunction};
use lecam_equiv::Result;

fn main() -> Result<()> {
    let m = 5;
    let geo = EmpiricalGeometry::new(fourier_block(m, 1)?, equidistant_grid(m, 1)?)?;
    let freqs = geo.basis().freqs().unwrap();

    // a pure high frequency lands on its residue: 7 = 2 + 5, so the grid
    // sees it as frequency 2
    let f = FourierFunction::new(1, [(vec![7], C64::new(1.0, 0.0))])?;
    let coeffs = geo.interpolate(&f.values_at(geo.design()))?;
    println!("e(7 x) interpolated on the m = {m} grid:");
    for (j, l) in freqs.iter().enumerate() {
        println!("  frequency {:>2}: {:+.6} {:+.6}i", l[0], coeffs[j].re, coeffs[j].im);
    }

    // for a general function the folded coefficients sum the whole class
    let f = FourierFunction::new(
        1,
        [
            (vec![1], C64::new(0.5, 0.2)),
            (vec![6], C64::new(-0.25, 0.1)),
            (vec![-4], C64::new(0.125, -0.3)),
            (vec![11], C64::new(0.0625, 0.0)),
        ],
    )?;
    let folded = fold_onto_block(&f, m)?;
    let coeffs = geo.interpolate(&f.values_at(geo.design()))?;
    let mut worst: f64 = 0.0;
    for j in 0..freqs.len() {
        worst = worst.max((coeffs[j] - folded[j]).norm());
    }
    println!("\nfrequencies 1, 6, -4, 11 share the class of 1 mod {m}:");
    let j1 = freqs.iter().position(|l| l[0] == 1).unwrap();
    println!(
        "  folded coefficient at 1: {:+.6} {:+.6}i (sum of the class)",
        folded[j1].re, folded[j1].im
    );
    println!("  interpolation vs residue fold, max error: {worst:.3e}");
    Ok(())
}
