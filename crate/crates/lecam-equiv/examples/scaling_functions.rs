//! Refinable scaling systems: integer values, Gram symbol, interpolation
//! constant.
//!
//! A refinement filter determines its scaling function through the
//! two-scale relation. The values at integers come from the eigenvector of
//! the refinement matrix; the periodized translates at a dyadic level form
//! a basis whose Gram matrix is a circulant with an explicit symbol; and
//! interpolation at dyadic points is stable exactly when the symbol of the
//! integer values stays away from zero.

use lecam_equiv::basis::scaling::{
    interpolation_constant, toeplitz_gram, toeplitz_symbol, values_at_integers, ScalingFilter,
};
use lecam_equiv::basis::scaling_system;
use lecam_equiv::Result;

fn main() -> Result<()> {
    for filter in [ScalingFilter::haar(), ScalingFilter::db2(), ScalingFilter::db3()] {
        println!("filter `{}`:", filter.name());
        let values = values_at_integers(&filter)?;
        let pretty: Vec<String> = values.iter().map(|v| format!("{v:+.6}")).collect();
        println!("  values at integers: [{}]", pretty.join(", "));

        let symbol = toeplitz_symbol(&filter)?;
        let pretty: Vec<String> = symbol.iter().map(|v| format!("{v:+.6}")).collect();
        println!("  gram symbol taps:   [{}]", pretty.join(", "));

        let c = interpolation_constant(&filter, 1)?;
        match c.dominant_tap {
            Some(tap) => println!(
                "  interpolation constant in [{:.6}, {:.6}], dominant tap {tap}",
                c.lower, c.upper
            ),
            None => println!(
                "  interpolation constant in [{:.6}, {:.6}]",
                c.lower, c.upper
            ),
        }

        let level = 4;
        let gram = toeplitz_gram(&filter, level)?;
        let dim = gram.nrows();
        let mut off: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                if i != j {
                    off = off.max(gram[(i, j)].abs());
                }
            }
        }
        println!(
            "  level {level} gram: {dim} x {dim}, diagonal {:.6}, largest off-diagonal {:.3e}",
            gram[(0, 0)],
            off
        );

        let basis = scaling_system(filter, level)?;
        println!("  periodized system dimension: {}\n", basis.dim());
    }
    Ok(())
}
