//! Exact rational normalization of the two-level Haar system at a design.
//!
//! The design-adapted Haar function on a dyadic cell weighs its left and
//! right halves by the inverse occupation counts; the normalizing constant
//! squared is the rational `n a b / (a + b)` for half counts `a` and `b`.
//! Everything here is exact integer arithmetic, so the constants come out
//! as fractions, not floats.

use lecam_equiv::design::{design_from_points, uniform_random_design};
use lecam_equiv::transform::HaarTwoLevel;
use lecam_equiv::Result;

fn main() -> Result<()> {
    // a hand-checkable design: 8 points, 3 in the left half, 5 in the right
    let points = [0.05, 0.2, 0.4, 0.55, 0.6, 0.7, 0.8, 0.95]
        .iter()
        .map(|&x| vec![x])
        .collect();
    let design = design_from_points(1, points)?;
    let haar = HaarTwoLevel::build(&design, 0)?;
    println!("level 0 on the 3 | 5 design:");
    println!("  child counts: {:?}", haar.child_counts());
    println!("  c^2 = {} (n a b / (a + b) = 8 * 3 * 5 / 8)", haar.c_sq(0));
    println!(
        "  values: left {:+.6}, right {:+.6}",
        haar.evaluate(0, 0.2)?,
        haar.evaluate(0, 0.7)?
    );

    // deeper levels on a random design
    let design = uniform_random_design(64, 1, 5)?;
    for level in [0u32, 1, 2] {
        let haar = HaarTwoLevel::build(&design, level)?;
        let fractions: Vec<String> = (0..haar.dim()).map(|k| haar.c_sq(k).to_string()).collect();
        println!("\nlevel {level} on 64 uniform points:");
        println!("  child counts: {:?}", haar.child_counts());
        println!("  c^2 per cell: [{}]", fractions.join(", "));
    }

    // an empty half-cell is a hard error naming the offending cell
    let clustered = design_from_points(
        1,
        [0.1, 0.2, 0.6, 0.65, 0.7, 0.9].iter().map(|&x| vec![x]).collect(),
    )?;
    match HaarTwoLevel::build(&clustered, 2) {
        Ok(_) => println!("\nno empty cell at level 2"),
        Err(e) => println!("\nlevel 2 on the clustered design: {e}"),
    }
    Ok(())
}
