//! The seeded Monte Carlo verification suite at demonstration size.
//!
//! Each check validates one distributional claim behind the random-design
//! constructions: zero-mean symmetries of the Gram-Schmidt factor, the
//! soundness of the discretized supremum, the multinomial occupancy tail,
//! the norm-equivalence event, the growth of orthonormalization
//! corrections, and the three-term decomposition of the two-level
//! transform's distance to the idealized experiment. Replicate counts here
//! are kept small; the command line tool runs the same suite at full size.

use lecam_equiv::rng::child_seed;
use lecam_equiv::verify::{
    check_isomorphy_event, check_multinomial_max, check_projection_growth,
    check_symmetry_zero_mean, check_trig_discretization, decompose_terms, results_table,
    DecomposeConfig, FSpec,
};
use lecam_equiv::Result;

fn main() -> Result<()> {
    let seed = 42;
    let results = vec![
        check_symmetry_zero_mean(128, 6, 200, child_seed(seed, 0))?,
        check_trig_discretization(1, 6, 50, child_seed(seed, 1))?,
        check_multinomial_max(256, 64, 2.5, 1000, child_seed(seed, 2))?,
        check_isomorphy_event(512, 16, 100, child_seed(seed, 3))?,
        check_projection_growth(512, 8, 200, child_seed(seed, 4))?,
        decompose_terms(&DecomposeConfig {
            n: 512,
            dim: 16,
            n0: 8,
            sigma: 1.0,
            reps: 100,
            seed: child_seed(seed, 5),
            f: FSpec::SingleMode {
                l: vec![1],
                re: 1.0,
                im: 0.0,
            },
        })?,
    ];
    println!("{}", results_table(&results));
    for r in &results {
        println!("{}", r.summary_line());
    }
    Ok(())
}
