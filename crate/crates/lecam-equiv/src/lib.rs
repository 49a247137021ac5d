//! Equivalence transformations between nonparametric regression and
//! Gaussian white noise, with computable distance bounds.
//!
//! The library works with the regression experiment in which one observes
//! `y_i = f(x_i) + sigma * eps_i` at design points `x_i` in `[0,1]^d`, and
//! with its idealized counterpart in which the coefficients of `f` against an
//! orthonormal system are observed in independent Gaussian noise of variance
//! `sigma^2 / n`. It provides:
//!
//! * design generation and diagnostics ([`design`]),
//! * Fourier coefficient maps and smoothness balls ([`funclass`]),
//! * orthonormal systems: Fourier, piecewise constant, periodic linear
//!   splines, and refinable scaling systems ([`basis`]),
//! * empirical geometry of a system sampled at a design: evaluation matrix,
//!   Gram matrix, interpolation, isomorphism constants ([`emp`]),
//! * the observation transforms that carry regression data to white-noise
//!   form, including empirical Gram-Schmidt factors and the two-level
//!   transform for random designs ([`transform`]),
//! * total-variation and Hellinger bounds on the experiment distance,
//!   worst-case interpolation bias, and rate fits ([`lecam`]),
//! * seeded Monte Carlo checks of the identities the transforms rely on
//!   ([`verify`]),
//! * a small config-driven driver shared by the command line tool
//!   ([`cli`]).
//!
//! Each major capability has a runnable demonstration under `examples/`:
//!
//! ```text
//! cargo run --example grid_isometry          exact discrete/continuous isometry
//! cargo run --example aliasing               frequency folding under interpolation
//! cargo run --example holder_bias            piecewise constant bias, exact worst case
//! cargo run --example sobolev_sweep          bound decay across grid sizes
//! cargo run --example transforms             observation maps on simulated data
//! cargo run --example spline_ordering        spline geometry and randomized interpolation
//! cargo run --example scaling_functions      refinable systems: values, constants
//! cargo run --example random_design          Gram-Schmidt factor and two-level transform
//! cargo run --example haar_occupancy         exact rational two-level Haar constants
//! cargo run --example distance_bounds        TV and Hellinger bound surfaces
//! cargo run --example proposition_checks     Monte Carlo verification suite
//! ```
//!
//! The `lecam-equiv` binary exposes the same functionality as four
//! subcommands (`bound`, `transform`, `verify`, `rates`) driven by a flat
//! key-value config file; see the crate README.

// Validation deliberately writes `!(x > 0.0)` so that NaN inputs fail the
// check and are rejected along with nonpositive ones.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod cli;
pub mod design;
pub mod emp;
pub mod error;
pub mod funclass;
pub mod io;
pub mod lecam;
pub mod rng;
pub mod transform;
pub mod verify;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
