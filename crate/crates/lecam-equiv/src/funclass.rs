//! Function classes: trigonometric polynomials with finitely many
//! coefficients, Sobolev-type balls in the sup-norm frequency weight, and
//! Hoelder balls for the piecewise constant theory.

use crate::rng::master_rng;
use crate::{Error, Result};
use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::TAU;

pub type C64 = Complex<f64>;

/// Max-norm of an integer frequency vector.
pub fn freq_sup_norm(l: &[i64]) -> u64 {
    l.iter().map(|&v| v.unsigned_abs()).max().unwrap_or(0)
}

/// A function `x -> sum_l c_l exp(2 pi i <l, x>)` on `[0,1]^d` with finitely
/// many nonzero coefficients, stored sparsely with deterministic key order.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierFunction {
    d: usize,
    coeffs: BTreeMap<Vec<i64>, C64>,
    real_valued: bool,
}

#[derive(Serialize, Deserialize)]
struct CoeffEntry {
    l: Vec<i64>,
    re: f64,
    im: f64,
}

impl FourierFunction {
    /// Build from explicit coefficients. Keys must all have length `d`;
    /// duplicate keys are rejected.
    pub fn new(d: usize, entries: impl IntoIterator<Item = (Vec<i64>, C64)>) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("dimension must be >= 1"));
        }
        let mut coeffs = BTreeMap::new();
        for (l, c) in entries {
            if l.len() != d {
                return Err(Error::invalid(format!(
                    "frequency {l:?} has length {}, expected {d}",
                    l.len()
                )));
            }
            if coeffs.insert(l.clone(), c).is_some() {
                return Err(Error::invalid(format!("duplicate frequency {l:?}")));
            }
        }
        Ok(FourierFunction { d, coeffs, real_valued: false })
    }

    /// The zero function in dimension `d`.
    pub fn zero(d: usize) -> Self {
        FourierFunction { d, coeffs: BTreeMap::new(), real_valued: true }
    }

    /// Declare the function real-valued. Verifies conjugate symmetry
    /// `c_{-l} = conj(c_l)` exactly on the stored coefficients.
    pub fn into_real(mut self) -> Result<Self> {
        for (l, c) in &self.coeffs {
            let neg: Vec<i64> = l.iter().map(|v| -v).collect();
            let mirror = self.coeffs.get(&neg).copied().unwrap_or(C64::new(0.0, 0.0));
            if (mirror - c.conj()).norm() > 1e-14 * (1.0 + c.norm()) {
                return Err(Error::invalid(format!(
                    "coefficients are not conjugate symmetric at {l:?}"
                )));
            }
        }
        self.real_valued = true;
        Ok(self)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn real_valued(&self) -> bool {
        self.real_valued
    }

    /// Coefficient at `l` (zero when absent).
    pub fn coeff(&self, l: &[i64]) -> C64 {
        self.coeffs.get(l).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    /// Nonzero coefficients in lexicographic key order.
    pub fn coeffs(&self) -> impl Iterator<Item = (&Vec<i64>, &C64)> {
        self.coeffs.iter()
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest sup-norm frequency present.
    pub fn max_freq(&self) -> u64 {
        self.coeffs.keys().map(|l| freq_sup_norm(l)).max().unwrap_or(0)
    }

    /// Scale every coefficient by a real factor.
    pub fn scaled(mut self, factor: f64) -> Self {
        for c in self.coeffs.values_mut() {
            *c *= factor;
        }
        self
    }

    /// Evaluate at a point of `[0,1]^d`.
    pub fn evaluate(&self, x: &[f64]) -> C64 {
        debug_assert_eq!(x.len(), self.d);
        let mut acc = C64::new(0.0, 0.0);
        for (l, c) in &self.coeffs {
            let phase: f64 = l.iter().zip(x).map(|(&li, &xi)| li as f64 * xi).sum();
            acc += c * C64::from_polar(1.0, TAU * phase);
        }
        acc
    }

    /// Evaluate at every point of a design.
    pub fn values_at(&self, design: &crate::design::Design) -> Vec<C64> {
        design.points().iter().map(|p| self.evaluate(p)).collect()
    }

    /// Squared L2 norm, by Parseval over the coefficient map.
    pub fn l2_norm_sq(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm_sqr()).sum()
    }

    /// JSON as a list of `{l, re, im}` entries in lexicographic key order.
    pub fn to_json(&self) -> Result<String> {
        let entries: Vec<CoeffEntry> = self
            .coeffs
            .iter()
            .map(|(l, c)| CoeffEntry { l: l.clone(), re: c.re, im: c.im })
            .collect();
        Ok(serde_json::to_string_pretty(&entries)?)
    }

    /// Inverse of [`FourierFunction::to_json`]. The result is not flagged
    /// real; call [`FourierFunction::into_real`] to restore the flag.
    pub fn from_json(d: usize, text: &str) -> Result<Self> {
        let entries: Vec<CoeffEntry> = serde_json::from_str(text)?;
        FourierFunction::new(
            d,
            entries.into_iter().map(|e| (e.l, C64::new(e.re, e.im))),
        )
    }
}

/// Ball of mean-regular functions: frequency-weighted coefficient energy
/// `sum_{l != 0} |l|_inf^{2s} |c_l|^2 <= R^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SobolevBall {
    pub d: usize,
    pub s: f64,
    pub r: f64,
}

impl SobolevBall {
    pub fn new(d: usize, s: f64, r: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::invalid("dimension must be >= 1"));
        }
        if !(s > 0.0) {
            return Err(Error::invalid(format!("smoothness s must be positive, got {s}")));
        }
        if !(r > 0.0) {
            return Err(Error::invalid(format!("radius R must be positive, got {r}")));
        }
        Ok(SobolevBall { d, s, r })
    }
}

/// Hoelder ball: `|f(x) - f(y)| <= R |x - y|^alpha` with `alpha` in `(0,1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HoelderBall {
    pub alpha: f64,
    pub r: f64,
}

impl HoelderBall {
    pub fn new(alpha: f64, r: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::invalid(format!(
                "Hoelder exponent must lie in (0,1], got {alpha}"
            )));
        }
        if !(r > 0.0) {
            return Err(Error::invalid(format!("radius R must be positive, got {r}")));
        }
        Ok(HoelderBall { alpha, r })
    }
}

/// Frequency-weighted coefficient energy `sum_{l != 0} |l|_inf^{2s} |c_l|^2`.
pub fn sobolev_seminorm_sq(f: &FourierFunction, s: f64) -> f64 {
    f.coeffs()
        .filter(|(l, _)| freq_sup_norm(l) > 0)
        .map(|(l, c)| (freq_sup_norm(l) as f64).powf(2.0 * s) * c.norm_sqr())
        .sum()
}

/// Draw a real-valued function from the ball, supported on frequencies with
/// sup-norm at most `cutoff`. Coefficients are complex Gaussians with
/// standard deviation proportional to `|l|_inf^(-s - d/2 - 0.01)`, mirrored
/// for conjugate symmetry, then rescaled: onto the boundary of the ball when
/// `on_boundary` is set, otherwise only when the draw lands outside. The
/// constant coefficient is drawn uniformly in `[-R, R]` and does not count
/// toward the seminorm.
pub fn sample_from_sobolev_ball(
    ball: &SobolevBall,
    cutoff: u64,
    on_boundary: bool,
    seed: u64,
) -> Result<FourierFunction> {
    let mut rng = master_rng(seed);
    let d = ball.d;
    let mut coeffs: BTreeMap<Vec<i64>, C64> = BTreeMap::new();
    let c0: f64 = rng.random_range(-ball.r..=ball.r);
    coeffs.insert(vec![0; d], C64::new(c0, 0.0));

    // canonical half-lattice: first nonzero component positive
    let mut half = Vec::new();
    enumerate_box(d, cutoff as i64, &mut |l: &[i64]| {
        if l.iter().any(|&v| v != 0) && l.iter().find(|&&v| v != 0).copied().unwrap() > 0 {
            half.push(l.to_vec());
        }
    });
    half.sort();

    for l in half {
        let w = freq_sup_norm(&l) as f64;
        let sd = w.powf(-(ball.s + d as f64 / 2.0 + 0.01));
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        let z = C64::new(re, im) * (sd / 2f64.sqrt());
        let neg: Vec<i64> = l.iter().map(|v| -v).collect();
        coeffs.insert(l, z);
        coeffs.insert(neg, z.conj());
    }

    let mut f = FourierFunction { d, coeffs, real_valued: false };
    let sem = sobolev_seminorm_sq(&f, ball.s);
    if sem > 0.0 {
        let target = ball.r * ball.r;
        if on_boundary || sem > target {
            let scale = (target / sem).sqrt();
            let c0_saved = f.coeff(&vec![0; d]);
            f = f.scaled(scale);
            f.coeffs.insert(vec![0; d], c0_saved);
        }
    }
    f.into_real()
}

/// Visit every lattice point of `[-radius, radius]^d` in lexicographic order.
pub(crate) fn enumerate_box(d: usize, radius: i64, visit: &mut impl FnMut(&[i64])) {
    let mut l = vec![-radius; d];
    loop {
        visit(&l);
        let mut axis = d;
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            if l[axis] < radius {
                l[axis] += 1;
                for v in l.iter_mut().skip(axis + 1) {
                    *v = -radius;
                }
                break;
            }
            if axis == 0 {
                return;
            }
        }
    }
}

/// Exact worst-case squared interpolation bias for the Hoelder ball on the
/// equidistant one-dimensional grid of size `n`:
/// `R^2 (2 alpha + 1)^(-1) n^(-2 alpha)`.
pub fn holder_worst_bias_bound(ball: &HoelderBall, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n must be >= 1"));
    }
    Ok(ball.r * ball.r / (2.0 * ball.alpha + 1.0) * (n as f64).powf(-2.0 * ball.alpha))
}
