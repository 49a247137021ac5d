//! Transformations from regression samples to coefficient observations.
//!
//! Each map takes the raw observation vector `y_i = f(x_i) + sigma eps_i`
//! and produces coefficient-space data whose noise structure is stated
//! explicitly in a [`NoiseDescriptor`]. The point of the constructions is
//! that the output either already has independent coordinates of variance
//! `sigma^2 / n` (matching the idealized experiment) or can be brought to
//! that form, possibly after adding an independent correction noise whose
//! covariance fills the gap exactly.
//!
//! All maps are linear in `y` apart from [`randomized_interpolation`],
//! which adds the sampled correction. Their covariance claims are matrix
//! identities and are tested as such.

use crate::design::Design;
use crate::emp::EmpiricalGeometry;
use crate::funclass::C64;
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use num_rational::Ratio;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// Observations `y_i = f(x_i) + sigma eps_i` with real standard Gaussian
/// noise. The values may be complex when the target function is.
#[derive(Debug, Clone)]
pub struct RegressionSample {
    pub y: DVector<C64>,
    pub sigma: f64,
}

impl RegressionSample {
    pub fn new(y: Vec<C64>, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::invalid("noise level sigma must be positive"));
        }
        if y.is_empty() {
            return Err(Error::invalid("empty observation vector"));
        }
        Ok(RegressionSample {
            y: DVector::from_vec(y),
            sigma,
        })
    }

    /// Draw a sample with the given mean values and iid real `N(0, sigma^2)`
    /// noise.
    pub fn simulate<R: Rng + ?Sized>(
        values: &[C64],
        sigma: f64,
        rng: &mut R,
    ) -> Result<Self> {
        let y = values
            .iter()
            .map(|&v| {
                let e: f64 = rng.sample(StandardNormal);
                v + C64::new(sigma * e, 0.0)
            })
            .collect();
        RegressionSample::new(y, sigma)
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }
}

/// Covariance structure of a coefficient observation, relative to the
/// empirical Gram matrix `G` of the geometry that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum NoiseDescriptor {
    /// Independent coordinates, covariance `var * Id`.
    Identity { var: f64 },
    /// Covariance `var * G`.
    Gram { var: f64 },
    /// Covariance `var * G^-1`.
    GramInverse { var: f64 },
    /// Covariance `var * (G_lead)^-1` on the first `n0` coordinates,
    /// `var * Id` beyond, no cross correlation; `G_lead` is the leading
    /// `n0 x n0` block of `G`.
    TwoLevel { n0: usize, var: f64 },
}

impl NoiseDescriptor {
    /// Assemble the full covariance matrix described, for the dimension of
    /// the given geometry.
    pub fn covariance_matrix(&self, geo: &EmpiricalGeometry) -> Result<DMatrix<C64>> {
        let j = geo.dim();
        let id = DMatrix::<C64>::identity(j, j);
        match *self {
            NoiseDescriptor::Identity { var } => Ok(id * C64::new(var, 0.0)),
            NoiseDescriptor::Gram { var } => Ok(geo.gram() * C64::new(var, 0.0)),
            NoiseDescriptor::GramInverse { var } => {
                let inv = invert_pd(geo.gram())?;
                Ok(inv * C64::new(var, 0.0))
            }
            NoiseDescriptor::TwoLevel { n0, var } => {
                if n0 == 0 || n0 > j {
                    return Err(Error::invalid(format!(
                        "leading block size {n0} must lie in 1..={j}"
                    )));
                }
                let lead = geo.gram().view((0, 0), (n0, n0)).clone_owned();
                let lead_inv = invert_pd(&lead)?;
                let mut cov = id * C64::new(var, 0.0);
                for a in 0..n0 {
                    for b in 0..n0 {
                        cov[(a, b)] = lead_inv[(a, b)] * C64::new(var, 0.0);
                    }
                }
                Ok(cov)
            }
        }
    }
}

fn invert_pd(m: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    nalgebra::Cholesky::new(m.clone())
        .ok_or_else(|| {
            Error::NonIsomorphic("Gram matrix is not positive definite".into())
        })
        .map(|c| c.inverse())
}

/// Coefficient observation produced by one of the transforms.
#[derive(Debug, Clone)]
pub struct TransformOutput {
    pub coeffs: DVector<C64>,
    pub noise: NoiseDescriptor,
    pub label: String,
}

#[derive(Serialize, Deserialize)]
struct TransformOutputRepr {
    label: String,
    noise: NoiseDescriptor,
    coeffs: Vec<[f64; 2]>,
}

impl TransformOutput {
    pub fn to_json(&self) -> String {
        let repr = TransformOutputRepr {
            label: self.label.clone(),
            noise: self.noise.clone(),
            coeffs: self.coeffs.iter().map(|z| [z.re, z.im]).collect(),
        };
        serde_json::to_string_pretty(&repr).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let repr: TransformOutputRepr = serde_json::from_str(text)?;
        Ok(TransformOutput {
            coeffs: DVector::from_iterator(
                repr.coeffs.len(),
                repr.coeffs.iter().map(|&[re, im]| C64::new(re, im)),
            ),
            noise: repr.noise,
            label: repr.label,
        })
    }
}

fn check_sample(geo: &EmpiricalGeometry, sample: &RegressionSample) -> Result<()> {
    if sample.n() != geo.n_points() {
        return Err(Error::invalid(format!(
            "sample has {} observations but the design has {} points",
            sample.n(),
            geo.n_points()
        )));
    }
    Ok(())
}

fn raw_coefficients(geo: &EmpiricalGeometry, sample: &RegressionSample) -> DVector<C64> {
    let n = geo.n_points() as f64;
    geo.evaluation_matrix().adjoint() * &sample.y / C64::new(n, 0.0)
}

/// For an empirically orthonormal system (`G = Id`), the empirical
/// coefficients `(1/n) E^* y`. Their noise is exactly iid with variance
/// `sigma^2 / n`, so this single map realizes the idealized experiment.
pub fn isometric_observation(
    geo: &EmpiricalGeometry,
    sample: &RegressionSample,
) -> Result<TransformOutput> {
    check_sample(geo, sample)?;
    let g = geo.gram();
    let mut defect: f64 = 0.0;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let expect = if i == j { 1.0 } else { 0.0 };
            defect = defect.max((g[(i, j)] - C64::new(expect, 0.0)).norm());
        }
    }
    if defect > 1e-8 {
        return Err(Error::NotIsometric(format!(
            "empirical Gram deviates from the identity by {defect:.3e}; \
             use the whitened or interpolation map instead"
        )));
    }
    Ok(TransformOutput {
        coeffs: raw_coefficients(geo, sample),
        noise: NoiseDescriptor::Identity {
            var: sample.sigma * sample.sigma / geo.n_points() as f64,
        },
        label: "isometric".into(),
    })
}

/// Empirical coefficients `(1/n) E^* y` for a general geometry; the noise
/// covariance is `(sigma^2 / n) G`.
pub fn coefficient_observation(
    geo: &EmpiricalGeometry,
    sample: &RegressionSample,
) -> Result<TransformOutput> {
    check_sample(geo, sample)?;
    Ok(TransformOutput {
        coeffs: raw_coefficients(geo, sample),
        noise: NoiseDescriptor::Gram {
            var: sample.sigma * sample.sigma / geo.n_points() as f64,
        },
        label: "coefficient".into(),
    })
}

/// Whitened coefficients `G^(-1/2) (1/n) E^* y`, iid with variance
/// `sigma^2 / n`. The mean is the distorted coefficient vector
/// `G^(1/2) c`, so this map trades a clean noise for a tilted drift.
pub fn whitened_observation(
    geo: &EmpiricalGeometry,
    sample: &RegressionSample,
) -> Result<TransformOutput> {
    check_sample(geo, sample)?;
    let eig = geo.gram_eigen();
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if !(min > 0.0) {
        return Err(Error::NonIsomorphic(format!(
            "Gram matrix is singular (smallest eigenvalue {min:.3e})"
        )));
    }
    let u = &eig.eigenvectors;
    let scale = DMatrix::<C64>::from_diagonal(&DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&l| C64::new(1.0 / l.sqrt(), 0.0)),
    ));
    let inv_sqrt = u * scale * u.adjoint();
    Ok(TransformOutput {
        coeffs: inv_sqrt * raw_coefficients(geo, sample),
        noise: NoiseDescriptor::Identity {
            var: sample.sigma * sample.sigma / geo.n_points() as f64,
        },
        label: "whitened".into(),
    })
}

/// Interpolation coefficients `G^-1 (1/n) E^* y`. For a square evaluation
/// matrix these are exactly the coefficients of the interpolant of the
/// observed values; the noise covariance is `(sigma^2 / n) G^-1`.
pub fn interpolation_observation(
    geo: &EmpiricalGeometry,
    sample: &RegressionSample,
) -> Result<TransformOutput> {
    check_sample(geo, sample)?;
    let chol = geo.gram_cholesky().ok_or_else(|| {
        Error::NonIsomorphic("Gram matrix is not positive definite".into())
    })?;
    Ok(TransformOutput {
        coeffs: chol.solve(&raw_coefficients(geo, sample)),
        noise: NoiseDescriptor::GramInverse {
            var: sample.sigma * sample.sigma / geo.n_points() as f64,
        },
        label: "interpolation".into(),
    })
}

/// Interpolation coefficients plus an independent Gaussian correction with
/// covariance `(sigma^2 / n)(Id - G^-1)`, yielding iid coordinates of
/// variance `sigma^2 / n`. Requires every Gram eigenvalue to be at least
/// one, which is the ordering the spline and dyadic systems guarantee on
/// their grids; otherwise the missing covariance is not positive
/// semidefinite and the map does not exist.
pub fn randomized_interpolation<R: Rng + ?Sized>(
    geo: &EmpiricalGeometry,
    sample: &RegressionSample,
    rng: &mut R,
) -> Result<TransformOutput> {
    check_sample(geo, sample)?;
    let base = interpolation_observation(geo, sample)?;
    let eig = geo.gram_eigen();
    let j = geo.dim();
    let var = sample.sigma * sample.sigma / geo.n_points() as f64;
    let mut eta = DVector::<C64>::zeros(j);
    for k in 0..j {
        let l = eig.eigenvalues[k];
        if !(l > 0.0) {
            return Err(Error::NonIsomorphic(format!(
                "Gram matrix is singular (eigenvalue {l:.3e})"
            )));
        }
        let mu = 1.0 - 1.0 / l;
        if mu < -1e-12 {
            return Err(Error::OrderingViolation(format!(
                "Gram eigenvalue {l:.12} is below one; the correction \
                 covariance Id - G^-1 is not positive semidefinite"
            )));
        }
        let xi: f64 = rng.sample(StandardNormal);
        let w = C64::new((var * mu.max(0.0)).sqrt() * xi, 0.0);
        eta += eig.eigenvectors.column(k) * w;
    }
    Ok(TransformOutput {
        coeffs: base.coeffs + eta,
        noise: NoiseDescriptor::Identity { var },
        label: "randomized_interpolation".into(),
    })
}

/// Result of empirical Gram-Schmidt orthonormalization of the system
/// columns in the discrete inner product.
#[derive(Debug, Clone)]
pub struct GramSchmidt {
    /// Upper triangular coefficient map: the `j`-th orthonormal function is
    /// `sum_i t[(i, j)] phi_i`. Entries below the diagonal are exact zeros.
    pub t: DMatrix<C64>,
    /// Values of the orthonormalized functions at the design points;
    /// satisfies `(1/n) q^* q = Id`.
    pub q: DMatrix<C64>,
    /// Empirical norm of each residual right before normalization.
    pub residual_norms: Vec<f64>,
}

/// Orthonormalize the geometry's system in the empirical inner product by
/// modified Gram-Schmidt with one reorthogonalization pass. Fails with the
/// offending column index when a residual drops below `1e-10` of the
/// column's original norm. The triangular factor satisfies
/// `t t^* = G^-1` and nests: the leading block for the first `k` columns
/// is the factor of the leading `k x k` Gram block.
pub fn empirical_gram_schmidt(geo: &EmpiricalGeometry) -> Result<GramSchmidt> {
    let n = geo.n_points();
    let nf = n as f64;
    let j = geo.dim();
    let col_inner = |m: &DMatrix<C64>, a: usize, b: usize| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            acc += m[(i, a)] * m[(i, b)].conj();
        }
        acc / nf
    };
    let mut q = geo.evaluation_matrix().clone();
    let mut t = DMatrix::<C64>::zeros(j, j);
    let mut residual_norms = Vec::with_capacity(j);
    let mut coef = DVector::<C64>::zeros(j);
    for k in 0..j {
        coef.fill(C64::new(0.0, 0.0));
        coef[k] = C64::new(1.0, 0.0);
        let base = col_inner(geo.evaluation_matrix(), k, k).re.sqrt();
        for _pass in 0..2 {
            for i in 0..k {
                let r = col_inner(&q, k, i);
                let ti = t.column(i).clone_owned();
                let qi = q.column(i).clone_owned();
                q.column_mut(k).axpy(-r, &qi, C64::new(1.0, 0.0));
                coef.axpy(-r, &ti, C64::new(1.0, 0.0));
            }
        }
        let norm = col_inner(&q, k, k).re.max(0.0).sqrt();
        if norm <= 1e-10 * base {
            return Err(Error::RankDeficient {
                index: k,
                residual: norm,
            });
        }
        let inv = C64::new(1.0 / norm, 0.0);
        q.column_mut(k).scale_mut(1.0 / norm);
        coef *= inv;
        for i in 0..=k {
            t[(i, k)] = coef[i];
        }
        residual_norms.push(norm);
    }
    Ok(GramSchmidt { t, q, residual_norms })
}

/// The two-level observation for truncation level `n0`: orthonormalize
/// empirically, read off all orthonormal-frame coefficients
/// `beta_j = <y, psi_j>_n`, and return the first `n0` of them mapped back
/// to the raw coefficient frame (their mean is then exactly the leading
/// raw coefficient vector whenever the target lies in the leading span)
/// followed by the remaining `beta_j` unchanged. The noise is
/// `(sigma^2 / n) G_lead^-1` on the first block, `(sigma^2 / n) Id` on the
/// rest, with no cross correlation.
pub fn two_level_observation(
    geo: &EmpiricalGeometry,
    sample: &RegressionSample,
    n0: usize,
) -> Result<TransformOutput> {
    check_sample(geo, sample)?;
    let j = geo.dim();
    if n0 == 0 || n0 > j {
        return Err(Error::invalid(format!(
            "truncation level {n0} must lie in 1..={j}"
        )));
    }
    let gs = empirical_gram_schmidt(geo)?;
    let n = geo.n_points() as f64;
    let beta = gs.q.adjoint() * &sample.y / C64::new(n, 0.0);
    let t_lead = gs.t.view((0, 0), (n0, n0));
    let low = t_lead * beta.rows(0, n0);
    let mut coeffs = DVector::<C64>::zeros(j);
    coeffs.rows_mut(0, n0).copy_from(&low);
    coeffs.rows_mut(n0, j - n0).copy_from(&beta.rows(n0, j - n0));
    Ok(TransformOutput {
        coeffs,
        noise: NoiseDescriptor::TwoLevel {
            n0,
            var: sample.sigma * sample.sigma / n,
        },
        label: "two_level".into(),
    })
}

/// Empirically orthonormal two-level step functions on dyadic intervals.
///
/// For each parent cell `k` at the given level, the function is
/// `C (1_left / N_left - 1_right / N_right)` where the `N` are occupancy
/// counts of the two child cells and `C^2 = n N_left N_right / (N_left +
/// N_right)` exactly as a rational number. Each function integrates to
/// zero against the empirical measure of its parent cell and has empirical
/// norm one.
#[derive(Debug, Clone)]
pub struct HaarTwoLevel {
    level: u32,
    n: usize,
    child_counts: Vec<usize>,
    c_sq: Vec<Ratio<i128>>,
}

/// Exact normalizing constant `C^2 = n a b / (a + b)` for child occupancies
/// `a` and `b` out of `n` points.
pub fn haar_c_sq(n: usize, a: usize, b: usize) -> Result<Ratio<i128>> {
    if a == 0 || b == 0 {
        return Err(Error::invalid("both child cells must be occupied"));
    }
    let (n, a, b) = (n as i128, a as i128, b as i128);
    Ok(Ratio::new(n * a * b, a + b))
}

fn dyadic_cell(x: f64, cells: usize) -> usize {
    // half-open cells ((q)/cells, (q+1)/cells], x in (0, 1]
    let idx = (x * cells as f64).ceil() as usize;
    idx.clamp(1, cells) - 1
}

impl HaarTwoLevel {
    /// Build the system at the given parent level from a one-dimensional
    /// design; level `j` uses the `2^(j+1)` child cells.
    pub fn build(design: &Design, level: u32) -> Result<Self> {
        if design.d() != 1 {
            return Err(Error::invalid("two-level step systems are one-dimensional"));
        }
        if level > 30 {
            return Err(Error::invalid("level too deep"));
        }
        let children = 1usize << (level + 1);
        let mut child_counts = vec![0usize; children];
        for i in 0..design.n() {
            child_counts[dyadic_cell(design.point(i)[0], children)] += 1;
        }
        let mut c_sq = Vec::with_capacity(children / 2);
        for k in 0..children / 2 {
            let a = child_counts[2 * k];
            let b = child_counts[2 * k + 1];
            if a == 0 {
                return Err(Error::EmptyBin { level: level + 1, cell: 2 * k });
            }
            if b == 0 {
                return Err(Error::EmptyBin { level: level + 1, cell: 2 * k + 1 });
            }
            c_sq.push(haar_c_sq(design.n(), a, b)?);
        }
        Ok(HaarTwoLevel {
            level,
            n: design.n(),
            child_counts,
            c_sq,
        })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Number of functions (parent cells).
    pub fn dim(&self) -> usize {
        self.c_sq.len()
    }

    /// Occupancy counts of the child cells.
    pub fn child_counts(&self) -> &[usize] {
        &self.child_counts
    }

    /// Exact squared normalizing constant of the `k`-th function.
    pub fn c_sq(&self, k: usize) -> Ratio<i128> {
        self.c_sq[k]
    }

    /// Value of the `k`-th function at `x`.
    pub fn evaluate(&self, k: usize, x: f64) -> Result<f64> {
        if k >= self.dim() {
            return Err(Error::invalid(format!("index {k} out of range")));
        }
        if !(x > 0.0 && x <= 1.0) {
            return Err(Error::invalid(format!("point {x} outside (0, 1]")));
        }
        let children = 1usize << (self.level + 1);
        let cell = dyadic_cell(x, children);
        if cell / 2 != k {
            return Ok(0.0);
        }
        let c = ratio_to_f64(self.c_sq[k]).sqrt();
        let count = self.child_counts[cell] as f64;
        Ok(if cell.is_multiple_of(2) { c / count } else { -c / count })
    }

    /// Values of the `k`-th function at all design points.
    pub fn values_at(&self, design: &Design, k: usize) -> Result<Vec<f64>> {
        (0..design.n())
            .map(|i| self.evaluate(k, design.point(i)[0]))
            .collect()
    }

    /// Coefficients `<y, psi_k>_n` of an observation vector.
    pub fn coefficients(&self, design: &Design, y: &[f64]) -> Result<Vec<f64>> {
        if y.len() != design.n() {
            return Err(Error::invalid("observation length mismatch"));
        }
        let mut out = vec![0.0; self.dim()];
        for (i, &yi) in y.iter().enumerate() {
            let children = 1usize << (self.level + 1);
            let cell = dyadic_cell(design.point(i)[0], children);
            let k = cell / 2;
            let c = ratio_to_f64(self.c_sq[k]).sqrt();
            let count = self.child_counts[cell] as f64;
            let v = if cell.is_multiple_of(2) { c / count } else { -c / count };
            out[k] += yi * v / self.n as f64;
        }
        Ok(out)
    }
}

fn ratio_to_f64(r: Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
