//! Empirical geometry: a function system sampled at a design.
//!
//! The central object couples a [`BasisFamily`] with a [`Design`] and holds
//! the evaluation matrix `E[i][j] = phi_j(x_i)` together with the empirical
//! Gram matrix `G = (1/n) E^* E`, whose entry `(j, k)` is the empirical
//! inner product `<phi_k, phi_j>_n = (1/n) sum_i phi_k(x_i) conj(phi_j(x_i))`.
//! When `G` is the identity the discrete norm `(1/n) sum_i |g(x_i)|^2`
//! agrees with the `L2` norm on the span; in general the extreme eigenvalues
//! of `G` give the sharp constants of the norm equivalence.
//!
//! Systems that are not `L2`-orthonormal (the periodized splines) are
//! re-expressed in orthonormal coordinates on construction, so that `G`
//! always represents the empirical projection operator restricted to the
//! span in an orthonormal frame.

use crate::basis::{spline::spline_l2_gram, BasisFamily};
use crate::design::Design;
use crate::funclass::{C64, FourierFunction};
use crate::{Error, Result};
use nalgebra::{Cholesky, DMatrix, DVector, Dyn, LU};
use std::sync::OnceLock;

type CEigen = nalgebra::SymmetricEigen<C64, Dyn>;

/// Empirical inner product `(1/n) sum_i u_i conj(v_i)`.
pub fn empirical_inner(u: &[C64], v: &[C64]) -> C64 {
    debug_assert_eq!(u.len(), v.len());
    let n = u.len() as f64;
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum::<C64>() / n
}

/// A function system evaluated at a design.
pub struct EmpiricalGeometry {
    basis: BasisFamily,
    design: Design,
    e: DMatrix<C64>,
    gram: DMatrix<C64>,
    /// Cholesky factor `L` of the exact `L2` Gram of the raw system when the
    /// system needed orthonormalization (splines); columns of `e` are then
    /// the raw values times `L^-T`.
    l_factor: Option<DMatrix<f64>>,
    eigen_cache: OnceLock<CEigen>,
    lu_cache: OnceLock<Option<LU<C64, Dyn, Dyn>>>,
    chol_cache: OnceLock<Option<Cholesky<C64, Dyn>>>,
}

impl EmpiricalGeometry {
    /// Evaluate the system at every design point. Fails when dimensions
    /// disagree or a member cannot be evaluated at a design point.
    pub fn new(basis: BasisFamily, design: Design) -> Result<Self> {
        if basis.d() != design.d() {
            return Err(Error::invalid(format!(
                "system lives on [0,1]^{} but the design has dimension {}",
                basis.d(),
                design.d()
            )));
        }
        let n = design.n();
        let dim = basis.dim();
        if dim > n {
            return Err(Error::invalid(format!(
                "system dimension {dim} exceeds the number of design points {n}"
            )));
        }
        let mut e = DMatrix::<C64>::zeros(n, dim);
        for i in 0..n {
            let x = design.point(i);
            for j in 0..dim {
                e[(i, j)] = basis.evaluate(j, x)?;
            }
        }
        let l_factor = match &basis {
            BasisFamily::SplineLinearPeriodic { m, d } => {
                let c = spline_l2_gram(*m, *d)?;
                let chol = Cholesky::new(c).ok_or_else(|| {
                    Error::invalid("spline L2 Gram is not positive definite")
                })?;
                Some(chol.l().clone_owned())
            }
            _ => None,
        };
        if let Some(l) = &l_factor {
            // right-multiply by L^-T: solve L^T X^T = E^T row block-wise
            let lt = l.transpose();
            let lc: DMatrix<C64> = lt.map(|x| C64::new(x, 0.0));
            // E_new^T = L^-1 ... want E_new = E (L^T)^-1, i.e. E_new L^T = E
            let lt_lu = lc.lu();
            let et = e.transpose();
            let sol = lt_lu
                .solve(&et)
                .ok_or_else(|| Error::invalid("spline Gram factor is singular"))?;
            e = sol.transpose();
        }
        let gram = e.adjoint() * &e / C64::new(n as f64, 0.0);
        Ok(EmpiricalGeometry {
            basis,
            design,
            e,
            gram,
            l_factor,
            eigen_cache: OnceLock::new(),
            lu_cache: OnceLock::new(),
            chol_cache: OnceLock::new(),
        })
    }

    pub fn basis(&self) -> &BasisFamily {
        &self.basis
    }

    pub fn design(&self) -> &Design {
        &self.design
    }

    pub fn n_points(&self) -> usize {
        self.design.n()
    }

    pub fn dim(&self) -> usize {
        self.e.ncols()
    }

    /// Evaluation matrix in (orthonormalized) coordinates.
    pub fn evaluation_matrix(&self) -> &DMatrix<C64> {
        &self.e
    }

    /// Empirical Gram `G[(j,k)] = <phi_k, phi_j>_n`.
    pub fn gram(&self) -> &DMatrix<C64> {
        &self.gram
    }

    /// Cholesky factor of the raw system's exact `L2` Gram when the system
    /// was orthonormalized on construction.
    pub fn l_factor(&self) -> Option<&DMatrix<f64>> {
        self.l_factor.as_ref()
    }

    /// Eigendecomposition of the Hermitian Gram matrix (cached).
    pub fn gram_eigen(&self) -> &CEigen {
        self.eigen_cache.get_or_init(|| self.gram.clone().symmetric_eigen())
    }

    fn lu(&self) -> &Option<LU<C64, Dyn, Dyn>> {
        self.lu_cache.get_or_init(|| {
            if self.e.is_square() {
                Some(self.e.clone().lu())
            } else {
                None
            }
        })
    }

    /// Cholesky factor of the Gram matrix, when positive definite (cached).
    pub fn gram_cholesky(&self) -> Option<&Cholesky<C64, Dyn>> {
        self.chol_cache
            .get_or_init(|| Cholesky::new(self.gram.clone()))
            .as_ref()
    }

    /// Ratio of extreme diagonal magnitudes of the LU factor of `E`; a cheap
    /// proxy for its condition number.
    pub fn condition_proxy(&self) -> Result<f64> {
        let lu = self.lu().as_ref().ok_or_else(|| {
            Error::invalid(format!(
                "interpolation needs a square evaluation matrix, got {}x{}",
                self.n_points(),
                self.dim()
            ))
        })?;
        let u = lu.u();
        let mut dmin = f64::INFINITY;
        let mut dmax: f64 = 0.0;
        for i in 0..u.nrows().min(u.ncols()) {
            let m = u[(i, i)].norm();
            dmin = dmin.min(m);
            dmax = dmax.max(m);
        }
        if dmin == 0.0 {
            return Ok(f64::INFINITY);
        }
        Ok(dmax / dmin)
    }

    /// Coefficients of the unique element of the span matching the given
    /// values at every design point.
    pub fn interpolate(&self, values: &[C64]) -> Result<DVector<C64>> {
        if values.len() != self.n_points() {
            return Err(Error::invalid(format!(
                "got {} values for {} design points",
                values.len(),
                self.n_points()
            )));
        }
        let cond = self.condition_proxy()?;
        if !(cond < 1e12) {
            return Err(Error::NonIsomorphic(format!(
                "evaluation matrix condition proxy {cond:.3e} exceeds 1e12"
            )));
        }
        let rhs = DVector::from_column_slice(values);
        self.lu()
            .as_ref()
            .unwrap()
            .solve(&rhs)
            .ok_or_else(|| Error::NonIsomorphic("evaluation matrix is singular".into()))
    }

    /// Sharp norm-equivalence constants `(A, B)`: square roots of the
    /// extreme Gram eigenvalues, so `A ||g|| <= ||g||_n <= B ||g||` on the
    /// span.
    pub fn isomorphism_constants(&self) -> (f64, f64) {
        let eig = self.gram_eigen();
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        for &l in eig.eigenvalues.iter() {
            lo = lo.min(l);
            hi = hi.max(l);
        }
        (lo.max(0.0).sqrt(), hi.max(0.0).sqrt())
    }

    /// Values at all design points of the element with the given
    /// coefficients.
    pub fn synthesize(&self, coeffs: &DVector<C64>) -> DVector<C64> {
        &self.e * coeffs
    }
}

/// Hilbert-Schmidt (Frobenius) distance from a Hermitian matrix, or from its
/// inverse, to the identity. `inverted` requires positive definiteness.
pub fn hs_distance_identity(m: &DMatrix<C64>, inverted: bool) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::invalid("matrix must be square"));
    }
    if !inverted {
        let mut acc = 0.0;
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let v = m[(i, j)] - if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                acc += v.norm_sqr();
            }
        }
        return Ok(acc.sqrt());
    }
    let eig = m.clone().symmetric_eigen();
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        return Err(Error::OrderingViolation(format!(
            "matrix must be positive definite to invert, smallest eigenvalue {min:.3e}"
        )));
    }
    // U (1/lambda - 1) U^* has the same Frobenius norm as its diagonal part
    let acc: f64 = eig.eigenvalues.iter().map(|&l| (1.0 / l - 1.0).powi(2)).sum();
    Ok(acc.sqrt())
}

/// Coefficients of the `L2` projection of `f` onto the symmetric frequency
/// block `|l|_inf <= (m-1)/2`, in the block system's enumeration order.
pub fn l2_project_fourier(f: &FourierFunction, m: usize) -> Result<Vec<C64>> {
    let block = crate::basis::fourier_block(m, f.d())?;
    let freqs = block.freqs().unwrap();
    Ok(freqs.iter().map(|l| f.coeff(l)).collect())
}

/// Fold the coefficient map of `f` onto the frequency block of the size-`m`
/// grid: entry for block frequency `l` is `sum_k c_{l + k m}`. This is the
/// coefficient vector of the grid interpolant of `f`, computed without
/// touching the design.
pub fn fold_onto_block(f: &FourierFunction, m: usize) -> Result<Vec<C64>> {
    let block = crate::basis::fourier_block(m, f.d())?;
    let freqs = block.freqs().unwrap();
    let d = f.d();
    let mut folded = vec![C64::new(0.0, 0.0); freqs.len()];
    let index_of = |l: &[i64]| -> usize {
        // residue representative in the symmetric block, then position
        freqs.iter().position(|g| g.as_slice() == l).unwrap()
    };
    for (l, &c) in f.coeffs() {
        let mut rep = vec![0i64; d];
        for (a, &la) in l.iter().enumerate() {
            let mut r = la.rem_euclid(m as i64);
            if r > ((m - 1) / 2) as i64 {
                r -= m as i64;
            }
            rep[a] = r;
        }
        folded[index_of(&rep)] += c;
    }
    Ok(folded)
}

/// Mean of `|h|^2` over the uniform grid with `points_per_axis` points per
/// axis; exact for trigonometric polynomials whose degree stays below the
/// grid bandwidth.
pub fn quadrature_l2_norm_sq(
    h: impl Fn(&[f64]) -> C64,
    d: usize,
    points_per_axis: usize,
) -> f64 {
    let mut idx = vec![0usize; d];
    let mut x = vec![0.0f64; d];
    let total = points_per_axis.pow(d as u32);
    let mut acc = 0.0;
    for _ in 0..total {
        for (a, &q) in idx.iter().enumerate() {
            x[a] = q as f64 / points_per_axis as f64;
        }
        acc += h(&x).norm_sqr();
        for a in (0..d).rev() {
            idx[a] += 1;
            if idx[a] < points_per_axis {
                break;
            }
            idx[a] = 0;
        }
    }
    acc / total as f64
}

/// Generalized eigenvalues of the pencil (empirical Gram, exact `L2` Gram)
/// of the raw periodized splines at a design, in ascending order. Values at
/// least one mean the discrete norm dominates the `L2` norm on the span.
pub fn spline_pencil_eigenvalues(m: usize, d: usize, design: &Design) -> Result<Vec<f64>> {
    let basis = crate::basis::spline_linear(m, d)?;
    if design.d() != d {
        return Err(Error::invalid("design dimension mismatch"));
    }
    let n_pts = design.n();
    let dim = basis.dim();
    let mut e = DMatrix::<f64>::zeros(n_pts, dim);
    for i in 0..n_pts {
        for j in 0..dim {
            e[(i, j)] = basis.evaluate(j, design.point(i))?.re;
        }
    }
    let g_emp = e.transpose() * &e / n_pts as f64;
    let g_l2 = spline_l2_gram(m, d)?;
    let chol = Cholesky::new(g_l2)
        .ok_or_else(|| Error::invalid("spline L2 Gram is not positive definite"))?;
    let l = chol.l();
    let linv = l
        .clone_owned()
        .try_inverse()
        .ok_or_else(|| Error::invalid("spline Gram factor is singular"))?;
    let reduced = &linv * g_emp * linv.transpose();
    let mut eig: Vec<f64> = reduced.symmetric_eigen().eigenvalues.iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{fourier_block, fourier_leading, piecewise_constant, scaling_system};
    use crate::basis::scaling::ScalingFilter;
    use crate::design::{equidistant_grid, uniform_random_design};
    use crate::funclass::FourierFunction;

    fn max_off_identity(g: &DMatrix<C64>) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..g.nrows() {
            for j in 0..g.ncols() {
                let expect = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                worst = worst.max((g[(i, j)] - expect).norm());
            }
        }
        worst
    }

    #[test]
    fn fourier_block_is_isometric_on_its_grid() {
        let geo = EmpiricalGeometry::new(
            fourier_block(5, 1).unwrap(),
            equidistant_grid(5, 1).unwrap(),
        )
        .unwrap();
        assert!(max_off_identity(geo.gram()) < 1e-14);
        let (a, b) = geo.isomorphism_constants();
        assert!((a - 1.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn indicators_are_isometric_on_the_grid() {
        let geo = EmpiricalGeometry::new(
            piecewise_constant(6).unwrap(),
            equidistant_grid(6, 1).unwrap(),
        )
        .unwrap();
        assert!(max_off_identity(geo.gram()) < 1e-15);
    }

    #[test]
    fn haar_translates_are_isometric_on_dyadic_grid() {
        let geo = EmpiricalGeometry::new(
            scaling_system(ScalingFilter::haar(), 3).unwrap(),
            equidistant_grid(8, 1).unwrap(),
        )
        .unwrap();
        assert!(max_off_identity(geo.gram()) < 1e-12);
    }

    #[test]
    fn empirical_inner_matches_hand_sum() {
        let u = [C64::new(1.0, 1.0), C64::new(0.0, 2.0)];
        let v = [C64::new(1.0, 0.0), C64::new(0.0, 1.0)];
        // (1/2) [ (1+i)(1) + (2i)(-i) ] = (1/2)(1 + i + 2) = 1.5 + 0.5i
        let p = empirical_inner(&u, &v);
        assert!((p - C64::new(1.5, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn grid_empirical_inner_detects_aliased_frequencies() {
        // on the grid of size 5, frequencies 2 and -3 are indistinguishable
        let design = equidistant_grid(5, 1).unwrap();
        let f2 = FourierFunction::new(1, [(vec![2], C64::new(1.0, 0.0))]).unwrap();
        let fm3 = FourierFunction::new(1, [(vec![-3], C64::new(1.0, 0.0))]).unwrap();
        let inner = empirical_inner(&f2.values_at(&design), &fm3.values_at(&design));
        assert!((inner - C64::new(1.0, 0.0)).norm() < 1e-14);
        // frequencies 1 and 2 stay orthogonal
        let f1 = FourierFunction::new(1, [(vec![1], C64::new(1.0, 0.0))]).unwrap();
        let inner2 = empirical_inner(&f2.values_at(&design), &f1.values_at(&design));
        assert!(inner2.norm() < 1e-14);
    }

    #[test]
    fn interpolation_reproduces_design_values() {
        let geo = EmpiricalGeometry::new(
            fourier_block(7, 1).unwrap(),
            equidistant_grid(7, 1).unwrap(),
        )
        .unwrap();
        let f = FourierFunction::new(
            1,
            [
                (vec![0], C64::new(0.3, 0.0)),
                (vec![2], C64::new(0.0, -1.2)),
                (vec![-3], C64::new(0.7, 0.1)),
            ],
        )
        .unwrap();
        let values = f.values_at(geo.design());
        let coeffs = geo.interpolate(&values).unwrap();
        let back = geo.synthesize(&coeffs);
        for (a, b) in back.iter().zip(&values) {
            assert!((a - b).norm() < 1e-9 * (1.0 + b.norm()));
        }
    }

    #[test]
    fn interpolation_folds_out_of_block_frequencies() {
        // exp(2 pi i 7 x) sampled on the grid of size 5 looks like frequency 2
        let geo = EmpiricalGeometry::new(
            fourier_block(5, 1).unwrap(),
            equidistant_grid(5, 1).unwrap(),
        )
        .unwrap();
        let f = FourierFunction::new(1, [(vec![7], C64::new(1.0, 0.0))]).unwrap();
        let coeffs = geo.interpolate(&f.values_at(geo.design())).unwrap();
        let freqs = geo.basis().freqs().unwrap().to_vec();
        for (j, l) in freqs.iter().enumerate() {
            let expect = if l == &vec![2] { 1.0 } else { 0.0 };
            assert!(
                (coeffs[j] - C64::new(expect, 0.0)).norm() < 1e-10,
                "l = {l:?}: {}",
                coeffs[j]
            );
        }
    }

    #[test]
    fn folding_matches_interpolation_for_random_functions() {
        let m = 7usize;
        let geo = EmpiricalGeometry::new(
            fourier_block(m, 1).unwrap(),
            equidistant_grid(m, 1).unwrap(),
        )
        .unwrap();
        for seed in 0..5u64 {
            let ball = crate::funclass::SobolevBall::new(1, 1.0, 1.0).unwrap();
            let f = crate::funclass::sample_from_sobolev_ball(&ball, 20, false, seed).unwrap();
            let via_design = geo.interpolate(&f.values_at(geo.design())).unwrap();
            let via_fold = fold_onto_block(&f, m).unwrap();
            for (a, b) in via_design.iter().zip(&via_fold) {
                assert!((a - b).norm() < 1e-8, "seed {seed}");
            }
        }
    }

    #[test]
    fn degenerate_design_rejected() {
        // both design points in the same cell: indicator columns collide
        let design = crate::design::perturbed_design(2, &[-0.2, -0.55]).unwrap();
        let geo = EmpiricalGeometry::new(piecewise_constant(2).unwrap(), design).unwrap();
        let err = geo.interpolate(&[C64::new(1.0, 0.0), C64::new(2.0, 0.0)]);
        assert!(matches!(err, Err(Error::NonIsomorphic(_))));
    }

    #[test]
    fn rectangular_geometry_reports_constants_but_not_interpolation() {
        let geo = EmpiricalGeometry::new(
            fourier_leading(1, 16).unwrap(),
            uniform_random_design(512, 1, 21).unwrap(),
        )
        .unwrap();
        let (a, b) = geo.isomorphism_constants();
        assert!(a > 0.5 && b < 2.0, "({a}, {b})");
        assert!(geo.interpolate(&vec![C64::new(0.0, 0.0); 512]).is_err());
    }

    #[test]
    fn hs_distance_closed_forms() {
        let d2 = DMatrix::from_diagonal(&DVector::from_vec(vec![
            C64::new(2.0, 0.0),
            C64::new(1.0, 0.0),
        ]));
        assert!((hs_distance_identity(&d2, false).unwrap() - 1.0).abs() < 1e-14);
        assert!((hs_distance_identity(&d2, true).unwrap() - 0.5).abs() < 1e-14);
        // uniform inflation 1 + a in k dimensions: sqrt(k) a / (1 + a) inverted
        let k = 5usize;
        let a = 0.3f64;
        let m = DMatrix::from_diagonal(&DVector::from_element(k, C64::new(1.0 + a, 0.0)));
        let expect = (k as f64).sqrt() * a / (1.0 + a);
        assert!((hs_distance_identity(&m, true).unwrap() - expect).abs() < 1e-14);
        let expect_direct = (k as f64).sqrt() * a;
        assert!((hs_distance_identity(&m, false).unwrap() - expect_direct).abs() < 1e-14);
    }

    #[test]
    fn hs_inverse_requires_positive_definite() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
        ]));
        assert!(matches!(
            hs_distance_identity(&m, true),
            Err(Error::OrderingViolation(_))
        ));
    }

    #[test]
    fn projection_extracts_block_coefficients() {
        let f = FourierFunction::new(
            1,
            [
                (vec![1], C64::new(0.5, 0.0)),
                (vec![4], C64::new(1.0, 0.0)), // outside the block for m = 5
            ],
        )
        .unwrap();
        let proj = l2_project_fourier(&f, 5).unwrap();
        // enumeration order [0, -1, 1, -2, 2]
        assert!((proj[2] - C64::new(0.5, 0.0)).norm() < 1e-15);
        let total: f64 = proj.iter().map(|c| c.norm_sqr()).sum();
        assert!((total - 0.25).abs() < 1e-15);
        assert!(l2_project_fourier(&f, 4).is_err());
    }

    #[test]
    fn quadrature_recovers_parseval() {
        let f = FourierFunction::new(
            1,
            [
                (vec![1], C64::new(0.6, 0.2)),
                (vec![-4], C64::new(0.0, -1.1)),
            ],
        )
        .unwrap();
        let norm = quadrature_l2_norm_sq(|x| f.evaluate(x), 1, 16);
        assert!((norm - f.l2_norm_sq()).abs() < 1e-12);
        // 2d check
        let g = FourierFunction::new(
            2,
            [(vec![1, -2], C64::new(0.5, 0.5)), (vec![0, 1], C64::new(1.0, 0.0))],
        )
        .unwrap();
        let norm2 = quadrature_l2_norm_sq(|x| g.evaluate(x), 2, 8);
        assert!((norm2 - g.l2_norm_sq()).abs() < 1e-12);
    }

    #[test]
    fn spline_pencil_closed_form_on_grid() {
        // eigenvalues of the pencil on the matched grid are the reciprocals
        // of 2/3 + cos(2 pi j / m)/3
        let design = equidistant_grid(4, 1).unwrap();
        let eig = spline_pencil_eigenvalues(4, 1, &design).unwrap();
        let mut expect: Vec<f64> = (0..4)
            .map(|j| {
                let c = (std::f64::consts::TAU * j as f64 / 4.0).cos();
                1.0 / (2.0 / 3.0 + c / 3.0)
            })
            .collect();
        expect.sort_by(f64::total_cmp);
        for (a, b) in eig.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
        assert!(eig.iter().all(|&l| l >= 1.0 - 1e-10));
    }

    #[test]
    fn spline_geometry_gram_eigenvalues_match_pencil() {
        // the orthonormalized spline geometry carries the pencil spectrum in
        // its ordinary Gram matrix
        let design = equidistant_grid(5, 1).unwrap();
        let geo = EmpiricalGeometry::new(crate::basis::spline_linear(5, 1).unwrap(), design.clone())
            .unwrap();
        let mut from_geo: Vec<f64> =
            geo.gram_eigen().eigenvalues.iter().copied().collect();
        from_geo.sort_by(f64::total_cmp);
        let from_pencil = spline_pencil_eigenvalues(5, 1, &design).unwrap();
        for (a, b) in from_geo.iter().zip(&from_pencil) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let err = EmpiricalGeometry::new(
            fourier_block(5, 2).unwrap(),
            equidistant_grid(5, 1).unwrap(),
        );
        assert!(err.is_err());
    }

    #[test]
    fn more_basis_functions_than_points_rejected() {
        let err = EmpiricalGeometry::new(
            fourier_leading(1, 8).unwrap(),
            uniform_random_design(4, 1, 0).unwrap(),
        );
        assert!(err.is_err());
    }
}
