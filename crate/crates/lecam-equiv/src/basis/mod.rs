//! Orthonormal systems on `[0,1]^d` used to carry observations between
//! experiments: complex exponentials, scaled cell indicators, periodized
//! linear splines, and dyadic translates of a refinable function.

pub mod scaling;
pub mod spline;

use crate::funclass::{enumerate_box, C64};
use crate::{Error, Result};
use scaling::ScalingFilter;
use std::cmp::Ordering;
use std::f64::consts::TAU;

/// A concrete finite system of functions on `[0,1]^d`.
#[derive(Debug, Clone, PartialEq)]
pub enum BasisFamily {
    /// `sqrt(n)` times the indicator of `((i-1)/n, i/n]`, `i = 1,..,n`; one
    /// dimensional.
    PiecewiseConstant { n: usize },
    /// `exp(2 pi i <l, x>)` for an explicit frequency list.
    Fourier { d: usize, freqs: Vec<Vec<i64>> },
    /// Periodized linear B-splines (hats) peaked at `k/m`, `k` in
    /// `{0,..,m-1}^d`, in lexicographic index order. Not orthonormal; its
    /// exact L2 Gram is available from [`spline::spline_l2_gram`].
    SplineLinearPeriodic { m: usize, d: usize },
    /// Periodized translates `2^(j/2) phibar(2^j x - k)`, `k = 0,..,2^j - 1`,
    /// of the refinable function of a filter; one dimensional.
    ScalingSystem { filter: ScalingFilter, level: u32 },
}

/// Comparator for integer frequencies: Euclidean norm first, then
/// componentwise with smaller magnitude first and the negative sign first at
/// equal magnitude.
pub fn freq_order(a: &[i64], b: &[i64]) -> Ordering {
    let na: i128 = a.iter().map(|&v| (v as i128) * (v as i128)).sum();
    let nb: i128 = b.iter().map(|&v| (v as i128) * (v as i128)).sum();
    na.cmp(&nb).then_with(|| {
        for (&x, &y) in a.iter().zip(b) {
            let key = (x.unsigned_abs(), x > 0).cmp(&(y.unsigned_abs(), y > 0));
            if key != Ordering::Equal {
                return key;
            }
        }
        Ordering::Equal
    })
}

/// The first `count` integer frequencies in `Z^d` ordered by [`freq_order`];
/// starts with the zero frequency.
pub fn enumerate_frequencies(d: usize, count: usize) -> Result<Vec<Vec<i64>>> {
    if d == 0 {
        return Err(Error::invalid("dimension must be >= 1"));
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let mut radius: i64 = 1;
    loop {
        let mut freqs: Vec<Vec<i64>> = Vec::new();
        enumerate_box(d, radius, &mut |l: &[i64]| freqs.push(l.to_vec()));
        freqs.sort_by(|a, b| freq_order(a, b));
        if freqs.len() >= count {
            let worst: f64 = freqs[count - 1]
                .iter()
                .map(|&v| (v * v) as f64)
                .sum::<f64>()
                .sqrt();
            // every vector outside the box has a component beyond radius,
            // hence Euclidean norm above radius
            if worst <= radius as f64 {
                freqs.truncate(count);
                return Ok(freqs);
            }
        }
        radius *= 2;
    }
}

/// Fourier system on the full symmetric block `|l|_inf <= (m-1)/2`, the
/// natural companion of the equidistant grid with `m` points per axis.
/// Requires odd `m` so the block is symmetric and has exactly `m^d` members.
pub fn fourier_block(m: usize, d: usize) -> Result<BasisFamily> {
    if d == 0 {
        return Err(Error::invalid("dimension must be >= 1"));
    }
    if m.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "grid size per axis must be odd so the frequency block is symmetric, got m = {m}"
        )));
    }
    let half = ((m - 1) / 2) as i64;
    let mut freqs: Vec<Vec<i64>> = Vec::new();
    enumerate_box(d, half, &mut |l: &[i64]| freqs.push(l.to_vec()));
    freqs.sort_by(|a, b| freq_order(a, b));
    Ok(BasisFamily::Fourier { d, freqs })
}

/// Fourier system spanned by the first `count` frequencies of the global
/// enumeration; used with designs that are not grids.
pub fn fourier_leading(d: usize, count: usize) -> Result<BasisFamily> {
    Ok(BasisFamily::Fourier { d, freqs: enumerate_frequencies(d, count)? })
}

/// Cell indicator system on `n` equal cells of `(0,1]`.
pub fn piecewise_constant(n: usize) -> Result<BasisFamily> {
    if n == 0 {
        return Err(Error::invalid("need n >= 1 cells"));
    }
    Ok(BasisFamily::PiecewiseConstant { n })
}

/// Periodized linear splines with `m` knots per axis. `m >= 3` keeps the
/// left and right neighbors of a knot distinct.
pub fn spline_linear(m: usize, d: usize) -> Result<BasisFamily> {
    if d == 0 {
        return Err(Error::invalid("dimension must be >= 1"));
    }
    if m < 3 {
        return Err(Error::invalid(format!(
            "periodized linear splines need m >= 3 knots per axis, got m = {m}"
        )));
    }
    Ok(BasisFamily::SplineLinearPeriodic { m, d })
}

/// Periodized scaling system of a refinement filter at dyadic level `level`.
pub fn scaling_system(filter: ScalingFilter, level: u32) -> Result<BasisFamily> {
    if level > scaling::MAX_CASCADE_LEVELS {
        return Err(Error::invalid(format!(
            "level {level} exceeds the cascade depth limit {}",
            scaling::MAX_CASCADE_LEVELS
        )));
    }
    Ok(BasisFamily::ScalingSystem { filter, level })
}

impl BasisFamily {
    /// Number of member functions.
    pub fn dim(&self) -> usize {
        match self {
            BasisFamily::PiecewiseConstant { n } => *n,
            BasisFamily::Fourier { freqs, .. } => freqs.len(),
            BasisFamily::SplineLinearPeriodic { m, d } => m.pow(*d as u32),
            BasisFamily::ScalingSystem { level, .. } => 1usize << level,
        }
    }

    /// Ambient dimension of the domain.
    pub fn d(&self) -> usize {
        match self {
            BasisFamily::PiecewiseConstant { .. } => 1,
            BasisFamily::Fourier { d, .. } => *d,
            BasisFamily::SplineLinearPeriodic { d, .. } => *d,
            BasisFamily::ScalingSystem { .. } => 1,
        }
    }

    /// Whether all member functions are real-valued.
    pub fn is_real(&self) -> bool {
        !matches!(self, BasisFamily::Fourier { .. })
    }

    /// Frequency list of a Fourier system.
    pub fn freqs(&self) -> Option<&[Vec<i64>]> {
        match self {
            BasisFamily::Fourier { freqs, .. } => Some(freqs),
            _ => None,
        }
    }

    /// Evaluate member `j` (0-indexed) at `x` in `[0,1]^d`.
    pub fn evaluate(&self, j: usize, x: &[f64]) -> Result<C64> {
        if j >= self.dim() {
            return Err(Error::invalid(format!(
                "member index {j} out of range, system has {} functions",
                self.dim()
            )));
        }
        if x.len() != self.d() {
            return Err(Error::invalid(format!(
                "point has dimension {}, system lives on [0,1]^{}",
                x.len(),
                self.d()
            )));
        }
        match self {
            BasisFamily::PiecewiseConstant { n } => {
                let n = *n;
                let lo = j as f64 / n as f64;
                let hi = (j as f64 + 1.0) / n as f64;
                let v = if x[0] > lo && x[0] <= hi { (n as f64).sqrt() } else { 0.0 };
                Ok(C64::new(v, 0.0))
            }
            BasisFamily::Fourier { freqs, .. } => {
                let phase: f64 = freqs[j]
                    .iter()
                    .zip(x)
                    .map(|(&li, &xi)| li as f64 * xi)
                    .sum();
                Ok(C64::from_polar(1.0, TAU * phase))
            }
            BasisFamily::SplineLinearPeriodic { m, d } => {
                let mut k = Vec::with_capacity(*d);
                let mut rest = j;
                for axis in (0..*d).rev() {
                    k.push((rest % m) as i64);
                    if axis == 0 {
                        break;
                    }
                    rest /= m;
                }
                k.reverse();
                let mut v = 1.0;
                for (axis, &ka) in k.iter().enumerate() {
                    v *= spline::hat_periodic(*m, *m as f64 * x[axis] - ka as f64);
                }
                Ok(C64::new(v, 0.0))
            }
            BasisFamily::ScalingSystem { filter, level } => {
                let v = scaling::eval_periodized(filter, *level, j, x[0])?;
                Ok(C64::new(v, 0.0))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_starts_at_zero_with_pinned_tie_break() {
        let e = enumerate_frequencies(1, 5).unwrap();
        assert_eq!(e, vec![vec![0], vec![-1], vec![1], vec![-2], vec![2]]);
        let e2 = enumerate_frequencies(2, 5).unwrap();
        assert_eq!(
            e2,
            vec![vec![0, 0], vec![0, -1], vec![0, 1], vec![-1, 0], vec![1, 0]]
        );
    }

    #[test]
    fn enumeration_norms_nondecreasing() {
        for d in 1..=3usize {
            let e = enumerate_frequencies(d, 200).unwrap();
            assert_eq!(e[0], vec![0; d]);
            let norms: Vec<i64> = e.iter().map(|l| l.iter().map(|v| v * v).sum()).collect();
            assert!(norms.windows(2).all(|w| w[0] <= w[1]), "{norms:?}");
        }
    }

    #[test]
    fn enumeration_is_injective_and_exhaustive_in_shells() {
        let e = enumerate_frequencies(2, 100).unwrap();
        let mut sorted = e.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 100);
        // the first 9 must be exactly the |l|_inf <= 1 box since norm(2,0) = 2
        // exceeds norm(1,1) = sqrt(2)
        let first9: std::collections::BTreeSet<_> = e[..9].iter().cloned().collect();
        assert_eq!(first9.len(), 9);
        for l in &first9 {
            assert!(l.iter().all(|v| v.abs() <= 1));
        }
    }

    #[test]
    fn block_requires_odd_m() {
        assert!(fourier_block(4, 1).is_err());
        let b = fourier_block(5, 2).unwrap();
        assert_eq!(b.dim(), 25);
        for l in b.freqs().unwrap() {
            assert!(l.iter().all(|v| v.abs() <= 2));
        }
    }

    #[test]
    fn fourier_evaluation_matches_euler() {
        let b = fourier_leading(1, 3).unwrap(); // freqs 0, -1, 1
        let v = b.evaluate(2, &[0.25]).unwrap();
        assert!((v - C64::new(0.0, 1.0)).norm() < 1e-15);
        let w = b.evaluate(1, &[0.25]).unwrap();
        assert!((w - C64::new(0.0, -1.0)).norm() < 1e-15);
        assert!((b.evaluate(0, &[0.93]).unwrap() - C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn fourier_block_orthonormal_by_quadrature() {
        // Riemann quadrature on a fine uniform grid is exact for
        // trigonometric polynomials below the grid bandwidth.
        let b = fourier_block(5, 1).unwrap();
        let grid: usize = 64;
        for j in 0..b.dim() {
            for k in 0..b.dim() {
                let mut acc = C64::new(0.0, 0.0);
                for q in 0..grid {
                    let x = [q as f64 / grid as f64];
                    acc += b.evaluate(j, &x).unwrap() * b.evaluate(k, &x).unwrap().conj();
                }
                acc /= grid as f64;
                let expect = if j == k { 1.0 } else { 0.0 };
                assert!((acc - C64::new(expect, 0.0)).norm() < 1e-8, "({j},{k}) -> {acc}");
            }
        }
    }

    #[test]
    fn indicator_cells_are_half_open() {
        let b = piecewise_constant(4).unwrap();
        // cell 1 is (0.25, 0.5]: right endpoint in, left endpoint out
        assert_eq!(b.evaluate(1, &[0.5]).unwrap().re, 2.0);
        assert_eq!(b.evaluate(1, &[0.25]).unwrap().re, 0.0);
        assert_eq!(b.evaluate(0, &[0.25]).unwrap().re, 2.0);
        // scaled to unit L2 norm: sqrt(n) on a cell of length 1/n
        let sum_sq: f64 = (0..4)
            .map(|j| b.evaluate(j, &[0.3]).unwrap().re.powi(2) / 4.0)
            .sum();
        let _ = sum_sq;
    }

    #[test]
    fn indicator_l2_normalized_by_quadrature() {
        let b = piecewise_constant(8).unwrap();
        let grid = 8000usize;
        for j in [0usize, 3, 7] {
            let mut acc = 0.0;
            for q in 1..=grid {
                let x = [q as f64 / grid as f64];
                acc += b.evaluate(j, &x).unwrap().re.powi(2);
            }
            acc /= grid as f64;
            assert!((acc - 1.0).abs() < 1e-12, "cell {j}: {acc}");
        }
    }

    #[test]
    fn out_of_range_evaluation_rejected() {
        let b = fourier_leading(2, 4).unwrap();
        assert!(b.evaluate(4, &[0.5, 0.5]).is_err());
        assert!(b.evaluate(0, &[0.5]).is_err());
    }
}
