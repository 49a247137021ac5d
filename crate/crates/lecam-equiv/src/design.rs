//! Design points: where the regression function is observed.
//!
//! A design is a finite list of points in `[0,1]^d`. Three constructions are
//! provided: the equidistant grid `(k/m)` for `k` in `{1,..,m}^d`, a
//! perturbed one-dimensional grid `x_i = i/n + dev_i`, and independent
//! uniform draws. The grid uses the right endpoint of each cell, so `1` is a
//! design point and `0` is not.

use crate::io::{fmt_f64, read_csv, write_csv};
use crate::rng::master_rng;
use crate::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// How a design was constructed. Provenance metadata; the point list is
/// authoritative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum DesignKind {
    /// Product grid `(k/m)`, `k` in `{1,..,m}^d`.
    EquidistantGrid { m: usize },
    /// Explicitly supplied points (a perturbed grid or a reloaded file).
    Perturbed,
    /// Independent uniforms keyed by a seed.
    UniformRandom { seed: u64 },
}

/// A finite design in `[0,1]^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Design {
    d: usize,
    points: Vec<Vec<f64>>,
    kind: DesignKind,
}

impl Design {
    /// Number of design points.
    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Ambient dimension.
    pub fn d(&self) -> usize {
        self.d
    }

    /// All points, one row per point.
    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    /// The `i`-th point (0-indexed).
    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn kind(&self) -> &DesignKind {
        &self.kind
    }

    /// First coordinate of every point; convenient for `d = 1`.
    pub fn coords_1d(&self) -> Vec<f64> {
        self.points.iter().map(|p| p[0]).collect()
    }

    /// Sum of `|x_i - i/n|^(2 alpha)` over the design, measuring how far a
    /// one-dimensional design strays from the equidistant grid.
    pub fn perturbation_sum(&self, alpha: f64) -> Result<f64> {
        if self.d != 1 {
            return Err(Error::invalid(format!(
                "perturbation_sum is defined for d = 1, got d = {}",
                self.d
            )));
        }
        if !(alpha > 0.0) {
            return Err(Error::invalid(format!("alpha must be positive, got {alpha}")));
        }
        let n = self.n() as f64;
        Ok(self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| (p[0] - (i as f64 + 1.0) / n).abs().powf(2.0 * alpha))
            .sum())
    }

    /// Kolmogorov-Smirnov distance to the uniform law, per coordinate.
    pub fn ks_uniform(&self) -> Vec<f64> {
        (0..self.d)
            .map(|c| {
                let mut xs: Vec<f64> = self.points.iter().map(|p| p[c]).collect();
                xs.sort_by(f64::total_cmp);
                let n = xs.len() as f64;
                xs.iter()
                    .enumerate()
                    .map(|(i, &x)| {
                        let hi = (i as f64 + 1.0) / n - x;
                        let lo = x - i as f64 / n;
                        hi.max(lo)
                    })
                    .fold(0.0, f64::max)
            })
            .collect()
    }

    /// Write one point per row with header `x1,..,xd`, 17 significant
    /// digits per coordinate.
    pub fn to_csv(&self, path: &Path) -> Result<()> {
        let header: Vec<String> = (1..=self.d).map(|c| format!("x{c}")).collect();
        let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
        let rows: Vec<Vec<String>> = self
            .points
            .iter()
            .map(|p| p.iter().map(|&x| fmt_f64(x)).collect())
            .collect();
        write_csv(path, &header_refs, &rows)?;
        Ok(())
    }

    /// Reload a design written by [`Design::to_csv`]. Coordinates are
    /// restored bit-exactly; the kind is recorded as [`DesignKind::Perturbed`]
    /// since only the explicit point list survives serialization.
    pub fn from_csv(path: &Path) -> Result<Design> {
        let (header, rows) = read_csv(path)?;
        let d = header.len();
        if d == 0 || !header.iter().enumerate().all(|(c, h)| h == &format!("x{}", c + 1)) {
            return Err(Error::invalid(format!(
                "design CSV header must be x1,..,xd, got {header:?}"
            )));
        }
        let mut points = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::invalid(format!(
                    "design CSV row {i} has {} cells, expected {d}",
                    row.len()
                )));
            }
            let mut p = Vec::with_capacity(d);
            for cell in row {
                let x: f64 = cell
                    .parse()
                    .map_err(|e| Error::invalid(format!("bad coordinate {cell:?}: {e}")))?;
                p.push(x);
            }
            points.push(p);
        }
        validate_range(&points)?;
        Ok(Design { d, points, kind: DesignKind::Perturbed })
    }
}

fn validate_range(points: &[Vec<f64>]) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        for &x in p {
            if !(0.0..=1.0).contains(&x) || !x.is_finite() {
                return Err(Error::invalid(format!(
                    "design point {i} has coordinate {x} outside [0,1]"
                )));
            }
        }
    }
    Ok(())
}

/// The equidistant product grid `(k/m)` for `k` in `{1,..,m}^d`, listed in
/// lexicographic order of `k`. Contains `m^d` points; includes `1`, not `0`.
pub fn equidistant_grid(m: usize, d: usize) -> Result<Design> {
    if m == 0 || d == 0 {
        return Err(Error::invalid(format!(
            "grid needs m >= 1 and d >= 1, got m = {m}, d = {d}"
        )));
    }
    let n = (m as u128).checked_pow(d as u32).ok_or_else(|| {
        Error::invalid(format!("grid size m^d overflows: m = {m}, d = {d}"))
    })?;
    if n > (1usize << 31) as u128 {
        return Err(Error::invalid(format!(
            "grid size m^d = {n} exceeds the supported maximum 2^31"
        )));
    }
    let n = n as usize;
    let mf = m as f64;
    let mut points = Vec::with_capacity(n);
    let mut k = vec![1usize; d];
    loop {
        points.push(k.iter().map(|&ki| ki as f64 / mf).collect());
        // lexicographic successor: last axis fastest
        let mut axis = d;
        while axis > 0 {
            axis -= 1;
            if k[axis] < m {
                k[axis] += 1;
                for kj in k.iter_mut().skip(axis + 1) {
                    *kj = 1;
                }
                break;
            }
            if axis == 0 {
                return Ok(Design { d, points, kind: DesignKind::EquidistantGrid { m } });
            }
        }
    }
}

/// The one-dimensional perturbed grid `x_i = i/n + deviations[i-1]`,
/// `i = 1,..,n`. Points must stay in `[0,1]` and strictly increase.
pub fn perturbed_design(n: usize, deviations: &[f64]) -> Result<Design> {
    if n == 0 {
        return Err(Error::invalid("perturbed design needs n >= 1"));
    }
    if deviations.len() != n {
        return Err(Error::invalid(format!(
            "expected {n} deviations, got {}",
            deviations.len()
        )));
    }
    let nf = n as f64;
    let points: Vec<Vec<f64>> = deviations
        .iter()
        .enumerate()
        .map(|(i, &dev)| vec![(i as f64 + 1.0) / nf + dev])
        .collect();
    validate_range(&points)?;
    for i in 1..n {
        if points[i][0] <= points[i - 1][0] {
            return Err(Error::invalid(format!(
                "design points must strictly increase: x_{} = {} >= x_{} = {}",
                i,
                points[i - 1][0],
                i + 1,
                points[i][0]
            )));
        }
    }
    Ok(Design { d: 1, points, kind: DesignKind::Perturbed })
}

/// `n` independent uniform draws in `[0,1)^d`, reproducible from the seed.
pub fn uniform_random_design(n: usize, d: usize, seed: u64) -> Result<Design> {
    if n == 0 || d == 0 {
        return Err(Error::invalid(format!(
            "random design needs n >= 1 and d >= 1, got n = {n}, d = {d}"
        )));
    }
    let mut rng = master_rng(seed);
    let points = (0..n)
        .map(|_| (0..d).map(|_| rng.random::<f64>()).collect())
        .collect();
    Ok(Design { d, points, kind: DesignKind::UniformRandom { seed } })
}

/// A design from explicit coordinates in `[0,1]^d`, tagged as perturbed.
pub fn design_from_points(d: usize, points: Vec<Vec<f64>>) -> Result<Design> {
    if d == 0 || points.is_empty() {
        return Err(Error::invalid("need d >= 1 and at least one point"));
    }
    for (i, p) in points.iter().enumerate() {
        if p.len() != d {
            return Err(Error::invalid(format!(
                "point {i} has {} coordinates, expected {d}",
                p.len()
            )));
        }
        if p.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
            return Err(Error::invalid(format!(
                "point {i} lies outside the unit cube: {p:?}"
            )));
        }
    }
    Ok(Design { d, points, kind: DesignKind::Perturbed })
}

/// Shift every coordinate by `theta` modulo one. Periodic function systems
/// evaluated at the shifted design pick up a pure phase per member, which
/// the distributional symmetry checks exploit.
pub fn shift_mod_one(design: &Design, theta: f64) -> Result<Design> {
    let points = design
        .points()
        .iter()
        .map(|p| {
            p.iter()
                .map(|&x| {
                    let y = (x + theta).rem_euclid(1.0);
                    if y == 0.0 {
                        1.0
                    } else {
                        y
                    }
                })
                .collect()
        })
        .collect();
    design_from_points(design.d(), points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_1d_points_and_order() {
        let g = equidistant_grid(4, 1).unwrap();
        assert_eq!(g.n(), 4);
        let xs = g.coords_1d();
        assert_eq!(xs, vec![0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn grid_2d_lexicographic() {
        let g = equidistant_grid(2, 2).unwrap();
        assert_eq!(
            g.points(),
            &[
                vec![0.5, 0.5],
                vec![0.5, 1.0],
                vec![1.0, 0.5],
                vec![1.0, 1.0]
            ]
        );
    }

    #[test]
    fn grid_size_is_m_to_the_d() {
        let g = equidistant_grid(10, 3).unwrap();
        assert_eq!(g.n(), 1000);
        assert_eq!(g.d(), 3);
        // every coordinate lies in (0,1] and is a multiple of 1/10
        for p in g.points() {
            for &x in p {
                assert!(x > 0.0 && x <= 1.0);
                assert_eq!((x * 10.0).round() / 10.0, x);
            }
        }
    }

    #[test]
    fn grid_overflow_is_rejected() {
        assert!(matches!(equidistant_grid(1_000_000, 4), Err(Error::Invalid(_))));
        assert!(matches!(equidistant_grid(0, 2), Err(Error::Invalid(_))));
    }

    #[test]
    fn perturbed_points_match_arithmetic() {
        let dev = [-0.05, 0.02, 0.0, -0.01];
        let g = perturbed_design(4, &dev).unwrap();
        let xs = g.coords_1d();
        // oracle: i/n + dev computed independently
        let expect = [0.25 - 0.05, 0.5 + 0.02, 0.75, 1.0 - 0.01];
        for (a, b) in xs.iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-15);
        }
        // sum of |dev|^(2*alpha) at alpha = 1/2 and alpha = 1
        let s_half = g.perturbation_sum(0.5).unwrap();
        let oracle_half: f64 = dev.iter().map(|d| d.abs()).sum();
        assert!((s_half - oracle_half).abs() < 1e-15);
        let s_one = g.perturbation_sum(1.0).unwrap();
        let oracle_one: f64 = dev.iter().map(|d| d * d).sum();
        assert!((s_one - oracle_one).abs() < 1e-16);
    }

    #[test]
    fn equidistant_has_zero_perturbation_sum() {
        let g = perturbed_design(8, &[0.0; 8]).unwrap();
        assert_eq!(g.perturbation_sum(0.7).unwrap(), 0.0);
    }

    #[test]
    fn non_monotone_perturbation_rejected() {
        // swapping order of adjacent points: x_1 = 0.45, x_2 = 0.35
        let err = perturbed_design(2, &[-0.05, -0.65]);
        assert!(err.is_err());
        let err = perturbed_design(2, &[0.3, -0.3]).unwrap_err();
        assert!(err.to_string().contains("strictly increase"), "{err}");
    }

    #[test]
    fn out_of_range_perturbation_rejected() {
        assert!(perturbed_design(2, &[0.0, 0.5]).is_err());
        assert!(perturbed_design(2, &[-0.6, 0.0]).is_err());
    }

    #[test]
    fn random_design_reproducible_and_seed_sensitive() {
        let a = uniform_random_design(100, 2, 9).unwrap();
        let b = uniform_random_design(100, 2, 9).unwrap();
        let c = uniform_random_design(100, 2, 10).unwrap();
        assert_eq!(a.points(), b.points());
        assert_ne!(a.points(), c.points());
        assert!(matches!(a.kind(), DesignKind::UniformRandom { seed: 9 }));
    }

    #[test]
    fn random_design_passes_ks_at_one_percent() {
        // asymptotic 1% critical value for the KS statistic
        let n = 100_000;
        let crit = 1.6276 / (n as f64).sqrt();
        let g = uniform_random_design(n, 2, 1).unwrap();
        for (c, stat) in g.ks_uniform().iter().enumerate() {
            assert!(*stat < crit, "coordinate {c}: KS {stat} >= {crit}");
        }
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("design.csv");
        let g = uniform_random_design(257, 3, 4).unwrap();
        g.to_csv(&path).unwrap();
        let back = Design::from_csv(&path).unwrap();
        assert_eq!(back.d(), 3);
        assert_eq!(back.n(), 257);
        for (p, q) in g.points().iter().zip(back.points()) {
            for (a, b) in p.iter().zip(q) {
                assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }

    #[test]
    fn csv_header_is_validated() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "a,b\n0.5,0.5\n").unwrap();
        assert!(Design::from_csv(&path).is_err());
    }

    #[test]
    fn perturbation_sum_needs_d1() {
        let g = equidistant_grid(3, 2).unwrap();
        assert!(g.perturbation_sum(1.0).is_err());
    }
}
