//! Periodized linear B-splines and their exact L2 Gram matrix.

use crate::{Error, Result};
use nalgebra::DMatrix;

/// Periodized hat function: the triangle `max(0, 1 - |t|)` summed over
/// shifts by multiples of `m`. The argument is `m x - k` for the spline
/// peaked at `k/m`.
pub fn hat_periodic(m: usize, t: f64) -> f64 {
    let u = t.rem_euclid(m as f64);
    let mut v = 0.0;
    if u <= 1.0 {
        v += 1.0 - u;
    }
    let w = m as f64 - u;
    if w <= 1.0 {
        v += 1.0 - w;
    }
    v
}

/// Exact L2 Gram of the periodized hats on `[0,1]^d` with `m` knots per
/// axis, indices `k` in `{0,..,m-1}^d` lexicographic. Entry for `(k, l)` is
/// `4^e / (6^d n)` where `e` counts axes with `k_r = l_r`, provided every
/// axis has periodic distance at most one; zero otherwise. Row sums are
/// `1/n` because the hats sum to one pointwise.
pub fn spline_l2_gram(m: usize, d: usize) -> Result<DMatrix<f64>> {
    if d == 0 {
        return Err(Error::invalid("dimension must be >= 1"));
    }
    if m < 3 {
        return Err(Error::invalid(format!(
            "periodized linear splines need m >= 3 knots per axis, got m = {m}"
        )));
    }
    let n = m
        .checked_pow(d as u32)
        .ok_or_else(|| Error::invalid(format!("m^d overflows: m = {m}, d = {d}")))?;
    let scale = 1.0 / (6f64.powi(d as i32) * n as f64);
    let mut g = DMatrix::zeros(n, n);
    let idx = |mut flat: usize| -> Vec<usize> {
        let mut k = vec![0usize; d];
        for axis in (0..d).rev() {
            k[axis] = flat % m;
            flat /= m;
        }
        k
    };
    for row in 0..n {
        let k = idx(row);
        for col in 0..n {
            let l = idx(col);
            let mut equal_axes = 0u32;
            let mut adjacent = true;
            for axis in 0..d {
                let fwd = (k[axis] + m - l[axis]) % m;
                let dist = fwd.min(m - fwd);
                match dist {
                    0 => equal_axes += 1,
                    1 => {}
                    _ => {
                        adjacent = false;
                        break;
                    }
                }
            }
            if adjacent {
                g[(row, col)] = 4f64.powi(equal_axes as i32) * scale;
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hat_shape() {
        assert_eq!(hat_periodic(4, 0.0), 1.0);
        assert_eq!(hat_periodic(4, 0.5), 0.5);
        assert_eq!(hat_periodic(4, 1.0), 0.0);
        assert_eq!(hat_periodic(4, -0.25), 0.75);
        // periodic wrap: argument 3.75 sits 0.25 below a full period, so
        // the hat value is 1 - 0.25
        assert_eq!(hat_periodic(4, 3.75), 0.75);
    }

    #[test]
    fn hats_partition_unity() {
        for m in [3usize, 5, 8] {
            for q in 0..40 {
                let x = q as f64 / 40.0;
                let total: f64 = (0..m).map(|k| hat_periodic(m, m as f64 * x - k as f64)).sum();
                assert!((total - 1.0).abs() < 1e-12, "m={m}, x={x}: {total}");
            }
        }
    }

    #[test]
    fn gram_1d_entries() {
        // oracle: direct integrals of products of unit hats of width 2/m.
        // diagonal: 2/(3m); adjacent: 1/(6m); matches 4/(6n) and 1/(6n).
        let g = spline_l2_gram(4, 1).unwrap();
        for i in 0..4 {
            assert!((g[(i, i)] - 1.0 / 6.0).abs() < 1e-15);
            assert!((g[(i, (i + 1) % 4)] - 1.0 / 24.0).abs() < 1e-15);
            assert!((g[(i, (i + 2) % 4)] - 0.0).abs() < 1e-15);
        }
    }

    #[test]
    fn gram_matches_quadrature() {
        // Riemann quadrature over a fine grid as an independent oracle
        let m = 5usize;
        let g = spline_l2_gram(m, 1).unwrap();
        let grid = 20000usize;
        for k in 0..m {
            for l in 0..m {
                let mut acc = 0.0;
                for q in 0..grid {
                    let x = q as f64 / grid as f64;
                    acc += hat_periodic(m, m as f64 * x - k as f64)
                        * hat_periodic(m, m as f64 * x - l as f64);
                }
                acc /= grid as f64;
                assert!((acc - g[(k, l)]).abs() < 1e-6, "({k},{l}): {acc} vs {}", g[(k, l)]);
            }
        }
    }

    #[test]
    fn gram_row_sums() {
        for (m, d) in [(3usize, 1usize), (4, 1), (8, 1), (3, 2), (4, 2), (3, 3)] {
            let g = spline_l2_gram(m, d).unwrap();
            let n = m.pow(d as u32);
            for row in 0..n {
                let sum: f64 = (0..n).map(|c| g[(row, c)]).sum();
                assert!((sum - 1.0 / n as f64).abs() < 1e-15, "m={m}, d={d}, row={row}");
            }
        }
    }

    #[test]
    fn gram_2d_corner_entry() {
        // oracle: tensorization, equal on both axes gives (2/3m)^2
        let g = spline_l2_gram(4, 2).unwrap();
        assert!((g[(0, 0)] - 16.0 / (36.0 * 16.0)).abs() < 1e-15);
        // equal on one axis, adjacent on the other: 4 / (36 * 16)
        assert!((g[(0, 1)] - 4.0 / (36.0 * 16.0)).abs() < 1e-15);
        // adjacent on both axes: 1 / (36 * 16)
        assert!((g[(0, 5)] - 1.0 / (36.0 * 16.0)).abs() < 1e-15);
    }

    #[test]
    fn small_m_rejected() {
        assert!(spline_l2_gram(2, 1).is_err());
        assert!(spline_l2_gram(3, 1).is_ok());
    }
}
