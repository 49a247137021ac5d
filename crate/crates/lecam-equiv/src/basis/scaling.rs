//! Refinable scaling functions given by a finite filter: values at
//! integers, dyadic refinement (cascade), the Toeplitz Gram of integer
//! translates, and the interpolation constant controlling invertibility of
//! sampling on the dyadic grid.

use crate::{Error, Result};
use nalgebra::DMatrix;

/// Hard cap on dyadic refinement depth.
pub const MAX_CASCADE_LEVELS: u32 = 12;

/// A refinement filter `h` with `phibar(x) = sqrt(2) sum_k h_k phibar(2x - k)`
/// and `sum_k h_k = sqrt(2)`, so `phibar` integrates to one and is supported
/// on `[0, len - 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFilter {
    name: String,
    taps: Vec<f64>,
}

impl ScalingFilter {
    /// Validate and wrap a custom filter.
    pub fn custom(name: &str, taps: Vec<f64>) -> Result<Self> {
        if taps.len() < 2 {
            return Err(Error::invalid(format!(
                "filter needs at least two taps, got {}",
                taps.len()
            )));
        }
        let sum: f64 = taps.iter().sum();
        if (sum - std::f64::consts::SQRT_2).abs() > 1e-12 {
            return Err(Error::invalid(format!(
                "filter taps must sum to sqrt(2) = 1.4142135623730951, got {sum:.17}"
            )));
        }
        Ok(ScalingFilter { name: name.to_owned(), taps })
    }

    /// Two-tap averaging filter; the scaling function is the indicator of
    /// `[0,1)`.
    pub fn haar() -> Self {
        let h = 0.5f64.sqrt();
        ScalingFilter { name: "haar".into(), taps: vec![h, h] }
    }

    /// Four-tap orthonormal filter with two vanishing moments.
    pub fn db2() -> Self {
        let s3 = 3f64.sqrt();
        let scale = 0.25 / 2f64.sqrt();
        ScalingFilter {
            name: "db2".into(),
            taps: vec![
                (1.0 + s3) * scale,
                (3.0 + s3) * scale,
                (3.0 - s3) * scale,
                (1.0 - s3) * scale,
            ],
        }
    }

    /// Six-tap orthonormal filter with three vanishing moments.
    pub fn db3() -> Self {
        ScalingFilter {
            name: "db3".into(),
            taps: vec![
                0.332_670_552_950_956_9,
                0.806_891_509_313_338_8,
                0.459_877_502_119_331_3,
                -0.13501102001039084,
                -0.08544127388224149,
                0.03522629188210562,
            ],
        }
    }

    /// Look up a built-in filter by name.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "haar" => Ok(Self::haar()),
            "db2" => Ok(Self::db2()),
            "db3" => Ok(Self::db3()),
            other => Err(Error::invalid(format!(
                "unknown filter {other:?}; built-ins are haar, db2, db3"
            ))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    /// Support length: `phibar` lives on `[0, support_len - 1]`.
    pub fn support_len(&self) -> usize {
        self.taps.len()
    }
}

/// Values of the scaling function at the integers `0,..,len-1`, found as the
/// eigenvector at eigenvalue one of the integer refinement matrix,
/// normalized to sum to one. The right endpoint value is zero by the
/// half-open support convention. Fails when eigenvalue one is not simple.
pub fn values_at_integers(filter: &ScalingFilter) -> Result<Vec<f64>> {
    let nn = filter.support_len();
    let taps = filter.taps();
    let k = nn - 1; // unknowns at integers 0,..,nn-2
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut a = DMatrix::<f64>::zeros(k, k);
    for j in 0..k {
        for i in 0..k {
            let idx = 2 * j as i64 - i as i64;
            if (0..nn as i64).contains(&idx) {
                a[(j, i)] = sqrt2 * taps[idx as usize];
            }
        }
        a[(j, j)] -= 1.0;
    }
    let svd = a.clone().svd(false, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let tol = 1e-10 * smax.max(1.0);
    let null_count = svd.singular_values.iter().filter(|&&s| s < tol).count();
    if null_count != 1 {
        return Err(Error::DegenerateFilter(format!(
            "integer refinement matrix has a {null_count}-dimensional fixed space for {}",
            filter.name()
        )));
    }
    let (imin, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .unwrap();
    let vt = svd.v_t.as_ref().unwrap();
    let mut v: Vec<f64> = (0..k).map(|i| vt[(imin, i)]).collect();
    let sum: f64 = v.iter().sum();
    let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if sum.abs() < 1e-8 * norm {
        return Err(Error::DegenerateFilter(format!(
            "integer values of {} sum to zero and cannot be normalized",
            filter.name()
        )));
    }
    for x in &mut v {
        *x /= sum;
    }
    // residual check against the refinement equation
    for j in 0..k {
        let mut acc = 0.0;
        for (i, &vi) in v.iter().enumerate() {
            let idx = 2 * j as i64 - i as i64;
            if (0..nn as i64).contains(&idx) {
                acc += sqrt2 * taps[idx as usize] * vi;
            }
        }
        if (acc - v[j]).abs() > 1e-9 {
            return Err(Error::DegenerateFilter(format!(
                "refinement residual {:.3e} at integer {j} for {}",
                (acc - v[j]).abs(),
                filter.name()
            )));
        }
    }
    v.push(0.0);
    Ok(v)
}

/// Values of the scaling function on the dyadic grid `k / 2^levels`,
/// `k = 0,..,(len-1) 2^levels`, by repeated refinement from the integer
/// values.
pub fn cascade(filter: &ScalingFilter, levels: u32) -> Result<Vec<f64>> {
    if levels > MAX_CASCADE_LEVELS {
        return Err(Error::invalid(format!(
            "cascade depth {levels} exceeds the limit {MAX_CASCADE_LEVELS}"
        )));
    }
    let nn = filter.support_len();
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut values = values_at_integers(filter)?;
    for r in 0..levels {
        let step = 1i64 << r; // level-r grid has spacing 2^-r
        let new_len = (nn - 1) * (1usize << (r + 1)) + 1;
        let mut next = vec![0.0; new_len];
        for (q, slot) in next.iter_mut().enumerate() {
            // phibar(q / 2^(r+1)) = sqrt2 sum_i h_i phibar(q / 2^r - i),
            // and q / 2^r - i sits at level-r index q - i 2^r
            let mut acc = 0.0;
            for (i, &h) in filter.taps().iter().enumerate() {
                let arg = q as i64 - i as i64 * step;
                if arg >= 0 && (arg as usize) < values.len() {
                    acc += h * values[arg as usize];
                }
            }
            *slot = sqrt2 * acc;
        }
        values = next;
    }
    Ok(values)
}

/// Max over the dyadic grid of `|sum_m phibar(x + m) - 1|`; the translates
/// of a filter reproducing constants sum to one everywhere.
pub fn partition_of_unity_defect(filter: &ScalingFilter, levels: u32) -> Result<f64> {
    let table = cascade(filter, levels)?;
    let nn = filter.support_len();
    let step = 1usize << levels;
    let mut worst: f64 = 0.0;
    for q in 0..step {
        let mut total = 0.0;
        for m in 0..nn - 1 {
            total += table[q + m * step];
        }
        worst = worst.max((total - 1.0).abs());
    }
    Ok(worst)
}

/// Autocorrelation of the integer values: `t(delta) = sum_b phibar(b)
/// phibar(b - delta)` for `delta = 0,..,len-2`. The Gram of the sampled
/// translates is Toeplitz with this symbol.
pub fn toeplitz_symbol(filter: &ScalingFilter) -> Result<Vec<f64>> {
    let v = values_at_integers(filter)?;
    let nn = v.len();
    Ok((0..nn - 1)
        .map(|delta| (delta..nn).map(|b| v[b] * v[b - delta]).sum())
        .collect())
}

/// Circulant Gram of the periodized sampled translates at dyadic level
/// `level` (size `2^level`), built from the Toeplitz symbol.
pub fn toeplitz_gram(filter: &ScalingFilter, level: u32) -> Result<DMatrix<f64>> {
    let t = toeplitz_symbol(filter)?;
    let n = 1usize << level;
    let mut g = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for (delta, &tv) in t.iter().enumerate() {
            let j_plus = (i + delta) % n;
            g[(i, j_plus)] += tv;
            if delta > 0 {
                let j_minus = (i + n - delta % n) % n;
                g[(i, j_minus)] += tv;
            }
        }
    }
    Ok(g)
}

/// Certified bracket for the interpolation constant
/// `A = inf_u |sum_k phibar(k) exp(i k u)|^d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationConstant {
    /// Grid infimum raised to the `d`-th power; exact at a grid point, so an
    /// upper bound for `A`.
    pub value: f64,
    /// Certified lower bound for `A`.
    pub lower: f64,
    /// Certified upper bound for `A` (equals `value`).
    pub upper: f64,
    /// Index of a dominant integer value, when one exists; dominance alone
    /// certifies `A > 0`.
    pub dominant_tap: Option<usize>,
}

/// Compute the interpolation constant with a certified bracket. The symbol
/// `p(u) = sum_k phibar(k) exp(i k u)` is minimized over a fine grid in
/// `[0, 2 pi]`; the grid minimum is inflated downward by the Lipschitz bound
/// `sum_k |k phibar(k)|` times half the grid step. When one integer value
/// dominates the sum of all others, that gap is a second, grid-free lower
/// bound and the better of the two is reported.
pub fn interpolation_constant(filter: &ScalingFilter, d: usize) -> Result<InterpolationConstant> {
    if d == 0 {
        return Err(Error::invalid("dimension must be >= 1"));
    }
    let v = values_at_integers(filter)?;
    let grid = 200_000usize;
    let h = std::f64::consts::TAU / grid as f64;
    let mut grid_min = f64::INFINITY;
    for q in 0..=grid {
        let u = q as f64 * h;
        let (mut re, mut im) = (0.0, 0.0);
        for (k, &vk) in v.iter().enumerate() {
            let (s, c) = (k as f64 * u).sin_cos();
            re += vk * c;
            im += vk * s;
        }
        grid_min = grid_min.min(re.hypot(im));
    }
    let lipschitz: f64 = v.iter().enumerate().map(|(k, &vk)| (k as f64 * vk).abs()).sum();
    let mut lower_1d = (grid_min - lipschitz * h / 2.0).max(0.0);

    let dominant = dominant_tap(&v);
    if let Some(k0) = dominant {
        let rest: f64 = v.iter().enumerate().filter(|&(k, _)| k != k0).map(|(_, x)| x.abs()).sum();
        lower_1d = lower_1d.max(v[k0].abs() - rest);
    }
    Ok(InterpolationConstant {
        value: grid_min.powi(d as i32),
        lower: lower_1d.powi(d as i32),
        upper: grid_min.powi(d as i32),
        dominant_tap: dominant,
    })
}

/// Index of an integer value strictly dominating the sum of all others, if
/// any.
pub fn dominant_tap(values: &[f64]) -> Option<usize> {
    let total: f64 = values.iter().map(|x| x.abs()).sum();
    values
        .iter()
        .enumerate()
        .find(|(_, &x)| x.abs() > total - x.abs())
        .map(|(k, _)| k)
}

/// Evaluate the periodized translate `2^(j/2) sum_p phibar(2^j (x+p) - k)`
/// at a dyadic point `x = q / 2^MAX_CASCADE_LEVELS`.
pub fn eval_periodized(filter: &ScalingFilter, level: u32, k: usize, x: f64) -> Result<f64> {
    let depth = MAX_CASCADE_LEVELS;
    if level > depth {
        return Err(Error::invalid(format!("level {level} exceeds {depth}")));
    }
    let scale = (1u64 << depth) as f64;
    let q = x * scale;
    if (q - q.round()).abs() > 1e-9 {
        return Err(Error::invalid(format!(
            "scaling systems evaluate at dyadic points q/2^{depth} only, got x = {x}"
        )));
    }
    let q = q.round() as i64;
    let table = cascade(filter, depth)?;
    let nn = filter.support_len() as i64;
    let two_j = 1i64 << level;
    // phibar argument y = 2^j (x + p) - k has table index y * 2^depth
    // = q * 2^j + (p * 2^j - k) * 2^depth; walk p over the support window
    let x_f = q as f64 / scale;
    let p_min = ((k as f64) / two_j as f64 - x_f).ceil() as i64 - 1;
    let p_max = ((k as f64 + (nn - 1) as f64) / two_j as f64 - x_f).floor() as i64 + 1;
    let mut acc = 0.0;
    for p in p_min..=p_max {
        let idx = q * two_j + (p * two_j - k as i64) * (1i64 << depth);
        if idx >= 0 && (idx as usize) < table.len() {
            acc += table[idx as usize];
        }
    }
    Ok((two_j as f64).sqrt() * acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn built_in_filters_sum_to_sqrt2() {
        for f in [ScalingFilter::haar(), ScalingFilter::db2(), ScalingFilter::db3()] {
            let sum: f64 = f.taps().iter().sum();
            assert!((sum - std::f64::consts::SQRT_2).abs() < 1e-12, "{}", f.name());
        }
    }

    #[test]
    fn haar_integer_values() {
        let v = values_at_integers(&ScalingFilter::haar()).unwrap();
        assert_eq!(v, vec![1.0, 0.0]);
    }

    #[test]
    fn db2_integer_values_closed_form() {
        // oracle: the fixed vector of the 2x2 interior refinement block is
        // ((1+sqrt3)/2, (1-sqrt3)/2)
        let s3 = 3f64.sqrt();
        let v = values_at_integers(&ScalingFilter::db2()).unwrap();
        assert_eq!(v.len(), 4);
        assert!(v[0].abs() < 1e-12);
        assert!((v[1] - (1.0 + s3) / 2.0).abs() < 1e-12);
        assert!((v[2] - (1.0 - s3) / 2.0).abs() < 1e-12);
        assert_eq!(v[3], 0.0);
    }

    #[test]
    fn integer_values_sum_to_one() {
        for f in [ScalingFilter::haar(), ScalingFilter::db2(), ScalingFilter::db3()] {
            let v = values_at_integers(&f).unwrap();
            let sum: f64 = v.iter().sum();
            assert!((sum - 1.0).abs() < 1e-12, "{}: {sum}", f.name());
        }
    }

    #[test]
    fn db3_values_satisfy_refinement() {
        // independent residual check of the eigenvector route
        let f = ScalingFilter::db3();
        let v = values_at_integers(&f).unwrap();
        let sqrt2 = std::f64::consts::SQRT_2;
        for j in 0..v.len() {
            let mut acc = 0.0;
            for (i, &vi) in v.iter().enumerate() {
                let idx = 2 * j as i64 - i as i64;
                if (0..f.taps().len() as i64).contains(&idx) {
                    acc += sqrt2 * f.taps()[idx as usize] * vi;
                }
            }
            assert!((acc - v[j]).abs() < 1e-10, "integer {j}");
        }
    }

    #[test]
    fn custom_filter_validation() {
        assert!(ScalingFilter::custom("bad", vec![1.0, 1.0]).is_err());
        assert!(ScalingFilter::custom("short", vec![std::f64::consts::SQRT_2]).is_err());
        let h = 0.5f64.sqrt();
        assert!(ScalingFilter::custom("ok", vec![h, h]).is_ok());
    }

    #[test]
    fn degenerate_filter_detected() {
        // all mass on one tap: the fixed space of the integer matrix is
        // trivial or not normalizable
        let f = ScalingFilter::custom("spike", vec![std::f64::consts::SQRT_2, 0.0]).unwrap();
        assert!(matches!(values_at_integers(&f), Err(Error::DegenerateFilter(_))));
    }

    #[test]
    fn cascade_haar_is_indicator() {
        let t = cascade(&ScalingFilter::haar(), 3).unwrap();
        assert_eq!(t.len(), 9);
        for v in &t[..8] {
            assert!((v - 1.0).abs() < 1e-14);
        }
        assert_eq!(t[8], 0.0);
    }

    #[test]
    fn cascade_depth_limit() {
        assert!(cascade(&ScalingFilter::haar(), 13).is_err());
        assert!(cascade(&ScalingFilter::haar(), 12).is_ok());
    }

    #[test]
    fn cascade_midpoint_matches_refinement() {
        // oracle: phibar(1/2) = sqrt2 * h0 * phibar(1) for db2
        let f = ScalingFilter::db2();
        let v = values_at_integers(&f).unwrap();
        let expect = std::f64::consts::SQRT_2 * f.taps()[0] * v[1];
        let t = cascade(&f, 1).unwrap();
        assert!((t[1] - expect).abs() < 1e-12);
        // integer entries survive refinement unchanged
        assert!((t[2] - v[1]).abs() < 1e-12);
        assert!((t[4] - v[2]).abs() < 1e-12);
    }

    #[test]
    fn partition_of_unity_at_dyadic_points() {
        for f in [ScalingFilter::haar(), ScalingFilter::db2(), ScalingFilter::db3()] {
            let defect = partition_of_unity_defect(&f, 8).unwrap();
            assert!(defect < 1e-10, "{}: {defect}", f.name());
        }
    }

    #[test]
    fn toeplitz_symbol_db2_closed_form() {
        // oracle: values (0, a, b, 0) with a = (1+sqrt3)/2, b = (1-sqrt3)/2
        // give t = (a^2 + b^2, ab, 0) = (2, -1/2, 0)
        let t = toeplitz_symbol(&ScalingFilter::db2()).unwrap();
        assert_eq!(t.len(), 3);
        assert!((t[0] - 2.0).abs() < 1e-12);
        assert!((t[1] + 0.5).abs() < 1e-12);
        assert!(t[2].abs() < 1e-12);
    }

    #[test]
    fn toeplitz_gram_eigenvalues_are_symbol_samples() {
        // circulant eigenvalues equal |p(2 pi q / n)|^2
        let f = ScalingFilter::db2();
        let level = 4u32;
        let n = 1usize << level;
        let g = toeplitz_gram(&f, level).unwrap();
        let mut eig: Vec<f64> = g.symmetric_eigen().eigenvalues.iter().copied().collect();
        eig.sort_by(f64::total_cmp);
        let v = values_at_integers(&f).unwrap();
        let mut symbol: Vec<f64> = (0..n)
            .map(|q| {
                let u = std::f64::consts::TAU * q as f64 / n as f64;
                let (mut re, mut im) = (0.0, 0.0);
                for (k, &vk) in v.iter().enumerate() {
                    let (s, c) = (k as f64 * u).sin_cos();
                    re += vk * c;
                    im += vk * s;
                }
                re * re + im * im
            })
            .collect();
        symbol.sort_by(f64::total_cmp);
        for (a, b) in eig.iter().zip(&symbol) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn interpolation_constant_haar_is_one() {
        for d in [1usize, 3] {
            let c = interpolation_constant(&ScalingFilter::haar(), d).unwrap();
            assert!((c.value - 1.0).abs() < 1e-12);
            assert!(c.lower <= c.value && c.value <= c.upper);
            assert!((c.lower - 1.0).abs() < 1e-6);
            assert_eq!(c.dominant_tap, Some(0));
        }
    }

    #[test]
    fn interpolation_constant_db2() {
        // oracle: |p(u)|^2 = 2 - cos u has infimum 1 at u = 0
        let c = interpolation_constant(&ScalingFilter::db2(), 1).unwrap();
        assert!((c.value - 1.0).abs() < 1e-9, "{}", c.value);
        assert!(c.lower > 0.99 && c.lower <= c.value);
        assert_eq!(c.dominant_tap, Some(1));
        let c2 = interpolation_constant(&ScalingFilter::db2(), 2).unwrap();
        assert!((c2.value - c.value * c.value).abs() < 1e-12);
    }

    #[test]
    fn db3_dominance_certifies_positivity() {
        let v = values_at_integers(&ScalingFilter::db3()).unwrap();
        assert_eq!(dominant_tap(&v), Some(1));
        let c = interpolation_constant(&ScalingFilter::db3(), 1).unwrap();
        assert!(c.lower > 0.0);
    }

    #[test]
    fn periodized_translates_haar() {
        let f = ScalingFilter::haar();
        // level 2, k = 1: 2 * indicator of [1/4, 1/2)
        assert!((eval_periodized(&f, 2, 1, 0.25).unwrap() - 2.0).abs() < 1e-12);
        assert!((eval_periodized(&f, 2, 1, 0.375).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(eval_periodized(&f, 2, 1, 0.5).unwrap(), 0.0);
        assert_eq!(eval_periodized(&f, 2, 1, 0.0).unwrap(), 0.0);
        // k = 0 covers [0, 1/4), so x = 3/4 is outside
        assert_eq!(eval_periodized(&f, 2, 0, 0.75).unwrap(), 0.0);
    }

    #[test]
    fn periodized_rejects_non_dyadic() {
        let f = ScalingFilter::haar();
        assert!(eval_periodized(&f, 2, 0, 1.0 / 3.0).is_err());
    }
}
