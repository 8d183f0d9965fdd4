//! One-dimensional search helpers shared by the capacity modules.
//!
//! All routines are deterministic. Ties in the golden-section search resolve
//! toward the smaller parameter.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization of `f` on [a, b].
///
/// Assumes unimodality on the bracket; returns (argmax, max).
pub fn golden_max(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let xm = 0.5 * (lo + hi);
    let fm = f(xm);
    // Keep whichever probe was best, preferring smaller x on ties.
    let mut best = (xm, fm);
    for (x, v) in [(x1, f1), (x2, f2)] {
        if v > best.1 || (v == best.1 && x < best.0) {
            best = (x, v);
        }
    }
    best
}

/// Coarse grid scan followed by golden-section refinement around the best
/// grid cell. Robust when `f` is only piecewise unimodal.
pub fn grid_golden_max(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    n_grid: usize,
    tol: f64,
) -> (f64, f64) {
    debug_assert!(n_grid >= 2);
    let mut best_i = 0;
    let mut best_v = f64::NEG_INFINITY;
    let step = (b - a) / n_grid as f64;
    for i in 0..=n_grid {
        let x = a + step * i as f64;
        let v = f(x);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let lo = if best_i == 0 { a } else { a + step * (best_i - 1) as f64 };
    let hi = if best_i == n_grid { b } else { a + step * (best_i + 1) as f64 };
    golden_max(f, lo, hi, tol)
}

/// Bisection for a sign change of `f` on [a, b]. Returns `None` if the
/// endpoints do not bracket a root.
pub fn bisect(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> Option<f64> {
    let (mut lo, mut hi) = (a, b);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Pearson correlation coefficient of two equal-length samples.
pub fn pearson_corr(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len(), "sample length mismatch");
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    sxy / crate::fp::sqrt(sxx * syy)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, v) = golden_max(|x| -(x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-9);
        assert!((x - 0.3).abs() < 1e-7);
        assert!(v > -1e-13);
    }

    #[test]
    fn golden_handles_boundary_maximum() {
        let (x, _) = golden_max(|x| -x, 0.0, 1.0, 1e-9);
        assert!(x < 1e-7);
    }

    #[test]
    fn grid_golden_handles_two_humps() {
        let f = |x: f64| (-(x - 0.2) * (x - 0.2)).max(-(x - 0.8) * (x - 0.8) * 0.5 - 0.01);
        let (x, _) = grid_golden_max(f, 0.0, 1.0, 32, 1e-9);
        assert!((x - 0.2).abs() < 1e-6);
    }

    #[test]
    fn bisect_finds_root() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-12).unwrap();
        assert!((r - core::f64::consts::SQRT_2).abs() < 1e-10);
        assert!(bisect(|x| x + 10.0, 0.0, 1.0, 1e-9).is_none());
    }

    #[test]
    fn corr_of_linear_data() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [2.0, 4.0, 6.0, 8.0];
        assert!((pearson_corr(&xs, &ys) - 1.0).abs() < 1e-12);
        let yneg = [5.0, 4.0, 3.0, 2.0];
        assert!((pearson_corr(&xs, &yneg) + 1.0).abs() < 1e-12);
    }
}
