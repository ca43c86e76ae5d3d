//! One-dimensional scan, golden-section refinement, and bisection.

use alloc::vec::Vec;

/// Detuning search settings shared by the phase-modulation and
/// amplification optimizers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetuningSearch {
    pub lo: f64,
    pub hi: f64,
    /// Coarse scan spacing, in Γ.
    pub scan_step: f64,
    /// Golden-section bracket width at termination, in Γ.
    pub tol: f64,
}

impl Default for DetuningSearch {
    fn default() -> Self {
        Self {
            lo: 0.5,
            hi: 60.0,
            scan_step: 0.05,
            tol: 1e-3,
        }
    }
}

impl DetuningSearch {
    pub fn is_valid(&self) -> bool {
        self.lo.is_finite()
            && self.hi.is_finite()
            && self.hi > self.lo
            && self.scan_step > 0.0
            && self.tol > 0.0
    }
}

/// Evenly spaced points over `[lo, hi]`, both ends included.
pub fn linspace_step(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = libm::floor((hi - lo) / step + 1e-9) as usize;
    let mut xs: Vec<f64> = (0..=n).map(|k| lo + k as f64 * step).collect();
    if hi - xs[n] > 1e-9 * step {
        xs.push(hi);
    }
    xs
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes `f` on `[a, b]` by golden-section search until the bracket
/// is narrower than `tol`. Returns `(x, f(x))` of the best point seen.
pub fn golden_section_max<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Scans `f` on a grid and refines every interior local maximum with a
/// golden-section search over the neighbouring grid cells.
///
/// Points where `f` is not finite (e.g. `−∞` for infeasible) never count as
/// maxima. A strict rise on the left is required so flat plateaus report
/// only their first point; range ends count when they beat their single
/// neighbour. Results are sorted by position.
pub fn local_maxima<F: FnMut(f64) -> f64>(mut f: F, search: &DetuningSearch) -> Vec<(f64, f64)> {
    let xs = linspace_step(search.lo, search.hi, search.scan_step);
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let n = xs.len();
    let mut out = Vec::new();
    for i in 0..n {
        if !ys[i].is_finite() {
            continue;
        }
        let left = if i > 0 { ys[i - 1] } else { f64::NEG_INFINITY };
        let right = if i + 1 < n { ys[i + 1] } else { f64::NEG_INFINITY };
        if ys[i] > left && ys[i] >= right {
            let a = xs[i.saturating_sub(1)];
            let b = xs[(i + 1).min(n - 1)];
            let (x, y) = golden_section_max(&mut f, a, b, search.tol);
            // the scan point wins if refinement wandered into an infeasible gap
            out.push(if y.is_finite() && y >= ys[i] { (x, y) } else { (xs[i], ys[i]) });
        }
    }
    out
}

/// Root of `f` on `[a, b]` given a sign change, to absolute width `tol`.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    if fa == 0.0 {
        return a;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= tol || m == a || m == b {
            return m;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, y) = golden_section_max(|x| -(x - 1.234) * (x - 1.234) + 3.0, -5.0, 5.0, 1e-8);
        assert!((x - 1.234).abs() < 1e-7);
        assert!((y - 3.0).abs() < 1e-12);
    }

    #[test]
    fn scan_reports_all_peaks() {
        let search = DetuningSearch { lo: 0.0, hi: 10.0, scan_step: 0.1, tol: 1e-6 };
        let peaks = local_maxima(libm::sin, &search);
        let xs: Vec<f64> = peaks.iter().map(|p| p.0).collect();
        assert_eq!(xs.len(), 2);
        assert!((xs[0] - core::f64::consts::FRAC_PI_2).abs() < 1e-5);
        assert!((xs[1] - 5.0 * core::f64::consts::FRAC_PI_2).abs() < 1e-5);
    }

    #[test]
    fn scan_skips_infeasible_points() {
        let search = DetuningSearch { lo: 0.0, hi: 4.0, scan_step: 0.05, tol: 1e-6 };
        let f = |x: f64| if (1.0..3.0).contains(&x) { -(x - 2.5) * (x - 2.5) } else { f64::NEG_INFINITY };
        let peaks = local_maxima(f, &search);
        assert_eq!(peaks.len(), 1);
        assert!((peaks[0].0 - 2.5).abs() < 1e-5);
    }

    #[test]
    fn plateau_reports_one_peak_at_its_start() {
        let search = DetuningSearch { lo: 0.5, hi: 2.0, scan_step: 0.5, tol: 1e-3 };
        let peaks = local_maxima(|_| 1.0, &search);
        assert_eq!(peaks.len(), 1);
        assert_eq!(peaks[0].1, 1.0);
        assert!(peaks[0].0 <= 1.0);
    }

    #[test]
    fn linspace_includes_end() {
        let xs = linspace_step(0.0, 1.0, 0.25);
        assert_eq!(xs, [0.0, 0.25, 0.5, 0.75, 1.0]);
        let ys = linspace_step(0.0, 1.0, 0.3);
        assert_eq!(ys.len(), 5);
        assert_eq!(ys[4], 1.0);
    }

    #[test]
    fn bisect_finds_cosine_root() {
        let r = bisect(libm::cos, 0.0, 3.0, 1e-14);
        assert!((r - core::f64::consts::FRAC_PI_2).abs() < 1e-13);
    }
}
