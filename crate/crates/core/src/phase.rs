//! Phase wrapping and unwrapping helpers.

use core::f64::consts::{PI, TAU};

/// Magnitude below which a complex sample is treated as a zero-field point
/// for phase bookkeeping.
pub const ZERO_FIELD_TOL: f64 = 1e-9;

/// Reduces an angle into `[0, 2π)`.
pub fn wrap_2pi(x: f64) -> f64 {
    let mut r = x % TAU;
    if r < 0.0 {
        r += TAU;
    }
    // tiny negative inputs round up to exactly TAU
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Reduces an angle into `(−π, π]`.
pub fn wrap_pi(x: f64) -> f64 {
    let r = wrap_2pi(x);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Continuous phase of a sampled complex trajectory.
///
/// Consecutive phase increments are taken on the principal branch. Samples
/// with magnitude below [`ZERO_FIELD_TOL`] carry the previous phase forward,
/// since their argument is meaningless.
pub fn unwrap_samples(samples: &[crate::C64]) -> alloc::vec::Vec<f64> {
    let mut out = alloc::vec::Vec::with_capacity(samples.len());
    let mut acc = 0.0;
    let mut last: Option<f64> = None;
    for z in samples {
        if z.norm() >= ZERO_FIELD_TOL {
            let a = z.arg();
            acc = match last {
                None => a,
                Some(prev) => acc + wrap_pi(a - prev),
            };
            last = Some(a);
        }
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    #[test]
    fn wraps_into_ranges() {
        assert_eq!(wrap_2pi(-1e-300), 0.0);
        assert!((wrap_2pi(-0.5) - (TAU - 0.5)).abs() < 1e-15);
        assert!((wrap_pi(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert_eq!(wrap_pi(PI), PI);
    }

    #[test]
    fn unwrap_follows_a_full_turn() {
        let n = 64;
        let s: alloc::vec::Vec<C64> = (0..=n)
            .map(|k| C64::from_polar(1.0, 2.0 * TAU * k as f64 / n as f64))
            .collect();
        let u = unwrap_samples(&s);
        assert!((u[n] - 2.0 * TAU).abs() < 1e-12);
    }

    #[test]
    fn zero_samples_hold_phase() {
        let s = [C64::new(0.0, 1.0), C64::new(0.0, 0.0), C64::new(0.0, 1.0)];
        assert_eq!(unwrap_samples(&s), [PI / 2.0; 3]);
    }
}
