//! All-optical phase modulation with the balanced drive.
//!
//! The signal field shifts the transmitted probe phase. For a target shift
//! the loop phase is constrained so that the probe's terminal point lands on
//! the negative real axis (π) or the negative imaginary axis (π/2); the
//! detuning is then tuned for maximal probe transmission, and the result is
//! compared against the same medium without a signal.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::optimize::{bisect, local_maxima, DetuningSearch};
use crate::params::MediumParams;
use crate::phase::{wrap_2pi, wrap_pi};
use crate::phase_jump::exponent_parts;
use crate::steady_state::{balanced_ratios, propagation_factor};
use crate::{Error, Result, C64};

/// Number of equal sub-intervals of `[0, 2π]` bracketed when solving for
/// the π/2 loop phase.
pub const HALF_PI_BRACKETS: usize = 64;

/// Probe phase shift to engineer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetShift {
    Pi,
    HalfPi,
}

impl TargetShift {
    pub fn radians(self) -> f64 {
        match self {
            TargetShift::Pi => PI,
            TargetShift::HalfPi => FRAC_PI_2,
        }
    }

    fn axis(self) -> &'static str {
        match self {
            TargetShift::Pi => "negative real",
            TargetShift::HalfPi => "negative imaginary",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApmOperatingPoint {
    pub alpha: f64,
    pub delta: f64,
    pub phi_r: f64,
    pub target_shift: TargetShift,
    pub transmission_with_signal: f64,
    pub transmission_without_signal: f64,
    /// `|Δφ_p^APM|` in `[0, π]`.
    pub apm_contrast: f64,
}

/// Terminal probe phases with and without the signal field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApmContrast {
    pub phase_with: f64,
    pub phase_without: f64,
    pub contrast: f64,
}

fn terminal_probe(alpha: f64, delta: f64, phi_r: f64) -> Result<C64> {
    let params = MediumParams::balanced(alpha, delta);
    params.validate()?;
    let e = propagation_factor(params.xi()?, alpha);
    Ok(balanced_ratios(phi_r, e).0)
}

/// Probe ratio at the exit of the balanced medium with no incident signal:
/// `(1 + exp(−iα/(2ξ)))/2`.
pub fn probe_without_signal(alpha: f64, delta: f64) -> Result<C64> {
    let params = MediumParams::balanced(alpha, delta);
    params.validate()?;
    let e = propagation_factor(params.xi()?, alpha);
    Ok((C64::new(1.0, 0.0) + e) * 0.5)
}

/// Loop phase giving a π probe phase shift:
/// `φ_r^π = 2·atan[(cos I − e^{−R}) / sin I]`, in `[0, 2π)`.
///
/// Fails when `sin I = 0` or when the resulting terminal point is on the
/// positive real axis (zero shift).
pub fn phi_r_for_pi_shift(alpha: f64, delta: f64) -> Result<f64> {
    let (r, i) = exponent_parts(alpha, delta);
    let s = libm::sin(i);
    if alpha.is_nan() || alpha <= 0.0 || s.abs() < 1e-15 {
        return Err(Error::NoPhaseSolution(TargetShift::Pi.axis()));
    }
    let phi = wrap_2pi(2.0 * libm::atan((libm::cos(i) - libm::exp(-r)) / s));
    if terminal_probe(alpha, delta, phi)?.re < 0.0 {
        Ok(phi)
    } else {
        Err(Error::NoPhaseSolution(TargetShift::Pi.axis()))
    }
}

/// Loop phase giving a π/2 probe phase shift.
///
/// Solves `Re[probe ratio] = 0` by bracketing over [`HALF_PI_BRACKETS`]
/// sub-intervals of `[0, 2π]` and bisecting each sign change; among roots
/// with a negative imaginary part the most transmissive is returned.
pub fn phi_r_for_half_pi_shift(alpha: f64, delta: f64) -> Result<f64> {
    let params = MediumParams::balanced(alpha, delta);
    params.validate()?;
    let e = propagation_factor(params.xi()?, alpha);
    let re = |phi: f64| balanced_ratios(phi, e).0.re;
    let mut best: Option<(f64, f64)> = None;
    let h = TAU / HALF_PI_BRACKETS as f64;
    for k in 0..HALF_PI_BRACKETS {
        let (a, b) = (k as f64 * h, (k + 1) as f64 * h);
        let (fa, fb) = (re(a), re(b));
        // a root exactly on a grid point belongs to the bracket it starts
        let has_root = fa == 0.0 || (fb != 0.0 && (fa < 0.0) != (fb < 0.0));
        if !has_root {
            continue;
        }
        let phi = wrap_2pi(bisect(re, a, b, 1e-15));
        let r = balanced_ratios(phi, e).0;
        if r.im < 0.0 && best.is_none_or(|(_, t)| r.norm_sqr() > t) {
            best = Some((phi, r.norm_sqr()));
        }
    }
    best.map(|(phi, _)| phi)
        .ok_or(Error::NoPhaseSolution(TargetShift::HalfPi.axis()))
}

pub fn phi_r_for_shift(alpha: f64, delta: f64, target: TargetShift) -> Result<f64> {
    match target {
        TargetShift::Pi => phi_r_for_pi_shift(alpha, delta),
        TargetShift::HalfPi => phi_r_for_half_pi_shift(alpha, delta),
    }
}

/// Compares the terminal probe phase with and without the signal field.
/// The contrast is the wrapped phase difference magnitude, in `[0, π]`.
pub fn apm_contrast(alpha: f64, delta: f64, phi_r: f64) -> Result<ApmContrast> {
    let with = terminal_probe(alpha, delta, phi_r)?;
    let without = probe_without_signal(alpha, delta)?;
    if with.norm_sqr() == 0.0 || without.norm_sqr() == 0.0 {
        return Err(Error::ZeroField);
    }
    let (phase_with, phase_without) = (with.arg(), without.arg());
    Ok(ApmContrast {
        phase_with,
        phase_without,
        contrast: wrap_pi(phase_with - phase_without).abs(),
    })
}

/// Full operating point at a fixed detuning.
pub fn operating_point(alpha: f64, delta: f64, target: TargetShift) -> Result<ApmOperatingPoint> {
    let phi_r = phi_r_for_shift(alpha, delta, target)?;
    let with = terminal_probe(alpha, delta, phi_r)?;
    let without = probe_without_signal(alpha, delta)?;
    Ok(ApmOperatingPoint {
        alpha,
        delta,
        phi_r,
        target_shift: target,
        transmission_with_signal: with.norm_sqr(),
        transmission_without_signal: without.norm_sqr(),
        apm_contrast: apm_contrast(alpha, delta, phi_r)?.contrast,
    })
}

/// Probe transmission at the constrained loop phase, `−∞` where the target
/// axis cannot be reached.
pub fn constrained_transmission(alpha: f64, delta: f64, target: TargetShift) -> f64 {
    phi_r_for_shift(alpha, delta, target)
        .and_then(|phi| terminal_probe(alpha, delta, phi))
        .map_or(f64::NEG_INFINITY, |r| r.norm_sqr())
}

/// Every local transmission maximum over the detuning range, each refined
/// by golden-section search.
pub fn detuning_local_maxima(
    alpha: f64,
    target: TargetShift,
    search: &DetuningSearch,
) -> Result<Vec<ApmOperatingPoint>> {
    if !search.is_valid() {
        return Err(Error::InvalidParameter {
            name: "delta_range",
            reason: "need lo < hi and positive step/tolerance",
        });
    }
    MediumParams::balanced(alpha, 0.0).validate()?;
    local_maxima(|d| constrained_transmission(alpha, d, target), search)
        .into_iter()
        .map(|(d, _)| operating_point(alpha, d, target))
        .collect()
}

/// Detuning with the highest constrained probe transmission.
pub fn optimize_detuning(
    alpha: f64,
    target: TargetShift,
    search: &DetuningSearch,
) -> Result<ApmOperatingPoint> {
    detuning_local_maxima(alpha, target, search)?
        .into_iter()
        .max_by(|a, b| {
            a.transmission_with_signal
                .partial_cmp(&b.transmission_with_signal)
                .unwrap()
        })
        .ok_or(Error::NoFeasibleDetuning)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steady_state::propagate_balanced;
    use proptest::prelude::*;

    #[test]
    fn pi_shift_at_reference_detuning() {
        let phi = phi_r_for_pi_shift(100.0, 16.5).unwrap();
        assert!((phi - 3.252792770962259).abs() < 1e-12);
        let (rp, _) = propagate_balanced(phi, &MediumParams::balanced(100.0, 16.5), 100.0).unwrap();
        assert!(rp.im.abs() < 1e-12 && rp.re < 0.0);
        assert!((rp.norm_sqr() - 0.6831918922429834).abs() < 1e-12);
    }

    #[test]
    fn no_pi_shift_in_thin_medium() {
        assert!(matches!(phi_r_for_pi_shift(1e-6, 16.5), Err(Error::NoPhaseSolution(_))));
        assert!(matches!(phi_r_for_pi_shift(0.0, 16.5), Err(Error::NoPhaseSolution(_))));
    }

    #[test]
    fn contrast_at_reference_point() {
        let phi = phi_r_for_pi_shift(100.0, 16.5).unwrap();
        let c = apm_contrast(100.0, 16.5, phi).unwrap();
        assert!((c.phase_without + 0.530156528749808).abs() < 1e-12);
        assert!((c.phase_with.abs() - PI).abs() < 1e-12);
        assert!((c.contrast - 2.611436124839985).abs() < 1e-9);
    }

    #[test]
    fn half_pi_matches_closed_form() {
        // Re[(1+E) + u(1−E)] = 0 with u = e^{−iφ}: cos(arg(1−E) − φ) = −Re(1+E)/|1−E|
        for &(alpha, delta) in &[(100.0, 22.85), (50.0, 10.0), (20.0, 3.0)] {
            let phi = phi_r_for_half_pi_shift(alpha, delta).unwrap();
            let e = propagation_factor(C64::new(delta, 1.0), alpha);
            let one = C64::new(1.0, 0.0);
            let (a, b) = (one + e, one - e);
            let acos = libm::acos(-a.re / b.norm());
            let candidates = [wrap_2pi(b.arg() - acos), wrap_2pi(b.arg() + acos)];
            let best = candidates
                .iter()
                .copied()
                .filter(|&p| balanced_ratios(p, e).0.im < 0.0)
                .max_by(|&x, &y| {
                    balanced_ratios(x, e).0.norm_sqr().partial_cmp(&balanced_ratios(y, e).0.norm_sqr()).unwrap()
                })
                .unwrap();
            assert!(wrap_pi(phi - best).abs() < 1e-12, "{alpha} {delta}: {phi} vs {best}");
        }
    }

    #[test]
    fn contrast_zero_without_signal_on_both_sides() {
        // identical configurations: contrast of a phase with itself
        let w = probe_without_signal(37.0, 4.0).unwrap();
        assert_eq!(wrap_pi(w.arg() - w.arg()).abs(), 0.0);
    }

    #[test]
    fn pi_optimum_near_sixteen_and_a_half() {
        let op = optimize_detuning(100.0, TargetShift::Pi, &DetuningSearch::default()).unwrap();
        assert!((op.delta - 16.49).abs() < 0.05, "{op:?}");
        assert!((op.transmission_with_signal - 0.6832).abs() < 1e-3);
        assert!((op.transmission_without_signal - 0.0101).abs() < 2e-4);
        assert!((op.apm_contrast - 2.616).abs() < 2e-3);
    }

    #[test]
    fn half_pi_optimum() {
        let op = optimize_detuning(100.0, TargetShift::HalfPi, &DetuningSearch::default()).unwrap();
        assert!((op.transmission_with_signal - 1.4036).abs() < 2e-3, "{op:?}");
        assert!((op.transmission_without_signal - 0.195).abs() < 2e-3);
        assert!((op.apm_contrast - 0.5705).abs() < 2e-3);
    }

    #[test]
    fn golden_matches_dense_scan() {
        for &(alpha, target) in &[(100.0, TargetShift::Pi), (50.0, TargetShift::Pi), (100.0, TargetShift::HalfPi)] {
            let op = optimize_detuning(alpha, target, &DetuningSearch::default()).unwrap();
            let (mut best_d, mut best_t) = (0.0, f64::NEG_INFINITY);
            let mut d = 0.5;
            while d <= 60.0 {
                let t = constrained_transmission(alpha, d, target);
                if t > best_t {
                    best_t = t;
                    best_d = d;
                }
                d += 0.01;
            }
            assert!((op.delta - best_d).abs() < 0.05, "{alpha} {target:?}: {} vs {best_d}", op.delta);
        }
    }

    #[test]
    fn infeasible_range_reported() {
        // at α = 1, |1 − E| < Re(1 + E) for every Δ, so Re[probe] > 0
        let r = optimize_detuning(1.0, TargetShift::Pi, &DetuningSearch::default());
        assert_eq!(r, Err(Error::NoFeasibleDetuning));
    }

    #[test]
    fn rejects_bad_search() {
        let search = DetuningSearch { lo: 5.0, hi: 1.0, ..DetuningSearch::default() };
        assert!(optimize_detuning(100.0, TargetShift::Pi, &search).is_err());
    }

    #[test]
    fn transmission_trends_with_depth() {
        let search = DetuningSearch::default();
        let pts: Vec<_> = [10.0, 20.0, 50.0, 100.0]
            .iter()
            .map(|&a| optimize_detuning(a, TargetShift::Pi, &search).unwrap())
            .collect();
        for w in pts.windows(2) {
            assert!(w[1].transmission_with_signal > w[0].transmission_with_signal);
            assert!(w[1].transmission_without_signal < w[0].transmission_without_signal);
        }
    }

    proptest! {
        #[test]
        fn pi_solution_lies_on_negative_axis(alpha in 1.0f64..200.0, delta in 0.2f64..60.0) {
            if let Ok(phi) = phi_r_for_pi_shift(alpha, delta) {
                let r = terminal_probe(alpha, delta, phi).unwrap();
                prop_assert!(r.im.abs() <= 1e-12 * r.norm().max(1.0), "{r}");
                prop_assert!(r.re < 0.0);
            }
        }

        #[test]
        fn half_pi_solution_lies_on_negative_imaginary_axis(alpha in 1.0f64..200.0, delta in 0.2f64..60.0) {
            if let Ok(phi) = phi_r_for_half_pi_shift(alpha, delta) {
                let r = terminal_probe(alpha, delta, phi).unwrap();
                prop_assert!(r.re.abs() <= 1e-9, "{r}");
                prop_assert!(r.im < 0.0);
            }
        }
    }
}
