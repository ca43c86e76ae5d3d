//! Closed-form steady state of the first-order double-Λ medium.
//!
//! With the time derivatives dropped, the three coherences follow
//! algebraically from the local fields, and the two field equations
//! `∂Ω_p/∂ζ = (i/2)ρ31`, `∂Ω_s/∂ζ = (i/2)ρ41` become a linear 2×2 system
//! with one non-decaying (dark) mode and one mode that evolves as
//! `exp(−iζ/(2ξ))`.

use alloc::vec::Vec;

use crate::params::{FieldPair, MediumParams};
use crate::phase::unwrap_samples;
use crate::{Error, Result, C64};

const I: C64 = C64::new(0.0, 1.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Default number of ζ samples when tracing a propagation curve.
pub const DEFAULT_CURVE_SAMPLES: usize = 2000;

/// Ground-state and optical coherences at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CoherenceState {
    pub rho21: C64,
    pub rho31: C64,
    pub rho41: C64,
}

impl CoherenceState {
    pub const ZERO: CoherenceState = CoherenceState {
        rho21: C64::new(0.0, 0.0),
        rho31: C64::new(0.0, 0.0),
        rho41: C64::new(0.0, 0.0),
    };

    pub fn max_abs(&self) -> f64 {
        self.rho21
            .norm()
            .max(self.rho31.norm())
            .max(self.rho41.norm())
    }

    /// Sanity bound for the first-order treatment: every `|ρ_ij| ≤ 0.5`.
    pub fn is_perturbative(&self) -> bool {
        self.max_abs() <= 0.5
    }
}

/// Steady coherences for fixed local fields (γ21 = 0).
///
/// With `D = −[iΓ|Ω_d|² + (2Δ + iΓ)|Ω_c|²]`:
/// `ρ21 = [Ω_p Ω_c*(2Δ + iΓ) + iΓ Ω_s Ω_d*]/D`,
/// `ρ31 = [Ω_p|Ω_d|² − Ω_s Ω_c Ω_d*]/D`,
/// `ρ41 = [Ω_s|Ω_c|² − Ω_p Ω_c* Ω_d]/D`.
pub fn coherences_steady(params: &MediumParams, fields: &FieldPair) -> Result<CoherenceState> {
    if params.gamma21 != 0.0 {
        return Err(Error::DephasingUnsupported);
    }
    let (oc, od) = (params.omega_c, params.omega_d);
    let (op, os) = (fields.omega_p, fields.omega_s);
    let two_delta_plus_i = C64::new(2.0 * params.delta, 1.0);
    let denom = -(I * od.norm_sqr() + two_delta_plus_i * oc.norm_sqr());
    if denom.norm_sqr() == 0.0 {
        return Err(Error::SingularDenominator);
    }
    Ok(CoherenceState {
        rho21: (op * oc.conj() * two_delta_plus_i + I * os * od.conj()) / denom,
        rho31: (op * od.norm_sqr() - os * oc * od.conj()) / denom,
        rho41: (os * oc.norm_sqr() - op * oc.conj() * od) / denom,
    })
}

/// `exp(−iζ/(2ξ))`, the factor carried by the absorbing/rotating mode.
pub fn propagation_factor(xi: C64, zeta: f64) -> C64 {
    (-I * zeta / (2.0 * xi)).exp()
}

fn check_depth(params: &MediumParams, zeta: f64) -> Result<()> {
    params.validate()?;
    if params.gamma21 != 0.0 {
        return Err(Error::DephasingUnsupported);
    }
    // allow the rounding of a uniform grid's last point
    if !(zeta >= 0.0 && zeta <= params.alpha * (1.0 + 1e-12)) {
        return Err(Error::InvalidParameter {
            name: "zeta",
            reason: "propagation depth must lie in [0, alpha]",
        });
    }
    Ok(())
}

/// Fields at depth `zeta` for arbitrary strong-field magnitudes and
/// incident weak fields, including `Ω_s(0) = 0` (signal generation).
pub fn propagate_general(
    params: &MediumParams,
    incident: &FieldPair,
    zeta: f64,
) -> Result<FieldPair> {
    check_depth(params, zeta)?;
    if zeta == 0.0 {
        return Ok(*incident);
    }
    let (oc, od) = (params.omega_c, params.omega_d);
    let (p0, s0) = (incident.omega_p, incident.omega_s);
    let omega_sq = params.omega_sq();
    let e = propagation_factor(params.xi()?, zeta);
    let mix_p = oc * od.conj() * s0;
    let mix_s = od * oc.conj() * p0;
    Ok(FieldPair {
        omega_p: ((oc.norm_sqr() * p0 + mix_p) + (od.norm_sqr() * p0 - mix_p) * e) / omega_sq,
        omega_s: ((od.norm_sqr() * s0 + mix_s) + (oc.norm_sqr() * s0 - mix_s) * e) / omega_sq,
    })
}

/// `Ω_p(ζ)/Ω_p(0)` and `Ω_s(ζ)/Ω_s(0)` for `|Ω_c| = |Ω_d|` and equal
/// incident magnitudes, as functions of the loop phase alone.
pub fn propagate_balanced(phi_r: f64, params: &MediumParams, zeta: f64) -> Result<(C64, C64)> {
    check_depth(params, zeta)?;
    if !params.is_balanced_drive() {
        return Err(Error::Unbalanced);
    }
    if zeta == 0.0 {
        return Ok((ONE, ONE));
    }
    let e = propagation_factor(params.xi()?, zeta);
    Ok(balanced_ratios(phi_r, e))
}

pub(crate) fn balanced_ratios(phi_r: f64, e: C64) -> (C64, C64) {
    let u = C64::from_polar(1.0, -phi_r);
    let probe = 0.5 * ((ONE + u) + (ONE - u) * e);
    let uc = u.conj();
    let signal = 0.5 * ((ONE + uc) + (ONE - uc) * e);
    (probe, signal)
}

/// A sampled trajectory of both field ratios through the medium.
#[derive(Debug, Clone, PartialEq)]
pub struct PropagationCurve {
    pub zeta: Vec<f64>,
    pub probe: Vec<C64>,
    pub signal: Vec<C64>,
}

/// Selects one of the two weak fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Probe,
    Signal,
}

impl PropagationCurve {
    pub fn len(&self) -> usize {
        self.zeta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeta.is_empty()
    }

    pub fn ratios(&self, which: Field) -> &[C64] {
        match which {
            Field::Probe => &self.probe,
            Field::Signal => &self.signal,
        }
    }

    pub fn terminal(&self) -> (C64, C64) {
        let n = self.len() - 1;
        (self.probe[n], self.signal[n])
    }

    /// ζ-continuous phase of one field along the curve.
    pub fn unwrapped_phase(&self, which: Field) -> Vec<f64> {
        unwrap_samples(self.ratios(which))
    }
}

/// `n_samples` evenly spaced depths on `[0, α]`, the last exactly `α`;
/// a single point for `α = 0`.
pub fn uniform_grid(alpha: f64, n_samples: usize) -> Result<Vec<f64>> {
    if n_samples < 2 {
        return Err(Error::InvalidParameter {
            name: "n_samples",
            reason: "a curve needs at least two samples",
        });
    }
    if alpha == 0.0 {
        return Ok(alloc::vec![0.0]);
    }
    let step = alpha / (n_samples - 1) as f64;
    Ok((0..n_samples)
        .map(|k| if k + 1 == n_samples { alpha } else { k as f64 * step })
        .collect())
}

/// Samples [`propagate_balanced`] on a uniform ζ grid over `[0, α]`.
/// For `α = 0` the curve is the single boundary point.
pub fn trace_curve(phi_r: f64, params: &MediumParams, n_samples: usize) -> Result<PropagationCurve> {
    let zeta = uniform_grid(params.alpha, n_samples)?;
    let mut probe = Vec::with_capacity(zeta.len());
    let mut signal = Vec::with_capacity(zeta.len());
    for &z in &zeta {
        let (p, s) = propagate_balanced(phi_r, params, z)?;
        probe.push(p);
        signal.push(s);
    }
    Ok(PropagationCurve { zeta, probe, signal })
}

/// Samples [`propagate_general`]; both incident fields must be nonzero so
/// that the ratios are defined.
pub fn trace_curve_general(
    params: &MediumParams,
    incident: &FieldPair,
    n_samples: usize,
) -> Result<PropagationCurve> {
    if incident.omega_p.norm_sqr() == 0.0 || incident.omega_s.norm_sqr() == 0.0 {
        return Err(Error::ZeroField);
    }
    let zeta = uniform_grid(params.alpha, n_samples)?;
    let mut probe = Vec::with_capacity(zeta.len());
    let mut signal = Vec::with_capacity(zeta.len());
    for &z in &zeta {
        let f = propagate_general(params, incident, z)?;
        probe.push(f.omega_p / incident.omega_p);
        signal.push(f.omega_s / incident.omega_s);
    }
    Ok(PropagationCurve { zeta, probe, signal })
}

/// `(|r|², arg r)` with the phase on `(−π, π]`.
pub fn transmission_and_phase(ratio: C64) -> Result<(f64, f64)> {
    if ratio.norm_sqr() == 0.0 {
        return Err(Error::ZeroField);
    }
    Ok((ratio.norm_sqr(), ratio.arg()))
}

/// Terminal transmission and accumulated (unwrapped) phase of both fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TerminalResponse {
    pub transmission_probe: f64,
    pub transmission_signal: f64,
    pub phase_probe: f64,
    pub phase_signal: f64,
}

impl PropagationCurve {
    pub fn terminal_response(&self) -> TerminalResponse {
        let (p, s) = self.terminal();
        let last = |v: Vec<f64>| v[v.len() - 1];
        TerminalResponse {
            transmission_probe: p.norm_sqr(),
            transmission_signal: s.norm_sqr(),
            phase_probe: last(self.unwrapped_phase(Field::Probe)),
            phase_signal: last(self.unwrapped_phase(Field::Signal)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::FieldPair;
    use core::f64::consts::PI;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Steady state from the Bloch equations by Gaussian elimination,
    /// independent of the closed form.
    fn obe_steady_oracle(p: &MediumParams, f: &FieldPair) -> [C64; 3] {
        let h = c(0.0, 0.5);
        // unknowns (ρ41, ρ31, ρ21); A x = −b
        let mut a = [
            [c(-0.5, p.delta), c(0.0, 0.0), h * p.omega_d, -h * f.omega_s],
            [c(0.0, 0.0), c(-0.5, 0.0), h * p.omega_c, -h * f.omega_p],
            [h * p.omega_d.conj(), h * p.omega_c.conj(), c(-p.gamma21 / 2.0, 0.0), c(0.0, 0.0)],
        ];
        for col in 0..3 {
            let piv = (col..3)
                .max_by(|&i, &j| a[i][col].norm().partial_cmp(&a[j][col].norm()).unwrap())
                .unwrap();
            a.swap(col, piv);
            for row in 0..3 {
                if row != col {
                    let k = a[row][col] / a[col][col];
                    let pivot = a[col];
                    for (x, v) in a[row].iter_mut().zip(pivot).skip(col) {
                        *x -= k * v;
                    }
                }
            }
        }
        [a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]]
    }

    #[test]
    fn zero_source_gives_zero_coherence() {
        let r = coherences_steady(&MediumParams::balanced(1.0, 3.0), &FieldPair::ZERO).unwrap();
        assert_eq!(r, CoherenceState::ZERO);
    }

    #[test]
    fn matched_fields_are_dark() {
        let p = MediumParams::new(1.0, 0.0, C64::from_polar(1.0, 0.4), C64::from_polar(1.0, -1.1));
        let op = c(0.003, 0.004);
        let f = FieldPair::new(op, p.omega_d * op / p.omega_c);
        let r = coherences_steady(&p, &f).unwrap();
        assert!(r.rho31.norm() < 1e-18 && r.rho41.norm() < 1e-18);
    }

    #[test]
    fn antisymmetric_fields_on_resonance() {
        let p = MediumParams::balanced(1.0, 0.0);
        let f = FieldPair::new(c(0.01, 0.0), c(-0.01, 0.0));
        let r = coherences_steady(&p, &f).unwrap();
        // D = −2i: ρ31 = 0.02/(−2i) = 0.01i, ρ41 = −0.01i, ρ21 = 0
        assert!((r.rho31 - c(0.0, 0.01)).norm() < 1e-17);
        assert!((r.rho41 - c(0.0, -0.01)).norm() < 1e-17);
        assert!(r.rho21.norm() < 1e-17);
        let o = obe_steady_oracle(&p, &f);
        assert!((o[0] - r.rho41).norm() < 1e-15);
        assert!((o[1] - r.rho31).norm() < 1e-15);
    }

    #[test]
    fn rejects_dephasing() {
        let p = MediumParams::balanced(1.0, 0.0).with_dephasing(0.1);
        assert_eq!(
            propagate_general(&p, &FieldPair::ZERO, 0.5),
            Err(Error::DephasingUnsupported)
        );
        assert_eq!(coherences_steady(&p, &FieldPair::ZERO), Err(Error::DephasingUnsupported));
    }

    #[test]
    fn rejects_depth_outside_medium() {
        let p = MediumParams::balanced(1.0, 0.0);
        assert!(propagate_general(&p, &FieldPair::ZERO, 1.5).is_err());
        assert!(propagate_balanced(0.0, &p, -0.1).is_err());
    }

    #[test]
    fn rejects_unbalanced_drive() {
        let p = MediumParams::new(10.0, 0.0, c(1.0, 0.0), c(2.0, 0.0));
        assert_eq!(propagate_balanced(1.0, &p, 5.0), Err(Error::Unbalanced));
    }

    #[test]
    fn boundary_identity() {
        let p = MediumParams::new(10.0, 3.0, c(1.0, 0.5), c(0.3, -2.0));
        let f = FieldPair::new(c(0.01, 0.002), c(-0.004, 0.0));
        assert_eq!(propagate_general(&p, &f, 0.0).unwrap(), f);
    }

    #[test]
    fn exponential_factor_at_large_detuning() {
        let e = propagation_factor(MediumParams::balanced(100.0, 34.2).xi().unwrap(), 100.0);
        assert!((e - c(0.10524240163108398, -0.9523904367058471)).norm() < 1e-12);
    }

    #[test]
    fn no_signal_transmission_at_apm_detuning() {
        let p = MediumParams::balanced(100.0, 16.5);
        let out = propagate_general(&p, &FieldPair::probe_only(c(0.01, 0.0)), 100.0).unwrap();
        let ratio = out.omega_p / 0.01;
        assert!((ratio - c(0.0867228858734786, -0.050830650664180806)).norm() < 1e-12);
        let (t, ph) = transmission_and_phase(ratio).unwrap();
        assert!((t - 0.010104613981168376).abs() < 1e-12);
        assert!((ph + 0.530156528749808).abs() < 1e-12);
    }

    #[test]
    fn general_matches_ode_integration() {
        // RK4 on dΩ/dζ = (i/2)ρ(Ω) with ρ from the elimination oracle
        let p = MediumParams::new(30.0, 5.0, C64::from_polar(1.2, 0.3), C64::from_polar(0.8, -0.7));
        let f0 = FieldPair::new(c(0.01, 0.0), c(0.003, 0.004));
        let rhs = |f: FieldPair| {
            let r = obe_steady_oracle(&p, &f);
            FieldPair::new(c(0.0, 0.5) * r[1], c(0.0, 0.5) * r[0])
        };
        let add = |a: FieldPair, b: FieldPair, k: f64| {
            FieldPair::new(a.omega_p + b.omega_p * k, a.omega_s + b.omega_s * k)
        };
        let n = 6000;
        let h = 30.0 / n as f64;
        let mut f = f0;
        for _ in 0..n {
            let k1 = rhs(f);
            let k2 = rhs(add(f, k1, h / 2.0));
            let k3 = rhs(add(f, k2, h / 2.0));
            let k4 = rhs(add(f, k3, h));
            f = add(add(add(add(f, k1, h / 6.0), k2, h / 3.0), k3, h / 3.0), k4, h / 6.0);
        }
        let g = propagate_general(&p, &f0, 30.0).unwrap();
        assert!((g.omega_p - f.omega_p).norm() < 1e-12);
        assert!((g.omega_s - f.omega_s).norm() < 1e-12);
    }

    #[test]
    fn dark_configuration_is_transparent() {
        for &(alpha, delta) in &[(0.0, 0.0), (1.0, 0.0), (100.0, 16.5), (37.0, -4.0)] {
            let p = MediumParams::balanced(alpha, delta);
            let (rp, rs) = propagate_balanced(0.0, &p, alpha).unwrap();
            assert_eq!(rp, ONE);
            assert_eq!(rs, ONE);
        }
    }

    #[test]
    fn opaque_configuration_on_resonance() {
        for &alpha in &[1.0, 5.0, 10.0] {
            let p = MediumParams::balanced(alpha, 0.0);
            let (rp, rs) = propagate_balanced(PI, &p, alpha).unwrap();
            for r in [rp, rs] {
                let (t, ph) = transmission_and_phase(r).unwrap();
                assert!((t - libm::exp(-alpha)).abs() < 1e-12);
                assert!(ph.abs() < 1e-12, "phase {ph} at alpha {alpha}");
            }
        }
    }

    #[test]
    fn transmission_and_phase_basics() {
        assert_eq!(transmission_and_phase(ONE).unwrap(), (1.0, 0.0));
        let r = c(libm::exp(-50.0), 0.0);
        assert_eq!(transmission_and_phase(r).unwrap(), (libm::exp(-100.0), 0.0));
        assert_eq!(transmission_and_phase(c(0.0, 0.0)), Err(Error::ZeroField));
    }

    #[test]
    fn curve_single_point_for_zero_depth() {
        let c0 = trace_curve(2.0, &MediumParams::balanced(0.0, 5.0), 100).unwrap();
        assert_eq!(c0.len(), 1);
        assert_eq!(c0.terminal(), (ONE, ONE));
    }

    #[test]
    fn curve_on_resonance_opaque_is_real_segment() {
        let params = MediumParams::balanced(100.0, 0.0);
        let curve = trace_curve(PI, &params, 501).unwrap();
        assert_eq!(curve.probe[0], ONE);
        for (z, r) in curve.zeta.iter().zip(&curve.probe) {
            assert!((r.re - libm::exp(-z / 2.0)).abs() < 1e-15);
            assert!(r.im.abs() < 1e-16);
        }
        assert!(curve.zeta.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(*curve.zeta.last().unwrap(), 100.0);
    }

    #[test]
    fn detuned_probe_phase_returns_to_zero_near_forty() {
        let curve = trace_curve(5.0, &MediumParams::balanced(100.0, 16.5), DEFAULT_CURVE_SAMPLES).unwrap();
        let ph = curve.unwrapped_phase(Field::Probe);
        let k = (1..ph.len()).find(|&k| ph[k - 1] < 0.0 && ph[k] >= 0.0).unwrap();
        assert!((curve.zeta[k] - 40.0).abs() < 2.0, "crossing at {}", curve.zeta[k]);
        assert!(ph[ph.len() - 1] > 1.0);
    }

    #[test]
    fn rejects_short_curve() {
        assert!(trace_curve(1.0, &MediumParams::balanced(1.0, 0.0), 1).is_err());
    }

    #[test]
    fn obe_consistency_along_curve() {
        // central differences of the traced ratios reproduce (i/2)ρ at the
        // local fields, to O(h²)
        let params = MediumParams::balanced(60.0, 7.0);
        let amp = 0.01;
        let incident = FieldPair::with_relative_phase(&params, amp, 2.3);
        let curve = trace_curve_general(&params, &incident, 3001).unwrap();
        let h = curve.zeta[1] - curve.zeta[0];
        let mut worst = 0.0f64;
        for k in 1..curve.len() - 1 {
            let local = FieldPair::new(curve.probe[k] * incident.omega_p, curve.signal[k] * incident.omega_s);
            let rho = coherences_steady(&params, &local).unwrap();
            let dp = (curve.probe[k + 1] - curve.probe[k - 1]) * incident.omega_p / (2.0 * h);
            let ds = (curve.signal[k + 1] - curve.signal[k - 1]) * incident.omega_s / (2.0 * h);
            worst = worst
                .max((dp - c(0.0, 0.5) * rho.rho31).norm() / amp)
                .max((ds - c(0.0, 0.5) * rho.rho41).norm() / amp);
        }
        // |d³Ω/dζ³| ≤ |Ω|/(8|ξ|³) ~ 3e-4·amp here; h²/6 ≈ 1e-4
        assert!(worst < 1e-7, "worst {worst}");
    }

    proptest! {
        #[test]
        fn balanced_and_general_agree(
            alpha in 0.0f64..150.0,
            delta in -50.0f64..50.0,
            phi_r in 0.0f64..core::f64::consts::TAU,
            phase_c in -3.0f64..3.0,
            mag in 0.1f64..5.0,
            frac in 0.0f64..1.0,
        ) {
            let params = MediumParams::new(alpha, delta, C64::from_polar(mag, phase_c), C64::from_polar(mag, -0.7));
            let incident = FieldPair::with_relative_phase(&params, 0.01, phi_r);
            let z = alpha * frac;
            let g = propagate_general(&params, &incident, z).unwrap();
            let (rp, rs) = propagate_balanced(phi_r, &params, z).unwrap();
            let gp = g.omega_p / incident.omega_p;
            let gs = g.omega_s / incident.omega_s;
            prop_assert!((gp - rp).norm() <= 1e-12 * gp.norm().max(1.0));
            prop_assert!((gs - rs).norm() <= 1e-12 * gs.norm().max(1.0));
        }

        #[test]
        fn energy_bound(
            alpha in 0.0f64..200.0,
            delta in -60.0f64..60.0,
            phi_r in 0.0f64..core::f64::consts::TAU,
        ) {
            let (rp, rs) = propagate_balanced(phi_r, &MediumParams::balanced(alpha, delta), alpha).unwrap();
            prop_assert!(rp.norm_sqr() + rs.norm_sqr() <= 2.0 + 1e-12);
        }

        #[test]
        fn resonant_symmetry(
            alpha in 0.0f64..100.0,
            phi_r in 0.0f64..core::f64::consts::TAU,
        ) {
            let (rp, rs) = propagate_balanced(phi_r, &MediumParams::balanced(alpha, 0.0), alpha).unwrap();
            prop_assert!((rp.norm_sqr() - rs.norm_sqr()).abs() < 1e-14);
            // on resonance the signal ratio is the conjugate of the probe's
            prop_assert!((rp - rs.conj()).norm() < 1e-14);
        }
    }
}
