//! Steady-state coherent amplification with the balanced drive.
//!
//! With `E = exp(−iα/(2ξ))` the exit ratios are
//! `probe = ½[(1+E) + e^{−iφ_r}(1−E)]` and
//! `signal = ½[(1+E) + e^{iφ_r}(1−E)]`, so either field is maximized by
//! aligning the phase of its `(1−E)` term with `(1+E)`, giving
//! `T_max = ¼(|1+E| + |1−E|)²`. Only the detuning is left to scan.

use alloc::vec::Vec;

use crate::optimize::{local_maxima, DetuningSearch};
use crate::params::MediumParams;
use crate::phase::wrap_2pi;
use crate::steady_state::{balanced_ratios, propagation_factor};
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplificationPoint {
    pub alpha: f64,
    pub delta_opt: f64,
    pub phi_r_opt: f64,
    pub probe_transmission: f64,
    pub signal_transmission: f64,
}

fn exit_factor(alpha: f64, delta: f64) -> Result<C64> {
    let params = MediumParams::balanced(alpha, delta);
    params.validate()?;
    Ok(propagation_factor(params.xi()?, alpha))
}

fn split(e: C64) -> (C64, C64) {
    let one = C64::new(1.0, 0.0);
    (one + e, one - e)
}

/// Largest exit transmission either field can reach at `(α, Δ)`.
pub fn max_transmission(alpha: f64, delta: f64) -> Result<f64> {
    let (a, b) = split(exit_factor(alpha, delta)?);
    let s = a.norm() + b.norm();
    Ok(0.25 * s * s)
}

fn aligning_phase(from: C64, to: C64) -> f64 {
    if from.norm_sqr() == 0.0 || to.norm_sqr() == 0.0 {
        0.0
    } else {
        wrap_2pi(to.arg() - from.arg())
    }
}

/// Loop phase maximizing the signal transmission at `(α, Δ)`.
pub fn signal_maximizing_phase(alpha: f64, delta: f64) -> Result<f64> {
    let (a, b) = split(exit_factor(alpha, delta)?);
    Ok(aligning_phase(b, a))
}

/// Loop phase maximizing the probe transmission at `(α, Δ)`.
pub fn probe_maximizing_phase(alpha: f64, delta: f64) -> Result<f64> {
    let (a, b) = split(exit_factor(alpha, delta)?);
    Ok(wrap_2pi(-aligning_phase(b, a)))
}

/// For every optical depth, the detuning and loop phase maximizing the
/// signal's steady exit transmission, with both fields' transmissions at
/// that point.
pub fn amplification_sweep(alphas: &[f64], search: &DetuningSearch) -> Result<Vec<AmplificationPoint>> {
    if alphas.is_empty() {
        return Err(Error::InvalidParameter {
            name: "alpha_list",
            reason: "need at least one optical depth",
        });
    }
    if !search.is_valid() {
        return Err(Error::InvalidParameter {
            name: "delta_range",
            reason: "need lo < hi and positive step/tolerance",
        });
    }
    alphas.iter().map(|&alpha| optimum(alpha, search)).collect()
}

pub fn optimum(alpha: f64, search: &DetuningSearch) -> Result<AmplificationPoint> {
    MediumParams::balanced(alpha, 0.0).validate()?;
    let (delta, _) = local_maxima(
        |d| max_transmission(alpha, d).unwrap_or(f64::NEG_INFINITY),
        search,
    )
    .into_iter()
    .fold((search.lo, f64::NEG_INFINITY), |best, p| if p.1 > best.1 { p } else { best });
    let phi_r = signal_maximizing_phase(alpha, delta)?;
    let (probe, signal) = balanced_ratios(phi_r, exit_factor(alpha, delta)?);
    Ok(AmplificationPoint {
        alpha,
        delta_opt: delta,
        phi_r_opt: phi_r,
        probe_transmission: probe.norm_sqr(),
        signal_transmission: signal.norm_sqr(),
    })
}
