//! Phase jumps of the balanced-drive solution.
//!
//! A field's terminal phase jumps as a function of `φ_r` when its
//! trajectory in the complex plane passes through the origin inside the
//! medium. For the probe this requires the exponent's imaginary part
//! `I = (ζ/2)(Δ/Γ)/((Δ/Γ)² + 1)` to reach an odd multiple of `π/2`, which
//! fixes the critical depth, and a matching loop phase.
//!
//! Negative detunings conjugate the propagation factor, which swaps the
//! roles of probe and signal: `φ_pj(−Δ) = φ_sj(Δ)`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::phase::wrap_2pi;
use crate::steady_state::{Field, PropagationCurve};
use crate::{Error, Result, C64};

/// Largest interpolated `|ratio|` accepted as a true zero by
/// [`detect_zero_crossing`]. Sampled curves resolve an exact zero to a few
/// 1e-9 at 2000 points per 100 optical depths; near misses sit orders of
/// magnitude higher.
pub const ZERO_DETECTION_TOL: f64 = 1e-6;

/// Critical depth and jump phases for one branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpSolution {
    pub n: u32,
    pub alpha_c: f64,
    pub phi_pj: f64,
    pub phi_sj: f64,
}

fn check(delta: f64, n: u32) -> Result<()> {
    if delta == 0.0 || !delta.is_finite() {
        return Err(Error::ZeroDetuning);
    }
    if n.is_multiple_of(2) {
        return Err(Error::EvenBranch(n));
    }
    Ok(())
}

/// Real and imaginary parts of the balanced exponent, `(R, I)`:
/// `R = −(α/2)/((Δ/Γ)² + 1)`, `I = (α/2)(Δ/Γ)/((Δ/Γ)² + 1)`,
/// so that `exp(−iα/(2ξ)) = exp(R − iI)`.
pub fn exponent_parts(alpha: f64, delta: f64) -> (f64, f64) {
    let d = delta * delta + 1.0;
    (-0.5 * alpha / d, 0.5 * alpha * delta / d)
}

/// `α_c = nπ((Δ/Γ)² + 1)/|Δ/Γ|`.
pub fn critical_depth(delta: f64, n: u32) -> Result<f64> {
    check(delta, n)?;
    Ok(n as f64 * PI * (delta * delta + 1.0) / delta.abs())
}

fn jump_phase(delta: f64, n: u32, sign: f64) -> Result<f64> {
    check(delta, n)?;
    let half = n as f64 * PI / 2.0;
    let s = sign * libm::sin(half) * delta.signum();
    Ok(wrap_2pi(2.0 * libm::atan(s * libm::exp(half / delta.abs()))))
}

/// Loop phase at which the probe vanishes at depth `α_c`, in `[0, 2π)`:
/// `2·atan[−sin(nπ/2)·exp(nπ/(2Δ))]`.
pub fn jump_phase_probe(delta: f64, n: u32) -> Result<f64> {
    jump_phase(delta, n, -1.0)
}

/// Loop phase at which the signal vanishes at depth `α_c`, in `[0, 2π)`.
pub fn jump_phase_signal(delta: f64, n: u32) -> Result<f64> {
    jump_phase(delta, n, 1.0)
}

pub fn jump_solution(delta: f64, n: u32) -> Result<JumpSolution> {
    Ok(JumpSolution {
        n,
        alpha_c: critical_depth(delta, n)?,
        phi_pj: jump_phase_probe(delta, n)?,
        phi_sj: jump_phase_signal(delta, n)?,
    })
}

/// First zero of one field along the curve, see [`find_zero_crossings`].
pub fn detect_zero_crossing(curve: &PropagationCurve, which: Field) -> Option<f64> {
    find_zero_crossings(curve, which, ZERO_DETECTION_TOL).into_iter().next()
}

/// Every depth at which the field passes through zero.
///
/// Each local minimum of `|ratio|` on the grid is refined by fitting a
/// complex quadratic through the three samples around it and minimizing
/// its modulus; the minimum counts as a zero when the interpolated
/// modulus is at most `tol`.
pub fn find_zero_crossings(curve: &PropagationCurve, which: Field, tol: f64) -> Vec<f64> {
    let r = curve.ratios(which);
    let z = &curve.zeta;
    let n = r.len();
    let mut zeros: Vec<f64> = Vec::new();
    if n < 3 {
        return zeros;
    }
    let mag: Vec<f64> = r.iter().map(|x| x.norm()).collect();
    for i in 0..n {
        let left = if i > 0 { mag[i - 1] } else { f64::INFINITY };
        let right = if i + 1 < n { mag[i + 1] } else { f64::INFINITY };
        if !(mag[i] < left && mag[i] <= right) {
            continue;
        }
        let c = i.clamp(1, n - 2);
        let (t, m) = quadratic_min(r[c - 1], r[c], r[c + 1]);
        if m > tol {
            continue;
        }
        // non-uniform grids: map t back piecewise-linearly
        let zeta = if t < 0.0 {
            z[c] + t * (z[c] - z[c - 1])
        } else {
            z[c] + t * (z[c + 1] - z[c])
        };
        if zeros.last().is_none_or(|&last| zeta - last > 1e-12) {
            zeros.push(zeta);
        }
    }
    zeros
}

/// Minimizes `|q(t)|` for the quadratic through `(−1, a)`, `(0, b)`,
/// `(1, c)` over `t ∈ [−1, 1]`. Returns `(t, |q(t)|)`.
fn quadratic_min(a: C64, b: C64, c: C64) -> (f64, f64) {
    let q1 = (c - a) * 0.5;
    let q2 = (c - 2.0 * b + a) * 0.5;
    let q = |t: f64| b + q1 * t + q2 * t * t;
    // start from the linear model, then Newton on d|q|²/dt
    let mut t = if q1.norm_sqr() > 0.0 {
        -(q1.conj() * b).re / q1.norm_sqr()
    } else {
        0.0
    };
    t = t.clamp(-1.0, 1.0);
    for _ in 0..50 {
        let v = q(t);
        let dv = q1 + 2.0 * q2 * t;
        let g = (v.conj() * dv).re;
        let h = dv.norm_sqr() + (v.conj() * 2.0 * q2).re;
        if h <= 0.0 {
            break;
        }
        let next = (t - g / h).clamp(-1.0, 1.0);
        if (next - t).abs() < 1e-15 {
            t = next;
            break;
        }
        t = next;
    }
    // guard against Newton settling on an endpoint worse than the centre
    [t, -1.0, 0.0, 1.0]
        .into_iter()
        .map(|s| (s, q(s).norm()))
        .fold((0.0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc })
}
