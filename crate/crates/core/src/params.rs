//! Medium and drive configuration, weak-field boundary values, and the
//! quantities derived from them.

use crate::phase::wrap_2pi;
use crate::{Error, Result, C64};

/// Default bound on `|Ω_p|/|Ω_c|` and `|Ω_s|/|Ω_d|` for the first-order
/// (weak probe/signal) treatment to hold.
pub const DEFAULT_PERTURBATIVE_RATIO: f64 = 0.1;

/// Medium plus strong-field configuration, all rates in units of Γ.
///
/// Both transitions share one optical depth `alpha` and one excited-state
/// decay `Γ = 1`. The coupling and driving Rabi frequencies carry their
/// phases `φ_c`, `φ_d` inside the complex amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams {
    pub alpha: f64,
    pub delta: f64,
    pub gamma21: f64,
    pub omega_c: C64,
    pub omega_d: C64,
}

impl MediumParams {
    pub fn new(alpha: f64, delta: f64, omega_c: C64, omega_d: C64) -> Self {
        Self {
            alpha,
            delta,
            gamma21: 0.0,
            omega_c,
            omega_d,
        }
    }

    /// `Ω_c = Ω_d = 1Γ`, `γ21 = 0`: the drive used for every balanced result.
    pub fn balanced(alpha: f64, delta: f64) -> Self {
        Self::new(alpha, delta, C64::new(1.0, 0.0), C64::new(1.0, 0.0))
    }

    pub fn with_dephasing(mut self, gamma21: f64) -> Self {
        self.gamma21 = gamma21;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.alpha >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                reason: "optical depth must be finite and non-negative",
            });
        }
        if !self.delta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "delta",
                reason: "detuning must be finite",
            });
        }
        if !(self.gamma21.is_finite() && self.gamma21 >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "gamma21",
                reason: "dephasing must be finite and non-negative",
            });
        }
        if !(self.omega_c.is_finite() && self.omega_d.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "omega",
                reason: "Rabi frequencies must be finite",
            });
        }
        if self.omega_sq() == 0.0 {
            return Err(Error::NoDriveField);
        }
        Ok(())
    }

    /// `|Ω|² = |Ω_c|² + |Ω_d|²`.
    pub fn omega_sq(&self) -> f64 {
        self.omega_c.norm_sqr() + self.omega_d.norm_sqr()
    }

    /// `ξ = i + 2|Ω_c|²Δ / |Ω|²`.
    pub fn xi(&self) -> Result<C64> {
        let omega_sq = self.omega_sq();
        if omega_sq == 0.0 {
            return Err(Error::NoDriveField);
        }
        Ok(C64::new(
            2.0 * self.omega_c.norm_sqr() * self.delta / omega_sq,
            1.0,
        ))
    }

    /// True when `|Ω_c| = |Ω_d|` to relative precision `1e-12`.
    pub fn is_balanced_drive(&self) -> bool {
        let (c, d) = (self.omega_c.norm(), self.omega_d.norm());
        (c - d).abs() <= 1e-12 * c.max(d)
    }
}

/// Weak probe and signal Rabi amplitudes at one point of the medium.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldPair {
    pub omega_p: C64,
    pub omega_s: C64,
}

impl FieldPair {
    pub const ZERO: FieldPair = FieldPair {
        omega_p: C64::new(0.0, 0.0),
        omega_s: C64::new(0.0, 0.0),
    };

    pub fn new(omega_p: C64, omega_s: C64) -> Self {
        Self { omega_p, omega_s }
    }

    /// Equal-magnitude probe and signal with `φ_p = 0` and the signal phase
    /// chosen so that the loop phase with `params`' strong fields is `phi_r`.
    pub fn with_relative_phase(params: &MediumParams, amplitude: f64, phi_r: f64) -> Self {
        let phi_s = params.omega_d.arg() - params.omega_c.arg() - phi_r;
        Self {
            omega_p: C64::new(amplitude, 0.0),
            omega_s: C64::from_polar(amplitude, phi_s),
        }
    }

    /// Probe only; the signal is generated inside the medium.
    pub fn probe_only(omega_p: C64) -> Self {
        Self {
            omega_p,
            omega_s: C64::new(0.0, 0.0),
        }
    }

    pub fn scale(self, k: C64) -> Self {
        Self {
            omega_p: self.omega_p * k,
            omega_s: self.omega_s * k,
        }
    }
}

/// Quantities derived from a medium and its incident weak fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities {
    pub omega_sq: f64,
    pub xi: C64,
    /// `φ_r` in `[0, 2π)`.
    pub relative_phase: f64,
}

/// Evaluates `|Ω|²`, `ξ` and the loop phase `φ_r`.
///
/// The loop phase is the argument of `Ω_p Ω_c* Ω_s* Ω_d`, so it is exactly
/// invariant under a common phase rotation of all four fields. A zero field
/// contributes phase 0.
pub fn derive(params: &MediumParams, boundary: &FieldPair) -> Result<DerivedQuantities> {
    params.validate()?;
    let loop_product = phasor(boundary.omega_p)
        * phasor(params.omega_c).conj()
        * phasor(boundary.omega_s).conj()
        * phasor(params.omega_d);
    Ok(DerivedQuantities {
        omega_sq: params.omega_sq(),
        xi: params.xi()?,
        relative_phase: wrap_2pi(loop_product.arg()),
    })
}

fn phasor(z: C64) -> C64 {
    if z.norm_sqr() == 0.0 {
        C64::new(1.0, 0.0)
    } else {
        z / z.norm()
    }
}

/// Outcome of [`validate_perturbative`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbativeReport {
    /// `|Ω_p| / |Ω_c|` (0 for a zero probe, ∞ for a zero coupling field).
    pub probe_ratio: f64,
    /// `|Ω_s| / |Ω_d|`.
    pub signal_ratio: f64,
    pub threshold: f64,
}

impl PerturbativeReport {
    pub fn is_valid(&self) -> bool {
        self.probe_violated().is_none() && self.signal_violated().is_none()
    }

    pub fn probe_violated(&self) -> Option<f64> {
        (self.probe_ratio > self.threshold).then_some(self.probe_ratio)
    }

    pub fn signal_violated(&self) -> Option<f64> {
        (self.signal_ratio > self.threshold).then_some(self.signal_ratio)
    }
}

impl core::fmt::Display for PerturbativeReport {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.is_valid() {
            return write!(f, "perturbative (threshold {})", self.threshold);
        }
        write!(f, "outside perturbative regime:")?;
        if let Some(r) = self.probe_violated() {
            write!(f, " |Ω_p|/|Ω_c| = {} > {}", r, self.threshold)?;
        }
        if let Some(r) = self.signal_violated() {
            write!(f, " |Ω_s|/|Ω_d| = {} > {}", r, self.threshold)?;
        }
        Ok(())
    }
}

/// Checks the weak-field assumption `|Ω_p| ≪ |Ω_c|`, `|Ω_s| ≪ |Ω_d|`.
pub fn validate_perturbative(
    params: &MediumParams,
    boundary: &FieldPair,
    ratio_threshold: f64,
) -> PerturbativeReport {
    PerturbativeReport {
        probe_ratio: weak_strong_ratio(boundary.omega_p, params.omega_c),
        signal_ratio: weak_strong_ratio(boundary.omega_s, params.omega_d),
        threshold: ratio_threshold,
    }
}

fn weak_strong_ratio(weak: C64, strong: C64) -> f64 {
    let w = weak.norm();
    if w == 0.0 {
        0.0
    } else {
        w / strong.norm()
    }
}
