//! One time step of the local Bloch equations and one sweep of the field
//! equations across the medium.

use crate::linalg::{Matrix, Matrix3};
use crate::params::{FieldPair, MediumParams};
use crate::steady_state::CoherenceState;
use crate::{Result, C64};

const HALF_I: C64 = C64::new(0.0, 0.5);

/// Exact propagator for the linear Bloch equations over one step with the
/// weak fields held fixed.
///
/// The state `(ρ41, ρ31, ρ21)` obeys `dρ/dt = Aρ + b` with
/// `A = [[iΔ − ½, 0, (i/2)Ω_d], [0, −½, (i/2)Ω_c], [(i/2)Ω_d*, (i/2)Ω_c*, −γ21/2]]`
/// and `b = ((i/2)Ω_s, (i/2)Ω_p, 0)`, so one step is
/// `ρ ← e^{A·dt} ρ + (∫₀^dt e^{As} ds) b`. The fixed point is the exact
/// steady state for any `dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObePropagator {
    transfer: Matrix3,
    from_signal: [C64; 3],
    from_probe: [C64; 3],
}

impl ObePropagator {
    pub fn new(params: &MediumParams, dt: f64) -> Result<Self> {
        params.validate()?;
        let (oc, od) = (params.omega_c, params.omega_d);
        let z = C64::new(0.0, 0.0);
        let a = Matrix([
            [C64::new(-0.5, params.delta), z, HALF_I * od],
            [z, C64::new(-0.5, 0.0), HALF_I * oc],
            [HALF_I * od.conj(), HALF_I * oc.conj(), C64::new(-0.5 * params.gamma21, 0.0)],
        ]);
        let (transfer, w) = a.exp_and_integral(dt);
        let column = |j: usize| [HALF_I * w.0[0][j], HALF_I * w.0[1][j], HALF_I * w.0[2][j]];
        Ok(Self {
            transfer,
            from_signal: column(0),
            from_probe: column(1),
        })
    }

    pub fn step(&self, state: &CoherenceState, fields: &FieldPair) -> CoherenceState {
        let v = self.transfer.mul_vec(&[state.rho41, state.rho31, state.rho21]);
        let (s, p) = (fields.omega_s, fields.omega_p);
        CoherenceState {
            rho41: v[0] + self.from_signal[0] * s + self.from_probe[0] * p,
            rho31: v[1] + self.from_signal[1] * s + self.from_probe[1] * p,
            rho21: v[2] + self.from_signal[2] * s + self.from_probe[2] * p,
        }
    }
}

/// Advances one point's coherences by `dt`. Builds the propagator on every
/// call; loops should hold an [`ObePropagator`] instead.
pub fn step_coherences(
    state: &CoherenceState,
    fields: &FieldPair,
    params: &MediumParams,
    dt: f64,
) -> Result<CoherenceState> {
    Ok(ObePropagator::new(params, dt)?.step(state, fields))
}

/// Integrates `∂Ω_p/∂ζ = (i/2)ρ31`, `∂Ω_s/∂ζ = (i/2)ρ41` from the
/// incident values with the trapezoid rule on a uniform grid of spacing
/// `dz`, writing one field pair per coherence sample.
pub fn step_fields(incident: FieldPair, coherences: &[CoherenceState], dz: f64, out: &mut [FieldPair]) {
    debug_assert_eq!(coherences.len(), out.len());
    let Some(first) = out.first_mut() else {
        return;
    };
    *first = incident;
    let k = HALF_I * (0.5 * dz);
    for i in 1..out.len() {
        let (a, b) = (&coherences[i - 1], &coherences[i]);
        let prev = out[i - 1];
        out[i] = FieldPair {
            omega_p: prev.omega_p + k * (a.rho31 + b.rho31),
            omega_s: prev.omega_s + k * (a.rho41 + b.rho41),
        };
    }
}
