use alloc::vec;
use alloc::vec::Vec;

use super::obe::{step_fields, ObePropagator};
use super::pulse::PulseShape;
use crate::params::{FieldPair, MediumParams};
use crate::steady_state::CoherenceState;
use crate::{Error, Result, C64};

/// Space/time discretization: `n_z` points on `ζ ∈ [0, α]`, steps of `dt`
/// up to `t_final` (all times in `1/Γ`).
///
/// Each step couples a point's coherence to its own field with strength
/// about `dz·dt/4`, where `dz = α/(n_z − 1)`; keeping that well below one
/// keeps the split scheme stable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimGrid {
    pub n_z: usize,
    pub dt: f64,
    pub t_final: f64,
}

impl Default for SimGrid {
    fn default() -> Self {
        Self {
            n_z: 200,
            dt: 0.02,
            t_final: 400.0,
        }
    }
}

impl SimGrid {
    pub const MIN_POINTS: usize = 16;

    pub fn validate(&self) -> Result<()> {
        if self.n_z < Self::MIN_POINTS {
            return Err(Error::InvalidParameter {
                name: "n_z",
                reason: "need at least 16 spatial points",
            });
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "dt",
                reason: "time step must be positive and finite",
            });
        }
        if !(self.t_final >= self.dt && self.t_final.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "t_final",
                reason: "must cover at least one time step",
            });
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        libm::round(self.t_final / self.dt) as usize
    }
}

/// Which space-time maps to keep besides the exit waveforms. A stride of
/// zero records nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Recording {
    pub time_stride: usize,
    pub zeta_stride: usize,
    pub coherences: bool,
}

/// Values sampled on a (time × ζ) lattice, row-major in time.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeMap<T> {
    pub zeta: Vec<f64>,
    pub time: Vec<f64>,
    pub values: Vec<T>,
}

impl<T: Copy> SpaceTimeMap<T> {
    pub fn get(&self, it: usize, iz: usize) -> T {
        self.values[it * self.zeta.len() + iz]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PulseSimResult {
    pub time: Vec<f64>,
    pub input_probe: Vec<C64>,
    pub input_signal: Vec<C64>,
    pub output_probe: Vec<C64>,
    pub output_signal: Vec<C64>,
    /// `∫|Ω(α,t)|²dt / ∫|Ω(0,t)|²dt`, zero when nothing was sent in.
    pub probe_energy_transmission: f64,
    pub signal_energy_transmission: f64,
    /// Difference of the `|Ω|²`-weighted mean times of exit and entrance.
    pub probe_group_delay: f64,
    pub signal_group_delay: f64,
    pub field_map: Option<SpaceTimeMap<FieldPair>>,
    pub coherence_map: Option<SpaceTimeMap<CoherenceState>>,
}

pub fn simulate(
    params: &MediumParams,
    probe: &PulseShape,
    signal: &PulseShape,
    grid: &SimGrid,
) -> Result<PulseSimResult> {
    simulate_with(params, probe, signal, grid, &Recording::default())
}

fn recorded_points(n: usize, stride: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).step_by(stride.max(1)).collect();
    if idx.last() != Some(&(n - 1)) {
        idx.push(n - 1);
    }
    idx
}

/// Integrates the first-order Maxwell-Bloch equations for the two weak
/// fields through a medium that starts with every coherence at zero.
///
/// Each step advances all coherences exactly under the fields of the
/// previous step, then rebuilds the fields by integrating across `ζ` from
/// the new incident values. Fails with [`Error::Unstable`] as soon as a
/// coherence exceeds 1 or a field exceeds ten times the largest incident
/// amplitude.
pub fn simulate_with(
    params: &MediumParams,
    probe: &PulseShape,
    signal: &PulseShape,
    grid: &SimGrid,
    recording: &Recording,
) -> Result<PulseSimResult> {
    params.validate()?;
    probe.validate()?;
    signal.validate()?;
    grid.validate()?;

    let n_z = grid.n_z;
    let dz = params.alpha / (n_z - 1) as f64;
    let prop = ObePropagator::new(params, grid.dt)?;
    let bound = 10.0 * probe.amplitude.norm().max(signal.amplitude.norm());

    let zeta_idx = recorded_points(n_z, recording.zeta_stride);
    let zeta_rec: Vec<f64> = zeta_idx.iter().map(|&i| i as f64 * dz).collect();
    let mut field_map = (recording.time_stride > 0).then(|| SpaceTimeMap {
        zeta: zeta_rec.clone(),
        time: Vec::new(),
        values: Vec::new(),
    });
    let mut coherence_map = (recording.time_stride > 0 && recording.coherences).then(|| SpaceTimeMap {
        zeta: zeta_rec,
        time: Vec::new(),
        values: Vec::new(),
    });

    let steps = grid.steps();
    let mut out = PulseSimResult {
        time: Vec::with_capacity(steps + 1),
        input_probe: Vec::with_capacity(steps + 1),
        input_signal: Vec::with_capacity(steps + 1),
        output_probe: Vec::with_capacity(steps + 1),
        output_signal: Vec::with_capacity(steps + 1),
        probe_energy_transmission: 0.0,
        signal_energy_transmission: 0.0,
        probe_group_delay: 0.0,
        signal_group_delay: 0.0,
        field_map: None,
        coherence_map: None,
    };

    let mut coh = vec![CoherenceState::ZERO; n_z];
    let mut fields = vec![FieldPair::ZERO; n_z];
    for n in 0..=steps {
        let t = n as f64 * grid.dt;
        if n > 0 {
            for (c, f) in coh.iter_mut().zip(&fields) {
                *c = prop.step(c, f);
                let m = c.max_abs();
                if m.is_nan() || m > 1.0 {
                    return Err(Error::Unstable { time: t });
                }
            }
        }
        let incident = FieldPair::new(probe.sample(t), signal.sample(t));
        step_fields(incident, &coh, dz, &mut fields);
        let exit = fields[n_z - 1];
        if !(exit.omega_p.norm() <= bound && exit.omega_s.norm() <= bound) && bound > 0.0
            || fields.iter().any(|f| !f.omega_p.is_finite() || !f.omega_s.is_finite())
        {
            return Err(Error::Unstable { time: t });
        }

        out.time.push(t);
        out.input_probe.push(incident.omega_p);
        out.input_signal.push(incident.omega_s);
        out.output_probe.push(exit.omega_p);
        out.output_signal.push(exit.omega_s);

        if recording.time_stride > 0 && n % recording.time_stride == 0 {
            if let Some(map) = field_map.as_mut() {
                map.time.push(t);
                map.values.extend(zeta_idx.iter().map(|&i| fields[i]));
            }
            if let Some(map) = coherence_map.as_mut() {
                map.time.push(t);
                map.values.extend(zeta_idx.iter().map(|&i| coh[i]));
            }
        }
    }

    out.probe_energy_transmission = energy_ratio(&out.time, &out.input_probe, &out.output_probe);
    out.signal_energy_transmission = energy_ratio(&out.time, &out.input_signal, &out.output_signal);
    out.probe_group_delay = mean_time(&out.time, &out.output_probe) - mean_time(&out.time, &out.input_probe);
    out.signal_group_delay = mean_time(&out.time, &out.output_signal) - mean_time(&out.time, &out.input_signal);
    out.field_map = field_map;
    out.coherence_map = coherence_map;
    Ok(out)
}

fn trapezoid<F: Fn(usize) -> f64>(time: &[f64], f: F) -> f64 {
    (1..time.len())
        .map(|i| 0.5 * (time[i] - time[i - 1]) * (f(i) + f(i - 1)))
        .sum()
}

fn energy(time: &[f64], field: &[C64]) -> f64 {
    trapezoid(time, |i| field[i].norm_sqr())
}

fn energy_ratio(time: &[f64], input: &[C64], output: &[C64]) -> f64 {
    let e_in = energy(time, input);
    if e_in > 0.0 {
        energy(time, output) / e_in
    } else {
        0.0
    }
}

fn mean_time(time: &[f64], field: &[C64]) -> f64 {
    let e = energy(time, field);
    if e > 0.0 {
        trapezoid(time, |i| time[i] * field[i].norm_sqr()) / e
    } else {
        0.0
    }
}
