use core::f64::consts::PI;

use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PulseKind {
    /// Hard-edged: on for `t_on ≤ t < t_off`.
    Square,
    /// `sin²` ramps of length `rise_time` inside `[t_on, t_off]`.
    SmoothedSquare,
    /// Gaussian centred in `[t_on, t_off]` with that interval as FWHM.
    Gaussian,
    /// Switched on at `t_on` with a `sin²` ramp and never switched off.
    Cw,
}

/// Incident waveform `Ω(ζ = 0, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseShape {
    pub kind: PulseKind,
    pub amplitude: C64,
    pub t_on: f64,
    pub t_off: f64,
    pub rise_time: f64,
}

impl PulseShape {
    pub fn square(amplitude: C64, t_on: f64, t_off: f64) -> Self {
        Self {
            kind: PulseKind::Square,
            amplitude,
            t_on,
            t_off,
            rise_time: 0.0,
        }
    }

    pub fn smoothed_square(amplitude: C64, t_on: f64, t_off: f64, rise_time: f64) -> Self {
        Self {
            kind: PulseKind::SmoothedSquare,
            amplitude,
            t_on,
            t_off,
            rise_time,
        }
    }

    pub fn gaussian(amplitude: C64, t_on: f64, t_off: f64) -> Self {
        Self {
            kind: PulseKind::Gaussian,
            amplitude,
            t_on,
            t_off,
            rise_time: 0.0,
        }
    }

    pub fn cw(amplitude: C64, t_on: f64, rise_time: f64) -> Self {
        Self {
            kind: PulseKind::Cw,
            amplitude,
            t_on,
            t_off: f64::INFINITY,
            rise_time,
        }
    }

    pub fn off() -> Self {
        Self::cw(C64::new(0.0, 0.0), 0.0, 0.0)
    }

    pub fn scaled(mut self, k: C64) -> Self {
        self.amplitude *= k;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rise_time >= 0.0 && self.rise_time.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "rise_time",
                reason: "must be finite and non-negative",
            });
        }
        if !self.amplitude.is_finite() || !self.t_on.is_finite() {
            return Err(Error::InvalidParameter {
                name: "pulse",
                reason: "amplitude and switch-on time must be finite",
            });
        }
        if self.kind != PulseKind::Cw && !(self.t_off > self.t_on && self.t_off.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "t_off",
                reason: "pulse must end after it starts",
            });
        }
        Ok(())
    }

    /// Envelope in `[0, 1]` times the complex amplitude.
    pub fn sample(&self, t: f64) -> C64 {
        self.amplitude * self.envelope(t)
    }

    pub fn envelope(&self, t: f64) -> f64 {
        match self.kind {
            PulseKind::Square => {
                if t >= self.t_on && t < self.t_off {
                    1.0
                } else {
                    0.0
                }
            }
            PulseKind::SmoothedSquare => {
                if t < self.t_on || t >= self.t_off {
                    return 0.0;
                }
                let rise = self.rise_time.min(0.5 * (self.t_off - self.t_on));
                ramp(t - self.t_on, rise).min(ramp(self.t_off - t, rise))
            }
            PulseKind::Gaussian => {
                let centre = 0.5 * (self.t_on + self.t_off);
                let fwhm = self.t_off - self.t_on;
                let x = (t - centre) / fwhm;
                libm::exp(-4.0 * core::f64::consts::LN_2 * x * x)
            }
            PulseKind::Cw => {
                if t < self.t_on {
                    0.0
                } else {
                    ramp(t - self.t_on, self.rise_time)
                }
            }
        }
    }
}

fn ramp(elapsed: f64, rise: f64) -> f64 {
    if elapsed >= rise {
        1.0
    } else if elapsed <= 0.0 {
        0.0
    } else {
        let s = libm::sin(0.5 * PI * elapsed / rise);
        s * s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_edges() {
        let p = PulseShape::square(C64::new(2.0, 0.0), 1.0, 3.0);
        assert_eq!(p.sample(0.999), C64::new(0.0, 0.0));
        assert_eq!(p.sample(1.0), C64::new(2.0, 0.0));
        assert_eq!(p.sample(3.0), C64::new(0.0, 0.0));
    }

    #[test]
    fn smoothed_square_ramps() {
        let p = PulseShape::smoothed_square(C64::new(1.0, 0.0), 0.0, 10.0, 2.0);
        assert_eq!(p.envelope(0.0), 0.0);
        assert!((p.envelope(1.0) - 0.5).abs() < 1e-15);
        assert_eq!(p.envelope(5.0), 1.0);
        assert!((p.envelope(9.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn gaussian_half_max() {
        let p = PulseShape::gaussian(C64::new(1.0, 0.0), 10.0, 20.0);
        assert_eq!(p.envelope(15.0), 1.0);
        assert!((p.envelope(10.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn cw_stays_on() {
        let p = PulseShape::cw(C64::new(0.0, 1.0), 0.0, 2.0);
        assert_eq!(p.sample(1e6), C64::new(0.0, 1.0));
        assert!(p.validate().is_ok());
    }

    #[test]
    fn rejects_reversed_window() {
        assert!(PulseShape::square(C64::new(1.0, 0.0), 3.0, 1.0).validate().is_err());
        assert!(PulseShape::smoothed_square(C64::new(1.0, 0.0), 0.0, 1.0, -1.0).validate().is_err());
    }
}
