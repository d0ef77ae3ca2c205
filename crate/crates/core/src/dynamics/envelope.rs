use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

/// Complex amplitude injected at `x = 0` as a function of time.
///
/// Amplitudes carry units of (1/m)^½ so that `|ψ|²` is a photon density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum Envelope {
    #[default]
    Off,
    Constant {
        amplitude: f64,
        #[serde(default)]
        phase: f64,
    },
    /// Zero until `delay`, then a sin² rise over `rise_time` to `amplitude`.
    Ramp {
        amplitude: f64,
        rise_time: f64,
        #[serde(default)]
        delay: f64,
        #[serde(default)]
        phase: f64,
    },
    Gaussian {
        amplitude: f64,
        center: f64,
        /// Standard deviation of the amplitude profile, s.
        width: f64,
        #[serde(default)]
        phase: f64,
    },
}

impl Envelope {
    /// CW level reached once any rise is complete.
    pub fn constant_density(density: f64) -> Self {
        Envelope::Constant {
            amplitude: density.sqrt(),
            phase: 0.0,
        }
    }

    pub fn at(&self, t: f64) -> Complex64 {
        match *self {
            Envelope::Off => Complex64::new(0.0, 0.0),
            Envelope::Constant { amplitude, phase } => Complex64::from_polar(amplitude, phase),
            Envelope::Ramp {
                amplitude,
                rise_time,
                delay,
                phase,
            } => {
                let s = if t <= delay {
                    0.0
                } else if t >= delay + rise_time {
                    1.0
                } else {
                    (FRAC_PI_2 * (t - delay) / rise_time).sin().powi(2)
                };
                Complex64::from_polar(amplitude * s, phase)
            }
            Envelope::Gaussian {
                amplitude,
                center,
                width,
                phase,
            } => {
                let r = (t - center) / width;
                Complex64::from_polar(amplitude * (-0.5 * r * r).exp(), phase)
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        match *self {
            Envelope::Off => true,
            Envelope::Constant { amplitude, phase } => amplitude.is_finite() && phase.is_finite(),
            Envelope::Ramp {
                amplitude,
                rise_time,
                delay,
                phase,
            } => {
                amplitude.is_finite()
                    && rise_time.is_finite()
                    && rise_time > 0.0
                    && delay.is_finite()
                    && phase.is_finite()
            }
            Envelope::Gaussian {
                amplitude,
                center,
                width,
                phase,
            } => {
                amplitude.is_finite()
                    && center.is_finite()
                    && width.is_finite()
                    && width > 0.0
                    && phase.is_finite()
            }
        }
    }
}
