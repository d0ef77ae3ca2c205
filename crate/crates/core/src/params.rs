//! Parameter containers.
//!
//! Frequency-like quantities (couplings, damping rates, detunings) are angular
//! rates in rad/s and enter every closed form at face value. Pump intensities
//! `e1_sq`, `e2_sq` are dimensionless photon numbers.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::thermal::bose_occupation;

/// Waveguide geometry and kinematics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveguideParams {
    /// Waveguide length, m.
    pub length: f64,
    /// Bare optical group velocity, m/s.
    pub group_velocity: f64,
    /// Sound velocity of the acoustic branch, m/s.
    pub sound_velocity: f64,
    /// Temperature, K.
    pub temperature: f64,
}

impl WaveguideParams {
    pub fn new(
        length: f64,
        group_velocity: f64,
        sound_velocity: f64,
        temperature: f64,
    ) -> Result<Self> {
        let wg = Self {
            length,
            group_velocity,
            sound_velocity,
            temperature,
        };
        wg.validate()?;
        Ok(wg)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite("length", self.length)?;
        ensure_finite("group_velocity", self.group_velocity)?;
        ensure_finite("sound_velocity", self.sound_velocity)?;
        ensure_finite("temperature", self.temperature)?;
        if self.length <= 0.0 {
            return Err(Error::invalid("length", "must be > 0"));
        }
        if self.group_velocity <= 0.0 {
            return Err(Error::invalid("group_velocity", "must be > 0"));
        }
        if self.sound_velocity < 0.0 {
            return Err(Error::invalid("sound_velocity", "must be >= 0"));
        }
        if self.sound_velocity >= self.group_velocity {
            return Err(Error::invalid(
                "sound_velocity",
                "must be smaller than the optical group velocity",
            ));
        }
        if self.temperature < 0.0 {
            return Err(Error::invalid("temperature", "must be >= 0"));
        }
        Ok(())
    }

    /// Transit time `L / v` at velocity `v`.
    pub fn transit_time(&self, velocity: f64) -> f64 {
        self.length / velocity
    }
}

/// Dispersion-less vibrational branch mediating the cross-phase interaction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VibrationalChannel {
    /// Phonon frequency, rad/s.
    pub omega_v: f64,
    /// Phonon damping rate, rad/s.
    pub gamma_v: f64,
    /// Photon-phonon coupling, rad/s.
    pub f_v: f64,
    /// Detuning `ω_u − ω_d − Ω_v`, rad/s.
    pub delta_omega: f64,
    /// Phase mismatch `k_u − k_d − q_v`, rad/m.
    pub delta_q: f64,
    /// Thermal phonon occupation.
    pub n_bar_v: f64,
}

impl VibrationalChannel {
    /// Builds a channel whose occupation follows from `omega_v` and `temperature`.
    pub fn thermal(
        omega_v: f64,
        gamma_v: f64,
        f_v: f64,
        delta_omega: f64,
        delta_q: f64,
        temperature: f64,
    ) -> Result<Self> {
        let n_bar_v = bose_occupation(omega_v, temperature)?;
        let ch = Self {
            omega_v,
            gamma_v,
            f_v,
            delta_omega,
            delta_q,
            n_bar_v,
        };
        ch.validate()?;
        Ok(ch)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite("omega_v", self.omega_v)?;
        ensure_finite("gamma_v", self.gamma_v)?;
        ensure_finite("f_v", self.f_v)?;
        ensure_finite("delta_omega", self.delta_omega)?;
        ensure_finite("delta_q", self.delta_q)?;
        ensure_finite("n_bar_v", self.n_bar_v)?;
        if self.omega_v <= 0.0 {
            return Err(Error::invalid("omega_v", "must be > 0"));
        }
        if self.gamma_v <= 0.0 {
            return Err(Error::invalid("gamma_v", "must be > 0"));
        }
        if self.f_v < 0.0 {
            return Err(Error::invalid("f_v", "must be >= 0"));
        }
        if self.n_bar_v < 0.0 {
            return Err(Error::invalid("n_bar_v", "must be >= 0"));
        }
        Ok(())
    }

    /// Mechanical quality factor `Ω_v / Γ_v`.
    pub fn quality_factor(&self) -> f64 {
        self.omega_v / self.gamma_v
    }
}

/// Two-pump acoustic configuration producing gain-free slow light.
///
/// Pump 1 sits below the signal (`Δω₁ = ω_s − ω₁ − Ω₁`), pump 2 above it
/// (`Δω₂ = ω₂ − ω_s − Ω₂`). Both pumps share the coupling `f_a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcousticScheme {
    pub f_a: f64,
    pub gamma_a: f64,
    pub dw1: f64,
    pub dw2: f64,
    pub e1_sq: f64,
    pub e2_sq: f64,
    pub dk1: f64,
    pub dk2: f64,
    pub omega_a1: f64,
    pub omega_a2: f64,
    pub n_bar_a1: f64,
    pub n_bar_a2: f64,
}

impl AcousticScheme {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("f_a", self.f_a),
            ("gamma_a", self.gamma_a),
            ("dw1", self.dw1),
            ("dw2", self.dw2),
            ("e1_sq", self.e1_sq),
            ("e2_sq", self.e2_sq),
            ("dk1", self.dk1),
            ("dk2", self.dk2),
            ("omega_a1", self.omega_a1),
            ("omega_a2", self.omega_a2),
            ("n_bar_a1", self.n_bar_a1),
            ("n_bar_a2", self.n_bar_a2),
        ] {
            ensure_finite(name, v)?;
        }
        if self.gamma_a <= 0.0 {
            return Err(Error::invalid("gamma_a", "must be > 0"));
        }
        if self.e1_sq < 0.0 {
            return Err(Error::invalid("e1_sq", "must be >= 0"));
        }
        if self.e2_sq < 0.0 {
            return Err(Error::invalid("e2_sq", "must be >= 0"));
        }
        if self.n_bar_a1 < 0.0 {
            return Err(Error::invalid("n_bar_a1", "must be >= 0"));
        }
        if self.n_bar_a2 < 0.0 {
            return Err(Error::invalid("n_bar_a2", "must be >= 0"));
        }
        Ok(())
    }

    pub fn detunings(&self) -> DimensionlessDetunings {
        DimensionlessDetunings::from_rates(self.dw1, self.dw2, self.gamma_a)
    }

    /// Copy with the pump detunings replaced by their dimensionless form.
    pub fn with_detunings(mut self, b: DimensionlessDetunings) -> Self {
        let (dw1, dw2) = b.to_rates(self.gamma_a);
        self.dw1 = dw1;
        self.dw2 = dw2;
        self
    }

    /// Copy with `e1_sq` chosen so that the net gain vanishes.
    pub fn balanced(mut self) -> Self {
        let b = self.detunings();
        self.e1_sq = self.e2_sq * crate::slowlight::balanced_pump_ratio(b.b1, b.b2);
        self
    }

    /// Copy with both pump intensities scaled by `factor`.
    pub fn scaled_pumps(mut self, factor: f64) -> Self {
        self.e1_sq *= factor;
        self.e2_sq *= factor;
        self
    }
}

/// Pump detunings in units of the acoustic half-width: `b_i = 2Δω_i/Γ_a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimensionlessDetunings {
    pub b1: f64,
    pub b2: f64,
}

impl DimensionlessDetunings {
    pub fn new(b1: f64, b2: f64) -> Self {
        Self { b1, b2 }
    }

    pub fn from_rates(dw1: f64, dw2: f64, gamma_a: f64) -> Self {
        Self {
            b1: 2.0 * dw1 / gamma_a,
            b2: 2.0 * dw2 / gamma_a,
        }
    }

    pub fn to_rates(self, gamma_a: f64) -> (f64, f64) {
        (self.b1 * gamma_a / 2.0, self.b2 * gamma_a / 2.0)
    }
}
