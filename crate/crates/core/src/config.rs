//! JSON run configuration shared by the command-line tool.
//!
//! One section per parameter group. Unknown keys are rejected and every
//! section is checked against the invariants of the type it builds.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dynamics::{Envelope, Mesh1D, NoiseConfig};
use crate::error::{Error, Result};
use crate::params::{AcousticScheme, DimensionlessDetunings, VibrationalChannel, WaveguideParams};
use crate::sweep::{AxisRange, GridSpec, PumpNormalization};
use crate::thermal::bose_occupation;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub waveguide: WaveguideParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vibrational: Option<VibrationalSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub acoustic: Option<AcousticSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mesh: Option<MeshSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signals: Option<SignalsSection>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VibrationalSection {
    pub omega_v: f64,
    pub gamma_v: f64,
    pub f_v: f64,
    pub delta_omega: f64,
    #[serde(default)]
    pub delta_q: f64,
    /// Derived from `omega_v` and the waveguide temperature when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_bar_v: Option<f64>,
    /// Effective group velocity of the two signals, m/s.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_e: Option<f64>,
}

/// Detunings are given either as rates (`dw1`, `dw2`) or in units of the
/// half-width (`b1`, `b2`). Leaving out `e1_sq` balances it against `e2_sq`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcousticSection {
    pub f_a: f64,
    pub gamma_a: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dw1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dw2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e1_sq: Option<f64>,
    pub e2_sq: f64,
    #[serde(default)]
    pub dk1: f64,
    #[serde(default)]
    pub dk2: f64,
    pub omega_a1: f64,
    pub omega_a2: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_bar_a1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_bar_a2: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshSection {
    pub nx: usize,
    /// Simulated time, s. Defaults to two transit times.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration: Option<f64>,
    /// Keep every n-th state in `simulate` output; 0 keeps first and last.
    #[serde(default)]
    pub snapshot_every: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub b1_range: AxisRange,
    pub b2_range: AxisRange,
    #[serde(default = "default_true")]
    pub balance: bool,
    #[serde(default)]
    pub normalization: PumpNormalization,
    /// `|G_R|` budget as a fraction of the grid maximum.
    #[serde(default = "default_budget_fraction")]
    pub gr_budget_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignalsSection {
    #[serde(default)]
    pub inflow_u: Envelope,
    #[serde(default)]
    pub inflow_d: Envelope,
    /// Signal of the two-pump scheme.
    #[serde(default)]
    pub inflow: Envelope,
    #[serde(default)]
    pub phonon_advection: bool,
    /// Ensemble sampling times, s. Scenario defaults apply when empty.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sample_times: Vec<f64>,
}

fn default_true() -> bool {
    true
}

fn default_budget_fraction() -> f64 {
    0.1
}

fn missing(section: &str) -> Error {
    Error::Config(format!("missing section `{section}`"))
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Io(_) => e,
            other => Error::Config(format!("{}: {other}", path.display())),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        self.waveguide.validate()?;
        if self.vibrational.is_some() {
            self.vibrational_channel()?;
            if let Some(v) = self.vibrational.and_then(|v| v.v_e) {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(Error::invalid("v_e", "must be positive and finite"));
                }
            }
        }
        if self.acoustic.is_some() {
            self.acoustic_scheme()?;
        }
        if let Some(m) = &self.mesh {
            if m.nx < 2 {
                return Err(Error::invalid("nx", "need at least two nodes"));
            }
            if let Some(d) = m.duration {
                if !(d > 0.0 && d.is_finite()) {
                    return Err(Error::invalid("duration", "must be positive and finite"));
                }
            }
        }
        if let Some(n) = &self.noise {
            n.validate()?;
        }
        if self.sweep.is_some() {
            self.grid_spec()?.validate()?;
        }
        if let Some(s) = &self.signals {
            for e in [&s.inflow_u, &s.inflow_d, &s.inflow] {
                if !e.is_finite() {
                    return Err(Error::invalid("signals", "envelope parameters must be finite"));
                }
            }
            if s.sample_times.iter().any(|t| !(*t >= 0.0 && t.is_finite())) {
                return Err(Error::invalid("sample_times", "must be finite and non-negative"));
            }
        }
        Ok(())
    }

    pub fn vibrational_channel(&self) -> Result<VibrationalChannel> {
        let v = self.vibrational.ok_or_else(|| missing("vibrational"))?;
        let n_bar_v = match v.n_bar_v {
            Some(n) => n,
            None => bose_occupation(v.omega_v, self.waveguide.temperature)?,
        };
        let ch = VibrationalChannel {
            omega_v: v.omega_v,
            gamma_v: v.gamma_v,
            f_v: v.f_v,
            delta_omega: v.delta_omega,
            delta_q: v.delta_q,
            n_bar_v,
        };
        ch.validate()?;
        Ok(ch)
    }

    pub fn effective_velocity(&self) -> Result<f64> {
        self.vibrational
            .ok_or_else(|| missing("vibrational"))?
            .v_e
            .ok_or_else(|| Error::Config("section `vibrational` needs `v_e`".into()))
    }

    pub fn acoustic_scheme(&self) -> Result<AcousticScheme> {
        let a = self.acoustic.ok_or_else(|| missing("acoustic"))?;
        let (dw1, dw2) = match (a.dw1, a.dw2, a.b1, a.b2) {
            (Some(d1), Some(d2), None, None) => (d1, d2),
            (None, None, Some(b1), Some(b2)) => DimensionlessDetunings::new(b1, b2).to_rates(a.gamma_a),
            _ => {
                return Err(Error::Config(
                    "section `acoustic` needs either `dw1`/`dw2` or `b1`/`b2`".into(),
                ))
            }
        };
        let t = self.waveguide.temperature;
        let n1 = match a.n_bar_a1 {
            Some(n) => n,
            None => bose_occupation(a.omega_a1, t)?,
        };
        let n2 = match a.n_bar_a2 {
            Some(n) => n,
            None => bose_occupation(a.omega_a2, t)?,
        };
        let mut s = AcousticScheme {
            f_a: a.f_a,
            gamma_a: a.gamma_a,
            dw1,
            dw2,
            e1_sq: a.e1_sq.unwrap_or(0.0),
            e2_sq: a.e2_sq,
            dk1: a.dk1,
            dk2: a.dk2,
            omega_a1: a.omega_a1,
            omega_a2: a.omega_a2,
            n_bar_a1: n1,
            n_bar_a2: n2,
        };
        if a.e1_sq.is_none() {
            s = s.balanced();
        }
        s.validate()?;
        Ok(s)
    }

    pub fn grid_spec(&self) -> Result<GridSpec> {
        let sw = self.sweep.ok_or_else(|| missing("sweep"))?;
        if sw.gr_budget_fraction.is_nan() || sw.gr_budget_fraction < 0.0 {
            return Err(Error::invalid("gr_budget_fraction", "must be non-negative"));
        }
        Ok(GridSpec {
            b1_range: sw.b1_range,
            b2_range: sw.b2_range,
            base: self.acoustic_scheme()?,
            wg: self.waveguide,
            balance: sw.balance,
            normalization: sw.normalization,
        })
    }

    pub fn mesh_section(&self) -> Result<MeshSection> {
        self.mesh.ok_or_else(|| missing("mesh"))
    }

    /// Mesh over the waveguide with `dt = dx / velocity`.
    pub fn mesh_for(&self, velocity: f64) -> Result<Mesh1D> {
        let m = self.mesh_section()?;
        let duration = m
            .duration
            .unwrap_or(2.0 * self.waveguide.length / velocity);
        Mesh1D::along(self.waveguide.length, m.nx, velocity, duration)
    }

    pub fn noise(&self) -> Result<NoiseConfig> {
        self.noise.ok_or_else(|| missing("noise"))
    }

    pub fn signals(&self) -> SignalsSection {
        self.signals.clone().unwrap_or_default()
    }
}
