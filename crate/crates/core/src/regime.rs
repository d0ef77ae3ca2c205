//! Validity guards for the closed-form approximations.
//!
//! Warnings are returned as data. None of these checks abort; every closed
//! form stays evaluable outside its regime.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::kerr::fluctuation_strength;
use crate::params::{VibrationalChannel, WaveguideParams};

/// `W(1 + n̄_v)` at or above this value is not considered small.
pub const THERMAL_ADMIXTURE_LIMIT: f64 = 0.5;

/// `|G| L` at or above this value leaves the short-fibre noise regime.
pub const GAIN_LENGTH_LIMIT: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WarningKind {
    /// `|ΔΩ| ≤ f_v`: the phonon cannot be eliminated adiabatically.
    OffResonantViolated,
    /// `|ΔΩ| ≤ Γ_v`: number conservation per mode fails.
    DampingExceedsDetuning,
    /// `W(1 + n̄_v)` is not small.
    ThermalAdmixture,
    /// `|G| L` is not small.
    GainLength,
    /// The effective group velocity is not a positive finite number.
    NonPhysicalVelocity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeWarning {
    pub kind: WarningKind,
    pub severity: Severity,
    /// The offending quantity.
    pub value: f64,
    /// The bound it was compared against.
    pub threshold: f64,
    pub message: String,
}

impl fmt::Display for RegimeWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{tag}: {}", self.message)
    }
}

/// Checks the adiabatic-elimination and thermal-noise conditions of the
/// cross-phase scheme at effective group velocity `v_e`.
pub fn validate_regime(
    vib: &VibrationalChannel,
    wg: &WaveguideParams,
    v_e: f64,
) -> Vec<RegimeWarning> {
    let mut out = Vec::new();
    let detuning = vib.delta_omega.abs();

    if detuning <= vib.f_v {
        out.push(RegimeWarning {
            kind: WarningKind::OffResonantViolated,
            severity: Severity::Error,
            value: detuning,
            threshold: vib.f_v,
            message: format!(
                "off-resonant condition violated: |ΔΩ| = {detuning:e} <= f_v = {:e}",
                vib.f_v
            ),
        });
    }
    if detuning <= vib.gamma_v {
        out.push(RegimeWarning {
            kind: WarningKind::DampingExceedsDetuning,
            severity: Severity::Error,
            value: detuning,
            threshold: vib.gamma_v,
            message: format!(
                "detuning does not exceed damping: |ΔΩ| = {detuning:e} <= Γ_v = {:e}",
                vib.gamma_v
            ),
        });
    }

    if !(v_e.is_finite() && v_e > 0.0) {
        out.push(RegimeWarning {
            kind: WarningKind::NonPhysicalVelocity,
            severity: Severity::Error,
            value: v_e,
            threshold: 0.0,
            message: format!("effective group velocity {v_e:e} m/s is not positive and finite"),
        });
        return out;
    }

    let admixture = fluctuation_strength(vib, wg, v_e) * (1.0 + vib.n_bar_v);
    if admixture >= THERMAL_ADMIXTURE_LIMIT {
        out.push(RegimeWarning {
            kind: WarningKind::ThermalAdmixture,
            severity: Severity::Warning,
            value: admixture,
            threshold: THERMAL_ADMIXTURE_LIMIT,
            message: format!(
                "thermal admixture not small: W(1 + n̄_v) = {admixture:.4} >= {THERMAL_ADMIXTURE_LIMIT}"
            ),
        });
    }
    out
}

/// Short-fibre check `|G| L < 0.1` used by the acoustic noise budget.
pub fn validate_gain_length(gain: f64, wg: &WaveguideParams) -> Option<RegimeWarning> {
    let gl = (gain * wg.length).abs();
    (gl >= GAIN_LENGTH_LIMIT || !gl.is_finite()).then(|| RegimeWarning {
        kind: WarningKind::GainLength,
        severity: Severity::Warning,
        value: gl,
        threshold: GAIN_LENGTH_LIMIT,
        message: format!("gain not small over the fibre: |G|L = {gl:.4} >= {GAIN_LENGTH_LIMIT}"),
    })
}

pub fn has_errors(warnings: &[RegimeWarning]) -> bool {
    warnings.iter().any(|w| w.severity == Severity::Error)
}
