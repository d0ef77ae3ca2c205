//! Closed-form dispersion of the two-pump acoustic Brillouin scheme.
//!
//! A signal at `ω_s` is dressed by pump 1 (Stokes side, detuning
//! `Δω₁ = ω_s − ω₁ − Ω₁`) and pump 2 (anti-Stokes side, detuning
//! `Δω₂ = ω₂ − ω_s − Ω₂`). After eliminating the acoustic phonons the signal
//! envelope propagates as `exp(−(G + iκ) x)` with
//!
//! ```text
//! G = f_a² Γ_a / (2 v_g) · [ |E₁|² / (Γ_a²/4 + Δω₁²) − |E₂|² / (Γ_a²/4 + Δω₂²) ]
//! κ = f_a² / v_g        · [ |E₁|² Δω₁ / (Γ_a²/4 + Δω₁²) + |E₂|² Δω₂ / (Γ_a²/4 + Δω₂²) ]
//! ```
//!
//! and the carrier wavenumber is `K = k_s − κ`, so `1/v_e = 1/v_g − ∂κ/∂ω_s`.
//! Near the working point `(b₁, b₂) = (2, −1/2)` with balanced pumps the
//! slowdown is roughly `v_e/v_g ≈ Γ_a² / (4 f_a² |E₂|²)`; the exact derivative
//! below is what every routine reports.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{AcousticScheme, WaveguideParams};

/// `∂Δω_i/∂ω_s` for pump 1 and pump 2. The signal frequency enters `Δω₁` with
/// a plus sign and `Δω₂` with a minus sign. Shared by `v_e` and `G_R`.
pub const SIGNAL_DETUNING_SLOPE: [f64; 2] = [1.0, -1.0];

/// `|2 G x|` below which the amplification length uses its Taylor series.
pub const SERIES_THRESHOLD: f64 = 1e-6;

/// Intensity ratio `|E₁|²/|E₂|² = (1 + b₁²)/(1 + b₂²)` giving zero net gain.
pub fn balanced_pump_ratio(b1: f64, b2: f64) -> f64 {
    (1.0 + b1 * b1) / (1.0 + b2 * b2)
}

/// Per-pump Lorentzian pieces evaluated at the configured detunings.
#[derive(Debug, Clone, Copy)]
struct PumpTerms {
    /// `|E_i|² / (Γ²/4 + Δω_i²)`
    absorptive: [f64; 2],
    /// `|E_i|² Δω_i / (Γ²/4 + Δω_i²)`
    dispersive: [f64; 2],
    /// `|E_i|² d/dΔ [1/(Γ²/4 + Δ²)]`
    absorptive_slope: [f64; 2],
    /// `|E_i|² d/dΔ [Δ/(Γ²/4 + Δ²)]`
    dispersive_slope: [f64; 2],
}

impl PumpTerms {
    fn new(s: &AcousticScheme) -> Self {
        let half_width_sq = 0.25 * s.gamma_a * s.gamma_a;
        let mut t = PumpTerms {
            absorptive: [0.0; 2],
            dispersive: [0.0; 2],
            absorptive_slope: [0.0; 2],
            dispersive_slope: [0.0; 2],
        };
        for (i, (e, dw)) in [(s.e1_sq, s.dw1), (s.e2_sq, s.dw2)].into_iter().enumerate() {
            let denom = half_width_sq + dw * dw;
            t.absorptive[i] = e / denom;
            t.dispersive[i] = e * dw / denom;
            t.absorptive_slope[i] = -2.0 * e * dw / (denom * denom);
            t.dispersive_slope[i] = e * (half_width_sq - dw * dw) / (denom * denom);
        }
        t
    }
}

/// Amplitude gain coefficient `G`, 1/m. The envelope scales as `exp(−G x)`.
pub fn gain_coefficient(s: &AcousticScheme, wg: &WaveguideParams) -> f64 {
    let t = PumpTerms::new(s);
    s.f_a * s.f_a * s.gamma_a / (2.0 * wg.group_velocity) * (t.absorptive[0] - t.absorptive[1])
}

/// Pump-induced wavenumber shift `κ`, rad/m.
pub fn wavenumber_shift(s: &AcousticScheme, wg: &WaveguideParams) -> f64 {
    let t = PumpTerms::new(s);
    s.f_a * s.f_a / wg.group_velocity * (t.dispersive[0] + t.dispersive[1])
}

/// `∂κ/∂ω_s`, s/m.
pub fn wavenumber_shift_slope(s: &AcousticScheme, wg: &WaveguideParams) -> f64 {
    let t = PumpTerms::new(s);
    let [s1, s2] = SIGNAL_DETUNING_SLOPE;
    s.f_a * s.f_a / wg.group_velocity
        * (s1 * t.dispersive_slope[0] + s2 * t.dispersive_slope[1])
}

/// Gain gradient `G_R = ∂G/∂ω_s`, s/m.
pub fn gain_gradient(s: &AcousticScheme, wg: &WaveguideParams) -> f64 {
    let t = PumpTerms::new(s);
    let [s1, s2] = SIGNAL_DETUNING_SLOPE;
    s.f_a * s.f_a * s.gamma_a / (2.0 * wg.group_velocity)
        * (s1 * t.absorptive_slope[0] - s2 * t.absorptive_slope[1])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VelocityRegime {
    /// `0 < v_e ≤ v_g`
    Slow,
    /// `v_e > v_g`, still positive and finite.
    Fast,
    /// `1/v_e < 0`: the envelope runs backwards.
    Negative,
    /// `1/v_e = 0` or non-finite.
    Divergent,
}

/// Closed-form response of the signal at the configured detunings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlowLightResponse {
    /// `G`, 1/m.
    pub gain: f64,
    /// `κ`, rad/m.
    pub kappa: f64,
    /// `K − k_s = −κ`, rad/m.
    pub wavenumber_offset: f64,
    /// `dK/dω_s = 1/v_e`, s/m.
    pub inverse_group_velocity: f64,
    /// `v_e`, m/s. Negative or infinite when the regime is not physical.
    pub v_e: f64,
    /// `v_e / v_g`.
    pub v_ratio: f64,
    /// `G_R = ∂G/∂ω_s`, s/m.
    pub gain_gradient: f64,
    pub regime: VelocityRegime,
}

impl SlowLightResponse {
    /// `v_e` is positive and finite.
    pub fn is_physical(&self) -> bool {
        matches!(self.regime, VelocityRegime::Slow | VelocityRegime::Fast)
    }

    /// All reported numbers are finite (a negative `v_e` still counts).
    pub fn is_finite(&self) -> bool {
        [
            self.gain,
            self.kappa,
            self.inverse_group_velocity,
            self.v_e,
            self.v_ratio,
            self.gain_gradient,
        ]
        .iter()
        .all(|v| v.is_finite())
    }
}

/// Evaluates `G`, `κ`, `v_e` and `G_R` together.
pub fn effective_group_velocity(s: &AcousticScheme, wg: &WaveguideParams) -> SlowLightResponse {
    let gain = gain_coefficient(s, wg);
    let kappa = wavenumber_shift(s, wg);
    let gain_gradient = gain_gradient(s, wg);
    let inverse = 1.0 / wg.group_velocity - wavenumber_shift_slope(s, wg);
    let v_e = 1.0 / inverse;
    let regime = if !inverse.is_finite() || inverse == 0.0 {
        VelocityRegime::Divergent
    } else if inverse < 0.0 {
        VelocityRegime::Negative
    } else if v_e <= wg.group_velocity {
        VelocityRegime::Slow
    } else {
        VelocityRegime::Fast
    };
    SlowLightResponse {
        gain,
        kappa,
        wavenumber_offset: -kappa,
        inverse_group_velocity: inverse,
        v_e,
        v_ratio: v_e / wg.group_velocity,
        gain_gradient,
        regime,
    }
}

/// Strong-pump estimate `v_e/v_g ≈ Γ_a² / (4 f_a² |E₂|²)` quoted for the
/// working point `(b₁, b₂) = (2, −1/2)`.
pub fn working_point_velocity_ratio(s: &AcousticScheme) -> f64 {
    s.gamma_a * s.gamma_a / (4.0 * s.f_a * s.f_a * s.e2_sq)
}

/// `|E₁|² n̄_a⁽¹⁾ + |E₂|² (n̄_a⁽²⁾ + 1)`: the spontaneous source strength.
pub fn thermal_source(s: &AcousticScheme) -> f64 {
    s.e1_sq * s.n_bar_a1 + s.e2_sq * (s.n_bar_a2 + 1.0)
}

/// `(1 − e^{−2Gx}) / (2G)`, m. Uses a Taylor series for `|2Gx| < 10⁻⁶`,
/// which also covers `G = 0` exactly.
pub fn amplification_length(gain: f64, x: f64) -> f64 {
    let y = 2.0 * gain * x;
    if y.abs() < SERIES_THRESHOLD {
        amplification_length_series(gain, x)
    } else {
        -(-y).exp_m1() / (2.0 * gain)
    }
}

fn amplification_length_series(gain: f64, x: f64) -> f64 {
    let y = 2.0 * gain * x;
    x * (1.0 - y / 2.0 + y * y / 6.0 - y * y * y / 24.0)
}

/// Mean signal photon density (1/m) at position `x` and time `t` after the
/// acoustic reservoirs are switched on:
///
/// ```text
/// N(x,t) = N_in e^{−2Gx} + f_a²/(2G v_g²) · S · (1 − e^{−2Gx}) (1 − e^{−Γ_a t})
/// ```
///
/// with `S` from [`thermal_source`]. `t` may be `+∞`.
pub fn acoustic_added_photons(
    s: &AcousticScheme,
    wg: &WaveguideParams,
    t: f64,
    x: f64,
    n_in: f64,
) -> Result<f64> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::Domain(format!("time must be >= 0, got {t}")));
    }
    if !(0.0..=wg.length).contains(&x) {
        return Err(Error::Domain(format!(
            "position {x} outside the waveguide [0, {}]",
            wg.length
        )));
    }
    let gain = gain_coefficient(s, wg);
    let transmitted = n_in * (-2.0 * gain * x).exp();
    let reservoir = -(-s.gamma_a * t).exp_m1();
    let spontaneous = s.f_a * s.f_a / (wg.group_velocity * wg.group_velocity)
        * thermal_source(s)
        * amplification_length(gain, x)
        * reservoir;
    Ok(transmitted + spontaneous)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::DimensionlessDetunings;
    use crate::presets;

    fn working_point() -> (AcousticScheme, WaveguideParams) {
        (presets::acoustic(), presets::waveguide())
    }

    #[test]
    fn balanced_ratio_examples() {
        assert_eq!(balanced_pump_ratio(2.0, -0.5), 4.0);
        assert_eq!(balanced_pump_ratio(0.0, 0.0), 1.0);
        assert_eq!(balanced_pump_ratio(3.0, 1.0), 5.0);
    }

    #[test]
    fn working_point_is_balanced() {
        let (s, wg) = working_point();
        assert_eq!(s.e1_sq, 4.0 * s.e2_sq);
        let g = gain_coefficient(&s, &wg);
        let scale = s.f_a * s.f_a * s.gamma_a / (2.0 * wg.group_velocity) * s.e1_sq
            / (0.25 * s.gamma_a * s.gamma_a + s.dw1 * s.dw1);
        assert!(g.abs() <= 4.0 * f64::EPSILON * scale, "G = {g}");
    }

    #[test]
    fn single_stokes_pump_gives_positive_g() {
        let (mut s, wg) = working_point();
        s.e2_sq = 0.0;
        assert!(gain_coefficient(&s, &wg) > 0.0);
    }

    #[test]
    fn resonant_pumps_do_not_shift_wavenumber() {
        let (mut s, wg) = working_point();
        s.dw1 = 0.0;
        s.dw2 = 0.0;
        assert_eq!(wavenumber_shift(&s, &wg), 0.0);
    }

    #[test]
    fn positive_detunings_give_positive_kappa() {
        let (s, wg) = working_point();
        let s = s.with_detunings(DimensionlessDetunings::new(1.5, 0.7));
        assert!(wavenumber_shift(&s, &wg) > 0.0);
    }

    #[test]
    fn no_pumps_no_dispersion() {
        let (mut s, wg) = working_point();
        s.e1_sq = 0.0;
        s.e2_sq = 0.0;
        let r = effective_group_velocity(&s, &wg);
        assert_eq!(r.v_e, wg.group_velocity);
        assert_eq!(r.v_ratio, 1.0);
        assert_eq!(r.gain_gradient, 0.0);
        assert_eq!(r.regime, VelocityRegime::Slow);
    }

    #[test]
    fn working_point_slowdown() {
        let (s, wg) = working_point();
        let r = effective_group_velocity(&s, &wg);
        // 1/v_e = (1/v_g)(1 + 96/25 · f_a²|E₂|²/Γ_a²) at (2, −1/2) with |E₁|² = 4|E₂|².
        let c = s.f_a * s.f_a * s.e2_sq / (s.gamma_a * s.gamma_a);
        let exact = 1.0 / (1.0 + 96.0 / 25.0 * c);
        assert!((r.v_ratio / exact - 1.0).abs() < 1e-12);
        assert!((r.v_ratio / 3.7e-4 - 1.0).abs() < 0.10, "{}", r.v_ratio);
        assert!((r.v_ratio / (25.0 / 96.0 / c) - 1.0).abs() < 1e-3);
        assert_eq!(r.regime, VelocityRegime::Slow);
    }

    #[test]
    fn series_branch_matches_full_expression() {
        let x = 1e-2;
        for y in [1e-3f64, -1e-3, 5e-4] {
            let g = y / (2.0 * x);
            let full = -(-y).exp_m1() / (2.0 * g);
            let series = amplification_length_series(g, x);
            assert!((series / full - 1.0).abs() < 1e-4);
            // The leading-order short-fibre form `x` alone is off by y/2.
            assert!((x / full - 1.0).abs() > 1e-4);
        }
        assert_eq!(amplification_length(0.0, x), x);
    }

    #[test]
    fn added_photons_edge_cases() {
        let (mut s, wg) = working_point();
        let n0 = acoustic_added_photons(&s, &wg, 0.0, wg.length, 3.0).unwrap();
        let g = gain_coefficient(&s, &wg);
        assert_eq!(n0, 3.0 * (-2.0 * g * wg.length).exp());

        s.n_bar_a1 = 0.0;
        s.n_bar_a2 = 0.0;
        s.e2_sq = 0.0;
        let n = acoustic_added_photons(&s, &wg, f64::INFINITY, wg.length, 0.0).unwrap();
        assert_eq!(n, 0.0);

        assert!(acoustic_added_photons(&s, &wg, -1.0, 0.0, 0.0).is_err());
        assert!(acoustic_added_photons(&s, &wg, 1.0, 2.0 * wg.length, 0.0).is_err());
    }
}
