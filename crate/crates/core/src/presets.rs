//! Reference operating point: a 1 cm silicon nanofibre at 200 mK.
//!
//! Couplings and rates are rad/s at face value. The optical group velocity is
//! not an independent measurement; it is chosen consistent with the
//! `v_e ≈ 2.2×10⁴ m/s` and `v_e/v_g ≈ 3.7×10⁻⁴` figures of the operating point.

use std::f64::consts::PI;

use crate::params::{AcousticScheme, DimensionlessDetunings, VibrationalChannel, WaveguideParams};
use crate::thermal::bose_occupation;

pub const LENGTH: f64 = 1e-2;
pub const GROUP_VELOCITY: f64 = 5.9e7;
/// Longitudinal sound velocity of silicon.
pub const SOUND_VELOCITY: f64 = 8.4e3;
pub const TEMPERATURE: f64 = 0.2;

pub const OMEGA_V: f64 = 2.0 * PI * 10e9;
pub const GAMMA_V: f64 = 1e5;
pub const F_V: f64 = 3.3e6;
pub const DELTA_OMEGA: f64 = 5e6;
/// Effective group velocity assumed for the cross-phase figures.
pub const EFFECTIVE_GROUP_VELOCITY: f64 = 2.2e4;

pub const OMEGA_A: f64 = 2.0 * PI * 15e9;
pub const F_A: f64 = 2.6e5;
pub const GAMMA_A: f64 = 1e8;
pub const E1_SQ: f64 = 4e8;
pub const E2_SQ: f64 = 1e8;
pub const WORKING_POINT: DimensionlessDetunings = DimensionlessDetunings { b1: 2.0, b2: -0.5 };

pub fn waveguide() -> WaveguideParams {
    WaveguideParams {
        length: LENGTH,
        group_velocity: GROUP_VELOCITY,
        sound_velocity: SOUND_VELOCITY,
        temperature: TEMPERATURE,
    }
}

pub fn vibrational() -> VibrationalChannel {
    VibrationalChannel {
        omega_v: OMEGA_V,
        gamma_v: GAMMA_V,
        f_v: F_V,
        delta_omega: DELTA_OMEGA,
        delta_q: 0.0,
        n_bar_v: bose_occupation(OMEGA_V, TEMPERATURE).expect("valid reference"),
    }
}

/// Two-pump scheme at the working point `(b₁, b₂) = (2, −1/2)`.
pub fn acoustic() -> AcousticScheme {
    let n_bar = bose_occupation(OMEGA_A, TEMPERATURE).expect("valid reference");
    let (dw1, dw2) = WORKING_POINT.to_rates(GAMMA_A);
    AcousticScheme {
        f_a: F_A,
        gamma_a: GAMMA_A,
        dw1,
        dw2,
        e1_sq: E1_SQ,
        e2_sq: E2_SQ,
        dk1: 0.0,
        dk2: 0.0,
        omega_a1: OMEGA_A,
        omega_a2: OMEGA_A,
        n_bar_a1: n_bar,
        n_bar_a2: n_bar,
    }
}
