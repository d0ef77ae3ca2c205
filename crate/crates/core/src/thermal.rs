//! Thermal occupation of harmonic modes.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

/// Mean Bose–Einstein occupation `1 / (exp(ħω / k_B T) − 1)` of a mode at
/// angular frequency `omega` (rad/s) and temperature `temperature` (K).
///
/// Returns exactly zero at `T = 0`.
pub fn bose_occupation(omega: f64, temperature: f64) -> Result<f64> {
    bose_occupation_with(&PhysicalConstants::CODATA, omega, temperature)
}

pub fn bose_occupation_with(
    constants: &PhysicalConstants,
    omega: f64,
    temperature: f64,
) -> Result<f64> {
    if !omega.is_finite() || !temperature.is_finite() {
        return Err(Error::Domain(format!(
            "bose_occupation: non-finite input (omega = {omega}, T = {temperature})"
        )));
    }
    if omega <= 0.0 {
        return Err(Error::Domain(format!(
            "bose_occupation: omega must be > 0, got {omega}"
        )));
    }
    if temperature < 0.0 {
        return Err(Error::Domain(format!(
            "bose_occupation: temperature must be >= 0, got {temperature}"
        )));
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    let x = constants.hbar * omega / (constants.k_b * temperature);
    Ok(1.0 / x.exp_m1())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{HBAR, K_B};
    use std::f64::consts::PI;

    #[test]
    fn ten_gigahertz_at_200_millikelvin() {
        let n = bose_occupation(2.0 * PI * 10e9, 0.2).unwrap();
        assert!((n - 0.100).abs() <= 0.001, "n = {n}");
    }

    #[test]
    fn fifteen_gigahertz_at_200_millikelvin() {
        let n = bose_occupation(2.0 * PI * 15e9, 0.2).unwrap();
        assert!((n - 0.028).abs() <= 0.002, "n = {n}");
    }

    #[test]
    fn zero_temperature_is_vacuum() {
        for omega in [1.0, 1e6, 2.0 * PI * 10e9, 1e15] {
            assert_eq!(bose_occupation(omega, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn rayleigh_jeans_limit() {
        let omega = 2.0 * PI * 1e9;
        for ratio in [51.0, 100.0, 1e3, 1e5] {
            let t = ratio * HBAR * omega / K_B;
            let n = bose_occupation(omega, t).unwrap();
            let classical = K_B * t / (HBAR * omega);
            assert!((n / classical - 1.0).abs() < 0.01, "ratio {ratio}");
        }
    }

    #[test]
    fn deep_quantum_limit_underflows_to_zero() {
        let n = bose_occupation(1e16, 1e-3).unwrap();
        assert_eq!(n, 0.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(bose_occupation(f64::NAN, 1.0).is_err());
        assert!(bose_occupation(1.0, f64::INFINITY).is_err());
        assert!(bose_occupation(0.0, 1.0).is_err());
        assert!(bose_occupation(-1.0, 1.0).is_err());
        assert!(bose_occupation(1.0, -1.0).is_err());
    }
}
