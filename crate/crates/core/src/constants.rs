//! Physical constants (CODATA 2018 exact SI values).

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant, J/K.
pub const K_B: f64 = 1.380_649e-23;

/// Immutable bundle of the constants used for thermal occupations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub k_b: f64,
}

impl PhysicalConstants {
    pub const CODATA: PhysicalConstants = PhysicalConstants {
        hbar: HBAR,
        k_b: K_B,
    };
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA
    }
}
