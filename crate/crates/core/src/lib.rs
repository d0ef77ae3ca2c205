//! Brillouin-mediated photon–photon interactions in nanoscale waveguides.
//!
//! Closed forms for slow light ([`slowlight`]), the vibration-mediated
//! cross-phase nonlinearity ([`kerr`]), thermal photon budgets, a direct
//! integrator of the underlying field equations ([`dynamics`]) and
//! operating-point scans ([`sweep`]).
//!
//! Every frequency-like parameter is an angular rate in rad/s and is used at
//! face value in the formulas. Pump intensities `|E_i|²` are dimensionless
//! photon numbers.

pub mod config;
pub mod constants;
pub mod dynamics;
pub mod error;
pub mod kerr;
pub mod params;
pub mod presets;
pub mod regime;
pub mod slowlight;
pub mod sweep;
pub mod thermal;

pub use constants::PhysicalConstants;
pub use error::{Error, Result};
pub use kerr::{DensityPair, KerrFigures, TwoPhotonState};
pub use params::{AcousticScheme, DimensionlessDetunings, VibrationalChannel, WaveguideParams};
pub use regime::{RegimeWarning, Severity, WarningKind};
pub use slowlight::{SlowLightResponse, VelocityRegime};
pub use thermal::bose_occupation;
