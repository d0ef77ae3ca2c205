//! Vibration-mediated cross-phase interaction between two co-moving signals.
//!
//! Densities carry units of 1/m. Every exponent below is of the form
//! `coefficient × density × length`; a density times the fibre length is a
//! photon number.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{VibrationalChannel, WaveguideParams};

/// Default mesh resolution per axis of [`TwoPhotonState`].
pub const DEFAULT_RESOLUTION: usize = 256;

/// Absolute normalisation tolerance accepted by [`two_photon_gate`].
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Figures of merit of the cross-phase scheme.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KerrFigures {
    /// Cross-phase per photon, `ϑ = f_v² L / (v_e ΔΩ)`, rad.
    pub theta: f64,
    /// Riccati exchange coefficient `V = ϑ (Γ_v/ΔΩ) / (1 + Γ_v²/4ΔΩ²)`.
    /// `V × density × length` is dimensionless.
    pub riccati_rate: f64,
    /// Thermal fluctuation strength `W = L³ Γ_v f_v² / v_e³`.
    pub fluctuation_strength: f64,
    /// Effective coupling `g = f_v² / ΔΩ`, rad/s.
    pub coupling: f64,
    /// Photon flux below which each mode keeps its photon number,
    /// `v_e / (V L)`, 1/s. Infinite when `V = 0`.
    pub flux_bound: f64,
}

fn check_velocity(v_e: f64) -> Result<()> {
    if v_e.is_finite() && v_e > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "effective group velocity must be positive and finite, got {v_e}"
        )))
    }
}

fn check_detuning(vib: &VibrationalChannel) -> Result<()> {
    if vib.delta_omega == 0.0 {
        Err(Error::Domain(
            "ΔΩ = 0: the vibrational field cannot be eliminated".into(),
        ))
    } else {
        Ok(())
    }
}

/// `ϑ = f_v² L / (v_e ΔΩ)`. Odd in `ΔΩ`.
pub fn nonlinear_phase(vib: &VibrationalChannel, wg: &WaveguideParams, v_e: f64) -> f64 {
    vib.f_v * vib.f_v * wg.length / (v_e * vib.delta_omega)
}

/// `W = L³ Γ_v f_v² / v_e³`.
pub fn fluctuation_strength(vib: &VibrationalChannel, wg: &WaveguideParams, v_e: f64) -> f64 {
    wg.length.powi(3) * vib.gamma_v * vib.f_v * vib.f_v / v_e.powi(3)
}

/// `V = L f_v² Γ_v / (v_e (Γ_v²/4 + ΔΩ²))`. Even in `ΔΩ`, never negative.
pub fn riccati_rate(vib: &VibrationalChannel, wg: &WaveguideParams, v_e: f64) -> f64 {
    let d = vib.delta_omega;
    wg.length * vib.f_v * vib.f_v * vib.gamma_v
        / (v_e * (0.25 * vib.gamma_v * vib.gamma_v + d * d))
}

/// Strength `g = f_v²/ΔΩ` of the effective cross-phase Hamiltonian
/// `H = g L ∫dx ψ_u† ψ_d† ψ_u ψ_d`.
pub fn effective_hamiltonian_strength(vib: &VibrationalChannel) -> Result<f64> {
    check_detuning(vib)?;
    Ok(vib.f_v * vib.f_v / vib.delta_omega)
}

pub fn kerr_figures(
    vib: &VibrationalChannel,
    wg: &WaveguideParams,
    v_e: f64,
) -> Result<KerrFigures> {
    check_velocity(v_e)?;
    check_detuning(vib)?;
    let theta = nonlinear_phase(vib, wg, v_e);
    let riccati_rate = riccati_rate(vib, wg, v_e);
    Ok(KerrFigures {
        theta,
        riccati_rate,
        fluctuation_strength: fluctuation_strength(vib, wg, v_e),
        coupling: effective_hamiltonian_strength(vib)?,
        flux_bound: v_e / (riccati_rate * wg.length),
    })
}

/// Photon number densities of the two signal modes, 1/m.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityPair {
    pub n_u: f64,
    pub n_d: f64,
}

impl DensityPair {
    pub fn new(n_u: f64, n_d: f64) -> Self {
        Self { n_u, n_d }
    }

    pub fn total(&self) -> f64 {
        self.n_u + self.n_d
    }
}

/// Closed-form solution of the exchange equations
/// `∂N_u/∂η = −V N_u N_d`, `∂N_d/∂η = +V N_u N_d` over a length `length`:
///
/// ```text
/// N_u_out = N_u N / (N_u + e^{V L N} N_d)
/// N_d_out = N_d N / (N_d + e^{−V L N} N_u)
/// ```
///
/// Evaluated in a rearranged form that never forms a growing exponential, so
/// large `V L N` saturates cleanly at `(0, N)`.
pub fn riccati_propagate(input: DensityPair, rate: f64, length: f64) -> DensityPair {
    let DensityPair { n_u, n_d } = input;
    let total = n_u + n_d;
    if n_u == 0.0 || n_d == 0.0 {
        return input;
    }
    let x = rate * length * total;
    if x >= 0.0 {
        let shrink = (-x).exp();
        let a = n_u * shrink;
        DensityPair {
            n_u: total * a / (a + n_d),
            n_d: total * n_d / (n_d + a),
        }
    } else {
        let shrink = x.exp();
        let b = n_d * shrink;
        DensityPair {
            n_u: total * n_u / (n_u + b),
            n_d: total * b / (b + n_u),
        }
    }
}

/// Deterministic phases `(−ϑ N_d L, −ϑ N_u L)` acquired by `ψ_u` and `ψ_d`
/// in the number-conserving regime.
pub fn phase_exponents(input: DensityPair, fig: &KerrFigures, length: f64) -> (f64, f64) {
    (
        -fig.theta * input.n_d * length,
        -fig.theta * input.n_u * length,
    )
}

/// Thermally added photon densities at the output:
///
/// ```text
/// ΔN_u = (L² f_v²/v_e²)(1 − e^{−Γ_v L/v_e}) n̄_v N_d
/// ΔN_d = (L² f_v²/v_e²)(1 − e^{−Γ_v L/v_e}) (1 + n̄_v) N_u
/// ```
///
/// For `Γ_v L / v_e ≪ 1` the prefactor reduces to `W`.
pub fn vibrational_added_photons(
    input: DensityPair,
    vib: &VibrationalChannel,
    wg: &WaveguideParams,
    v_e: f64,
) -> Result<DensityPair> {
    check_velocity(v_e)?;
    let prefactor = (wg.length * vib.f_v / v_e).powi(2)
        * -(-vib.gamma_v * wg.length / v_e).exp_m1();
    Ok(DensityPair {
        n_u: prefactor * vib.n_bar_v * input.n_d,
        n_d: prefactor * (1.0 + vib.n_bar_v) * input.n_u,
    })
}

/// Two-photon amplitude `φ(x₁, x₂)` for one photon in each mode, sampled on a
/// uniform square mesh of spacing `dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPhotonState {
    pub grid: Array2<Complex64>,
    pub dx: f64,
}

impl TwoPhotonState {
    /// Normalised product of two Gaussian wave packets on `[0, length]²`.
    pub fn gaussian_product(
        resolution: usize,
        length: f64,
        centers: (f64, f64),
        widths: (f64, f64),
        wavenumbers: (f64, f64),
    ) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::Domain("resolution must be at least 2".into()));
        }
        let dx = length / (resolution - 1) as f64;
        let packet = |x: f64, c: f64, w: f64, k: f64| {
            let r = (x - c) / w;
            Complex64::from_polar((-0.5 * r * r).exp(), k * x)
        };
        let mut grid = Array2::from_shape_fn((resolution, resolution), |(i, j)| {
            let (x1, x2) = (i as f64 * dx, j as f64 * dx);
            packet(x1, centers.0, widths.0, wavenumbers.0)
                * packet(x2, centers.1, widths.1, wavenumbers.1)
        });
        let norm = grid.iter().map(|z| z.norm_sqr()).sum::<f64>() * dx * dx;
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::Domain("wave packet has no weight on the mesh".into()));
        }
        let scale = 1.0 / norm.sqrt();
        grid.mapv_inplace(|z| z * scale);
        Ok(Self { grid, dx })
    }

    /// `Σ |φ|² dx²`
    pub fn norm(&self) -> f64 {
        self.grid.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.dx * self.dx
    }

    /// `⟨self|other⟩ = Σ φ_self* φ_other dx²`
    pub fn overlap(&self, other: &TwoPhotonState) -> Complex64 {
        self.grid
            .iter()
            .zip(other.grid.iter())
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            * (self.dx * self.dx)
    }
}

/// Scattering of two counter-propagating photons through the fibre: the pair
/// amplitude picks up the uniform phase `e^{iϑ}`.
///
/// For co-propagating photons the same phase is returned; the accompanying
/// distortion of the spatio-temporal profile is not modelled.
pub fn two_photon_gate(state: &TwoPhotonState, theta: f64) -> Result<TwoPhotonState> {
    let norm = state.norm();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::Unnormalized(norm));
    }
    let phase = Complex64::from_polar(1.0, theta);
    let mut grid = state.grid.clone();
    grid.par_mapv_inplace(|z| z * phase);
    Ok(TwoPhotonState {
        grid,
        dx: state.dx,
    })
}
