//! Direct integration of the coupled photon–phonon field equations.
//!
//! Signals are advanced along their characteristics (`x − v t = const`), which
//! moves them by exactly one cell per step when `v·dt = dx` and interpolates
//! linearly otherwise. Phonon amplitudes live on the nodes and are advanced with
//! an exponential integrator; see [`expint`].

pub mod acoustic;
pub mod analysis;
pub mod ensemble;
mod envelope;
pub mod expint;
pub mod snapshot;
pub mod vibrational;

use ndarray::Array1;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use acoustic::{meanfield_acoustic, AcousticProblem, AcousticState};
pub use ensemble::{
    langevin_acoustic, langevin_vibrational, Estimate, NoiseConfig, NoiseOrdering,
};
pub use envelope::Envelope;
pub use vibrational::{meanfield_vibrational, VibrationalProblem};

/// Relative slack when comparing `v·dt` against `dx`.
const CFL_SLACK: f64 = 1e-12;

/// Uniform space–time mesh. Node `j` sits at `x = j·dx`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mesh1D {
    pub nx: usize,
    pub dx: f64,
    pub dt: f64,
    pub nt: usize,
}

impl Mesh1D {
    pub fn new(nx: usize, dx: f64, dt: f64, nt: usize) -> Result<Self> {
        let m = Self { nx, dx, dt, nt };
        m.validate()?;
        Ok(m)
    }

    /// `nx` nodes spanning `[0, length]` with `dt = dx / velocity`, enough
    /// steps to cover `duration`.
    pub fn along(length: f64, nx: usize, velocity: f64, duration: f64) -> Result<Self> {
        if nx < 2 {
            return Err(Error::invalid("nx", "need at least two nodes"));
        }
        if !(velocity > 0.0 && velocity.is_finite()) {
            return Err(Error::invalid("velocity", "must be positive and finite"));
        }
        let dx = length / (nx - 1) as f64;
        let dt = dx / velocity;
        let nt = (duration / dt - 1e-9).ceil().max(0.0) as usize;
        Self::new(nx, dx, dt, nt)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 2 {
            return Err(Error::invalid("nx", "need at least two nodes"));
        }
        if !(self.dx > 0.0 && self.dx.is_finite()) {
            return Err(Error::invalid("dx", "must be positive and finite"));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::invalid("dt", "must be positive and finite"));
        }
        Ok(())
    }

    pub fn length(&self) -> f64 {
        (self.nx - 1) as f64 * self.dx
    }

    pub fn duration(&self) -> f64 {
        self.nt as f64 * self.dt
    }

    pub fn x(&self, j: usize) -> f64 {
        j as f64 * self.dx
    }

    /// Fraction of a cell travelled per step at speed `|velocity|`.
    pub fn courant(&self, velocity: f64) -> f64 {
        velocity.abs() * self.dt / self.dx
    }

    pub fn check_cfl(&self, velocity: f64) -> Result<f64> {
        let s = self.courant(velocity);
        if s > 1.0 + CFL_SLACK {
            return Err(Error::Cfl {
                velocity,
                dt: self.dt,
                dx: self.dx,
            });
        }
        Ok(s.min(1.0))
    }
}

/// Fields of the two-signal vibrational scheme at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub psi_u: Array1<Complex64>,
    pub psi_d: Array1<Complex64>,
    /// Phonon amplitude `Q` in the frame rotating at `Ω_v`.
    pub q: Array1<Complex64>,
    pub t: f64,
}

impl FieldState {
    pub fn zeros(nx: usize) -> Self {
        Self {
            psi_u: Array1::zeros(nx),
            psi_d: Array1::zeros(nx),
            q: Array1::zeros(nx),
            t: 0.0,
        }
    }

    /// Signals filled uniformly, phonons at rest.
    pub fn uniform(nx: usize, psi_u: Complex64, psi_d: Complex64) -> Self {
        Self {
            psi_u: Array1::from_elem(nx, psi_u),
            psi_d: Array1::from_elem(nx, psi_d),
            q: Array1::zeros(nx),
            t: 0.0,
        }
    }

    pub fn validate(&self, nx: usize) -> Result<()> {
        for (name, a) in [("psi_u", &self.psi_u), ("psi_d", &self.psi_d), ("q", &self.q)] {
            if a.len() != nx {
                return Err(Error::invalid(name, format!("length {} != nx {nx}", a.len())));
            }
            check_finite(name, a, self.t)?;
        }
        Ok(())
    }

    /// `∫ (|ψ_u|² + |ψ_d|²) dx` by the trapezoid rule.
    pub fn signal_photons(&self, dx: f64) -> f64 {
        trapezoid(&self.psi_u, dx) + trapezoid(&self.psi_d, dx)
    }
}

/// Time series of the three fields at the first and last node, one entry per
/// step including the initial state.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Probe {
    pub t: Vec<f64>,
    pub inlet: Vec<[Complex64; 3]>,
    pub outlet: Vec<[Complex64; 3]>,
}

impl Probe {
    fn with_capacity(n: usize) -> Self {
        Self {
            t: Vec::with_capacity(n),
            inlet: Vec::with_capacity(n),
            outlet: Vec::with_capacity(n),
        }
    }

    fn push(&mut self, t: f64, inlet: [Complex64; 3], outlet: [Complex64; 3]) {
        self.t.push(t);
        self.inlet.push(inlet);
        self.outlet.push(outlet);
    }

    /// Component `k` at the outlet.
    pub fn outlet_series(&self, k: usize) -> Vec<Complex64> {
        self.outlet.iter().map(|v| v[k]).collect()
    }

    pub fn inlet_series(&self, k: usize) -> Vec<Complex64> {
        self.inlet.iter().map(|v| v[k]).collect()
    }
}

/// Which full-field snapshots to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Recording {
    /// Keep every `n`-th step; 0 keeps only the first and last state.
    pub snapshot_every: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<S> {
    pub snapshots: Vec<S>,
    pub probe: Probe,
}

impl<S> Trajectory<S> {
    pub fn last(&self) -> &S {
        self.snapshots.last().expect("a trajectory holds at least the initial state")
    }
}

impl Recording {
    fn wants(&self, step: usize, nt: usize) -> bool {
        step == 0 || step == nt || (self.snapshot_every > 0 && step.is_multiple_of(self.snapshot_every))
    }
}

fn check_finite(name: &'static str, a: &Array1<Complex64>, t: f64) -> Result<()> {
    match a.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
        Some(cell) => Err(Error::NonFinite {
            field: name,
            cell,
            t,
        }),
        None => Ok(()),
    }
}

fn trapezoid(a: &Array1<Complex64>, dx: f64) -> f64 {
    let n = a.len();
    if n < 2 {
        return 0.0;
    }
    let inner: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    (inner - 0.5 * (a[0].norm_sqr() + a[n - 1].norm_sqr())) * dx
}

/// Departure value of a right-moving characteristic that travels `s` cells per
/// step: linear interpolation between nodes `j − 1` and `j`.
#[inline]
fn upwind_right(a: &Array1<Complex64>, j: usize, s: f64) -> Complex64 {
    if s == 1.0 {
        a[j - 1]
    } else {
        a[j] * (1.0 - s) + a[j - 1] * s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mesh_along_matches_velocity() {
        let m = Mesh1D::along(1.0, 101, 2.0, 1.0).unwrap();
        assert_eq!(m.dx, 0.01);
        assert_eq!(m.dt, 0.005);
        assert_eq!(m.nt, 200);
        assert_eq!(m.check_cfl(2.0).unwrap(), 1.0);
        assert!(m.check_cfl(1.0).unwrap() < 1.0);
        assert!(matches!(m.check_cfl(2.5), Err(Error::Cfl { .. })));
    }

    #[test]
    fn state_validation() {
        let mut s = FieldState::zeros(4);
        assert!(s.validate(4).is_ok());
        assert!(s.validate(5).is_err());
        s.q[2] = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(s.validate(4), Err(Error::NonFinite { cell: 2, .. })));
    }
}
