//! Two signals `ψ_u`, `ψ_d` co-moving at `v_e`, coupled through a
//! dispersion-less phonon field `Q`:
//!
//! ```text
//! (∂t + v_e ∂x) ψ_u = −i f_v √L Q ψ_d e^{i(ΔΩ t − Δq x)}
//! (∂t + v_e ∂x) ψ_d = −i f_v √L Q* ψ_u e^{−i(ΔΩ t − Δq x)}
//! (∂t + Γ_v/2) Q    = −i f_v √L ψ_d* ψ_u e^{−i(ΔΩ t − Δq x)} − F
//! ```
//!
//! Internally the phonon is carried as `R = Q e^{i(ΔΩ t − Δq x)}`, which
//! removes the explicit phases. The signal pair is advanced by the exact
//! unitary for the step-averaged coupling, so `|ψ_u|² + |ψ_d|²` is conserved
//! along each characteristic up to rounding.

use ndarray::Array1;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::expint::LinearSourceStep;
use super::{check_finite, upwind_right, Envelope, FieldState, Mesh1D, Probe, Recording, Trajectory};
use crate::error::{Error, Result};
use crate::params::{VibrationalChannel, WaveguideParams};

const CORRECTOR_PASSES: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VibrationalProblem {
    pub vib: VibrationalChannel,
    pub wg: WaveguideParams,
    pub v_e: f64,
    pub inflow_u: Envelope,
    pub inflow_d: Envelope,
}

impl VibrationalProblem {
    pub fn validate(&self, mesh: &Mesh1D) -> Result<()> {
        self.vib.validate()?;
        self.wg.validate()?;
        if !(self.v_e > 0.0 && self.v_e.is_finite()) {
            return Err(Error::invalid("v_e", "must be positive and finite"));
        }
        if !(self.inflow_u.is_finite() && self.inflow_d.is_finite()) {
            return Err(Error::invalid("inflow", "envelope parameters must be finite"));
        }
        mesh.validate()?;
        if (mesh.length() - self.wg.length).abs() > 1e-9 * self.wg.length {
            return Err(Error::invalid(
                "mesh",
                format!(
                    "spans {} m but the waveguide is {} m long",
                    mesh.length(),
                    self.wg.length
                ),
            ));
        }
        mesh.check_cfl(self.v_e)?;
        Ok(())
    }

    fn coupling(&self) -> f64 {
        self.vib.f_v * self.wg.length.sqrt()
    }

    /// `e^{i(ΔΩ t − Δq x)}`
    fn frame(&self, t: f64, x: f64) -> Complex64 {
        Complex64::from_polar(1.0, self.vib.delta_omega * t - self.vib.delta_q * x)
    }
}

/// Exact `exp(−i h [[0, c], [c*, 0]])` applied to `(u, d)`.
#[inline]
pub(crate) fn exchange(u: Complex64, d: Complex64, c: Complex64, h: f64) -> (Complex64, Complex64) {
    let m = c.norm();
    let theta = m * h;
    let (cos, sinc) = if theta < 1e-8 {
        (1.0 - 0.5 * theta * theta, h)
    } else {
        (theta.cos(), theta.sin() / m)
    };
    let mi = Complex64::new(0.0, -sinc);
    (cos * u + mi * c * d, cos * d + mi * c.conj() * u)
}

/// Stepper shared by the mean-field and Langevin drivers.
pub(crate) struct VibrationalSolver {
    problem: VibrationalProblem,
    mesh: Mesh1D,
    courant: f64,
    k: f64,
    phonon: LinearSourceStep,
    psi_u: Array1<Complex64>,
    psi_d: Array1<Complex64>,
    r: Array1<Complex64>,
    next_u: Array1<Complex64>,
    next_d: Array1<Complex64>,
    next_r: Array1<Complex64>,
    step: usize,
    t0: f64,
}

impl VibrationalSolver {
    pub(crate) fn new(init: &FieldState, problem: &VibrationalProblem, mesh: &Mesh1D) -> Result<Self> {
        problem.validate(mesh)?;
        init.validate(mesh.nx)?;
        let courant = mesh.check_cfl(problem.v_e)?;
        let lambda = Complex64::new(-0.5 * problem.vib.gamma_v, problem.vib.delta_omega);
        let r = Array1::from_shape_fn(mesh.nx, |j| init.q[j] * problem.frame(init.t, mesh.x(j)));
        Ok(Self {
            problem: *problem,
            mesh: *mesh,
            courant,
            k: problem.coupling(),
            phonon: LinearSourceStep::new(lambda, mesh.dt),
            psi_u: init.psi_u.clone(),
            psi_d: init.psi_d.clone(),
            r,
            next_u: Array1::zeros(mesh.nx),
            next_d: Array1::zeros(mesh.nx),
            next_r: Array1::zeros(mesh.nx),
            step: 0,
            t0: init.t,
        })
    }

    pub(crate) fn time(&self) -> f64 {
        self.t0 + self.step as f64 * self.mesh.dt
    }

    pub(crate) fn psi_u(&self) -> &Array1<Complex64> {
        &self.psi_u
    }

    pub(crate) fn psi_d(&self) -> &Array1<Complex64> {
        &self.psi_d
    }

    fn q_at(&self, j: usize) -> Complex64 {
        self.r[j] * self.problem.frame(self.time(), self.mesh.x(j)).conj()
    }

    pub(crate) fn state(&self) -> FieldState {
        FieldState {
            psi_u: self.psi_u.clone(),
            psi_d: self.psi_d.clone(),
            q: Array1::from_shape_fn(self.mesh.nx, |j| self.q_at(j)),
            t: self.time(),
        }
    }

    fn probe_values(&self, j: usize) -> [Complex64; 3] {
        [self.psi_u[j], self.psi_d[j], self.q_at(j)]
    }

    /// Advances one step. With `noise = Some((rng, σ))` every phonon node
    /// receives an independent complex Gaussian kick of variance `σ²`.
    pub(crate) fn advance<R: Rng>(&mut self, mut noise: Option<(&mut R, f64)>) -> Result<()> {
        let h = self.mesh.dt;
        let t_next = self.time() + h;
        let k = self.k;
        let s = self.courant;
        let source = |u: Complex64, d: Complex64| Complex64::new(0.0, -k) * d.conj() * u;
        let mut kick = || match noise.as_mut() {
            Some((rng, sigma)) => *sigma * super::ensemble::complex_normal(*rng),
            None => Complex64::new(0.0, 0.0),
        };

        let (u0, d0) = (self.problem.inflow_u.at(t_next), self.problem.inflow_d.at(t_next));
        self.next_u[0] = u0;
        self.next_d[0] = d0;
        self.next_r[0] = self.phonon.apply(
            self.r[0],
            source(self.psi_u[0], self.psi_d[0]),
            source(u0, d0),
        ) + kick();

        for j in 1..self.mesh.nx {
            let dep_u = upwind_right(&self.psi_u, j, s);
            let dep_d = upwind_right(&self.psi_d, j, s);
            let dep_r = upwind_right(&self.r, j, s);
            let a0 = source(self.psi_u[j], self.psi_d[j]);
            let noise_j = kick();
            let mut r1 = self.phonon.apply(self.r[j], a0, a0) + noise_j;
            let (mut u1, mut d1) = exchange(dep_u, dep_d, 0.5 * k * (dep_r + r1), h);
            for _ in 0..CORRECTOR_PASSES {
                r1 = self.phonon.apply(self.r[j], a0, source(u1, d1)) + noise_j;
                (u1, d1) = exchange(dep_u, dep_d, 0.5 * k * (dep_r + r1), h);
            }
            self.next_u[j] = u1;
            self.next_d[j] = d1;
            self.next_r[j] = r1;
        }

        std::mem::swap(&mut self.psi_u, &mut self.next_u);
        std::mem::swap(&mut self.psi_d, &mut self.next_d);
        std::mem::swap(&mut self.r, &mut self.next_r);
        self.step += 1;

        let t = self.time();
        check_finite("psi_u", &self.psi_u, t)?;
        check_finite("psi_d", &self.psi_d, t)?;
        check_finite("q", &self.r, t)
    }
}

/// Noise-free integration from `init` over `mesh.nt` steps.
///
/// Signals enter at `x = 0` from `problem.inflow_u` / `problem.inflow_d`; the
/// phonon field has no transport of its own.
pub fn meanfield_vibrational(
    init: &FieldState,
    problem: &VibrationalProblem,
    mesh: &Mesh1D,
    recording: Recording,
) -> Result<Trajectory<FieldState>> {
    let mut solver = VibrationalSolver::new(init, problem, mesh)?;
    let last = mesh.nx - 1;
    let mut probe = Probe::with_capacity(mesh.nt + 1);
    let mut snapshots = Vec::new();
    for n in 0..=mesh.nt {
        if n > 0 {
            solver.advance::<rand_chacha::ChaCha8Rng>(None)?;
        }
        probe.push(solver.time(), solver.probe_values(0), solver.probe_values(last));
        if recording.wants(n, mesh.nt) {
            snapshots.push(solver.state());
        }
    }
    Ok(Trajectory { snapshots, probe })
}
