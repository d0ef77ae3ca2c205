//! Signal `ψ` at `v_g` coupled to two acoustic phonon fields through constant
//! classical pumps:
//!
//! ```text
//! (∂t + v_g ∂x) ψ        = −i f_a E₁ Q₁ e^{i(Δω₁t − Δk₁x)} − i f_a E₂ Q₂* e^{−i(Δω₂t + Δk₂x)}
//! (∂t + v_a ∂x + Γ_a/2) Q₁ = −i f_a E₁ ψ e^{−i(Δω₁t − Δk₁x)} − F₁
//! (∂t − v_a ∂x + Γ_a/2) Q₂ = −i f_a E₂ ψ* e^{−i(Δω₂t + Δk₂x)} − F₂
//! ```
//!
//! with `E_i = √|E_i|²` taken real. The phonons are carried as
//! `P₁ = Q₁ e^{i(Δω₁t − Δk₁x)}` and `P₂ = Q₂ e^{i(Δω₂t + Δk₂x)}`. The `±v_a ∂x`
//! terms are dropped unless `phonon_advection` is set, in which case they are
//! applied as a separate upwind shift before each local update.

use ndarray::Array1;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::expint::LinearSourceStep;
use super::{check_finite, upwind_right, Envelope, Mesh1D, Probe, Recording, Trajectory};
use crate::error::{Error, Result};
use crate::params::{AcousticScheme, WaveguideParams};

const CORRECTOR_PASSES: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AcousticProblem {
    pub scheme: AcousticScheme,
    pub wg: WaveguideParams,
    pub inflow: Envelope,
    #[serde(default)]
    pub phonon_advection: bool,
}

impl AcousticProblem {
    pub fn validate(&self, mesh: &Mesh1D) -> Result<()> {
        self.scheme.validate()?;
        self.wg.validate()?;
        if !self.inflow.is_finite() {
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
        mesh.check_cfl(self.wg.group_velocity)?;
        if self.phonon_advection {
            mesh.check_cfl(self.wg.sound_velocity)?;
        }
        Ok(())
    }

    fn phases(&self, t: f64, x: f64) -> (Complex64, Complex64) {
        let s = &self.scheme;
        (
            Complex64::from_polar(1.0, s.dw1 * t - s.dk1 * x),
            Complex64::from_polar(1.0, s.dw2 * t + s.dk2 * x),
        )
    }
}

/// Signal and phonon amplitudes of the two-pump scheme at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct AcousticState {
    pub psi: Array1<Complex64>,
    pub q1: Array1<Complex64>,
    pub q2: Array1<Complex64>,
    pub t: f64,
}

impl AcousticState {
    pub fn zeros(nx: usize) -> Self {
        Self {
            psi: Array1::zeros(nx),
            q1: Array1::zeros(nx),
            q2: Array1::zeros(nx),
            t: 0.0,
        }
    }

    pub fn validate(&self, nx: usize) -> Result<()> {
        for (name, a) in [("psi", &self.psi), ("q1", &self.q1), ("q2", &self.q2)] {
            if a.len() != nx {
                return Err(Error::invalid(name, format!("length {} != nx {nx}", a.len())));
            }
            check_finite(name, a, self.t)?;
        }
        Ok(())
    }
}

pub(crate) struct AcousticSolver {
    problem: AcousticProblem,
    mesh: Mesh1D,
    courant: f64,
    courant_sound: f64,
    fe1: f64,
    fe2: f64,
    step1: LinearSourceStep,
    step2: LinearSourceStep,
    psi: Array1<Complex64>,
    p1: Array1<Complex64>,
    p2: Array1<Complex64>,
    next_psi: Array1<Complex64>,
    next_p1: Array1<Complex64>,
    next_p2: Array1<Complex64>,
    step: usize,
    t0: f64,
}

impl AcousticSolver {
    pub(crate) fn new(init: &AcousticState, problem: &AcousticProblem, mesh: &Mesh1D) -> Result<Self> {
        problem.validate(mesh)?;
        init.validate(mesh.nx)?;
        let s = &problem.scheme;
        let half = -0.5 * s.gamma_a;
        let (mut w1, mut w2) = (s.dw1, s.dw2);
        if problem.phonon_advection {
            w1 -= problem.wg.sound_velocity * s.dk1;
            w2 -= problem.wg.sound_velocity * s.dk2;
        }
        let p1 = Array1::from_shape_fn(mesh.nx, |j| init.q1[j] * problem.phases(init.t, mesh.x(j)).0);
        let p2 = Array1::from_shape_fn(mesh.nx, |j| init.q2[j] * problem.phases(init.t, mesh.x(j)).1);
        Ok(Self {
            problem: *problem,
            mesh: *mesh,
            courant: mesh.check_cfl(problem.wg.group_velocity)?,
            courant_sound: if problem.phonon_advection {
                mesh.courant(problem.wg.sound_velocity)
            } else {
                0.0
            },
            fe1: s.f_a * s.e1_sq.sqrt(),
            fe2: s.f_a * s.e2_sq.sqrt(),
            step1: LinearSourceStep::new(Complex64::new(half, w1), mesh.dt),
            step2: LinearSourceStep::new(Complex64::new(half, w2), mesh.dt),
            psi: init.psi.clone(),
            p1,
            p2,
            next_psi: Array1::zeros(mesh.nx),
            next_p1: Array1::zeros(mesh.nx),
            next_p2: Array1::zeros(mesh.nx),
            step: 0,
            t0: init.t,
        })
    }

    pub(crate) fn time(&self) -> f64 {
        self.t0 + self.step as f64 * self.mesh.dt
    }

    pub(crate) fn psi(&self) -> &Array1<Complex64> {
        &self.psi
    }

    fn q_at(&self, j: usize) -> (Complex64, Complex64) {
        let (e1, e2) = self.problem.phases(self.time(), self.mesh.x(j));
        (self.p1[j] * e1.conj(), self.p2[j] * e2.conj())
    }

    pub(crate) fn state(&self) -> AcousticState {
        let n = self.mesh.nx;
        AcousticState {
            psi: self.psi.clone(),
            q1: Array1::from_shape_fn(n, |j| self.q_at(j).0),
            q2: Array1::from_shape_fn(n, |j| self.q_at(j).1),
            t: self.time(),
        }
    }

    fn probe_values(&self, j: usize) -> [Complex64; 3] {
        let (q1, q2) = self.q_at(j);
        [self.psi[j], q1, q2]
    }

    fn advect_phonons(&mut self) {
        let s = self.courant_sound;
        if s == 0.0 {
            return;
        }
        let n = self.mesh.nx;
        let zero = Complex64::new(0.0, 0.0);
        // P₁ moves right, P₂ moves left; nothing enters from outside.
        for j in (0..n).rev() {
            let up = if j == 0 { zero } else { self.p1[j - 1] };
            self.p1[j] = self.p1[j] * (1.0 - s) + up * s;
        }
        for j in 0..n {
            let up = if j + 1 == n { zero } else { self.p2[j + 1] };
            self.p2[j] = self.p2[j] * (1.0 - s) + up * s;
        }
    }

    /// One step; `noise = Some((rng, σ₁, σ₂))` kicks `P₁` and `P₂` at every node.
    pub(crate) fn advance<R: Rng>(&mut self, mut noise: Option<(&mut R, f64, f64)>) -> Result<()> {
        self.advect_phonons();
        let h = self.mesh.dt;
        let t_next = self.time() + h;
        let s = self.courant;
        let (fe1, fe2) = (self.fe1, self.fe2);
        let mi = Complex64::new(0.0, -1.0);
        let drive = |p1: Complex64, p2: Complex64| fe1 * p1 + fe2 * p2.conj();
        let src1 = |psi: Complex64| mi * fe1 * psi;
        let src2 = |psi: Complex64| mi * fe2 * psi.conj();
        let mut kicks = || match noise.as_mut() {
            Some((rng, s1, s2)) => (
                *s1 * super::ensemble::complex_normal(*rng),
                *s2 * super::ensemble::complex_normal(*rng),
            ),
            None => (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
        };

        let psi0 = self.problem.inflow.at(t_next);
        let (k1, k2) = kicks();
        self.next_psi[0] = psi0;
        self.next_p1[0] = self.step1.apply(self.p1[0], src1(self.psi[0]), src1(psi0)) + k1;
        self.next_p2[0] = self.step2.apply(self.p2[0], src2(self.psi[0]), src2(psi0)) + k2;

        for j in 1..self.mesh.nx {
            let dep_psi = upwind_right(&self.psi, j, s);
            let dep_drive = drive(upwind_right(&self.p1, j, s), upwind_right(&self.p2, j, s));
            let (a1, a2) = (src1(self.psi[j]), src2(self.psi[j]));
            let (k1, k2) = kicks();
            let mut p1 = self.step1.apply(self.p1[j], a1, a1) + k1;
            let mut p2 = self.step2.apply(self.p2[j], a2, a2) + k2;
            let mut psi = dep_psi + 0.5 * h * mi * (dep_drive + drive(p1, p2));
            for _ in 0..CORRECTOR_PASSES {
                p1 = self.step1.apply(self.p1[j], a1, src1(psi)) + k1;
                p2 = self.step2.apply(self.p2[j], a2, src2(psi)) + k2;
                psi = dep_psi + 0.5 * h * mi * (dep_drive + drive(p1, p2));
            }
            self.next_psi[j] = psi;
            self.next_p1[j] = p1;
            self.next_p2[j] = p2;
        }

        std::mem::swap(&mut self.psi, &mut self.next_psi);
        std::mem::swap(&mut self.p1, &mut self.next_p1);
        std::mem::swap(&mut self.p2, &mut self.next_p2);
        self.step += 1;

        let t = self.time();
        check_finite("psi", &self.psi, t)?;
        check_finite("q1", &self.p1, t)?;
        check_finite("q2", &self.p2, t)
    }
}

/// Noise-free integration of the two-pump scheme from `init` over `mesh.nt`
/// steps, with the signal injected at `x = 0` from `problem.inflow`.
pub fn meanfield_acoustic(
    init: &AcousticState,
    problem: &AcousticProblem,
    mesh: &Mesh1D,
    recording: Recording,
) -> Result<Trajectory<AcousticState>> {
    let mut solver = AcousticSolver::new(init, problem, mesh)?;
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
