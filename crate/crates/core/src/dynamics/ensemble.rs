//! Langevin ensembles: thermal noise on the phonon fields, many trajectories.
//!
//! The δ-correlated reservoir forces are discretised per node and step as the
//! exact Ornstein–Uhlenbeck increment of a damped phonon: a complex circular
//! Gaussian kick of variance `n (1 − e^{−Γ dt}) / dx`, which reduces to
//! `Γ n dt / dx` for `Γ dt ≪ 1`. Here `n` is `n̄` or `n̄ + 1` depending on which
//! correlator the measured quantity needs.
//!
//! Trajectory `i` draws from ChaCha8 seeded with `seed` on stream `i` (the
//! vibrational scheme uses streams `2i` and `2i + 1` for its two orderings).
//! Trajectories run in parallel; statistics are reduced in index order, so
//! results do not depend on the thread count.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::acoustic::{AcousticProblem, AcousticSolver, AcousticState};
use super::vibrational::{VibrationalProblem, VibrationalSolver};
use super::{FieldState, Mesh1D};
use crate::error::{Error, Result};

/// Which reservoir correlator drives the simulated noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseOrdering {
    /// `⟨F† F⟩ = Γ n̄`: thermal quanta only. Governs photons added to `ψ_u`.
    Normal,
    /// `⟨F F†⟩ = Γ (n̄ + 1)`: includes spontaneous emission. Governs `ψ_d`.
    Antinormal,
}

impl NoiseOrdering {
    pub fn occupation(self, n_bar: f64) -> f64 {
        match self {
            NoiseOrdering::Normal => n_bar,
            NoiseOrdering::Antinormal => n_bar + 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseConfig {
    pub seed: u64,
    pub n_traj: usize,
    /// Overrides the channel occupations when set.
    #[serde(default)]
    pub n_bar: Option<f64>,
}

impl NoiseConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_traj == 0 {
            return Err(Error::invalid("n_traj", "need at least one trajectory"));
        }
        if let Some(n) = self.n_bar {
            if !(n >= 0.0 && n.is_finite()) {
                return Err(Error::invalid("n_bar", "must be finite and non-negative"));
            }
        }
        Ok(())
    }
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
}

impl Estimate {
    /// Two-pass mean and standard error, summed in slice order.
    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let std_error = if xs.len() < 2 {
            f64::INFINITY
        } else {
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
            (var / n).sqrt()
        };
        Self { mean, std_error }
    }

    /// `|mean − target| ≤ k · std_error`
    pub fn consistent_with(&self, target: f64, k: f64) -> bool {
        (self.mean - target).abs() <= k * self.std_error
    }
}

/// Circular complex Gaussian with `E|ξ|² = 1`.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn kick_scale(occupation: f64, gamma: f64, dt: f64, dx: f64) -> f64 {
    (occupation * -(-gamma * dt).exp_m1() / dx).sqrt()
}

fn check_samples(samples: &[usize], mesh: &Mesh1D) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::invalid("samples", "need at least one sample step"));
    }
    if let Some(&bad) = samples.iter().find(|&&n| n > mesh.nt) {
        return Err(Error::invalid(
            "samples",
            format!("step {bad} is beyond the last step {}", mesh.nt),
        ));
    }
    Ok(())
}

fn reduce(per_traj: &[Vec<f64>], baseline: &[f64]) -> Vec<Estimate> {
    (0..baseline.len())
        .map(|k| {
            let xs: Vec<f64> = per_traj.iter().map(|v| v[k] - baseline[k]).collect();
            Estimate::from_samples(&xs)
        })
        .collect()
}

/// Photons added at the outlet of the vibrational scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VibrationalEnsemble {
    pub n_traj: usize,
    pub times: Vec<f64>,
    /// `⟨|ψ_u(L)|²⟩ − |ψ_u⁰(L)|²` under normally ordered noise, 1/m.
    pub added_u: Vec<Estimate>,
    /// `⟨|ψ_d(L)|²⟩ − |ψ_d⁰(L)|²` under antinormally ordered noise, 1/m.
    pub added_d: Vec<Estimate>,
    /// Noise-free outlet densities `|ψ_u⁰(L)|²`, `|ψ_d⁰(L)|²`.
    pub baseline_u: Vec<f64>,
    pub baseline_d: Vec<f64>,
}

/// Runs `cfg.n_traj` noisy copies of the vibrational scheme from `init`
/// (phonon noise switched on at `init.t`) and reports outlet photon densities
/// in excess of the noise-free run at each step listed in `samples`.
pub fn langevin_vibrational(
    cfg: &NoiseConfig,
    init: &FieldState,
    problem: &VibrationalProblem,
    mesh: &Mesh1D,
    samples: &[usize],
) -> Result<VibrationalEnsemble> {
    cfg.validate()?;
    check_samples(samples, mesh)?;
    let last = mesh.nx - 1;
    let n_bar = cfg.n_bar.unwrap_or(problem.vib.n_bar_v);
    let gamma = problem.vib.gamma_v;

    let run = |ordering: Option<(NoiseOrdering, u64)>| -> Result<(Vec<f64>, Vec<f64>)> {
        let mut solver = VibrationalSolver::new(init, problem, mesh)?;
        let mut rng = ordering.map(|(_, s)| stream(cfg.seed, s));
        let sigma = ordering
            .map(|(o, _)| kick_scale(o.occupation(n_bar), gamma, mesh.dt, mesh.dx))
            .unwrap_or(0.0);
        let mut u = vec![0.0; samples.len()];
        let mut d = vec![0.0; samples.len()];
        for n in 0..=mesh.nt {
            if n > 0 {
                solver.advance(rng.as_mut().map(|r| (r, sigma)))?;
            }
            for (k, &m) in samples.iter().enumerate() {
                if m == n {
                    u[k] = solver.psi_u()[last].norm_sqr();
                    d[k] = solver.psi_d()[last].norm_sqr();
                }
            }
            if samples.iter().all(|&m| m <= n) {
                break;
            }
        }
        Ok((u, d))
    };

    let (baseline_u, baseline_d) = run(None)?;
    let per_traj: Vec<(Vec<f64>, Vec<f64>)> = (0..cfg.n_traj as u64)
        .into_par_iter()
        .map(|i| {
            let (u, _) = run(Some((NoiseOrdering::Normal, 2 * i)))?;
            let (_, d) = run(Some((NoiseOrdering::Antinormal, 2 * i + 1)))?;
            Ok((u, d))
        })
        .collect::<Result<_>>()?;
    let us: Vec<Vec<f64>> = per_traj.iter().map(|p| p.0.clone()).collect();
    let ds: Vec<Vec<f64>> = per_traj.iter().map(|p| p.1.clone()).collect();

    Ok(VibrationalEnsemble {
        n_traj: cfg.n_traj,
        times: samples.iter().map(|&n| init.t + n as f64 * mesh.dt).collect(),
        added_u: reduce(&us, &baseline_u),
        added_d: reduce(&ds, &baseline_d),
        baseline_u,
        baseline_d,
    })
}

/// Photons added at the outlet of the two-pump scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcousticEnsemble {
    pub n_traj: usize,
    pub times: Vec<f64>,
    /// `⟨|ψ(L)|²⟩ − |ψ⁰(L)|²`, 1/m.
    pub added: Vec<Estimate>,
    pub baseline: Vec<f64>,
}

/// Langevin ensemble of the two-pump scheme. `Q₁` is driven with `⟨F₁†F₁⟩`
/// (strength `Γ_a n̄₁`) and `Q₂` with `⟨F₂F₂†⟩` (strength `Γ_a (n̄₂ + 1)`), the
/// two correlators that enter `⟨ψ†ψ⟩`.
pub fn langevin_acoustic(
    cfg: &NoiseConfig,
    init: &AcousticState,
    problem: &AcousticProblem,
    mesh: &Mesh1D,
    samples: &[usize],
) -> Result<AcousticEnsemble> {
    cfg.validate()?;
    check_samples(samples, mesh)?;
    let last = mesh.nx - 1;
    let s = &problem.scheme;
    let (n1, n2) = match cfg.n_bar {
        Some(n) => (n, n),
        None => (s.n_bar_a1, s.n_bar_a2),
    };
    let sigma1 = kick_scale(NoiseOrdering::Normal.occupation(n1), s.gamma_a, mesh.dt, mesh.dx);
    let sigma2 = kick_scale(NoiseOrdering::Antinormal.occupation(n2), s.gamma_a, mesh.dt, mesh.dx);

    let run = |index: Option<u64>| -> Result<Vec<f64>> {
        let mut solver = AcousticSolver::new(init, problem, mesh)?;
        let mut rng = index.map(|i| stream(cfg.seed, i));
        let mut out = vec![0.0; samples.len()];
        for n in 0..=mesh.nt {
            if n > 0 {
                solver.advance(rng.as_mut().map(|r| (r, sigma1, sigma2)))?;
            }
            for (k, &m) in samples.iter().enumerate() {
                if m == n {
                    out[k] = solver.psi()[last].norm_sqr();
                }
            }
            if samples.iter().all(|&m| m <= n) {
                break;
            }
        }
        Ok(out)
    };

    let baseline = run(None)?;
    let per_traj: Vec<Vec<f64>> = (0..cfg.n_traj as u64)
        .into_par_iter()
        .map(|i| run(Some(i)))
        .collect::<Result<_>>()?;

    Ok(AcousticEnsemble {
        n_traj: cfg.n_traj,
        times: samples.iter().map(|&n| init.t + n as f64 * mesh.dt).collect(),
        added: reduce(&per_traj, &baseline),
        baseline,
    })
}
