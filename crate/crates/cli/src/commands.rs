use brillouin_core::config::RunConfig;
use brillouin_core::dynamics::{
    self, snapshot, AcousticProblem, AcousticState, FieldState, Mesh1D, Recording,
    VibrationalProblem,
};
use brillouin_core::kerr::{self, DensityPair};
use brillouin_core::regime::{self, RegimeWarning};
use brillouin_core::{slowlight, sweep, Result};
use serde_json::{json, Value};

use crate::exit;
use crate::report::{number, Report};
use crate::Scenario;

pub enum Body {
    Report(Report),
    /// CSV goes to `--out` or stdout; the summary is shown on stderr when the
    /// CSV is written to a file.
    Csv { csv: Vec<u8>, summary: Report },
}

pub struct Outcome {
    pub body: Body,
    pub status: u8,
}

impl Outcome {
    fn ok(r: Report) -> Self {
        Self {
            body: Body::Report(r),
            status: exit::OK,
        }
    }
}

fn warnings_value(ws: &[RegimeWarning]) -> Value {
    Value::Array(
        ws.iter()
            .map(|w| {
                json!({
                    "kind": w.kind,
                    "severity": w.severity,
                    "value": number(w.value),
                    "threshold": number(w.threshold),
                    "message": w.message,
                })
            })
            .collect(),
    )
}

fn numbers(xs: &[f64]) -> Value {
    Value::Array(xs.iter().copied().map(number).collect())
}

pub fn figures(cfg: &RunConfig) -> Result<Outcome> {
    let vib = cfg.vibrational_channel()?;
    let v_e = cfg.effective_velocity()?;
    let fig = kerr::kerr_figures(&vib, &cfg.waveguide, v_e)?;
    let warnings = regime::validate_regime(&vib, &cfg.waveguide, v_e);
    let mut r = Report::new();
    r.num("theta", fig.theta)
        .num("riccati_rate", fig.riccati_rate)
        .num("fluctuation_strength", fig.fluctuation_strength)
        .num("coupling", fig.coupling)
        .num("flux_bound", fig.flux_bound)
        .num("n_bar_v", vib.n_bar_v)
        .num("v_e", v_e)
        .value("warnings", warnings_value(&warnings));
    Ok(Outcome::ok(r))
}

pub fn slowlight(cfg: &RunConfig) -> Result<Outcome> {
    let s = cfg.acoustic_scheme()?;
    let wg = &cfg.waveguide;
    let resp = slowlight::effective_group_velocity(&s, wg);
    let b = s.detunings();
    let added = slowlight::acoustic_added_photons(&s, wg, f64::INFINITY, wg.length, 0.0)?;
    let warnings: Vec<RegimeWarning> =
        regime::validate_gain_length(resp.gain, wg).into_iter().collect();
    let mut r = Report::new();
    r.num("b1", b.b1)
        .num("b2", b.b2)
        .num("e1_sq", s.e1_sq)
        .num("e2_sq", s.e2_sq)
        .num("gain", resp.gain)
        .num("kappa", resp.kappa)
        .num("v_e", resp.v_e)
        .num("v_ratio", resp.v_ratio)
        .num("v_ratio_approx", slowlight::working_point_velocity_ratio(&s))
        .num("gain_gradient", resp.gain_gradient)
        .value("regime", json!(resp.regime))
        .num("n_bar_a1", s.n_bar_a1)
        .num("n_bar_a2", s.n_bar_a2)
        .num("added_photon_density", added)
        .num("added_photons", added * wg.length)
        .value("warnings", warnings_value(&warnings));
    Ok(Outcome::ok(r))
}

pub fn sweep(cfg: &RunConfig) -> Result<Outcome> {
    let spec = cfg.grid_spec()?;
    let fraction = cfg.sweep.map(|s| s.gr_budget_fraction).unwrap_or(0.1);
    let grid = sweep::grid_evaluate(&spec)?;
    let mut csv = Vec::new();
    grid.write_csv(&mut csv)?;

    let mut summary = Report::new();
    summary
        .value("cells", json!(grid.cells.len()))
        .value("masked", json!(grid.masked_count()))
        .num("max_gain_gradient", grid.max_gain_gradient());
    let mut status = exit::OK;
    if spec.balance {
        let budget = sweep::budget_from_fraction(&grid, fraction);
        summary.num("gr_budget", budget);
        match sweep::find_working_point_in(&spec, &grid, budget)? {
            sweep::SearchOutcome::Found { point, feasible } => {
                summary
                    .value("feasible", json!(feasible))
                    .num("b1", point.b1)
                    .num("b2", point.b2)
                    .num("v_ratio", point.v_ratio)
                    .num("gr_abs", point.gr_abs)
                    .num("e_ratio", point.e_ratio);
            }
            sweep::SearchOutcome::NoSolution { feasible } => {
                summary
                    .value("feasible", json!(feasible))
                    .value("outcome", json!("no_solution"));
                status = exit::NO_SOLUTION;
            }
        }
    }
    Ok(Outcome {
        body: Body::Csv { csv, summary },
        status,
    })
}

pub fn riccati(cfg: &RunConfig, n_u: f64, n_d: f64) -> Result<Outcome> {
    for (name, v) in [("n_u", n_u), ("n_d", n_d)] {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(brillouin_core::Error::Config(format!(
                "--{} must be finite and non-negative, got {v}",
                name.replace('_', "-")
            )));
        }
    }
    let vib = cfg.vibrational_channel()?;
    let v_e = cfg.effective_velocity()?;
    let wg = &cfg.waveguide;
    let fig = kerr::kerr_figures(&vib, wg, v_e)?;
    let input = DensityPair::new(n_u, n_d);
    let output = kerr::riccati_propagate(input, fig.riccati_rate, wg.length);
    let (phase_u, phase_d) = kerr::phase_exponents(input, &fig, wg.length);
    let added = kerr::vibrational_added_photons(input, &vib, wg, v_e)?;
    let mut r = Report::new();
    r.num("n_u_in", n_u)
        .num("n_d_in", n_d)
        .num("riccati_rate", fig.riccati_rate)
        .num("n_u_out", output.n_u)
        .num("n_d_out", output.n_d)
        .num("total_in", input.total())
        .num("total_out", output.total())
        .num("phase_u", phase_u)
        .num("phase_d", phase_d)
        .num("thermal_added_u", added.n_u)
        .num("thermal_added_d", added.n_d);
    Ok(Outcome::ok(r))
}

fn vibrational_problem(cfg: &RunConfig) -> Result<(VibrationalProblem, Mesh1D)> {
    let v_e = cfg.effective_velocity()?;
    let signals = cfg.signals();
    let problem = VibrationalProblem {
        vib: cfg.vibrational_channel()?,
        wg: cfg.waveguide,
        v_e,
        inflow_u: signals.inflow_u,
        inflow_d: signals.inflow_d,
    };
    let mesh = cfg.mesh_for(v_e)?;
    problem.validate(&mesh)?;
    Ok((problem, mesh))
}

fn acoustic_problem(cfg: &RunConfig) -> Result<(AcousticProblem, Mesh1D)> {
    let signals = cfg.signals();
    let problem = AcousticProblem {
        scheme: cfg.acoustic_scheme()?,
        wg: cfg.waveguide,
        inflow: signals.inflow,
        phonon_advection: signals.phonon_advection,
    };
    let mesh = cfg.mesh_for(cfg.waveguide.group_velocity)?;
    problem.validate(&mesh)?;
    Ok((problem, mesh))
}

fn mesh_summary(r: &mut Report, mesh: &Mesh1D) {
    r.value("nx", json!(mesh.nx))
        .value("nt", json!(mesh.nt))
        .num("dx", mesh.dx)
        .num("dt", mesh.dt);
}

pub fn simulate(cfg: &RunConfig, scenario: Scenario) -> Result<Outcome> {
    let recording = Recording {
        snapshot_every: cfg.mesh_section()?.snapshot_every,
    };
    let mut csv = Vec::new();
    let mut summary = Report::new();
    match scenario {
        Scenario::Vibrational => {
            let (problem, mesh) = vibrational_problem(cfg)?;
            let traj = dynamics::meanfield_vibrational(
                &FieldState::zeros(mesh.nx),
                &problem,
                &mesh,
                recording,
            )?;
            snapshot::write_vibrational(&mut csv, &mesh, &traj.snapshots)?;
            mesh_summary(&mut summary, &mesh);
            summary
                .value("snapshots", json!(traj.snapshots.len()))
                .num("signal_photons", traj.last().signal_photons(mesh.dx));
        }
        Scenario::Acoustic => {
            let (problem, mesh) = acoustic_problem(cfg)?;
            let traj = dynamics::meanfield_acoustic(
                &AcousticState::zeros(mesh.nx),
                &problem,
                &mesh,
                recording,
            )?;
            snapshot::write_acoustic(&mut csv, &mesh, &traj.snapshots)?;
            mesh_summary(&mut summary, &mesh);
            summary.value("snapshots", json!(traj.snapshots.len()));
        }
    }
    Ok(Outcome {
        body: Body::Csv { csv, summary },
        status: exit::OK,
    })
}

fn sample_steps(times: &[f64], mesh: &Mesh1D) -> Result<Vec<usize>> {
    times
        .iter()
        .map(|&t| {
            let n = (t / mesh.dt).round();
            if n > mesh.nt as f64 {
                Err(brillouin_core::Error::Config(format!(
                    "sample time {t:e} s lies beyond the simulated {:e} s",
                    mesh.duration()
                )))
            } else {
                Ok(n as usize)
            }
        })
        .collect()
}

fn estimates(xs: &[dynamics::Estimate]) -> (Value, Value) {
    (
        numbers(&xs.iter().map(|e| e.mean).collect::<Vec<_>>()),
        numbers(&xs.iter().map(|e| e.std_error).collect::<Vec<_>>()),
    )
}

pub fn ensemble(cfg: &RunConfig, scenario: Scenario) -> Result<Outcome> {
    let noise = cfg.noise()?;
    let signals = cfg.signals();
    let mut r = Report::new();
    r.value("seed", json!(noise.seed))
        .value("n_traj", json!(noise.n_traj));
    match scenario {
        Scenario::Vibrational => {
            let (problem, mesh) = vibrational_problem(cfg)?;
            let times = if signals.sample_times.is_empty() {
                vec![cfg.waveguide.length / problem.v_e]
            } else {
                signals.sample_times.clone()
            };
            let steps = sample_steps(&times, &mesh)?;
            let init = FieldState::uniform(
                mesh.nx,
                problem.inflow_u.at(0.0),
                problem.inflow_d.at(0.0),
            );
            let ens = dynamics::langevin_vibrational(&noise, &init, &problem, &mesh, &steps)?;
            let input = DensityPair::new(
                problem.inflow_u.at(0.0).norm_sqr(),
                problem.inflow_d.at(0.0).norm_sqr(),
            );
            let mut vib = problem.vib;
            if let Some(n) = noise.n_bar {
                vib.n_bar_v = n;
            }
            let predicted = kerr::vibrational_added_photons(input, &vib, &problem.wg, problem.v_e)?;
            let (u_mean, u_err) = estimates(&ens.added_u);
            let (d_mean, d_err) = estimates(&ens.added_d);
            mesh_summary(&mut r, &mesh);
            r.value("times", numbers(&ens.times))
                .value("added_u", u_mean)
                .value("added_u_std_error", u_err)
                .value("added_d", d_mean)
                .value("added_d_std_error", d_err)
                .num("predicted_added_u", predicted.n_u)
                .num("predicted_added_d", predicted.n_d);
        }
        Scenario::Acoustic => {
            let (problem, mesh) = acoustic_problem(cfg)?;
            let times = if signals.sample_times.is_empty() {
                let g = problem.scheme.gamma_a;
                vec![0.5 / g, 1.0 / g, 2.0 / g, 4.0 / g]
            } else {
                signals.sample_times.clone()
            };
            let steps = sample_steps(&times, &mesh)?;
            let ens = dynamics::langevin_acoustic(
                &noise,
                &AcousticState::zeros(mesh.nx),
                &problem,
                &mesh,
                &steps,
            )?;
            let mut s = problem.scheme;
            if let Some(n) = noise.n_bar {
                s.n_bar_a1 = n;
                s.n_bar_a2 = n;
            }
            let predicted = ens
                .times
                .iter()
                .map(|&t| slowlight::acoustic_added_photons(&s, &problem.wg, t, problem.wg.length, 0.0))
                .collect::<Result<Vec<_>>>()?;
            let (mean, err) = estimates(&ens.added);
            mesh_summary(&mut r, &mesh);
            r.value("times", numbers(&ens.times))
                .value("added", mean)
                .value("added_std_error", err)
                .value("predicted_added", numbers(&predicted));
        }
    }
    Ok(Outcome::ok(r))
}

/// Loading already enforced the parameter invariants; this adds the regime
/// checks of every section present.
pub fn validate(cfg: &RunConfig) -> Outcome {
    let mut warnings = Vec::new();
    if let (Ok(vib), Ok(v_e)) = (cfg.vibrational_channel(), cfg.effective_velocity()) {
        warnings.extend(regime::validate_regime(&vib, &cfg.waveguide, v_e));
    }
    if let Ok(s) = cfg.acoustic_scheme() {
        let resp = slowlight::effective_group_velocity(&s, &cfg.waveguide);
        warnings.extend(regime::validate_gain_length(resp.gain, &cfg.waveguide));
    }
    let failed = regime::has_errors(&warnings);
    let mut r = Report::new();
    r.value("valid", json!(!failed))
        .value("warnings", warnings_value(&warnings));
    Outcome {
        body: Body::Report(r),
        status: if failed { exit::VALIDATION } else { exit::OK },
    }
}
