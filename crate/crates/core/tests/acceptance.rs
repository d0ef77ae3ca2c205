//! Acceptance suite. Prints one line per criterion and exits non-zero if any
//! criterion fails.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use brillouin_core::dynamics::analysis::{centroid_delay, energy_ratio, transit_phase};
use brillouin_core::dynamics::{
    langevin_vibrational, meanfield_acoustic, meanfield_vibrational, AcousticProblem,
    AcousticState, Envelope, FieldState, Mesh1D, NoiseConfig, Recording, VibrationalProblem,
};
use brillouin_core::kerr::{
    fluctuation_strength, kerr_figures, phase_exponents, riccati_propagate,
    vibrational_added_photons,
};
use brillouin_core::slowlight::{
    acoustic_added_photons, effective_group_velocity, gain_coefficient, gain_gradient,
    wavenumber_shift, wavenumber_shift_slope,
};
use brillouin_core::sweep::{
    budget_from_fraction, find_working_point_in, grid_evaluate, AxisRange, GridSpec,
    PumpNormalization,
};
use brillouin_core::{
    bose_occupation, presets, AcousticScheme, DensityPair, VibrationalChannel, WaveguideParams,
};
use common::{rel, riccati_ode};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

type Check = fn() -> Verdict;

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn within(value: f64, target: f64, tol: f64) -> bool {
    (value - target).abs() <= tol
}

fn reference_grid() -> GridSpec {
    GridSpec {
        b1_range: AxisRange(-4.0, 4.0, 201),
        b2_range: AxisRange(-4.0, 4.0, 201),
        base: presets::acoustic(),
        wg: presets::waveguide(),
        balance: true,
        normalization: PumpNormalization::FixedAntiStokes,
    }
}

fn thermal_occupations() -> Verdict {
    let n_v = bose_occupation(2.0 * PI * 10e9, 0.2).unwrap();
    let n_a = bose_occupation(2.0 * PI * 15e9, 0.2).unwrap();
    verdict(
        within(n_v, 0.100, 0.005) && within(n_a, 0.028, 0.004),
        format!("n_v = {n_v:.5} (0.100 ± 0.005), n_a = {n_a:.5} (0.028 ± 0.004)"),
    )
}

fn kerr_numbers() -> Verdict {
    let wg = presets::waveguide();
    let vib = presets::vibrational();
    let fig = kerr_figures(&vib, &wg, 2.2e4).unwrap();
    let theta_ok = within(fig.theta, 0.99, 0.01);
    let w_ok = within(fig.fluctuation_strength, 0.102, 0.002);
    let v_ok = within(fig.riccati_rate, 0.0200, 0.0002);
    let flux_ok = (fig.flux_bound / 1e8 - 1.0).abs() <= 0.15;
    verdict(
        theta_ok && w_ok && v_ok && flux_ok,
        format!(
            "theta = {:.4} [{}], W = {:.5} [{}], V = {:.6} vs 0.0200 ± 0.0002 [{}], flux bound = {:.4e} [{}]",
            fig.theta,
            ok(theta_ok),
            fig.fluctuation_strength,
            ok(w_ok),
            fig.riccati_rate,
            ok(v_ok),
            fig.flux_bound,
            ok(flux_ok)
        ),
    )
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "out of tolerance"
    }
}

fn shifted(s: &AcousticScheme, d: f64) -> AcousticScheme {
    let mut t = *s;
    t.dw1 += d;
    t.dw2 -= d;
    t
}

fn slow_light() -> Verdict {
    let wg = presets::waveguide();
    let s = presets::acoustic();
    let v_ratio = effective_group_velocity(&s, &wg).v_ratio;
    let ratio_ok = (v_ratio / 3.7e-4 - 1.0).abs() <= 0.1;

    let spec = reference_grid();
    let h = 1e-3 * s.gamma_a;
    let fd = |f: &dyn Fn(&AcousticScheme) -> f64, s: &AcousticScheme| {
        (8.0 * (f(&shifted(s, h)) - f(&shifted(s, -h))) - (f(&shifted(s, 2.0 * h)) - f(&shifted(s, -2.0 * h))))
            / (12.0 * h)
    };
    let mut cells = Vec::new();
    for i in 0..201 {
        for j in 0..201 {
            let c = spec.scheme_at(spec.b1_range.value(i), spec.b2_range.value(j));
            cells.push((
                wavenumber_shift_slope(&c, &wg),
                fd(&|t| wavenumber_shift(t, &wg), &c),
                gain_gradient(&c, &wg),
                fd(&|t| gain_coefficient(t, &wg), &c),
            ));
        }
    }
    let max_k = cells.iter().map(|c| c.0.abs()).fold(0.0, f64::max);
    let max_g = cells.iter().map(|c| c.2.abs()).fold(0.0, f64::max);
    let mut worst: f64 = 0.0;
    for &(k, fk, g, fg) in &cells {
        if k.abs() > 1e-12 * max_k {
            worst = worst.max(rel(k, fk));
        }
        if g.abs() > 1e-12 * max_g {
            worst = worst.max(rel(g, fg));
        }
    }
    let fd_ok = worst <= 1e-6;
    verdict(
        ratio_ok && fd_ok,
        format!(
            "v_e/v_g = {v_ratio:.4e} vs 3.7e-4 ± 10% [{}], worst derivative mismatch {worst:.2e} on 201² [{}]",
            ok(ratio_ok),
            ok(fd_ok)
        ),
    )
}

fn zero_gain() -> Verdict {
    let spec = reference_grid();
    let grid = grid_evaluate(&spec).unwrap();
    let wg = spec.wg;
    let mut worst: f64 = 0.0;
    for (k, cell) in grid.cells.iter().enumerate() {
        let s = spec.scheme_at(grid.b1[k / 201], grid.b2[k % 201]);
        let term = s.f_a * s.f_a * s.gamma_a / (2.0 * wg.group_velocity) * s.e2_sq
            / (s.gamma_a * s.gamma_a / 4.0 + s.dw2 * s.dw2);
        worst = worst.max(cell.gain.abs() / (f64::EPSILON * term));
    }
    verdict(
        worst <= 4.0,
        format!("max |G| = {worst:.2} ulp of the cancelling Lorentzian term over 201² (limit 4)"),
    )
}

fn acoustic_noise() -> Verdict {
    let wg = presets::waveguide();
    let s = presets::acoustic();
    let density = acoustic_added_photons(&s, &wg, f64::INFINITY, wg.length, 0.0).unwrap();
    let photons = density * wg.length;
    verdict(
        (photons / 0.3 - 1.0).abs() <= 0.2,
        format!(
            "N_fluct = {photons:.4} photons (density {density:.3}/m) vs 0.3 ± 20%, n_a = {:.4}",
            s.n_bar_a1
        ),
    )
}

fn riccati_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst_ode: f64 = 0.0;
    let mut worst_cons: f64 = 0.0;
    for _ in 0..100 {
        let input = DensityPair::new(rng.random_range(1e-3..1e3), rng.random_range(1e-3..1e3));
        let vln = rng.random_range(0.0..10.0);
        let length = rng.random_range(1e-3..1.0);
        let rate = vln / (length * input.total());
        let closed = riccati_propagate(input, rate, length);
        let ode = riccati_ode(input, rate, length, 1e-12);
        worst_ode = worst_ode.max(rel(closed.n_u, ode.n_u)).max(rel(closed.n_d, ode.n_d));
        worst_cons = worst_cons.max(rel(closed.total(), input.total()));
    }
    let adder = riccati_propagate(DensityPair::new(1.0, 1.0), 25.0, 1.0);
    let pass = worst_ode <= 1e-6 && worst_cons <= 1e-12 && adder.n_u < 1e-15;
    verdict(
        pass,
        format!(
            "worst ODE mismatch {worst_ode:.2e} (1e-6), conservation {worst_cons:.2e} (1e-12), n_u_out at VLN=50: {:.2e} (< 1e-15)",
            adder.n_u
        ),
    )
}

fn adiabatic_phase() -> Verdict {
    let theta = 0.5;
    let wg = WaveguideParams::new(1.0, 10.0, 0.0, 0.0).unwrap();
    let nx = 401;
    let mesh = Mesh1D::along(1.0, nx, 1.0, 80.0).unwrap();
    let ramp = |amplitude| Envelope::Ramp {
        amplitude,
        rise_time: 20.0,
        delay: 0.0,
        phase: 0.0,
    };
    let mut pass = true;
    let mut parts = Vec::new();
    for r in [3.0, 10.0, 30.0] {
        let f = r * theta;
        let vib = VibrationalChannel {
            omega_v: 1.0,
            gamma_v: r * f / 20.0,
            f_v: f,
            delta_omega: r * f,
            delta_q: 0.0,
            n_bar_v: 0.0,
        };
        let problem = VibrationalProblem {
            vib,
            wg,
            v_e: 1.0,
            inflow_u: ramp(0.01),
            inflow_d: ramp(1.0),
        };
        let tr = meanfield_vibrational(&FieldState::zeros(nx), &problem, &mesh, Recording::default()).unwrap();
        let measured = transit_phase(&tr.probe, 0, nx - 1);
        let fig = kerr_figures(&vib, &wg, 1.0).unwrap();
        let expected = phase_exponents(DensityPair::new(1e-4, 1.0), &fig, 1.0).0;
        let err = measured / expected - 1.0;
        pass &= err.abs() <= 0.05;
        parts.push(format!("ΔΩ/f={r}: {measured:.5} vs {expected:.5} ({:+.2}%)", 100.0 * err));
    }
    verdict(pass, parts.join(", "))
}

fn slow_light_pde() -> Verdict {
    let s = AcousticScheme {
        f_a: 1.0,
        gamma_a: 1.0,
        dw1: 1.0,
        dw2: -0.25,
        e1_sq: 0.0,
        e2_sq: 19.0 * 25.0 / 96.0,
        dk1: 0.0,
        dk2: 0.0,
        omega_a1: 1.0,
        omega_a2: 1.0,
        n_bar_a1: 0.0,
        n_bar_a2: 0.0,
    }
    .balanced();
    let wg = WaveguideParams::new(1.0, 1.0, 0.0, 0.0).unwrap();
    let resp = effective_group_velocity(&s, &wg);
    let te = 1.0 / resp.v_e;
    let tau = 60.0;
    let nx = 401;
    let problem = AcousticProblem {
        scheme: s,
        wg,
        inflow: Envelope::Gaussian {
            amplitude: 1.0,
            center: 5.0 * tau,
            width: tau,
            phase: 0.0,
        },
        phonon_advection: false,
    };
    let mesh = Mesh1D::along(1.0, nx, 1.0, 10.0 * tau + te).unwrap();
    let tr = meanfield_acoustic(&AcousticState::zeros(nx), &problem, &mesh, Recording::default()).unwrap();
    let delay = centroid_delay(&tr.probe, 0);
    let energy = energy_ratio(&tr.probe, 0);
    let delay_ok = (delay / te - 1.0).abs() <= 0.05;
    let energy_ok = (energy - 1.0).abs() <= 0.01;
    verdict(
        delay_ok && energy_ok,
        format!(
            "v_e/v_g = {:.4}, delay {delay:.4} vs L/v_e = {te:.4} [{}], energy ratio {energy:.5} [{}]",
            resp.v_ratio,
            ok(delay_ok),
            ok(energy_ok)
        ),
    )
}

fn langevin() -> Verdict {
    let wg = presets::waveguide();
    let vib = presets::vibrational();
    let v_e = presets::EFFECTIVE_GROUP_VELOCITY;
    let nx = 101;
    let mesh = Mesh1D::along(wg.length, nx, v_e, wg.length / v_e).unwrap();
    let n_d = 1.0 / wg.length;
    let amp = n_d.sqrt();
    let problem = VibrationalProblem {
        vib,
        wg,
        v_e,
        inflow_u: Envelope::Off,
        inflow_d: Envelope::Constant { amplitude: amp, phase: 0.0 },
    };
    let init = FieldState::uniform(nx, Complex64::new(0.0, 0.0), Complex64::new(amp, 0.0));
    let cfg = NoiseConfig { seed: 42, n_traj: 1000, n_bar: None };
    let run = |cfg: &NoiseConfig| langevin_vibrational(cfg, &init, &problem, &mesh, &[mesh.nt]).unwrap();

    let ens = run(&cfg);
    let again = run(&cfg);
    let control = run(&NoiseConfig { n_bar: Some(0.0), ..cfg });
    let target = fluctuation_strength(&vib, &wg, v_e) * vib.n_bar_v * n_d;
    let full = vibrational_added_photons(DensityPair::new(0.0, n_d), &vib, &wg, v_e).unwrap().n_u;
    let est = ens.added_u[0];
    let ctl = control.added_u[0];
    let match_ok = est.consistent_with(target, 3.0);
    let control_ok = ctl.consistent_with(0.0, 3.0);
    let repro_ok = ens == again;
    verdict(
        match_ok && control_ok && repro_ok,
        format!(
            "ΔN_u = {:.4} ± {:.4}/m vs W n_v N_d = {target:.4}/m [{}] (full form {full:.4}), n=0 control {:.2e} ± {:.1e} [{}], rerun identical [{}]",
            est.mean,
            est.std_error,
            ok(match_ok),
            ctl.mean,
            ctl.std_error,
            ok(control_ok),
            ok(repro_ok)
        ),
    )
}

fn working_point() -> Verdict {
    let spec = reference_grid();
    let grid = grid_evaluate(&spec).unwrap();
    let budget = budget_from_fraction(&grid, 0.1);
    let outcome = find_working_point_in(&spec, &grid, budget).unwrap();
    match outcome.point() {
        Some(p) => verdict(
            (1.5..=2.5).contains(&p.b1) && (-0.75..=-0.25).contains(&p.b2),
            format!(
                "selected (b1, b2) = ({:.2}, {:.2}), v_e/v_g = {:.3e}, window b1 ∈ [1.5, 2.5], b2 ∈ [−0.75, −0.25]",
                p.b1, p.b2, p.v_ratio
            ),
        ),
        None => verdict(false, "no feasible cell".into()),
    }
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("thermal occupations", thermal_occupations),
        ("kerr figures", kerr_numbers),
        ("slow light", slow_light),
        ("zero gain", zero_gain),
        ("acoustic noise budget", acoustic_noise),
        ("riccati oracle", riccati_oracle),
        ("adiabatic-elimination phase", adiabatic_phase),
        ("slow-light PDE", slow_light_pde),
        ("langevin ensemble", langevin),
        ("working-point search", working_point),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {} ({:.1} s)",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
