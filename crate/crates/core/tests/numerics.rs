use brillouin_core::dynamics::analysis::{centroid_delay, transit_phase};
use brillouin_core::dynamics::{
    langevin_vibrational, meanfield_acoustic, meanfield_vibrational, AcousticProblem,
    AcousticState, Envelope, FieldState, Mesh1D, NoiseConfig, Recording, VibrationalProblem,
};
use brillouin_core::kerr::{kerr_figures, phase_exponents};
use brillouin_core::slowlight::{
    effective_group_velocity, gain_coefficient, gain_gradient, wavenumber_shift,
    wavenumber_shift_slope,
};
use brillouin_core::sweep::{
    budget_from_fraction, find_working_point_in, grid_evaluate, AxisRange, GridSpec,
    PumpNormalization,
};
use brillouin_core::{presets, AcousticScheme, DensityPair, VibrationalChannel, WaveguideParams};
use num_complex::Complex64;

fn reference_grid(n: usize) -> GridSpec {
    GridSpec {
        b1_range: AxisRange(-4.0, 4.0, n),
        b2_range: AxisRange(-4.0, 4.0, n),
        base: presets::acoustic(),
        wg: presets::waveguide(),
        balance: true,
        normalization: PumpNormalization::FixedAntiStokes,
    }
}

/// Moves the signal frequency by `d`: `Δω₁ → Δω₁ + d`, `Δω₂ → Δω₂ − d`.
fn shifted(s: &AcousticScheme, d: f64) -> AcousticScheme {
    let mut t = *s;
    t.dw1 += d;
    t.dw2 -= d;
    t
}

#[test]
fn analytic_derivatives_match_central_differences() {
    let spec = reference_grid(100);
    let wg = spec.wg;
    let h = 1e-3 * spec.base.gamma_a;
    // Fourth-order central difference.
    let fd = |f: &dyn Fn(&AcousticScheme) -> f64, s: &AcousticScheme| {
        (8.0 * (f(&shifted(s, h)) - f(&shifted(s, -h))) - (f(&shifted(s, 2.0 * h)) - f(&shifted(s, -2.0 * h))))
            / (12.0 * h)
    };
    let mut cases = Vec::new();
    for i in 0..100 {
        for j in 0..100 {
            let s = spec.scheme_at(spec.b1_range.value(i), spec.b2_range.value(j));
            let fd_k = fd(&|t| wavenumber_shift(t, &wg), &s);
            let fd_g = fd(&|t| gain_coefficient(t, &wg), &s);
            cases.push((wavenumber_shift_slope(&s, &wg), fd_k, gain_gradient(&s, &wg), fd_g));
        }
    }
    let max_k = cases.iter().map(|c| c.0.abs()).fold(0.0, f64::max);
    let max_g = cases.iter().map(|c| c.2.abs()).fold(0.0, f64::max);
    for (k, fd_k, g, fd_g) in cases {
        if k.abs() > 1e-12 * max_k {
            assert!((k - fd_k).abs() <= 1e-6 * k.abs(), "{k} vs {fd_k}");
        }
        if g.abs() > 1e-12 * max_g {
            assert!((g - fd_g).abs() <= 1e-6 * g.abs(), "{g} vs {fd_g}");
        }
    }
}

fn phase_error(nx: usize) -> f64 {
    let theta = 0.5;
    let r = 10.0;
    let f = r * theta;
    let vib = VibrationalChannel {
        omega_v: 1.0,
        gamma_v: r * f / 20.0,
        f_v: f,
        delta_omega: r * f,
        delta_q: 0.0,
        n_bar_v: 0.0,
    };
    let wg = WaveguideParams::new(1.0, 10.0, 0.0, 0.0).unwrap();
    let ramp = |amplitude| Envelope::Ramp {
        amplitude,
        rise_time: 20.0,
        delay: 0.0,
        phase: 0.0,
    };
    let problem = VibrationalProblem {
        vib,
        wg,
        v_e: 1.0,
        inflow_u: ramp(0.01),
        inflow_d: ramp(1.0),
    };
    let mesh = Mesh1D::along(1.0, nx, 1.0, 60.0).unwrap();
    let tr = meanfield_vibrational(&FieldState::zeros(nx), &problem, &mesh, Recording::default()).unwrap();
    let fig = kerr_figures(&vib, &wg, 1.0).unwrap();
    let expected = phase_exponents(DensityPair::new(1e-4, 1.0), &fig, 1.0).0;
    transit_phase(&tr.probe, 0, nx - 1) / expected - 1.0
}

#[test]
fn refining_the_mesh_reduces_the_phase_error() {
    let coarse = phase_error(101).abs();
    let fine = phase_error(201).abs();
    assert!(fine < coarse, "{fine} !< {coarse}");
    assert!(fine < 0.05);
}

fn delay_error(nx: usize) -> f64 {
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
    let te = 1.0 / effective_group_velocity(&s, &wg).v_e;
    let tau = 20.0;
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
    centroid_delay(&tr.probe, 0) / te - 1.0
}

#[test]
fn refining_the_mesh_keeps_the_delay() {
    let coarse = delay_error(101);
    let fine = delay_error(201);
    assert!(coarse.abs() < 0.05 && fine.abs() < 0.05, "{coarse} {fine}");
    assert!((fine - coarse).abs() < 0.01, "{coarse} {fine}");
}

fn pool(n: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap()
}

#[test]
fn ensemble_does_not_depend_on_thread_count() {
    let wg = presets::waveguide();
    let vib = presets::vibrational();
    let v_e = presets::EFFECTIVE_GROUP_VELOCITY;
    let nx = 21;
    let mesh = Mesh1D::along(wg.length, nx, v_e, wg.length / v_e).unwrap();
    let amp = 10.0;
    let problem = VibrationalProblem {
        vib,
        wg,
        v_e,
        inflow_u: Envelope::Constant { amplitude: 1.0, phase: 0.0 },
        inflow_d: Envelope::Constant { amplitude: amp, phase: 0.0 },
    };
    let init = FieldState::uniform(nx, Complex64::new(1.0, 0.0), Complex64::new(amp, 0.0));
    let cfg = NoiseConfig { seed: 3, n_traj: 40, n_bar: None };
    let run = |threads| {
        pool(threads).install(|| langevin_vibrational(&cfg, &init, &problem, &mesh, &[mesh.nt / 2, mesh.nt]).unwrap())
    };
    let a = run(1);
    let b = run(4);
    assert_eq!(a, b);
    for (x, y) in a.added_u.iter().zip(&b.added_u) {
        assert_eq!(x.mean.to_bits(), y.mean.to_bits());
    }
}

#[test]
fn grid_does_not_depend_on_thread_count() {
    let spec = reference_grid(61);
    let a = pool(1).install(|| grid_evaluate(&spec).unwrap());
    let b = pool(4).install(|| grid_evaluate(&spec).unwrap());
    for (x, y) in a.cells.iter().zip(&b.cells) {
        assert_eq!(x.v_ratio.to_bits(), y.v_ratio.to_bits());
        assert_eq!(x.gain_gradient.to_bits(), y.gain_gradient.to_bits());
    }
}

#[test]
fn working_point_is_stable_under_refinement() {
    let pick = |n| {
        let spec = reference_grid(n);
        let grid = grid_evaluate(&spec).unwrap();
        let budget = budget_from_fraction(&grid, 0.1);
        *find_working_point_in(&spec, &grid, budget).unwrap().point().unwrap()
    };
    let coarse = pick(201);
    let fine = pick(401);
    let cell = 8.0 / 200.0;
    assert!((coarse.b1 - fine.b1).abs() <= cell + 1e-12, "{coarse:?} {fine:?}");
    assert!((coarse.b2 - fine.b2).abs() <= cell + 1e-12, "{coarse:?} {fine:?}");
}
