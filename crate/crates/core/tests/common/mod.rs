#![allow(dead_code)]

use brillouin_core::DensityPair;
use ode_solvers::{Dop853, OutputType, System, Vector2};

struct Exchange {
    rate: f64,
}

impl System<f64, Vector2<f64>> for Exchange {
    fn system(&self, _x: f64, y: &Vector2<f64>, dy: &mut Vector2<f64>) {
        let flow = self.rate * y[0] * y[1];
        dy[0] = -flow;
        dy[1] = flow;
    }
}

/// Integrates `N_u' = −V N_u N_d`, `N_d' = V N_u N_d` over `[0, length]` with
/// an adaptive 8th-order Runge–Kutta scheme.
pub fn riccati_ode(input: DensityPair, rate: f64, length: f64, rtol: f64) -> DensityPair {
    let y0 = Vector2::new(input.n_u, input.n_d);
    let mut solver = Dop853::from_param(
        Exchange { rate },
        0.0,
        length,
        length,
        y0,
        rtol,
        0.0,
        0.9,
        0.0,
        0.333,
        6.0,
        length,
        0.0,
        1_000_000,
        1000,
        OutputType::Sparse,
    );
    solver.integrate().expect("ode integration");
    let (x, y) = solver
        .x_out()
        .iter()
        .zip(solver.y_out())
        .next_back()
        .expect("at least one output");
    assert_eq!(*x, length);
    DensityPair::new(y[0], y[1])
}

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
