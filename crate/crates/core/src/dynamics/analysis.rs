//! Pulse measurements on probe series.

use num_complex::Complex64;

use super::Probe;

/// Intensity-weighted mean time of a series.
pub fn centroid(t: &[f64], series: &[Complex64]) -> f64 {
    let (mut w, mut wt) = (0.0, 0.0);
    for (ti, z) in t.iter().zip(series) {
        let p = z.norm_sqr();
        w += p;
        wt += p * ti;
    }
    wt / w
}

/// `Σ |ψ|² dt` over a uniformly sampled series.
pub fn fluence(series: &[Complex64], dt: f64) -> f64 {
    series.iter().map(|z| z.norm_sqr()).sum::<f64>() * dt
}

/// Outlet centroid minus inlet centroid for component `k`.
pub fn centroid_delay(probe: &Probe, k: usize) -> f64 {
    centroid(&probe.t, &probe.outlet_series(k)) - centroid(&probe.t, &probe.inlet_series(k))
}

/// Outlet fluence over inlet fluence for component `k`.
pub fn energy_ratio(probe: &Probe, k: usize) -> f64 {
    let out: f64 = probe.outlet.iter().map(|v| v[k].norm_sqr()).sum();
    let inp: f64 = probe.inlet.iter().map(|v| v[k].norm_sqr()).sum();
    out / inp
}

/// `arg(out/in)` of the last outlet sample relative to the inlet sample that
/// entered `lag` steps earlier.
pub fn transit_phase(probe: &Probe, k: usize, lag: usize) -> f64 {
    let n = probe.t.len() - 1;
    (probe.outlet[n][k] / probe.inlet[n - lag][k]).arg()
}
