//! Exponential integrator for `y' = λ y + a(t)` with `a` linear over the step.

use num_complex::Complex64;

const SERIES_RADIUS: f64 = 1e-2;

/// `φ₁(z) = (e^z − 1)/z` and `φ₂(z) = (e^z − 1 − z)/z²`.
pub fn phi12(z: Complex64) -> (Complex64, Complex64) {
    if z.norm() < SERIES_RADIUS {
        // Σ z^k/(k+1)! and Σ z^k/(k+2)!, truncated at z⁵.
        let mut p1 = Complex64::new(0.0, 0.0);
        let mut p2 = Complex64::new(0.0, 0.0);
        let mut zk = Complex64::new(1.0, 0.0);
        let mut fact = 1.0;
        for k in 0..6 {
            fact *= (k + 1) as f64;
            p1 += zk / fact;
            p2 += zk / (fact * (k + 2) as f64);
            zk *= z;
        }
        (p1, p2)
    } else {
        let ez = z.exp();
        let p1 = (ez - 1.0) / z;
        let p2 = (ez - 1.0 - z) / (z * z);
        (p1, p2)
    }
}

/// Precomputed step for a fixed rate `λ` and step `h`.
#[derive(Debug, Clone, Copy)]
pub struct LinearSourceStep {
    decay: Complex64,
    w0: Complex64,
    w1: Complex64,
}

impl LinearSourceStep {
    pub fn new(lambda: Complex64, h: f64) -> Self {
        let z = lambda * h;
        let (p1, p2) = phi12(z);
        Self {
            decay: z.exp(),
            w0: h * (p1 - p2),
            w1: h * p2,
        }
    }

    /// Exact solution after one step when the source moves linearly from
    /// `a0` to `a1`.
    #[inline]
    pub fn apply(&self, y: Complex64, a0: Complex64, a1: Complex64) -> Complex64 {
        self.decay * y + self.w0 * a0 + self.w1 * a1
    }
}
