use std::sync::Arc;

use crate::problem::{BiObjective, Bound, ProblemSpec};

/// Magnitude cap on `d|x|^0.8/dx`, which is unbounded at zero.
pub const KURSAWE_GRADIENT_CLAMP: f64 = 1e6;

/// Three-variable Kursawe function with `x1` continuous and `(x2, x3)`
/// taken from the discrete realization:
///
/// ```text
/// J1 = -10 exp(-0.2 sqrt(x1^2 + x2^2)) - 10 exp(-0.2 sqrt(x2^2 + x3^2))
/// J2 = sum_i |x_i|^0.8 + 5 sin(x_i^3)
/// ```
#[derive(Debug, Clone, Copy, Default)]
pub struct Kursawe;

fn wave(x: f64) -> f64 {
    x.abs().powf(0.8) + 5.0 * (x * x * x).sin()
}

impl BiObjective for Kursawe {
    fn objectives(&self, y: &[f64], z: &[f64]) -> [f64; 2] {
        let (x1, x2, x3) = (y[0], z[0], z[1]);
        let j1 = -10.0 * (-0.2 * x1.hypot(x2)).exp() - 10.0 * (-0.2 * x2.hypot(x3)).exp();
        let j2 = wave(x1) + wave(x2) + wave(x3);
        [j1, j2]
    }

    fn gradient(&self, y: &[f64], z: &[f64], g1: &mut [f64], g2: &mut [f64]) -> bool {
        let (x1, x2) = (y[0], z[0]);
        let r = x1.hypot(x2);
        // At the cone tip r = 0 the minimum-norm subgradient is zero.
        g1[0] = if r > 0.0 { 2.0 * (-0.2 * r).exp() * x1 / r } else { 0.0 };

        let power = if x1 == 0.0 {
            0.0
        } else {
            (0.8 * x1.signum() * x1.abs().powf(-0.2))
                .clamp(-KURSAWE_GRADIENT_CLAMP, KURSAWE_GRADIENT_CLAMP)
        };
        g2[0] = power + 15.0 * x1 * x1 * (x1 * x1 * x1).cos();
        true
    }
}

pub fn make_e1() -> ProblemSpec {
    let levels: Vec<f64> = (-5..=5).map(f64::from).collect();
    ProblemSpec::new(
        "e1",
        vec![Bound::new(-5.0, 5.0)],
        vec![levels.clone(), levels],
        Arc::new(Kursawe),
    )
    .expect("e1 definition is valid")
}
