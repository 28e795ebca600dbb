//! Small synthetic problems used to exercise edge paths. Not benchmarks.

use std::sync::Arc;

use crate::problem::{BiObjective, Bound, ProblemSpec};

/// `J1 = y^2`, `J2 = (y - 1)^2` on `[0, 1]`; the single discrete value has
/// no effect.
#[derive(Debug, Clone, Copy)]
pub struct QuadPair;

impl BiObjective for QuadPair {
    fn objectives(&self, y: &[f64], _z: &[f64]) -> [f64; 2] {
        [y[0] * y[0], (y[0] - 1.0) * (y[0] - 1.0)]
    }

    fn gradient(&self, y: &[f64], _z: &[f64], g1: &mut [f64], g2: &mut [f64]) -> bool {
        g1[0] = 2.0 * y[0];
        g2[0] = 2.0 * (y[0] - 1.0);
        true
    }
}

pub fn make_quad() -> ProblemSpec {
    ProblemSpec::new("quad", vec![Bound::new(0.0, 1.0)], vec![vec![0.0]], Arc::new(QuadPair))
        .expect("quad definition is valid")
}

/// `J1 = y^2`, `J2 = (y - 3)^2 + z / 10` on `[0, 3]` subject to `y >= z`.
///
/// `z = 0.5` gives the whole front, `z = 1` is dominated (its utopia point
/// survives the utopia test but its center is covered), and `z = 4` is
/// infeasible.
#[derive(Debug, Clone, Copy)]
pub struct ToyConstrained;

impl BiObjective for ToyConstrained {
    fn objectives(&self, y: &[f64], z: &[f64]) -> [f64; 2] {
        [y[0] * y[0], (y[0] - 3.0) * (y[0] - 3.0) + 0.1 * z[0]]
    }

    fn num_inequality(&self) -> usize {
        1
    }

    fn inequality(&self, y: &[f64], z: &[f64], out: &mut [f64]) {
        out[0] = z[0] - y[0];
    }

    fn gradient(&self, y: &[f64], _z: &[f64], g1: &mut [f64], g2: &mut [f64]) -> bool {
        g1[0] = 2.0 * y[0];
        g2[0] = 2.0 * (y[0] - 3.0);
        true
    }
}

pub fn make_toy_constrained() -> ProblemSpec {
    ProblemSpec::new(
        "toy-constrained",
        vec![Bound::new(0.0, 3.0)],
        vec![vec![0.5, 1.0, 4.0]],
        Arc::new(ToyConstrained),
    )
    .expect("toy-constrained definition is valid")
}
