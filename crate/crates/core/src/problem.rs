//! Problem definition for mixed-discrete bi-objective optimization.
//!
//! A [`ProblemSpec`] couples box bounds on the continuous variables `y`,
//! finite value sets for the discrete variables `z`, and a [`BiObjective`]
//! model that evaluates `(J1, J2)` and optional inequality constraints
//! `g(y, z) <= 0`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Objective and constraint evaluator for a bi-objective problem.
///
/// Implementations must be pure: the same `(y, z)` always yields the same
/// output.
pub trait BiObjective: Send + Sync {
    fn objectives(&self, y: &[f64], z: &[f64]) -> [f64; 2];

    /// Number of inequality constraints `g_i(y, z) <= 0`.
    fn num_inequality(&self) -> usize {
        0
    }

    /// Writes `g(y, z)` into `out` (length [`num_inequality`](Self::num_inequality)).
    fn inequality(&self, _y: &[f64], _z: &[f64], _out: &mut [f64]) {}

    /// Writes `dJ1/dy` and `dJ2/dy` into `g1`, `g2`. Returns `false` when no
    /// analytic gradient is available, in which case callers fall back to
    /// finite differences.
    fn gradient(&self, _y: &[f64], _z: &[f64], _g1: &mut [f64], _g2: &mut [f64]) -> bool {
        false
    }

    /// Equality constraints `h(y, z) = 0` are not supported by any solver
    /// path; a model reporting `true` is rejected by [`ProblemSpec::new`].
    fn has_equality_constraints(&self) -> bool {
        false
    }
}

/// Closed interval `[lower, upper]` for one continuous variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    pub lower: f64,
    pub upper: f64,
}

impl Bound {
    pub fn new(lower: f64, upper: f64) -> Self {
        Self { lower, upper }
    }

    #[inline]
    pub fn clamp(&self, v: f64) -> f64 {
        v.clamp(self.lower, self.upper)
    }

    #[inline]
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

#[derive(Clone)]
pub struct ProblemSpec {
    name: String,
    bounds: Vec<Bound>,
    discrete_sets: Vec<Vec<f64>>,
    model: Arc<dyn BiObjective>,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("name", &self.name)
            .field("bounds", &self.bounds)
            .field("discrete_sets", &self.discrete_sets)
            .finish_non_exhaustive()
    }
}

impl ProblemSpec {
    pub fn new(
        name: impl Into<String>,
        bounds: Vec<Bound>,
        discrete_sets: Vec<Vec<f64>>,
        model: Arc<dyn BiObjective>,
    ) -> Result<Self> {
        let name = name.into();
        if bounds.is_empty() {
            return Err(Error::InvalidProblem(format!(
                "{name}: at least one continuous variable is required"
            )));
        }
        for (i, b) in bounds.iter().enumerate() {
            if !(b.lower.is_finite() && b.upper.is_finite() && b.lower < b.upper) {
                return Err(Error::InvalidProblem(format!(
                    "{name}: bound {i} must satisfy finite lower < upper, got [{}, {}]",
                    b.lower, b.upper
                )));
            }
        }
        for (j, set) in discrete_sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::InvalidProblem(format!(
                    "{name}: discrete set {j} is empty"
                )));
            }
            if set.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidProblem(format!(
                    "{name}: discrete set {j} has a non-finite value"
                )));
            }
            for (a, va) in set.iter().enumerate() {
                if set[a + 1..].contains(va) {
                    return Err(Error::InvalidProblem(format!(
                        "{name}: discrete set {j} repeats the value {va}"
                    )));
                }
            }
        }
        if model.has_equality_constraints() {
            return Err(Error::InvalidProblem(format!(
                "{name}: equality constraints are not supported"
            )));
        }
        Ok(Self {
            name,
            bounds,
            discrete_sets,
            model,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_y(&self) -> usize {
        self.bounds.len()
    }

    pub fn n_z(&self) -> usize {
        self.discrete_sets.len()
    }

    pub fn bounds(&self) -> &[Bound] {
        &self.bounds
    }

    pub fn discrete_sets(&self) -> &[Vec<f64>] {
        &self.discrete_sets
    }

    pub fn model(&self) -> &dyn BiObjective {
        self.model.as_ref()
    }

    pub fn objectives(&self, y: &[f64], z: &[f64]) -> [f64; 2] {
        self.model.objectives(y, z)
    }

    pub fn num_inequality(&self) -> usize {
        self.model.num_inequality()
    }

    /// Largest positive constraint value at `(y, z)`; zero when feasible or
    /// unconstrained.
    pub fn max_violation(&self, y: &[f64], z: &[f64]) -> f64 {
        let m = self.model.num_inequality();
        if m == 0 {
            return 0.0;
        }
        let mut g = vec![0.0; m];
        self.model.inequality(y, z, &mut g);
        g.iter().fold(0.0_f64, |acc, &v| acc.max(v))
    }

    /// The same problem with `J1` and `J2` multiplied by positive constants.
    pub fn scaled(&self, c1: f64, c2: f64) -> Result<Self> {
        if !(c1 > 0.0 && c2 > 0.0 && c1.is_finite() && c2.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "objective scales must be positive, got ({c1}, {c2})"
            )));
        }
        Ok(Self {
            name: format!("{}*({c1},{c2})", self.name),
            bounds: self.bounds.clone(),
            discrete_sets: self.discrete_sets.clone(),
            model: Arc::new(Scaled {
                inner: Arc::clone(&self.model),
                scale: [c1, c2],
            }),
        })
    }
}

struct Scaled {
    inner: Arc<dyn BiObjective>,
    scale: [f64; 2],
}

impl BiObjective for Scaled {
    fn objectives(&self, y: &[f64], z: &[f64]) -> [f64; 2] {
        let [j1, j2] = self.inner.objectives(y, z);
        [self.scale[0] * j1, self.scale[1] * j2]
    }

    fn num_inequality(&self) -> usize {
        self.inner.num_inequality()
    }

    fn inequality(&self, y: &[f64], z: &[f64], out: &mut [f64]) {
        self.inner.inequality(y, z, out)
    }

    fn gradient(&self, y: &[f64], z: &[f64], g1: &mut [f64], g2: &mut [f64]) -> bool {
        if !self.inner.gradient(y, z, g1, g2) {
            return false;
        }
        g1.iter_mut().for_each(|g| *g *= self.scale[0]);
        g2.iter_mut().for_each(|g| *g *= self.scale[1]);
        true
    }
}

/// One discrete realization `z_k`: the `k`-th element (1-based, last
/// variable fastest) of the Cartesian product of the discrete value sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Realization {
    pub k: usize,
    pub z: Vec<f64>,
}
