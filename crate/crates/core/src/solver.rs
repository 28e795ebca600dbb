//! Box-constrained solver for weighted-sum scalarizations of a subproblem.
//!
//! Each solve screens a deterministic candidate set (box vertices, the box
//! center and a shifted Halton sequence), then runs projected gradient
//! descent with Barzilai-Borwein steps and Armijo backtracking from the best
//! `n_starts` candidates. Inequality constraints enter as an exterior
//! quadratic penalty; multiplier updates on top of the fixed coefficient
//! drive the residual below `feas_tol` without raising the coefficient.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dominance::ObjectivePoint;
use crate::error::{Error, Result};
use crate::problem::{ProblemSpec, Realization};

static GLOBAL_SOLVES: AtomicU64 = AtomicU64::new(0);

/// Number of scalarized solves performed in this process since the last
/// [`reset_solve_count`].
pub fn solve_count() -> u64 {
    GLOBAL_SOLVES.load(Ordering::SeqCst)
}

pub fn reset_solve_count() {
    GLOBAL_SOLVES.store(0, Ordering::SeqCst);
}

/// Shared solve counter for one pipeline run.
#[derive(Debug, Clone, Default)]
pub struct SolveCounter(Arc<AtomicU64>);

impl SolveCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self) -> u64 {
        self.0.load(Ordering::SeqCst)
    }

    fn bump(&self) {
        self.0.fetch_add(1, Ordering::SeqCst);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Local descents per solve.
    pub n_starts: usize,
    /// Screening points evaluated before choosing the starts.
    pub n_samples: usize,
    /// Iteration cap per local descent.
    pub max_iters: usize,
    /// Relative step length below which a descent stops.
    pub step_tol: f64,
    /// Relative central-difference step.
    pub fd_step: f64,
    /// Largest constraint value still counted as feasible.
    pub feas_tol: f64,
    pub penalty_coefficient: f64,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            n_starts: 16,
            n_samples: 1024,
            max_iters: 500,
            step_tol: 1e-10,
            fd_step: 1e-7,
            feas_tol: 1e-8,
            penalty_coefficient: 1e6,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")))
            }
        };
        if self.n_starts == 0 || self.max_iters == 0 {
            return Err(Error::InvalidArgument(
                "n_starts and max_iters must be positive".into(),
            ));
        }
        positive("step_tol", self.step_tol)?;
        positive("fd_step", self.fd_step)?;
        positive("feas_tol", self.feas_tol)?;
        positive("penalty_coefficient", self.penalty_coefficient)
    }
}

/// Affine rescaling `(J - offset) / range` applied before weighting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization {
    pub offset: [f64; 2],
    pub range: [f64; 2],
}

impl Normalization {
    /// Normalization that maps a subproblem's anchors to the unit square.
    /// Degenerate ranges fall back to 1.
    pub fn from_anchors(anchor1: &ObjectivePoint, anchor2: &ObjectivePoint) -> Self {
        let r1 = anchor2.j1() - anchor1.j1();
        let r2 = anchor1.j2() - anchor2.j2();
        let fix = |r: f64| if r > f64::EPSILON && r.is_finite() { r } else { 1.0 };
        Self {
            offset: [anchor1.j1(), anchor2.j2()],
            range: [fix(r1), fix(r2)],
        }
    }
}

/// `w * J1 + (1 - w) * J2 + mu * sum(max(0, g)^2)` on one subproblem.
#[derive(Debug, Clone, Copy)]
pub struct ScalarizedObjective<'a> {
    pub problem: &'a ProblemSpec,
    pub realization: &'a Realization,
    pub weight: f64,
    pub penalty_coefficient: f64,
    pub normalization: Option<Normalization>,
}

impl<'a> ScalarizedObjective<'a> {
    pub fn new(
        problem: &'a ProblemSpec,
        realization: &'a Realization,
        weight: f64,
        penalty_coefficient: f64,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::InvalidArgument(format!(
                "weight must lie in [0, 1], got {weight}"
            )));
        }
        if realization.z.len() != problem.n_z() {
            return Err(Error::InvalidArgument(format!(
                "realization has {} discrete values, problem expects {}",
                realization.z.len(),
                problem.n_z()
            )));
        }
        if !(penalty_coefficient > 0.0) {
            return Err(Error::InvalidArgument(
                "penalty coefficient must be positive".into(),
            ));
        }
        Ok(Self {
            problem,
            realization,
            weight,
            penalty_coefficient,
            normalization: None,
        })
    }

    pub fn with_normalization(mut self, n: Option<Normalization>) -> Self {
        self.normalization = n;
        self
    }

    /// Coefficients `(c1, c2, c0)` such that the weighted part equals
    /// `c1 * J1 + c2 * J2 + c0`.
    fn coefficients(&self) -> (f64, f64, f64) {
        let w = self.weight;
        match self.normalization {
            None => (w, 1.0 - w, 0.0),
            Some(n) => {
                let c1 = w / n.range[0];
                let c2 = (1.0 - w) / n.range[1];
                (c1, c2, -(c1 * n.offset[0] + c2 * n.offset[1]))
            }
        }
    }

    fn weighted(&self, y: &[f64]) -> f64 {
        let [j1, j2] = self.problem.objectives(y, &self.realization.z);
        let (c1, c2, c0) = self.coefficients();
        // Skip zero-weight terms so w in {0, 1} ignores the other objective
        // entirely, even where it is huge.
        let mut v = c0;
        if c1 != 0.0 {
            v += c1 * j1;
        }
        if c2 != 0.0 {
            v += c2 * j2;
        }
        v
    }

    fn penalty(&self, y: &[f64], multipliers: &[f64], g: &mut [f64]) -> f64 {
        if g.is_empty() {
            return 0.0;
        }
        self.problem.model().inequality(y, &self.realization.z, g);
        let mu = self.penalty_coefficient;
        g.iter()
            .zip(multipliers)
            .map(|(&gi, &li)| {
                let shifted = (gi + li / (2.0 * mu)).max(0.0);
                mu * shifted * shifted - li * li / (4.0 * mu)
            })
            .sum()
    }

    /// The scalarized objective including the plain quadratic penalty.
    pub fn value(&self, y: &[f64]) -> f64 {
        let m = self.problem.num_inequality();
        let mut g = vec![0.0; m];
        let zeros = vec![0.0; m];
        self.weighted(y) + self.penalty(y, &zeros, &mut g)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub y_star: Vec<f64>,
    pub scalar_value: f64,
    pub point: ObjectivePoint,
    pub feasible: bool,
    pub starts_used: usize,
}

/// Stateless solver bound to a configuration and an optional run counter.
#[derive(Debug, Clone, Default)]
pub struct Solver {
    config: SolverConfig,
    counter: Option<SolveCounter>,
}

/// Solves one scalarized subproblem, counting it in the process-wide tally.
pub fn solve_scalarized(obj: &ScalarizedObjective<'_>, config: &SolverConfig) -> Result<SolveResult> {
    Solver::new(config.clone()).solve(obj)
}

impl Solver {
    pub fn new(config: SolverConfig) -> Self {
        Self {
            config,
            counter: None,
        }
    }

    pub fn with_counter(mut self, counter: SolveCounter) -> Self {
        self.counter = Some(counter);
        self
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn solve(&self, obj: &ScalarizedObjective<'_>) -> Result<SolveResult> {
        self.solve_from(obj, &StartSet::new(obj.problem, &self.config))
    }

    /// Like [`solve`](Self::solve) with a precomputed screening set, which
    /// must have been built for the same problem bounds and configuration.
    pub fn solve_from(&self, obj: &ScalarizedObjective<'_>, candidates: &StartSet) -> Result<SolveResult> {
        GLOBAL_SOLVES.fetch_add(1, Ordering::SeqCst);
        if let Some(c) = &self.counter {
            c.bump();
        }
        let k = obj.realization.k;
        let mut local = LocalSearch::new(obj, &self.config);

        let mut screened: Vec<(f64, usize)> = candidates
            .iter()
            .enumerate()
            .filter_map(|(i, y)| {
                let v = obj.value(y);
                v.is_finite().then_some((v, i))
            })
            .collect();
        if screened.is_empty() {
            return Err(Error::Infeasible {
                k,
                reason: "objective is non-finite at every start point".into(),
            });
        }
        // Stable sort keeps candidate order among equal values.
        screened.sort_by(|a, b| a.0.total_cmp(&b.0));

        let n = obj.problem.n_y();
        let min_sep = 0.5 * (self.config.n_samples.max(1) as f64).powf(-1.0 / n as f64);
        let widths: Vec<f64> = obj.problem.bounds().iter().map(|b| b.width()).collect();
        let mut starts: Vec<&[f64]> = Vec::with_capacity(self.config.n_starts);
        for &(_, i) in &screened {
            if starts.len() == self.config.n_starts {
                break;
            }
            let y = candidates.get(i);
            let far = starts.iter().all(|s| {
                s.iter()
                    .zip(y)
                    .zip(&widths)
                    .any(|((a, b), w)| (a - b).abs() / w >= min_sep)
            });
            if far {
                starts.push(y);
            }
        }

        let feas_tol = self.config.feas_tol;
        let mut results: Vec<(bool, f64, Vec<f64>)> = Vec::with_capacity(starts.len());
        for s in starts {
            let Some(y) = local.run(s) else { continue };
            let v = obj.value(&y);
            if !v.is_finite() {
                continue;
            }
            let feasible = obj.problem.max_violation(&y, &obj.realization.z) <= feas_tol;
            results.push((feasible, v, y));
        }
        let starts_used = results.len();
        let any_feasible = results.iter().any(|r| r.0);
        let pool = || results.iter().filter(|r| r.0 == any_feasible);
        let Some(v_min) = pool().map(|r| r.1).min_by(f64::total_cmp) else {
            return Err(Error::Infeasible {
                k,
                reason: "every local descent diverged".into(),
            });
        };
        // Starts that reached the same optimum differ only by rounding; the
        // earliest one wins so the choice does not hinge on the last bits.
        let cut = v_min + SAME_OPTIMUM * v_min.abs();
        let (feasible, scalar_value, y_star) = pool()
            .find(|r| r.1 <= cut)
            .cloned()
            .expect("minimum is in the pool");
        let [j1, j2] = obj.problem.objectives(&y_star, &obj.realization.z);
        let point = ObjectivePoint::new(j1, j2).map_err(|e| Error::Infeasible {
            k,
            reason: e.to_string(),
        })?;
        Ok(SolveResult {
            y_star,
            scalar_value,
            point,
            feasible,
            starts_used,
        })
    }
}

/// Relative gap under which two local optima count as the same.
const SAME_OPTIMUM: f64 = 1e-9;

const HALTON_PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    r
}

/// Deterministic screening set: box vertices (all of them up to four
/// dimensions, otherwise the two extreme corners), the box center, and a
/// seed-shifted Halton sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct StartSet {
    dim: usize,
    coords: Vec<f64>,
}

impl StartSet {
    pub fn new(problem: &ProblemSpec, config: &SolverConfig) -> Self {
        let bounds = problem.bounds();
        let n = bounds.len();
        let mut coords = Vec::with_capacity(n * (config.n_samples + (1 << n.min(4)) + 1));
        if n <= 4 {
            for mask in 0..(1usize << n) {
                coords.extend(
                    bounds
                        .iter()
                        .enumerate()
                        .map(|(i, b)| if mask >> i & 1 == 1 { b.upper } else { b.lower }),
                );
            }
        } else {
            coords.extend(bounds.iter().map(|b| b.lower));
            coords.extend(bounds.iter().map(|b| b.upper));
        }
        coords.extend(bounds.iter().map(|b| 0.5 * (b.lower + b.upper)));

        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let shift: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        for i in 1..=config.n_samples as u64 {
            coords.extend(bounds.iter().enumerate().map(|(d, b)| {
                let base = HALTON_PRIMES[d % HALTON_PRIMES.len()];
                let u = (radical_inverse(i, base) + shift[d]).fract();
                b.clamp(b.lower + u * b.width())
            }));
        }
        Self { dim: n, coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn get(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }
}

struct LocalSearch<'s, 'a> {
    obj: &'s ScalarizedObjective<'a>,
    config: &'s SolverConfig,
    analytic: bool,
    multipliers: Vec<f64>,
    g_buf: Vec<f64>,
    grad1: Vec<f64>,
    grad2: Vec<f64>,
    probe: Vec<f64>,
}

impl<'s, 'a> LocalSearch<'s, 'a> {
    fn new(obj: &'s ScalarizedObjective<'a>, config: &'s SolverConfig) -> Self {
        let n = obj.problem.n_y();
        let m = obj.problem.num_inequality();
        let mut g1 = vec![0.0; n];
        let mut g2 = vec![0.0; n];
        let mid: Vec<f64> = obj
            .problem
            .bounds()
            .iter()
            .map(|b| 0.5 * (b.lower + b.upper))
            .collect();
        let analytic = obj
            .problem
            .model()
            .gradient(&mid, &obj.realization.z, &mut g1, &mut g2);
        Self {
            obj,
            config,
            analytic,
            multipliers: vec![0.0; m],
            g_buf: vec![0.0; m],
            grad1: g1,
            grad2: g2,
            probe: vec![0.0; n],
        }
    }

    fn merit(&mut self, y: &[f64]) -> f64 {
        let w = self.obj.weighted(y);
        w + self.obj.penalty(y, &self.multipliers, &mut self.g_buf)
    }

    fn penalty_only(&mut self, y: &[f64]) -> f64 {
        self.obj.penalty(y, &self.multipliers, &mut self.g_buf)
    }

    /// Central difference of `f` along coordinate `i`, shrunk at the box.
    fn central(&mut self, y: &[f64], i: usize, penalty_only: bool) -> f64 {
        let b = self.obj.problem.bounds()[i];
        let h = self.config.fd_step * y[i].abs().max(1.0);
        let hi = (y[i] + h).min(b.upper);
        let lo = (y[i] - h).max(b.lower);
        self.probe.copy_from_slice(y);
        self.probe[i] = hi;
        let probe = std::mem::take(&mut self.probe);
        let fp = if penalty_only { self.penalty_only(&probe) } else { self.merit(&probe) };
        let mut probe = probe;
        probe[i] = lo;
        let fm = if penalty_only { self.penalty_only(&probe) } else { self.merit(&probe) };
        self.probe = probe;
        (fp - fm) / (hi - lo)
    }

    fn gradient(&mut self, y: &[f64], out: &mut [f64]) {
        let n = y.len();
        if self.analytic {
            let (c1, c2, _) = self.obj.coefficients();
            self.obj
                .problem
                .model()
                .gradient(y, &self.obj.realization.z, &mut self.grad1, &mut self.grad2);
            for i in 0..n {
                let mut g = 0.0;
                if c1 != 0.0 {
                    g += c1 * self.grad1[i];
                }
                if c2 != 0.0 {
                    g += c2 * self.grad2[i];
                }
                out[i] = g;
            }
            if !self.g_buf.is_empty() {
                for i in 0..n {
                    out[i] += self.central(y, i, true);
                }
            }
        } else {
            for i in 0..n {
                out[i] = self.central(y, i, false);
            }
        }
    }

    fn project(&self, y: &mut [f64]) {
        for (v, b) in y.iter_mut().zip(self.obj.problem.bounds()) {
            *v = b.clamp(*v);
        }
    }

    /// Full local run from `start`: descent, then multiplier updates while
    /// constraints remain violated.
    fn run(&mut self, start: &[f64]) -> Option<Vec<f64>> {
        self.multipliers.iter_mut().for_each(|l| *l = 0.0);
        let mut y = self.descend(start)?;
        if self.multipliers.is_empty() {
            return Some(y);
        }
        let mu = self.obj.penalty_coefficient;
        for _ in 0..20 {
            let mut g = vec![0.0; self.multipliers.len()];
            self.obj
                .problem
                .model()
                .inequality(&y, &self.obj.realization.z, &mut g);
            if g.iter().all(|&v| v <= self.config.feas_tol) {
                break;
            }
            for (l, gi) in self.multipliers.iter_mut().zip(&g) {
                *l = (*l + 2.0 * mu * gi).max(0.0);
            }
            y = self.descend(&y)?;
        }
        Some(y)
    }

    fn descend(&mut self, start: &[f64]) -> Option<Vec<f64>> {
        const ARMIJO: f64 = 1e-4;
        const MAX_BACKTRACKS: usize = 60;
        let n = start.len();
        let mut x = start.to_vec();
        self.project(&mut x);
        let mut f = self.merit(&x);
        if !f.is_finite() {
            return None;
        }
        let mut g = vec![0.0; n];
        self.gradient(&x, &mut g);
        if g.iter().any(|v| !v.is_finite()) {
            return None;
        }
        let gmax = g.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
        let wmin = self
            .obj
            .problem
            .bounds()
            .iter()
            .map(|b| b.width())
            .fold(f64::INFINITY, f64::min);
        let mut t = if gmax > 0.0 { 0.1 * wmin / gmax } else { 1.0 };
        let mut trial = vec![0.0; n];
        let mut g_new = vec![0.0; n];

        for _ in 0..self.config.max_iters {
            let mut accepted = false;
            let mut f_new = f;
            for _ in 0..MAX_BACKTRACKS {
                for i in 0..n {
                    trial[i] = x[i] - t * g[i];
                }
                self.project(&mut trial);
                let decrease: f64 = (0..n).map(|i| g[i] * (trial[i] - x[i])).sum();
                if trial == x {
                    // Projected gradient vanishes: stationary for the box.
                    return Some(x);
                }
                f_new = self.merit(&trial);
                // Below rounding level the Armijo test cannot discriminate;
                // the step is then taken on the gradient alone.
                let flat = -decrease <= 4.0 * f64::EPSILON * f.abs();
                if f_new.is_finite() && (flat || f_new <= f + ARMIJO * decrease) {
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            if !accepted {
                break;
            }
            self.gradient(&trial, &mut g_new);
            if g_new.iter().any(|v| !v.is_finite()) {
                break;
            }
            let mut ss = 0.0;
            let mut sy = 0.0;
            let mut step_max = 0.0_f64;
            let mut x_max = 0.0_f64;
            for i in 0..n {
                let s = trial[i] - x[i];
                let yv = g_new[i] - g[i];
                ss += s * s;
                sy += s * yv;
                step_max = step_max.max(s.abs());
                x_max = x_max.max(trial[i].abs());
            }
            std::mem::swap(&mut x, &mut trial);
            std::mem::swap(&mut g, &mut g_new);
            f = f_new;
            if step_max <= self.config.step_tol * (1.0 + x_max) {
                break;
            }
            t = if sy > 0.0 { (ss / sy).clamp(1e-20, 1e20) } else { (t * 4.0).min(1e20) };
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{BiObjective, Bound};

    struct Quad;
    impl BiObjective for Quad {
        fn objectives(&self, y: &[f64], _z: &[f64]) -> [f64; 2] {
            [y[0] * y[0], (y[0] - 1.0) * (y[0] - 1.0)]
        }
    }

    struct Rosen;
    impl BiObjective for Rosen {
        fn objectives(&self, y: &[f64], _z: &[f64]) -> [f64; 2] {
            let r = (1.0 - y[0]).powi(2) + 100.0 * (y[1] - y[0] * y[0]).powi(2);
            [r, r]
        }
    }

    struct NanEverywhere;
    impl BiObjective for NanEverywhere {
        fn objectives(&self, _y: &[f64], _z: &[f64]) -> [f64; 2] {
            [f64::NAN, 0.0]
        }
    }

    /// min y^2 subject to y >= 1.
    struct Constrained;
    impl BiObjective for Constrained {
        fn objectives(&self, y: &[f64], _z: &[f64]) -> [f64; 2] {
            [y[0] * y[0], y[0] * y[0]]
        }
        fn num_inequality(&self) -> usize {
            1
        }
        fn inequality(&self, y: &[f64], _z: &[f64], out: &mut [f64]) {
            out[0] = 1.0 - y[0];
        }
    }

    fn spec(model: Arc<dyn BiObjective>, bounds: Vec<Bound>) -> ProblemSpec {
        ProblemSpec::new("t", bounds, vec![vec![0.0]], model).unwrap()
    }

    fn r0() -> Realization {
        Realization { k: 1, z: vec![0.0] }
    }

    #[test]
    fn quadratic_weights_hit_closed_form() {
        let p = spec(Arc::new(Quad), vec![Bound::new(0.0, 1.0)]);
        let r = r0();
        let cfg = SolverConfig::default();
        for (w, y) in [(1.0, 0.0), (0.0, 1.0), (0.5, 0.5), (0.25, 0.75)] {
            let obj = ScalarizedObjective::new(&p, &r, w, 1e6).unwrap();
            let res = solve_scalarized(&obj, &cfg).unwrap();
            assert!((res.y_star[0] - y).abs() < 1e-8, "w={w}: {:?}", res.y_star);
            assert!(res.feasible);
        }
    }

    #[test]
    fn finite_difference_path_finds_rosenbrock_minimum() {
        let p = spec(Arc::new(Rosen), vec![Bound::new(-2.0, 2.0), Bound::new(-1.0, 3.0)]);
        let r = r0();
        let cfg = SolverConfig {
            max_iters: 5000,
            ..SolverConfig::default()
        };
        let obj = ScalarizedObjective::new(&p, &r, 0.5, 1e6).unwrap();
        let res = solve_scalarized(&obj, &cfg).unwrap();
        assert!(res.scalar_value < 1e-8, "{res:?}");
        assert!((res.y_star[0] - 1.0).abs() < 1e-3);
    }

    #[test]
    fn penalty_hook_reaches_feasibility() {
        let p = spec(Arc::new(Constrained), vec![Bound::new(0.0, 3.0)]);
        let r = r0();
        let obj = ScalarizedObjective::new(&p, &r, 1.0, 1e6).unwrap();
        let res = solve_scalarized(&obj, &SolverConfig::default()).unwrap();
        assert!(res.feasible, "{res:?}");
        assert!((res.y_star[0] - 1.0).abs() < 1e-7);
        // Plain penalty value, no multiplier shift.
        let expect = res.y_star[0].powi(2) + 1e6 * (1.0 - res.y_star[0]).max(0.0).powi(2);
        assert_eq!(res.scalar_value, expect);
    }

    #[test]
    fn all_non_finite_is_infeasible() {
        let p = spec(Arc::new(NanEverywhere), vec![Bound::new(0.0, 1.0)]);
        let r = r0();
        let obj = ScalarizedObjective::new(&p, &r, 0.5, 1e6).unwrap();
        assert!(matches!(
            solve_scalarized(&obj, &SolverConfig::default()),
            Err(Error::Infeasible { k: 1, .. })
        ));
    }

    #[test]
    fn rejects_bad_weight_and_config() {
        let p = spec(Arc::new(Quad), vec![Bound::new(0.0, 1.0)]);
        let r = r0();
        assert!(ScalarizedObjective::new(&p, &r, 1.5, 1e6).is_err());
        let bad = Realization { k: 1, z: vec![] };
        assert!(ScalarizedObjective::new(&p, &bad, 0.5, 1e6).is_err());
        let cfg = SolverConfig {
            feas_tol: 0.0,
            ..SolverConfig::default()
        };
        assert!(cfg.validate().is_err());
        assert!(SolverConfig::default().validate().is_ok());
    }

    #[test]
    fn run_counter_counts_solves_not_starts() {
        let p = spec(Arc::new(Quad), vec![Bound::new(0.0, 1.0)]);
        let r = r0();
        let counter = SolveCounter::new();
        let solver = Solver::new(SolverConfig::default()).with_counter(counter.clone());
        let obj = ScalarizedObjective::new(&p, &r, 0.3, 1e6).unwrap();
        for _ in 0..3 {
            let res = solver.solve(&obj).unwrap();
            assert!(res.starts_used > 1);
        }
        assert_eq!(counter.get(), 3);
    }

    #[test]
    fn candidates_are_deterministic_and_in_bounds() {
        let p = spec(Arc::new(Rosen), vec![Bound::new(-2.0, 2.0), Bound::new(-1.0, 3.0)]);
        let cfg = SolverConfig::default();
        let a = StartSet::new(&p, &cfg);
        assert_eq!(a, StartSet::new(&p, &cfg));
        assert_eq!(a.len(), cfg.n_samples + 4 + 1);
        assert!(a
            .iter()
            .all(|y| y.iter().zip(p.bounds()).all(|(v, b)| *v >= b.lower && *v <= b.upper)));
        let other = SolverConfig {
            seed: 9,
            ..cfg.clone()
        };
        assert_ne!(a, StartSet::new(&p, &other));
    }
}
