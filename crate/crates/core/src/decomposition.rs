//! Discrete realizations and per-realization subproblem solves: anchors,
//! utopia points, center points, and weighted-sum subproblem fronts.

use serde::{Deserialize, Serialize};

use crate::dominance::{nondominated_filter, sort_front, Epsilon, ParetoSolution, Provenance};
use crate::error::{Error, Result};
use crate::problem::{ProblemSpec, Realization};
use crate::solver::{Normalization, ScalarizedObjective, SolveResult, Solver, StartSet};
use crate::ObjectivePoint;

/// Default cap on `|Z_1| * ... * |Z_nz|`.
pub const DEFAULT_CAPACITY: u64 = 10_000_000;

/// Size of the discrete design space. An empty product counts as one.
pub fn realization_count(spec: &ProblemSpec) -> u128 {
    spec.discrete_sets()
        .iter()
        .map(|s| s.len() as u128)
        .try_fold(1u128, |acc, n| acc.checked_mul(n))
        .unwrap_or(u128::MAX)
}

/// All realizations in lexicographic order (last variable fastest), `k`
/// starting at 1.
pub fn enumerate_realizations(spec: &ProblemSpec, cap: u64) -> Result<Vec<Realization>> {
    let size = realization_count(spec);
    if size > cap as u128 {
        return Err(Error::CapacityExceeded { size, cap });
    }
    Ok((1..=size as usize)
        .map(|k| realization_from_index(spec, k).expect("index within range"))
        .collect())
}

pub fn realization_from_index(spec: &ProblemSpec, k: usize) -> Option<Realization> {
    let sets = spec.discrete_sets();
    if k == 0 || k as u128 > realization_count(spec) {
        return None;
    }
    let mut rest = k - 1;
    let mut z = vec![0.0; sets.len()];
    for (j, set) in sets.iter().enumerate().rev() {
        z[j] = set[rest % set.len()];
        rest /= set.len();
    }
    Some(Realization { k, z })
}

/// Inverse of [`realization_from_index`]; `None` if some `z[j]` is not in `Z_j`.
pub fn index_of(spec: &ProblemSpec, z: &[f64]) -> Option<usize> {
    let sets = spec.discrete_sets();
    if z.len() != sets.len() {
        return None;
    }
    let mut idx = 0usize;
    for (v, set) in z.iter().zip(sets) {
        let pos = set.iter().position(|s| s == v)?;
        idx = idx * set.len() + pos;
    }
    Some(idx + 1)
}

/// Whether weighted sums act on raw objectives or on objectives rescaled so
/// the subproblem's anchors span the unit square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrontScaling {
    #[default]
    Raw,
    AnchorRange,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubproblemStatus {
    Unprocessed,
    /// Utopia point non-dominated; front built in phase A.
    Master,
    PrunedByUtopia,
    PrunedByCenter,
    /// Survived pruning; front built for the final merge.
    Retained,
    Infeasible,
}

impl SubproblemStatus {
    /// Statuses only move forward through the pipeline.
    pub fn can_advance_to(self, next: SubproblemStatus) -> bool {
        use SubproblemStatus::*;
        match self {
            Unprocessed => next != Unprocessed,
            Master => next == Retained,
            PrunedByUtopia | PrunedByCenter | Retained | Infeasible => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubproblemRecord {
    pub realization: Realization,
    pub anchor1: ParetoSolution,
    pub anchor2: ParetoSolution,
    pub utopia: ObjectivePoint,
    pub center: Option<ParetoSolution>,
    pub front: Option<Vec<ParetoSolution>>,
    pub status: SubproblemStatus,
}

impl SubproblemRecord {
    pub fn k(&self) -> usize {
        self.realization.k
    }

    pub fn advance(&mut self, next: SubproblemStatus) -> Result<()> {
        if !self.status.can_advance_to(next) {
            return Err(Error::Pipeline(format!(
                "subproblem {}: illegal status change {:?} -> {:?}",
                self.k(),
                self.status,
                next
            )));
        }
        self.status = next;
        Ok(())
    }

    pub fn normalization(&self) -> Normalization {
        Normalization::from_anchors(&self.anchor1.point, &self.anchor2.point)
    }
}

/// Solves the per-realization subproblems of one problem.
#[derive(Debug, Clone)]
pub struct Decomposer<'a> {
    problem: &'a ProblemSpec,
    solver: Solver,
    starts: StartSet,
    scaling: FrontScaling,
    eps: Epsilon,
}

impl<'a> Decomposer<'a> {
    pub fn new(problem: &'a ProblemSpec, solver: Solver) -> Self {
        let starts = StartSet::new(problem, solver.config());
        Self {
            problem,
            solver,
            starts,
            scaling: FrontScaling::Raw,
            eps: Epsilon::ZERO,
        }
    }

    pub fn with_scaling(mut self, scaling: FrontScaling) -> Self {
        self.scaling = scaling;
        self
    }

    pub fn with_eps(mut self, eps: Epsilon) -> Self {
        self.eps = eps;
        self
    }

    pub fn problem(&self) -> &ProblemSpec {
        self.problem
    }

    fn solve(
        &self,
        r: &Realization,
        weight: f64,
        normalization: Option<Normalization>,
    ) -> Result<SolveResult> {
        let obj = ScalarizedObjective::new(
            self.problem,
            r,
            weight,
            self.solver.config().penalty_coefficient,
        )?
        .with_normalization(normalization);
        self.solver.solve_from(&obj, &self.starts)
    }

    fn solution(r: &Realization, res: SolveResult, provenance: Provenance) -> ParetoSolution {
        ParetoSolution {
            y: res.y_star,
            realization: r.clone(),
            point: res.point,
            provenance,
        }
    }

    /// Both sole-objective solves (two counted NLPs) and the utopia point.
    /// The record is marked infeasible if either solve ends infeasible.
    pub fn anchors_utopia(&self, r: &Realization) -> Result<SubproblemRecord> {
        let a1 = self.solve(r, 1.0, None)?;
        let a2 = self.solve(r, 0.0, None)?;
        let feasible = a1.feasible && a2.feasible;
        let utopia = ObjectivePoint::new(a1.point.j1(), a2.point.j2())?;
        Ok(SubproblemRecord {
            realization: r.clone(),
            anchor1: Self::solution(r, a1, Provenance::Anchor1),
            anchor2: Self::solution(r, a2, Provenance::Anchor2),
            utopia,
            center: None,
            front: None,
            status: if feasible {
                SubproblemStatus::Unprocessed
            } else {
                SubproblemStatus::Infeasible
            },
        })
    }

    /// Equal-weight solve (one counted NLP).
    pub fn center(&self, record: &SubproblemRecord) -> Result<ParetoSolution> {
        let norm = match self.scaling {
            FrontScaling::Raw => None,
            FrontScaling::AnchorRange => Some(record.normalization()),
        };
        let r = &record.realization;
        let res = self.solve(r, 0.5, norm)?;
        if !res.feasible {
            return Err(Error::Infeasible {
                k: r.k,
                reason: "center solve violates the constraints".into(),
            });
        }
        Ok(Self::solution(r, res, Provenance::Center))
    }

    /// Weighted-sum front over `w_i = i / (beta - 1)`, `i = 0..beta`
    /// (`beta` counted NLPs), filtered and sorted by `J1`. Infeasible
    /// weight solves contribute no point.
    pub fn subproblem_front(&self, r: &Realization, beta: usize) -> Result<Vec<ParetoSolution>> {
        if beta < 2 {
            return Err(Error::InvalidArgument(format!("beta must be at least 2, got {beta}")));
        }
        let last = beta - 1;
        let weight = |i: usize| i as f64 / last as f64;

        // The two extreme weights go first: with anchor-range scaling they
        // fix the normalization for the interior weights.
        let hi = self.solve(r, 1.0, None)?;
        let lo = self.solve(r, 0.0, None)?;
        let norm = match self.scaling {
            FrontScaling::Raw => None,
            FrontScaling::AnchorRange => Some(Normalization::from_anchors(&hi.point, &lo.point)),
        };
        let mut solved: Vec<(usize, SolveResult)> = Vec::with_capacity(beta);
        solved.push((0, lo));
        for i in 1..last {
            solved.push((i, self.solve(r, weight(i), norm)?));
        }
        solved.push((last, hi));

        let points: Vec<ParetoSolution> = solved
            .into_iter()
            .filter(|(_, res)| res.feasible)
            .map(|(i, res)| Self::solution(r, res, Provenance::Weight(i)))
            .collect();
        if points.is_empty() {
            return Err(Error::Infeasible {
                k: r.k,
                reason: "no weighted-sum solve is feasible".into(),
            });
        }
        let mut front = nondominated_filter(&points, self.eps);
        sort_front(&mut front);
        Ok(front)
    }
}
