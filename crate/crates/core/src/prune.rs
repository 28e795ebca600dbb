//! Two-phase pruning pipeline.
//!
//! * A-1: anchors and utopia point of every subproblem (`2|K|` solves).
//! * A-2: subproblems with non-dominated utopia points form `K1m`; their
//!   fronts are merged into the master front (`beta * |K1m|` solves).
//! * A-3: every other subproblem whose utopia point is weakly dominated by
//!   a master-front point is pruned. The survivors plus `K1m` form `K1u`.
//! * B-1/B-2: survivors outside `K1m` get one equal-weight solve each and
//!   are pruned when the master front weakly dominates that point. What is
//!   left is `K1c`.
//! * B-3: fronts for `K1c \ K1m`, merged with the master subproblem fronts
//!   and filtered.
//!
//! Phase A alone never changes the front; phase B may.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decomposition::{
    enumerate_realizations, Decomposer, FrontScaling, SubproblemRecord, SubproblemStatus,
    DEFAULT_CAPACITY,
};
use crate::dominance::{
    nondominated_filter, nondominated_indices, sort_front, weakly_dominates, Epsilon,
    ObjectivePoint, ParetoSolution,
};
use crate::error::{Error, Result};
use crate::problem::ProblemSpec;
use crate::solver::{SolveCounter, Solver, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Phases {
    #[serde(rename = "a")]
    AOnly,
    #[serde(rename = "ab")]
    AB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhasesRun {
    #[serde(rename = "a")]
    AOnly,
    #[serde(rename = "ab")]
    AB,
    /// Exhaustive enumeration, no pruning.
    #[serde(rename = "none")]
    None,
}

/// Counted NLP solves per stage. `b3` also holds the remaining-front solves
/// of an A-only run; `exhaustive` is only used by the oracle.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NlpCounts {
    pub a1: u64,
    pub a2: u64,
    pub b1: u64,
    pub b3: u64,
    #[serde(default)]
    pub exhaustive: u64,
    pub total: u64,
}

impl NlpCounts {
    fn finish(mut self) -> Self {
        self.total = self.a1 + self.a2 + self.b1 + self.b3 + self.exhaustive;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PruneReport {
    pub k_total: usize,
    pub k1m: Vec<usize>,
    pub k1u: Vec<usize>,
    pub k1c: Vec<usize>,
    pub pruned_a: Vec<usize>,
    pub pruned_b: Vec<usize>,
    pub infeasible: Vec<usize>,
    /// Realizations with at least one point on the final front.
    pub k1: Vec<usize>,
    pub nlp: NlpCounts,
    pub front: Vec<ParetoSolution>,
    pub phases_run: PhasesRun,
}

impl PruneReport {
    /// `2|K| + beta|K1m| + (|K1u| - |K1m|) + beta(|K1c| - |K1m|)`, evaluated
    /// on this report's own set sizes.
    pub fn expected_nlp_ab(&self, beta: usize) -> u64 {
        let (k, m, u, c) = (
            self.k_total as u64,
            self.k1m.len() as u64,
            self.k1u.len() as u64,
            self.k1c.len() as u64,
        );
        let b = beta as u64;
        2 * k + b * m + (u - m) + b * (c - m)
    }

    /// Counted solves relative to exhaustive enumeration, `beta |K|`.
    pub fn nlp_ratio(&self, beta: usize) -> f64 {
        self.nlp.total as f64 / (beta as f64 * self.k_total as f64)
    }

    pub fn front_points(&self) -> Vec<ObjectivePoint> {
        self.front.iter().map(|s| s.point).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub beta: usize,
    pub eps: Epsilon,
    pub solver: SolverConfig,
    pub scaling: FrontScaling,
    pub capacity: u64,
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            beta: 21,
            eps: Epsilon::ZERO,
            solver: SolverConfig::default(),
            scaling: FrontScaling::Raw,
            capacity: DEFAULT_CAPACITY,
            threads: 0,
        }
    }
}

impl PipelineConfig {
    pub fn with_beta(mut self, beta: usize) -> Self {
        self.beta = beta;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.beta < 2 {
            return Err(Error::InvalidArgument(format!(
                "beta must be at least 2, got {}",
                self.beta
            )));
        }
        self.solver.validate()
    }

    /// Runs `f` on a rayon pool sized by `threads`.
    pub(crate) fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| Error::Pipeline(format!("cannot start worker pool: {e}")))?;
        Ok(pool.install(f))
    }

    pub(crate) fn decomposer<'a>(&self, problem: &'a ProblemSpec, counter: &SolveCounter) -> Decomposer<'a> {
        Decomposer::new(
            problem,
            Solver::new(self.solver.clone()).with_counter(counter.clone()),
        )
        .with_scaling(self.scaling)
        .with_eps(self.eps)
    }
}

/// Pipeline report plus every per-subproblem record it produced.
#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub report: PruneReport,
    pub records: Vec<SubproblemRecord>,
}

/// `k` of every feasible record whose utopia point is not strictly
/// dominated by another record's utopia point. Ties are all kept.
pub fn master_candidates(records: &[SubproblemRecord], eps: Epsilon) -> Vec<usize> {
    let feasible: Vec<&SubproblemRecord> = records
        .iter()
        .filter(|r| r.status != SubproblemStatus::Infeasible)
        .collect();
    let utopias: Vec<ObjectivePoint> = feasible.iter().map(|r| r.utopia).collect();
    let mut ks: Vec<usize> = nondominated_indices(&utopias, eps)
        .into_iter()
        .map(|i| feasible[i].k())
        .collect();
    ks.sort_unstable();
    ks
}

/// True when some point of `front` weakly dominates `p`.
pub fn front_covers(front: &[ParetoSolution], p: &ObjectivePoint, eps: Epsilon) -> bool {
    front.iter().any(|s| weakly_dominates(&s.point, p, eps))
}

/// State after phase A.
#[derive(Debug, Clone)]
pub struct PhaseA {
    pub k_total: usize,
    /// One record per realization that produced anchors, ordered by `k`.
    pub records: Vec<SubproblemRecord>,
    pub k1m: Vec<usize>,
    pub k1u: Vec<usize>,
    pub pruned_a: Vec<usize>,
    pub infeasible: BTreeSet<usize>,
    pub master_front: Vec<ParetoSolution>,
    pub a1: u64,
    pub a2: u64,
}

impl PhaseA {
    fn record_mut(&mut self, k: usize) -> &mut SubproblemRecord {
        let i = self
            .records
            .binary_search_by_key(&k, |r| r.k())
            .expect("record exists for every surviving k");
        &mut self.records[i]
    }
}

/// Splits per-k results into successes and infeasible indices; other
/// errors abort.
fn split_infeasible<T>(results: Vec<(usize, Result<T>)>) -> Result<(Vec<(usize, T)>, Vec<usize>)> {
    let mut ok = Vec::with_capacity(results.len());
    let mut bad = Vec::new();
    for (k, r) in results {
        match r {
            Ok(v) => ok.push((k, v)),
            Err(Error::Infeasible { .. }) => bad.push(k),
            Err(e) => return Err(e),
        }
    }
    Ok((ok, bad))
}

fn build_fronts(
    dec: &Decomposer<'_>,
    records: &[&SubproblemRecord],
    beta: usize,
) -> Vec<(usize, Result<Vec<ParetoSolution>>)> {
    records
        .par_iter()
        .map(|r| (r.k(), dec.subproblem_front(&r.realization, beta)))
        .collect()
}

/// Phase A. Must run inside the worker pool for parallelism to apply.
pub fn phase_a(problem: &ProblemSpec, config: &PipelineConfig, counter: &SolveCounter) -> Result<PhaseA> {
    let dec = config.decomposer(problem, counter);
    let realizations = enumerate_realizations(problem, config.capacity)?;
    let k_total = realizations.len();
    let start = counter.get();

    // A-1
    let results: Vec<(usize, Result<SubproblemRecord>)> = realizations
        .par_iter()
        .map(|r| (r.k, dec.anchors_utopia(r)))
        .collect();
    let (records, failed) = split_infeasible(results)?;
    let records: Vec<SubproblemRecord> = records.into_iter().map(|(_, r)| r).collect();
    let mut infeasible: BTreeSet<usize> = failed.into_iter().collect();
    infeasible.extend(
        records
            .iter()
            .filter(|r| r.status == SubproblemStatus::Infeasible)
            .map(|r| r.k()),
    );
    if infeasible.len() == k_total {
        return Err(Error::Pipeline(format!(
            "{}: every subproblem is infeasible",
            problem.name()
        )));
    }
    let a1 = counter.get() - start;

    // A-2
    let mut state = PhaseA {
        k_total,
        records,
        k1m: Vec::new(),
        k1u: Vec::new(),
        pruned_a: Vec::new(),
        infeasible,
        master_front: Vec::new(),
        a1,
        a2: 0,
    };
    let candidates = master_candidates(&state.records, config.eps);
    let fronts = {
        let refs: Vec<&SubproblemRecord> = candidates
            .iter()
            .map(|&k| &state.records[state.records.binary_search_by_key(&k, |r| r.k()).unwrap()])
            .collect();
        build_fronts(&dec, &refs, config.beta)
    };
    let (fronts, failed) = split_infeasible(fronts)?;
    for k in failed {
        state.record_mut(k).advance(SubproblemStatus::Infeasible)?;
        state.infeasible.insert(k);
    }
    let mut merged = Vec::new();
    for (k, front) in fronts {
        merged.extend(front.iter().cloned());
        let rec = state.record_mut(k);
        rec.front = Some(front);
        rec.advance(SubproblemStatus::Master)?;
        state.k1m.push(k);
    }
    if state.k1m.is_empty() {
        return Err(Error::Pipeline(format!(
            "{}: no master subproblem produced a front",
            problem.name()
        )));
    }
    let mut master = nondominated_filter(&merged, config.eps);
    sort_front(&mut master);
    state.master_front = master;
    state.a2 = counter.get() - start - a1;

    // A-3
    let master_set: BTreeSet<usize> = state.k1m.iter().copied().collect();
    let mut k1u = Vec::new();
    let mut pruned = Vec::new();
    for rec in &mut state.records {
        let k = rec.k();
        if rec.status == SubproblemStatus::Infeasible {
            continue;
        }
        if master_set.contains(&k) {
            k1u.push(k);
        } else if front_covers(&state.master_front, &rec.utopia, config.eps) {
            rec.advance(SubproblemStatus::PrunedByUtopia)?;
            pruned.push(k);
        } else {
            k1u.push(k);
        }
    }
    state.k1u = k1u;
    state.pruned_a = pruned;
    Ok(state)
}

/// Phase B (or, with `Phases::AOnly`, just the remaining fronts) and the
/// final merge.
pub fn finish(
    problem: &ProblemSpec,
    mut state: PhaseA,
    phases: Phases,
    config: &PipelineConfig,
    counter: &SolveCounter,
) -> Result<PipelineOutcome> {
    let dec = config.decomposer(problem, counter);
    let master_set: BTreeSet<usize> = state.k1m.iter().copied().collect();
    let pending: Vec<usize> = state
        .k1u
        .iter()
        .copied()
        .filter(|k| !master_set.contains(k))
        .collect();
    let start = counter.get();
    let mut pruned_b = Vec::new();

    let survivors: Vec<usize> = match phases {
        Phases::AOnly => pending,
        Phases::AB => {
            // B-1
            let centers: Vec<(usize, Result<ParetoSolution>)> = pending
                .par_iter()
                .map(|&k| {
                    let rec = &state.records[state.records.binary_search_by_key(&k, |r| r.k()).unwrap()];
                    (k, dec.center(rec))
                })
                .collect();
            let (centers, failed) = split_infeasible(centers)?;
            for k in failed {
                state.record_mut(k).advance(SubproblemStatus::Infeasible)?;
                state.infeasible.insert(k);
                pruned_b.push(k);
            }
            // B-2
            let mut keep = Vec::new();
            for (k, c) in centers {
                let covered = front_covers(&state.master_front, &c.point, config.eps);
                let rec = state.record_mut(k);
                rec.center = Some(c);
                if covered {
                    rec.advance(SubproblemStatus::PrunedByCenter)?;
                    pruned_b.push(k);
                } else {
                    keep.push(k);
                }
            }
            keep
        }
    };
    let b1 = counter.get() - start;

    // B-3
    let fronts = {
        let refs: Vec<&SubproblemRecord> = survivors
            .iter()
            .map(|&k| &state.records[state.records.binary_search_by_key(&k, |r| r.k()).unwrap()])
            .collect();
        build_fronts(&dec, &refs, config.beta)
    };
    let (fronts, failed) = split_infeasible(fronts)?;
    for k in failed {
        state.record_mut(k).advance(SubproblemStatus::Infeasible)?;
        state.infeasible.insert(k);
        pruned_b.push(k);
    }
    let mut k1c: Vec<usize> = state.k1m.clone();
    for (k, front) in fronts {
        let rec = state.record_mut(k);
        rec.front = Some(front);
        rec.advance(SubproblemStatus::Retained)?;
        k1c.push(k);
    }
    let b3 = counter.get() - start - b1;
    k1c.sort_unstable();
    pruned_b.sort_unstable();

    let merged: Vec<ParetoSolution> = state
        .records
        .iter()
        .filter(|r| k1c.binary_search(&r.k()).is_ok())
        .flat_map(|r| r.front.iter().flatten().cloned())
        .collect();
    let mut front = nondominated_filter(&merged, config.eps);
    sort_front(&mut front);
    let k1 = contributing(&front);

    let report = PruneReport {
        k_total: state.k_total,
        k1m: state.k1m,
        k1u: state.k1u,
        k1c,
        pruned_a: state.pruned_a,
        pruned_b,
        infeasible: state.infeasible.into_iter().collect(),
        k1,
        nlp: NlpCounts {
            a1: state.a1,
            a2: state.a2,
            b1,
            b3,
            exhaustive: 0,
            total: 0,
        }
        .finish(),
        front,
        phases_run: match phases {
            Phases::AOnly => PhasesRun::AOnly,
            Phases::AB => PhasesRun::AB,
        },
    };
    Ok(PipelineOutcome {
        report,
        records: state.records,
    })
}

pub(crate) fn contributing(front: &[ParetoSolution]) -> Vec<usize> {
    front
        .iter()
        .map(|s| s.realization.k)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Full pipeline with per-subproblem records.
pub fn run_pipeline_detailed(
    problem: &ProblemSpec,
    phases: Phases,
    config: &PipelineConfig,
) -> Result<PipelineOutcome> {
    config.validate()?;
    let counter = SolveCounter::new();
    config.install(|| {
        let state = phase_a(problem, config, &counter)?;
        finish(problem, state, phases, config, &counter)
    })?
}

pub fn run_pipeline(problem: &ProblemSpec, phases: Phases, config: &PipelineConfig) -> Result<PruneReport> {
    run_pipeline_detailed(problem, phases, config).map(|o| o.report)
}
