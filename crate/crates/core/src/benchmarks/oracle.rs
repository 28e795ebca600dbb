//! Exhaustive reference: a weighted-sum front for every realization,
//! merged and filtered.

use rayon::prelude::*;

use crate::decomposition::enumerate_realizations;
use crate::dominance::{nondominated_filter, sort_front, ParetoSolution};
use crate::error::{Error, Result};
use crate::problem::ProblemSpec;
use crate::prune::{contributing, NlpCounts, PhasesRun, PipelineConfig, PruneReport};
use crate::solver::SolveCounter;

#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub report: PruneReport,
    /// Every feasible subproblem front, ordered by `k`.
    pub fronts: Vec<(usize, Vec<ParetoSolution>)>,
}

pub fn oracle_front_detailed(problem: &ProblemSpec, config: &PipelineConfig) -> Result<OracleOutcome> {
    config.validate()?;
    let realizations = enumerate_realizations(problem, config.capacity)?;
    let counter = SolveCounter::new();
    let dec = config.decomposer(problem, &counter);
    let results: Vec<(usize, Result<Vec<ParetoSolution>>)> = config.install(|| {
        realizations
            .par_iter()
            .map(|r| (r.k, dec.subproblem_front(r, config.beta)))
            .collect()
    })?;

    let mut fronts = Vec::with_capacity(results.len());
    let mut infeasible = Vec::new();
    for (k, res) in results {
        match res {
            Ok(f) => fronts.push((k, f)),
            Err(Error::Infeasible { .. }) => infeasible.push(k),
            Err(e) => return Err(e),
        }
    }
    if fronts.is_empty() {
        return Err(Error::Pipeline(format!(
            "{}: every subproblem is infeasible",
            problem.name()
        )));
    }
    let merged: Vec<ParetoSolution> = fronts.iter().flat_map(|(_, f)| f.iter().cloned()).collect();
    let mut front = nondominated_filter(&merged, config.eps);
    sort_front(&mut front);
    let built: Vec<usize> = fronts.iter().map(|(k, _)| *k).collect();
    let report = PruneReport {
        k_total: realizations.len(),
        k1m: Vec::new(),
        k1u: built.clone(),
        k1c: built,
        pruned_a: Vec::new(),
        pruned_b: Vec::new(),
        infeasible,
        k1: contributing(&front),
        nlp: NlpCounts {
            exhaustive: counter.get(),
            total: counter.get(),
            ..NlpCounts::default()
        },
        front,
        phases_run: PhasesRun::None,
    };
    Ok(OracleOutcome { report, fronts })
}

pub fn oracle_front(problem: &ProblemSpec, config: &PipelineConfig) -> Result<PruneReport> {
    oracle_front_detailed(problem, config).map(|o| o.report)
}
