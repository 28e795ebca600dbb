//! Pareto front generation for mixed-discrete bi-objective problems by
//! subproblem decomposition and two-phase dominance pruning.
//!
//! The discrete design space is enumerated into continuous subproblems, one
//! per discrete realization. Phase A discards subproblems whose utopia point
//! is weakly dominated by a master front built from the subproblems with
//! non-dominated utopia points; this never changes the resulting front.
//! Phase B additionally discards subproblems whose equal-weight solution is
//! dominated by the master front, which is cheaper but heuristic.

pub mod benchmarks;
pub mod cli;
pub mod decomposition;
pub mod dominance;
pub mod error;
pub mod problem;
pub mod prune;
pub mod report;
pub mod solver;

pub use decomposition::{Decomposer, FrontScaling, SubproblemRecord, SubproblemStatus};
pub use dominance::{
    dominates, hausdorff, nondominated_filter, weakly_dominates, Epsilon, ObjectivePoint,
    ParetoSolution, Provenance,
};
pub use error::{Error, Result};
pub use problem::{BiObjective, Bound, ProblemSpec, Realization};
pub use prune::{run_pipeline, NlpCounts, Phases, PhasesRun, PipelineConfig, PruneReport};
pub use solver::{solve_scalarized, ScalarizedObjective, SolveResult, Solver, SolverConfig};
