//! Command-line front end over the benchmark registry.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::benchmarks::{lookup, oracle_front};
use crate::decomposition::FrontScaling;
use crate::dominance::Epsilon;
use crate::error::{Error, Result};
use crate::prune::{run_pipeline, Phases, PipelineConfig};
use crate::report::{compare, write_front_csv_file, RunReport};
use crate::solver::SolverConfig;

pub mod exit_code {
    pub const SUCCESS: i32 = 0;
    pub const MISMATCH: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const FAILURE: i32 = 3;
}

/// Caps worker threads; `0` or unset means one per core.
pub const THREADS_ENV: &str = "PARETO_PRUNE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "pareto-prune", version, about = "Pareto fronts of mixed-discrete bi-objective problems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose, prune and build the front.
    Run(RunArgs),
    /// Build the front of every subproblem without pruning.
    Oracle(CommonArgs),
    /// Compare the fronts of two reports.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhasesArg {
    A,
    Ab,
}

impl From<PhasesArg> for Phases {
    fn from(p: PhasesArg) -> Self {
        match p {
            PhasesArg::A => Phases::AOnly,
            PhasesArg::Ab => Phases::AB,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScalingArg {
    Raw,
    AnchorRange,
}

impl From<ScalingArg> for FrontScaling {
    fn from(s: ScalingArg) -> Self {
        match s {
            ScalingArg::Raw => FrontScaling::Raw,
            ScalingArg::AnchorRange => FrontScaling::AnchorRange,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Registry id: e1, e2, quad, toy-constrained.
    #[arg(long)]
    pub problem: Option<String>,
    /// Weighted-sum points per subproblem front, at least 2.
    #[arg(long)]
    pub beta: Option<usize>,
    /// Dominance tolerance.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Weighted sums on raw objectives or on anchor-normalized ones.
    #[arg(long, value_enum)]
    pub scaling: Option<ScalingArg>,
    /// Output JSON report.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Output front CSV.
    #[arg(long)]
    pub front: Option<PathBuf>,
    /// TOML file supplying any of the options; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Record wall-clock time in the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum)]
    pub phases: Option<PhasesArg>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    /// Largest Hausdorff distance still counted as a match.
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
    /// Also write the comparison as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverOverrides {
    pub n_starts: Option<usize>,
    pub n_samples: Option<usize>,
    pub max_iters: Option<usize>,
    pub step_tol: Option<f64>,
    pub fd_step: Option<f64>,
    pub feas_tol: Option<f64>,
    pub penalty_coefficient: Option<f64>,
}

impl SolverOverrides {
    pub fn apply(&self, c: &mut SolverConfig) {
        macro_rules! set {
            ($($f:ident),*) => { $(if let Some(v) = self.$f { c.$f = v; })* };
        }
        set!(n_starts, n_samples, max_iters, step_tol, fd_step, feas_tol, penalty_coefficient);
    }
}

/// Contents of `--config`.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfigFile {
    pub problem: Option<String>,
    pub beta: Option<usize>,
    pub phases: Option<PhasesArg>,
    pub eps: Option<f64>,
    pub seed: Option<u64>,
    pub scaling: Option<FrontScaling>,
    #[serde(default)]
    pub solver: SolverOverrides,
    pub report: Option<PathBuf>,
    pub front: Option<PathBuf>,
}

impl RunConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidArgument(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Fully validated inputs of one `run` or `oracle` invocation.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub problem: String,
    pub phases: Phases,
    pub seed: u64,
    pub config: PipelineConfig,
    pub report: PathBuf,
    pub front: Option<PathBuf>,
    pub timing: bool,
}

pub fn resolve(args: &CommonArgs, phases: Option<PhasesArg>, threads: usize) -> Result<Resolved> {
    let file = match &args.config {
        Some(p) => RunConfigFile::load(p)?,
        None => RunConfigFile::default(),
    };
    let missing = |what: &str| Error::InvalidArgument(format!("--{what} is required"));
    let problem = args.problem.clone().or(file.problem).ok_or_else(|| missing("problem"))?;
    lookup(&problem)?;
    let beta = args.beta.or(file.beta).ok_or_else(|| missing("beta"))?;
    let report = args.report.clone().or(file.report).ok_or_else(|| missing("report"))?;
    let seed = args.seed.or(file.seed).unwrap_or(0);
    let eps = Epsilon::new(args.eps.or(file.eps).unwrap_or(0.0))?;

    let mut solver = SolverConfig { seed, ..SolverConfig::default() };
    file.solver.apply(&mut solver);
    let config = PipelineConfig {
        beta,
        eps,
        solver,
        scaling: args.scaling.map(FrontScaling::from).or(file.scaling).unwrap_or_default(),
        threads,
        ..PipelineConfig::default()
    };
    config.validate()?;
    Ok(Resolved {
        problem,
        phases: phases.or(file.phases).unwrap_or(PhasesArg::Ab).into(),
        seed,
        config,
        report,
        front: args.front.clone().or(file.front),
        timing: args.timing,
    })
}

pub fn threads_from_env() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v.trim().parse().map_err(|_| {
            Error::InvalidArgument(format!("{THREADS_ENV} must be a non-negative integer, got {v:?}"))
        }),
        _ => Ok(0),
    }
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_) | Error::InvalidEpsilon(_) | Error::InvalidProblem(_) => exit_code::USAGE,
        _ => exit_code::FAILURE,
    }
}

fn execute(r: &Resolved, exhaustive: bool, out: &mut dyn Write) -> Result<()> {
    let problem = lookup(&r.problem)?;
    let start = Instant::now();
    let report = if exhaustive {
        oracle_front(&problem, &r.config)?
    } else {
        run_pipeline(&problem, r.phases, &r.config)?
    };
    let ms = r.timing.then(|| start.elapsed().as_millis() as u64);
    let rr = RunReport::new(&r.problem, r.config.beta, r.config.eps.value(), r.seed, report)
        .with_wallclock_ms(ms);
    rr.write(&r.report)?;
    if let Some(path) = &r.front {
        write_front_csv_file(&rr.front, problem.n_z(), problem.n_y(), path)?;
    }
    writeln!(out, "{}", rr.summary_line()).map_err(|e| Error::Pipeline(e.to_string()))?;
    Ok(())
}

fn cmd_compare(args: &CompareArgs, out: &mut dyn Write) -> Result<i32> {
    if !(args.tol >= 0.0) {
        return Err(Error::InvalidArgument(format!("--tol must be non-negative, got {}", args.tol)));
    }
    let a = RunReport::read(&args.a)?;
    let b = RunReport::read(&args.b)?;
    let c = compare(&a, &b, args.tol)?;
    if let Some(path) = &args.json {
        std::fs::write(path, c.to_json()?)
            .map_err(|e| Error::Pipeline(format!("cannot write {}: {e}", path.display())))?;
    }
    writeln!(out, "{}", c.summary_line()).map_err(|e| Error::Pipeline(e.to_string()))?;
    Ok(if c.pass { exit_code::SUCCESS } else { exit_code::MISMATCH })
}

/// Parses `argv` and runs the selected command, returning the exit code.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit_code::USAGE } else { exit_code::SUCCESS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let outcome = threads_from_env().and_then(|threads| match &cli.command {
        Command::Run(a) => resolve(&a.common, a.phases, threads)
            .and_then(|r| execute(&r, false, out))
            .map(|_| exit_code::SUCCESS),
        Command::Oracle(a) => resolve(a, None, threads)
            .and_then(|r| execute(&r, true, out))
            .map(|_| exit_code::SUCCESS),
        Command::Compare(a) => cmd_compare(a, out),
    });
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_for(&e)
        }
    }
}
