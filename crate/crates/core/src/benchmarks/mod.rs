//! Built-in problems and the exhaustive reference solver.

mod kursawe;
mod oracle;
mod synthetic;
mod truss;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::problem::ProblemSpec;

pub use kursawe::{make_e1, Kursawe, KURSAWE_GRADIENT_CLAMP};
pub use oracle::{oracle_front, oracle_front_detailed, OracleOutcome};
pub use synthetic::{make_quad, make_toy_constrained};
pub use truss::{make_e2, make_e2_with, NineBarTruss, TrussConstants};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchmarkId {
    /// Kursawe-type problem, one continuous and two discrete variables.
    E1,
    /// Nine-bar truss sizing, three continuous and six discrete areas.
    E2,
    /// Separable quadratic pair on `[0, 1]` with a single realization.
    Quad,
    /// One active inequality constraint and one infeasible realization.
    ToyConstrained,
}

impl BenchmarkId {
    pub const ALL: [BenchmarkId; 4] = [
        BenchmarkId::E1,
        BenchmarkId::E2,
        BenchmarkId::Quad,
        BenchmarkId::ToyConstrained,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BenchmarkId::E1 => "e1",
            BenchmarkId::E2 => "e2",
            BenchmarkId::Quad => "quad",
            BenchmarkId::ToyConstrained => "toy-constrained",
        }
    }

    pub fn build(self) -> ProblemSpec {
        match self {
            BenchmarkId::E1 => make_e1(),
            BenchmarkId::E2 => make_e2(),
            BenchmarkId::Quad => make_quad(),
            BenchmarkId::ToyConstrained => make_toy_constrained(),
        }
    }
}

impl fmt::Display for BenchmarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BenchmarkId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BenchmarkId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown problem {s:?}; expected one of e1, e2, quad, toy-constrained"
                ))
            })
    }
}

/// Registry lookup by id string.
pub fn lookup(id: &str) -> Result<ProblemSpec> {
    id.parse::<BenchmarkId>().map(BenchmarkId::build)
}
