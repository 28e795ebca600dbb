//! Objective-space points, Pareto dominance, and the non-dominated filter.
//!
//! Two relations are used throughout the crate:
//!
//! * [`dominates`] is strict Pareto dominance (no worse in both objectives,
//!   strictly better in one). It drives every *filtering* step, so points
//!   with identical objectives never eliminate each other.
//! * [`weakly_dominates`] allows equality in both objectives. It drives the
//!   *pruning* tests, where a tie is enough to discard a subproblem.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::Realization;

/// A point `(J1, J2)` in objective space. Both components are finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPoint")]
pub struct ObjectivePoint {
    j1: f64,
    j2: f64,
}

#[derive(Deserialize)]
struct RawPoint {
    j1: f64,
    j2: f64,
}

impl TryFrom<RawPoint> for ObjectivePoint {
    type Error = Error;
    fn try_from(raw: RawPoint) -> Result<Self> {
        ObjectivePoint::new(raw.j1, raw.j2)
    }
}

impl ObjectivePoint {
    pub fn new(j1: f64, j2: f64) -> Result<Self> {
        if j1.is_finite() && j2.is_finite() {
            Ok(Self { j1, j2 })
        } else {
            Err(Error::NonFinite { j1, j2 })
        }
    }

    #[inline]
    pub fn j1(&self) -> f64 {
        self.j1
    }

    #[inline]
    pub fn j2(&self) -> f64 {
        self.j2
    }

    pub fn distance(&self, other: &ObjectivePoint) -> f64 {
        (self.j1 - other.j1).hypot(self.j2 - other.j2)
    }
}

impl From<ObjectivePoint> for [f64; 2] {
    fn from(p: ObjectivePoint) -> Self {
        [p.j1, p.j2]
    }
}

/// Non-negative comparison tolerance for ε-dominance.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Epsilon(f64);

impl Epsilon {
    pub const ZERO: Epsilon = Epsilon(0.0);

    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps >= 0.0 {
            Ok(Self(eps))
        } else {
            Err(Error::InvalidEpsilon(eps))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Epsilon {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        Epsilon::new(v)
    }
}

impl From<Epsilon> for f64 {
    fn from(e: Epsilon) -> f64 {
        e.0
    }
}

/// Strict Pareto dominance of `a` over `b` with tolerance `eps`.
#[inline]
pub fn dominates(a: &ObjectivePoint, b: &ObjectivePoint, eps: Epsilon) -> bool {
    let e = eps.0;
    a.j1 <= b.j1 + e && a.j2 <= b.j2 + e && (a.j1 < b.j1 - e || a.j2 < b.j2 - e)
}

/// Weak dominance: `a` is no worse than `b` in both objectives.
#[inline]
pub fn weakly_dominates(a: &ObjectivePoint, b: &ObjectivePoint, eps: Epsilon) -> bool {
    let e = eps.0;
    a.j1 <= b.j1 + e && a.j2 <= b.j2 + e
}

/// Where a front point came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Minimizer of `J1` alone.
    Anchor1,
    /// Minimizer of `J2` alone.
    Anchor2,
    /// Weighted-sum solve at weight index `i` of the front grid.
    Weight(usize),
    /// Equal-weight solve used by the center-point test.
    Center,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Anchor1 => f.write_str("anchor1"),
            Provenance::Anchor2 => f.write_str("anchor2"),
            Provenance::Weight(i) => write!(f, "ws:{i}"),
            Provenance::Center => f.write_str("center"),
        }
    }
}

impl FromStr for Provenance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "anchor1" => Ok(Provenance::Anchor1),
            "anchor2" => Ok(Provenance::Anchor2),
            "center" => Ok(Provenance::Center),
            _ => s
                .strip_prefix("ws:")
                .and_then(|i| i.parse().ok())
                .map(Provenance::Weight)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown provenance tag {s:?}"))),
        }
    }
}

impl Serialize for Provenance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Provenance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A solved design `[y, z_k]` together with its objective vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "FrontEntry", try_from = "FrontEntry")]
pub struct ParetoSolution {
    pub y: Vec<f64>,
    pub realization: Realization,
    pub point: ObjectivePoint,
    pub provenance: Provenance,
}

/// Flat wire form of a [`ParetoSolution`]: `{k, z, y, j1, j2, provenance}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FrontEntry {
    k: usize,
    z: Vec<f64>,
    y: Vec<f64>,
    j1: f64,
    j2: f64,
    provenance: Provenance,
}

impl From<ParetoSolution> for FrontEntry {
    fn from(s: ParetoSolution) -> Self {
        FrontEntry {
            k: s.realization.k,
            z: s.realization.z,
            y: s.y,
            j1: s.point.j1,
            j2: s.point.j2,
            provenance: s.provenance,
        }
    }
}

impl TryFrom<FrontEntry> for ParetoSolution {
    type Error = Error;
    fn try_from(e: FrontEntry) -> Result<Self> {
        Ok(ParetoSolution {
            y: e.y,
            realization: Realization { k: e.k, z: e.z },
            point: ObjectivePoint::new(e.j1, e.j2)?,
            provenance: e.provenance,
        })
    }
}

/// Indices of the points not strictly dominated by any other point, in
/// input order. Objective-identical points are all kept.
pub fn nondominated_indices(points: &[ObjectivePoint], eps: Epsilon) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            !points
                .iter()
                .enumerate()
                .any(|(j, p)| j != i && dominates(p, &points[i], eps))
        })
        .collect()
}

/// The solutions whose points are not strictly dominated by any other
/// input's point. Stable with respect to input order.
pub fn nondominated_filter(solutions: &[ParetoSolution], eps: Epsilon) -> Vec<ParetoSolution> {
    let points: Vec<ObjectivePoint> = solutions.iter().map(|s| s.point).collect();
    nondominated_indices(&points, eps)
        .into_iter()
        .map(|i| solutions[i].clone())
        .collect()
}

/// Sorts a front ascending by `J1`, then `J2`, then realization index.
pub fn sort_front(front: &mut [ParetoSolution]) {
    front.sort_by(|a, b| {
        a.point
            .j1
            .total_cmp(&b.point.j1)
            .then(a.point.j2.total_cmp(&b.point.j2))
            .then(a.realization.k.cmp(&b.realization.k))
    });
}

/// Largest distance from a point of `from` to its nearest point of `to`.
pub fn directed_hausdorff(from: &[ObjectivePoint], to: &[ObjectivePoint]) -> f64 {
    if from.is_empty() {
        return 0.0;
    }
    if to.is_empty() {
        return f64::INFINITY;
    }
    from.iter()
        .map(|p| to.iter().map(|q| p.distance(q)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance between two point sets.
pub fn hausdorff(a: &[ObjectivePoint], b: &[ObjectivePoint]) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}
