//! On-disk artifacts: the JSON run report, the front CSV and run comparison.

use std::collections::BTreeSet;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dominance::{hausdorff, ObjectivePoint, ParetoSolution, Provenance};
use crate::error::{Error, Result};
use crate::problem::Realization;
use crate::prune::{NlpCounts, PhasesRun, PruneReport};

/// JSON form of a finished run. Key order is fixed.
///
/// `wallclock_ms` is `null` unless timing was requested, so that repeated
/// runs with the same inputs produce identical files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub problem: String,
    pub beta: usize,
    pub phases: PhasesRun,
    pub eps: f64,
    pub seed: u64,
    pub k_total: usize,
    pub k1m: Vec<usize>,
    pub k1u: Vec<usize>,
    pub k1c: Vec<usize>,
    pub pruned_a: Vec<usize>,
    pub pruned_b: Vec<usize>,
    pub infeasible: Vec<usize>,
    pub k1: Vec<usize>,
    pub nlp: NlpCounts,
    pub front: Vec<ParetoSolution>,
    pub wallclock_ms: Option<u64>,
}

impl RunReport {
    pub fn new(problem: &str, beta: usize, eps: f64, seed: u64, report: PruneReport) -> Self {
        RunReport {
            problem: problem.to_string(),
            beta,
            phases: report.phases_run,
            eps,
            seed,
            k_total: report.k_total,
            k1m: report.k1m,
            k1u: report.k1u,
            k1c: report.k1c,
            pruned_a: report.pruned_a,
            pruned_b: report.pruned_b,
            infeasible: report.infeasible,
            k1: report.k1,
            nlp: report.nlp,
            front: report.front,
            wallclock_ms: None,
        }
    }

    pub fn with_wallclock_ms(mut self, ms: Option<u64>) -> Self {
        self.wallclock_ms = ms;
        self
    }

    pub fn to_prune_report(&self) -> PruneReport {
        PruneReport {
            k_total: self.k_total,
            k1m: self.k1m.clone(),
            k1u: self.k1u.clone(),
            k1c: self.k1c.clone(),
            pruned_a: self.pruned_a.clone(),
            pruned_b: self.pruned_b.clone(),
            infeasible: self.infeasible.clone(),
            k1: self.k1.clone(),
            nlp: self.nlp,
            front: self.front.clone(),
            phases_run: self.phases,
        }
    }

    /// `|K|=… |K1m|=… |K1u|=… |K1c|=… nlp=… front=… pts`
    pub fn summary_line(&self) -> String {
        format!(
            "|K|={} |K1m|={} |K1u|={} |K1c|={} nlp={} front={} pts",
            self.k_total,
            self.k1m.len(),
            self.k1u.len(),
            self.k1c.len(),
            self.nlp.total,
            self.front.len()
        )
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)
            .map_err(|e| Error::Pipeline(format!("cannot serialize report: {e}")))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidArgument(format!("malformed report: {e}")))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?)
            .map_err(|e| Error::Pipeline(format!("cannot write {}: {e}", path.display())))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let s = fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&s)
    }

    /// Distinct discrete vectors appearing on the front.
    pub fn front_realizations(&self) -> BTreeSet<Vec<u64>> {
        self.front.iter().map(|s| z_bits(&s.realization.z)).collect()
    }
}

fn z_bits(z: &[f64]) -> Vec<u64> {
    // +0.0 and -0.0 name the same discrete value
    z.iter().map(|v| (v + 0.0).to_bits()).collect()
}

fn csv_error(e: impl std::fmt::Display) -> Error {
    Error::Pipeline(format!("front csv: {e}"))
}

/// Writes `k, z_1..z_nz, y_1..y_ny, j1, j2, provenance` rows, sorted by `j1`.
pub fn write_front_csv<W: Write>(front: &[ParetoSolution], n_z: usize, n_y: usize, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["k".to_string()];
    header.extend((1..=n_z).map(|i| format!("z_{i}")));
    header.extend((1..=n_y).map(|i| format!("y_{i}")));
    header.extend(["j1", "j2", "provenance"].map(String::from));
    w.write_record(&header).map_err(csv_error)?;

    let mut rows: Vec<&ParetoSolution> = front.iter().collect();
    rows.sort_by(|a, b| a.point.j1().total_cmp(&b.point.j1()));
    for s in rows {
        if s.realization.z.len() != n_z || s.y.len() != n_y {
            return Err(csv_error(format!("row k={} has the wrong width", s.realization.k)));
        }
        let mut rec = vec![s.realization.k.to_string()];
        rec.extend(s.realization.z.iter().map(f64::to_string));
        rec.extend(s.y.iter().map(f64::to_string));
        rec.push(s.point.j1().to_string());
        rec.push(s.point.j2().to_string());
        rec.push(s.provenance.to_string());
        w.write_record(&rec).map_err(csv_error)?;
    }
    w.flush().map_err(csv_error)?;
    Ok(())
}

pub fn write_front_csv_file(front: &[ParetoSolution], n_z: usize, n_y: usize, path: &Path) -> Result<()> {
    let f = fs::File::create(path)
        .map_err(|e| Error::Pipeline(format!("cannot write {}: {e}", path.display())))?;
    write_front_csv(front, n_z, n_y, std::io::BufWriter::new(f))
}

/// Parses a file produced by [`write_front_csv`].
pub fn read_front_csv<R: Read>(input: R) -> Result<Vec<ParetoSolution>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(csv_error)?.clone();
    let n_z = header.iter().filter(|h| h.starts_with("z_")).count();
    let n_y = header.iter().filter(|h| h.starts_with("y_")).count();
    if header.len() != n_z + n_y + 4 || header.get(0) != Some("k") {
        return Err(csv_error("unexpected header"));
    }
    let num = |s: &str| s.parse::<f64>().map_err(csv_error);
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_error)?;
        let k = rec[0].parse::<usize>().map_err(csv_error)?;
        let z = (1..=n_z).map(|i| num(&rec[i])).collect::<Result<Vec<_>>>()?;
        let y = (1 + n_z..=n_z + n_y).map(|i| num(&rec[i])).collect::<Result<Vec<_>>>()?;
        let j = 1 + n_z + n_y;
        out.push(ParetoSolution {
            y,
            realization: Realization { k, z },
            point: ObjectivePoint::new(num(&rec[j])?, num(&rec[j + 1])?)?,
            provenance: rec[j + 2].parse::<Provenance>()?,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountDeltas {
    pub k_total: i64,
    pub k1m: i64,
    pub k1u: i64,
    pub k1c: i64,
    pub k1: i64,
    pub nlp_total: i64,
    pub front: i64,
}

/// Result of comparing run `b` against run `a`. Deltas are `b - a`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub hausdorff: f64,
    pub tol: f64,
    pub sets_equal: bool,
    pub only_in_a: Vec<Vec<f64>>,
    pub only_in_b: Vec<Vec<f64>>,
    pub deltas: CountDeltas,
    pub pass: bool,
}

pub fn compare(a: &RunReport, b: &RunReport, tol: f64) -> Result<Comparison> {
    if a.problem != b.problem {
        return Err(Error::InvalidArgument(format!(
            "reports are for different problems: {} vs {}",
            a.problem, b.problem
        )));
    }
    let pa: Vec<ObjectivePoint> = a.front.iter().map(|s| s.point).collect();
    let pb: Vec<ObjectivePoint> = b.front.iter().map(|s| s.point).collect();
    let h = hausdorff(&pa, &pb);
    let (za, zb) = (a.front_realizations(), b.front_realizations());
    let unbits = |z: &Vec<u64>| z.iter().map(|&v| f64::from_bits(v)).collect::<Vec<f64>>();
    let only_in_a: Vec<Vec<f64>> = za.difference(&zb).map(unbits).collect();
    let only_in_b: Vec<Vec<f64>> = zb.difference(&za).map(unbits).collect();
    let d = |x: usize, y: usize| y as i64 - x as i64;
    let deltas = CountDeltas {
        k_total: d(a.k_total, b.k_total),
        k1m: d(a.k1m.len(), b.k1m.len()),
        k1u: d(a.k1u.len(), b.k1u.len()),
        k1c: d(a.k1c.len(), b.k1c.len()),
        k1: d(za.len(), zb.len()),
        nlp_total: b.nlp.total as i64 - a.nlp.total as i64,
        front: d(a.front.len(), b.front.len()),
    };
    let sets_equal = only_in_a.is_empty() && only_in_b.is_empty();
    Ok(Comparison {
        hausdorff: h,
        tol,
        sets_equal,
        only_in_a,
        only_in_b,
        deltas,
        pass: h <= tol && sets_equal,
    })
}

impl Comparison {
    pub fn summary_line(&self) -> String {
        format!(
            "hausdorff={:e} tol={:e} sets_equal={} only_a={} only_b={} dk1={} dnlp={} dfront={} {}",
            self.hausdorff,
            self.tol,
            self.sets_equal,
            self.only_in_a.len(),
            self.only_in_b.len(),
            self.deltas.k1,
            self.deltas.nlp_total,
            self.deltas.front,
            if self.pass { "MATCH" } else { "MISMATCH" }
        )
    }

    pub fn to_json(&self) -> Result<String> {
        // Infinity has no JSON form; an empty-vs-nonempty comparison reports null
        let mut v = serde_json::to_value(self)
            .map_err(|e| Error::Pipeline(format!("cannot serialize comparison: {e}")))?;
        if !self.hausdorff.is_finite() {
            v["hausdorff"] = serde_json::Value::Null;
        }
        let mut s = serde_json::to_string_pretty(&v)
            .map_err(|e| Error::Pipeline(format!("cannot serialize comparison: {e}")))?;
        s.push('\n');
        Ok(s)
    }
}
