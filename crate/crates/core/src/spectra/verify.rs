//! Census-wide checks of the density conjectures.

use std::cmp::Ordering;

use rayon::prelude::*;
use rug::{Integer, Rational};
use serde::Serialize;

use super::bounds::{certified_cmp, Bounds};
use super::{format_real, ser, DENSITY_PRECISION};
use crate::census::CensusEntry;
use crate::diagram::Diagram;
use crate::error::{KnotError, Result};
use crate::graphs::{checkerboard_graph, spanning_tree_count};
use crate::khovanov::{reduced_khovanov_capped, Field};
use crate::polynomials::{determinant, jones_polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Pass,
    Violation,
    Skipped,
}

/// One census row: the checked quantity against its bound.
#[derive(Clone, Debug, Serialize)]
pub struct RowResult {
    pub knot: String,
    pub crossings: usize,
    pub value: Option<f64>,
    pub bound: Option<f64>,
    /// bound − value
    pub margin: Option<f64>,
    pub status: RowStatus,
    pub note: String,
}

impl RowResult {
    fn skipped(e: &CensusEntry, note: impl Into<String>) -> RowResult {
        RowResult {
            knot: e.name.clone(),
            crossings: e.crossings,
            value: None,
            bound: None,
            margin: None,
            status: RowStatus::Skipped,
            note: note.into(),
        }
    }

    fn checked(e: &CensusEntry, value: f64, bound: f64, ok: bool, note: impl Into<String>) -> RowResult {
        RowResult {
            knot: e.name.clone(),
            crossings: e.crossings,
            value: Some(value),
            bound: Some(bound),
            margin: Some(bound - value),
            status: if ok { RowStatus::Pass } else { RowStatus::Violation },
            note: note.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub passed: usize,
    pub violations: usize,
    pub skipped: usize,
    pub min_margin: Option<f64>,
    pub min_margin_knot: Option<String>,
    pub rows: Vec<RowResult>,
}

impl VerificationReport {
    fn new(check: &str, rows: Vec<RowResult>) -> VerificationReport {
        let count = |s: RowStatus| rows.iter().filter(|r| r.status == s).count();
        let min = rows
            .iter()
            .filter_map(|r| r.margin.map(|m| (m, &r.knot)))
            .min_by(|a, b| a.0.total_cmp(&b.0));
        VerificationReport {
            check: check.into(),
            passed: count(RowStatus::Pass),
            violations: count(RowStatus::Violation),
            skipped: count(RowStatus::Skipped),
            min_margin: min.map(|m| m.0),
            min_margin_knot: min.map(|m| m.1.clone()),
            rows,
        }
    }

    pub fn is_pass(&self) -> bool {
        self.violations == 0
    }

    pub fn to_csv(&self) -> String {
        let opt = |x: Option<f64>| x.map(format_real).unwrap_or_default();
        let mut s = String::from("knot,crossings,value,bound,margin,status,note\n");
        for r in &self.rows {
            let status = match r.status {
                RowStatus::Pass => "pass",
                RowStatus::Violation => "violation",
                RowStatus::Skipped => "skipped",
            };
            s.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.knot,
                r.crossings,
                opt(r.value),
                opt(r.bound),
                opt(r.margin),
                status,
                r.note.replace(',', ";")
            ));
        }
        s
    }
}

fn row_determinant(e: &CensusEntry, d: &Diagram) -> Integer {
    e.determinant.clone().unwrap_or_else(|| determinant(d))
}

fn density_f64(c: usize, x: &Rational) -> f64 {
    let b = Bounds::log_density(c, x, DENSITY_PRECISION);
    b.hi.to_f64()
}

fn run<F>(check: &str, entries: &[CensusEntry], f: F) -> VerificationReport
where
    F: Fn(&CensusEntry) -> RowResult + Sync,
{
    let rows: Vec<RowResult> = entries
        .par_iter()
        .map(|e| if e.crossings == 0 { RowResult::skipped(e, "no crossings") } else { f(e) })
        .collect();
    VerificationReport::new(check, rows)
}

fn diagram_or_skip(e: &CensusEntry) -> std::result::Result<Diagram, RowResult> {
    e.diagram().map_err(|err| RowResult::skipped(e, err.to_string()))
}

/// 2π·ln det / c ≤ voct for every row, compared with directed rounding.
pub fn verify_det_density_bound(entries: &[CensusEntry]) -> VerificationReport {
    let voct = Bounds::voct(DENSITY_PRECISION).lo.to_f64();
    run("det-density", entries, |e| {
        let d = match diagram_or_skip(e) {
            Ok(d) => d,
            Err(r) => return r,
        };
        let det = row_determinant(e, &d);
        if det == 0 {
            return RowResult::skipped(e, "determinant 0");
        }
        let x = Rational::from(det);
        let c = e.crossings;
        let ok = certified_cmp(|p| Bounds::log_density(c, &x, p), Bounds::voct) == Some(Ordering::Less);
        RowResult::checked(e, density_f64(c, &x), voct, ok, "")
    })
}

/// 2π·ln μ / c ≤ voct on every row, μ = det/(c+1) (hence μ ≤ det) on
/// alternating rows and Σ|a_i| < τ(G) on non-alternating rows. Non-alternating
/// rows with μ > det pass with a note.
pub fn verify_jones_density_bound(entries: &[CensusEntry]) -> VerificationReport {
    let voct = Bounds::voct(DENSITY_PRECISION).lo.to_f64();
    run("jones-density", entries, |e| {
        let d = match diagram_or_skip(e) {
            Ok(d) => d,
            Err(r) => return r,
        };
        let j = match jones_polynomial(&d) {
            Ok(j) => j,
            Err(err) => return RowResult::skipped(e, err.to_string()),
        };
        let c = e.crossings;
        let det = row_determinant(e, &d);
        let mut problems = Vec::new();
        let below = certified_cmp(|p| Bounds::log_density(c, &j.mu, p), Bounds::voct) == Some(Ordering::Less);
        if !below {
            problems.push("μ-density exceeds voct".to_string());
        }
        let mut notes = Vec::new();
        if j.mu > det {
            // only forced when μ = det/(c+1); non-alternating knots of determinant 1 break it
            if e.alternating {
                problems.push(format!("μ = {} exceeds det = {det}", j.mu));
            } else {
                notes.push(format!("μ = {} exceeds det = {det}", j.mu));
            }
        }
        if e.alternating {
            let expect = Rational::from((det.clone(), Integer::from(c + 1)));
            if j.mu != expect {
                problems.push(format!("μ = {} but det/(c+1) = {expect}", j.mu));
            }
        } else {
            match spanning_tree_count(&checkerboard_graph(&d, true)) {
                Ok(tau) if j.abs_coeff_sum < tau => {}
                Ok(tau) => problems.push(format!("Σ|a_i| = {} not below τ = {tau}", j.abs_coeff_sum)),
                Err(err) => problems.push(err.to_string()),
            }
        }
        let pass = problems.is_empty();
        problems.extend(notes);
        RowResult::checked(e, density_f64(c, &j.mu), voct, pass, problems.join("; "))
    })
}

/// vol < 2π·ln det for alternating hyperbolic rows.
pub fn verify_vol_det(entries: &[CensusEntry]) -> VerificationReport {
    run("vol-det", entries, |e| {
        if !e.alternating {
            return RowResult::skipped(e, "non-alternating");
        }
        let vol = match e.volume {
            None => return RowResult::skipped(e, KnotError::MissingData("volume".into()).to_string()),
            Some(v) if v == 0.0 => return RowResult::skipped(e, "not hyperbolic"),
            Some(v) => v,
        };
        let d = match diagram_or_skip(e) {
            Ok(d) => d,
            Err(r) => return r,
        };
        let det = row_determinant(e, &d);
        if det <= 1 {
            return RowResult::checked(e, vol, 0.0, false, "ln det ≤ 0");
        }
        let x = Rational::from(det);
        let ok = certified_cmp(|_| Bounds::exact(vol), |p| Bounds::two_pi_log(&x, p)) == Some(Ordering::Less);
        let bound = Bounds::two_pi_log(&x, DENSITY_PRECISION).lo.to_f64();
        RowResult::checked(e, vol, bound, ok, "")
    })
}

/// vol < 2π·ln rank H̃(K) for non-alternating hyperbolic rows with at most `cap` crossings.
pub fn verify_kh_vol(entries: &[CensusEntry], field: Field, cap: usize) -> VerificationReport {
    run("kh-vol", entries, |e| {
        if e.alternating {
            return RowResult::skipped(e, "alternating: rank = det, see vol-det");
        }
        let vol = match e.volume {
            None => return RowResult::skipped(e, KnotError::MissingData("volume".into()).to_string()),
            Some(v) if v == 0.0 => return RowResult::skipped(e, "not hyperbolic"),
            Some(v) => v,
        };
        let d = match diagram_or_skip(e) {
            Ok(d) => d,
            Err(r) => return r,
        };
        let rank = match reduced_khovanov_capped(&d, field, cap) {
            Ok(s) => s.total_rank(),
            Err(err) => return RowResult::skipped(e, err.to_string()),
        };
        if rank <= 1 {
            return RowResult::checked(e, vol, 0.0, false, format!("rank {rank}"));
        }
        let x = Rational::from(rank as u64);
        let ok = certified_cmp(|_| Bounds::exact(vol), |p| Bounds::two_pi_log(&x, p)) == Some(Ordering::Less);
        let bound = Bounds::two_pi_log(&x, DENSITY_PRECISION).lo.to_f64();
        RowResult::checked(e, vol, bound, ok, format!("rank {rank}"))
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossingDropReport {
    #[serde(serialize_with = "ser::integer")]
    pub determinant: Integer,
    pub subsets_tested: usize,
    /// Subsets whose change failed to lower the determinant, with the new value.
    pub failures: Vec<(Vec<usize>, String)>,
}

/// Changes every proper nonempty subset of crossings of size ≤ `max_size`
/// and checks that the determinant strictly drops.
pub fn crossing_change_det_drop(d: &Diagram, max_size: usize) -> Result<CrossingDropReport> {
    if !d.is_alternating() || !d.is_reduced() {
        return Err(KnotError::Domain("crossing-change drop needs a reduced alternating diagram".into()));
    }
    let c = d.crossing_number();
    if c >= 63 {
        return Err(KnotError::Resource(format!("{c} crossings is too many to enumerate subsets")));
    }
    let det = determinant(d);
    let full = (1u64 << c) - 1;
    let masks: Vec<u64> = (1..full).filter(|m| m.count_ones() as usize <= max_size).collect();
    let failures = masks
        .par_iter()
        .map(|&m| {
            let subset: Vec<usize> = (0..c).filter(|i| m >> i & 1 == 1).collect();
            let changed = d.change_crossings(&subset)?;
            let new_det = determinant(&changed);
            Ok((new_det >= det).then(|| (subset, new_det.to_string())))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(CrossingDropReport { determinant: det, subsets_tested: masks.len(), failures })
}

/// Exhaustive crossing-change drop over reduced alternating rows with at most `max_crossings` crossings.
pub fn verify_crossing_drop(entries: &[CensusEntry], max_crossings: usize) -> VerificationReport {
    run("crossing-drop", entries, |e| {
        if !e.alternating {
            return RowResult::skipped(e, "non-alternating");
        }
        if e.crossings > max_crossings {
            return RowResult::skipped(e, format!("more than {max_crossings} crossings"));
        }
        let d = match diagram_or_skip(e) {
            Ok(d) => d,
            Err(r) => return r,
        };
        if !d.is_reduced() {
            return RowResult::skipped(e, "diagram not reduced");
        }
        match crossing_change_det_drop(&d, e.crossings) {
            Ok(r) => {
                let det = r.determinant.to_f64();
                let worst = r
                    .failures
                    .iter()
                    .map(|f| f.1.parse::<f64>().unwrap_or(f64::INFINITY))
                    .fold(f64::NEG_INFINITY, f64::max);
                let value = if r.failures.is_empty() { det - 1.0 } else { worst };
                let note = if r.failures.is_empty() {
                    format!("{} subsets", r.subsets_tested)
                } else {
                    format!("{} of {} subsets fail, first {:?}", r.failures.len(), r.subsets_tested, r.failures[0].0)
                };
                RowResult::checked(e, value, det, r.failures.is_empty(), note)
            }
            Err(err) => RowResult::skipped(e, err.to_string()),
        }
    })
}
