//! Density sequences over link families and their limits.

use std::cmp::Ordering;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::Serialize;

use super::bounds::{certified_cmp, Bounds};
use super::{det_density, format_real, ser, VOCT};
use crate::diagram::{celtic_grid, cycle_of_tangles, row_of_tangles, twist_on_two_strands, weaving_knot};
use crate::diagram::{BraidWord, Diagram, Tangle};
use crate::error::{KnotError, Result};
use crate::graphs::{checkerboard_graph, spanning_tree_count};
use crate::polynomials::determinant;

/// Aitken Δ² estimate from the last three terms; needs at least four terms.
pub fn aitken(xs: &[f64]) -> Option<f64> {
    if xs.len() < 4 {
        return None;
    }
    let [x0, x1, x2] = [xs[xs.len() - 3], xs[xs.len() - 2], xs[xs.len() - 1]];
    let (d1, d2) = (x1 - x0, x2 - x1);
    let denom = d2 - d1;
    if denom == 0.0 {
        return Some(x2);
    }
    Some(x2 - d2 * d2 / denom)
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceReport {
    pub family: String,
    pub indices: Vec<usize>,
    pub crossings: Vec<usize>,
    #[serde(serialize_with = "ser::integers")]
    pub determinants: Vec<Integer>,
    pub densities: Vec<f64>,
    /// Aitken-extrapolated limit, present with four or more terms.
    pub limit: Option<f64>,
    pub target: f64,
    /// |density − target| per term.
    pub residuals: Vec<f64>,
}

impl SequenceReport {
    fn build(family: String, target: f64, rows: Vec<(usize, usize, Integer)>) -> Result<SequenceReport> {
        let mut densities = Vec::with_capacity(rows.len());
        for (_, c, det) in &rows {
            densities.push(det_density(*c, det)?.to_f64());
        }
        let residuals = densities.iter().map(|d| (d - target).abs()).collect();
        Ok(SequenceReport {
            family,
            limit: aitken(&densities),
            target,
            residuals,
            densities,
            indices: rows.iter().map(|r| r.0).collect(),
            crossings: rows.iter().map(|r| r.1).collect(),
            determinants: rows.into_iter().map(|r| r.2).collect(),
        })
    }

    fn certified_order(&self, i: usize, j: usize) -> Option<Ordering> {
        let a = Rational::from(&self.determinants[i]);
        let b = Rational::from(&self.determinants[j]);
        let (ca, cb) = (self.crossings[i], self.crossings[j]);
        certified_cmp(|p| Bounds::log_density(ca, &a, p), |p| Bounds::log_density(cb, &b, p))
    }

    /// Densities strictly increase, compared with directed rounding.
    pub fn is_strictly_increasing(&self) -> bool {
        (1..self.densities.len()).all(|i| self.certified_order(i - 1, i) == Some(Ordering::Less))
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        (1..self.densities.len()).all(|i| self.certified_order(i - 1, i) == Some(Ordering::Greater))
    }

    /// |limit − target| ≤ tol·|target| (absolute when the target is 0).
    pub fn limit_within(&self, tol: f64) -> Option<bool> {
        let scale = if self.target == 0.0 { 1.0 } else { self.target.abs() };
        self.limit.map(|l| (l - self.target).abs() <= tol * scale)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("family,index,crossings,determinant,density,residual\n");
        for i in 0..self.indices.len() {
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                self.family,
                self.indices[i],
                self.crossings[i],
                self.determinants[i],
                format_real(self.densities[i]),
                format_real(self.residuals[i])
            ));
        }
        s
    }
}

/// Link families with a known limiting determinant density.
#[derive(Clone, Debug)]
pub enum Family {
    /// W(p, q) indexed by q.
    Weaving { p: usize },
    /// n×n Celtic grid indexed by n.
    Celtic,
    /// k extra crossings twisted into the two strands of the Hopf link, indexed by k.
    Twist,
    /// n-cycle of copies of a tangle, indexed by n; the target is the density
    /// of the single-copy row closure.
    Cycle(Tangle),
}

impl Family {
    pub fn label(&self) -> String {
        match self {
            Family::Weaving { p } => format!("weaving(p={p})"),
            Family::Celtic => "celtic".into(),
            Family::Twist => "twist".into(),
            Family::Cycle(_) => "cycle".into(),
        }
    }

    pub fn diagram(&self, index: usize) -> Result<Diagram> {
        match self {
            Family::Weaving { p } => weaving_knot(*p, index),
            Family::Celtic => celtic_grid(index, index),
            Family::Twist => {
                let hopf = Diagram::from_braid(&BraidWord::new(2, vec![1, 1])?)?;
                let arcs = hopf.arcs();
                twist_on_two_strands(&hopf, (arcs[0], arcs[1]), index)
            }
            Family::Cycle(t) => cycle_of_tangles(t, index),
        }
    }

    /// The limiting determinant density.
    pub fn target(&self) -> Result<f64> {
        match self {
            Family::Weaving { .. } | Family::Celtic => Ok(VOCT),
            Family::Twist => Ok(0.0),
            Family::Cycle(t) => {
                let k = row_of_tangles(t, 1)?;
                Ok(det_density(k.crossing_number(), &determinant(&k))?.to_f64())
            }
        }
    }
}

/// Determinant densities of a family over `indices`.
pub fn maximality_sweep(family: &Family, indices: &[usize]) -> Result<SequenceReport> {
    let target = family.target()?;
    let rows = indices
        .par_iter()
        .map(|&i| {
            let d = family.diagram(i).map_err(|e| e.context(&format!("{}[{i}]", family.label()), "generate"))?;
            Ok((i, d.crossing_number(), determinant(&d)))
        })
        .collect::<Result<Vec<_>>>()?;
    SequenceReport::build(family.label(), target, rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleRow {
    pub n: usize,
    pub crossings: usize,
    /// det(K^n)
    #[serde(serialize_with = "ser::integer")]
    pub det_cycle: Integer,
    /// det(L^n), L^n the row of n copies closed up: n copies of K summed
    #[serde(serialize_with = "ser::integer")]
    pub det_sum: Integer,
    /// det(K)^n
    #[serde(serialize_with = "ser::integer")]
    pub det_power: Integer,
    /// τ(G(L^n)) and τ(G(K^{n+1})) for the checkerboard graphs
    #[serde(serialize_with = "ser::integer")]
    pub tau_sum: Integer,
    #[serde(serialize_with = "ser::integer")]
    pub tau_next_cycle: Integer,
}

impl CycleRow {
    pub fn power_law_holds(&self) -> bool {
        self.det_sum == self.det_power
    }

    pub fn subgraph_bound_holds(&self) -> bool {
        self.tau_sum <= self.tau_next_cycle
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleReport {
    pub sequence: SequenceReport,
    pub rows: Vec<CycleRow>,
}

impl CycleReport {
    pub fn laws_hold(&self) -> bool {
        self.rows.iter().all(|r| r.power_law_holds() && r.subgraph_bound_holds())
    }

    /// Residual of the density of K^n against the density of K.
    pub fn residual(&self, n: usize) -> Option<f64> {
        let i = self.sequence.indices.iter().position(|&k| k == n)?;
        Some(self.sequence.residuals[i])
    }
}

fn tau(d: &Diagram) -> Result<Integer> {
    spanning_tree_count(&checkerboard_graph(d, true))
}

/// Densities of the n-cycles K^n for n = 1..=n_max against the density of
/// K = L^1, where L^n is the closed row of n copies of the tangle. Along the
/// way records det(L^n) = det(K)^n and τ(G(L^n)) ≤ τ(G(K^{n+1})).
pub fn cycle_density_convergence(t: &Tangle, n_max: usize) -> Result<CycleReport> {
    if n_max == 0 {
        return Err(KnotError::Domain("n_max must be at least 1".into()));
    }
    let k = row_of_tangles(t, 1)?;
    if !k.is_alternating() {
        return Err(KnotError::Domain("closure of the tangle is not alternating".into()));
    }
    let det_k = determinant(&k);
    if det_k == 0 {
        return Err(KnotError::Domain("closure of the tangle has determinant 0".into()));
    }
    let sequence = maximality_sweep(&Family::Cycle(t.clone()), &(1..=n_max).collect::<Vec<_>>())?;
    let rows = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let sum = row_of_tangles(t, n)?;
            let next = cycle_of_tangles(t, n + 1)?;
            Ok(CycleRow {
                n,
                crossings: sequence.crossings[n - 1],
                det_cycle: sequence.determinants[n - 1].clone(),
                det_sum: determinant(&sum),
                det_power: Integer::from((&det_k).pow(n as u32)),
                tau_sum: tau(&sum)?,
                tau_next_cycle: tau(&next)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CycleReport { sequence, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aitken_on_geometric_sequence() {
        let xs: Vec<f64> = (0..6).map(|n| 2.0 - 0.5f64.powi(n)).collect();
        assert!((aitken(&xs).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(aitken(&xs[..3]), None);
    }

    #[test]
    fn twist_family_is_two_bridge_torus() {
        let r = maximality_sweep(&Family::Twist, &[1, 2, 3, 10]).unwrap();
        assert_eq!(r.crossings, vec![3, 4, 5, 12]);
        assert_eq!(r.determinants, vec![Integer::from(3), Integer::from(4), Integer::from(5), Integer::from(12)]);
        assert_eq!(r.target, 0.0);
    }

    #[test]
    fn single_crossing_cycle_is_torus_family() {
        let r = cycle_density_convergence(&Tangle::single_crossing(), 6).unwrap();
        for (i, n) in r.sequence.indices.iter().enumerate() {
            assert_eq!(r.sequence.crossings[i], *n);
            assert_eq!(r.sequence.determinants[i], *n as u32);
        }
        assert_eq!(r.sequence.target, 0.0);
        assert!(r.laws_hold());
    }

    #[test]
    fn connect_sum_density_is_constant() {
        let t = Tangle::vertical_twist(3).unwrap();
        let r = cycle_density_convergence(&t, 5).unwrap();
        let k = row_of_tangles(&t, 1).unwrap();
        let base = det_density(k.crossing_number(), &determinant(&k)).unwrap();
        for row in &r.rows {
            assert!(row.power_law_holds());
            let d = det_density(row.n * k.crossing_number(), &row.det_sum).unwrap();
            assert!(rug::Float::with_val(128, &d - &base).abs() < 1e-30);
        }
    }

    #[test]
    fn twist_cycles_converge_to_the_closure_density() {
        for k in [3usize, 5, 7] {
            let r = cycle_density_convergence(&Tangle::vertical_twist(k).unwrap(), 8).unwrap();
            // det(K^n) = n·k^(n−1)
            for (i, d) in r.sequence.determinants.iter().enumerate() {
                let n = i as u32 + 1;
                assert_eq!(*d, Integer::from(n) * Integer::from(k).pow(n - 1));
            }
            assert!(r.laws_hold());
            assert!(r.residual(8).unwrap() < r.residual(2).unwrap());
        }
    }

    #[test]
    fn csv_has_one_line_per_index() {
        let r = maximality_sweep(&Family::Weaving { p: 3 }, &[2, 3, 4]).unwrap();
        assert_eq!(r.to_csv().lines().count(), 4);
        assert!(r.is_strictly_increasing());
        assert_eq!(r.limit, None);
    }
}
