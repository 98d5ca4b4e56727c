use std::collections::{BTreeMap, BTreeSet};

use rug::{Float, Rational};

use super::{spanning_tree_count, PlanarMultigraph};
use crate::error::{KnotError, Result};

/// The m×n square grid graph; vertex (i, j) has index `j * m + i`.
pub fn grid_graph(m: usize, n: usize) -> PlanarMultigraph {
    GridSubgraphSpec::block(m, n).graph()
}

pub fn path_graph(n: usize) -> PlanarMultigraph {
    grid_graph(n, 1)
}

/// A finite vertex set of the infinite square grid, with its induced subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSubgraphSpec {
    cells: BTreeSet<(i64, i64)>,
}

const STEPS: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

impl GridSubgraphSpec {
    pub fn new(cells: impl IntoIterator<Item = (i64, i64)>) -> Result<GridSubgraphSpec> {
        let spec = GridSubgraphSpec { cells: cells.into_iter().collect() };
        if spec.cells.is_empty() {
            return Err(KnotError::Domain("grid subgraph must be nonempty".into()));
        }
        if !spec.graph().is_connected() {
            return Err(KnotError::Domain("grid subgraph must be connected".into()));
        }
        Ok(spec)
    }

    /// The block {0..m} × {0..n}.
    pub fn block(m: usize, n: usize) -> GridSubgraphSpec {
        let cells = (0..n as i64).flat_map(|j| (0..m as i64).map(move |i| (i, j))).collect();
        GridSubgraphSpec { cells }
    }

    /// The same vertex set with one cell removed.
    pub fn without(&self, cell: (i64, i64)) -> Result<GridSubgraphSpec> {
        GridSubgraphSpec::new(self.cells.iter().copied().filter(|&c| c != cell))
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cells with a grid neighbor outside the set.
    pub fn boundary_len(&self) -> usize {
        self.cells
            .iter()
            .filter(|&&(i, j)| STEPS.iter().any(|&(di, dj)| !self.cells.contains(&(i + di, j + dj))))
            .count()
    }

    /// Induced subgraph; vertices are numbered by (row, column) order.
    pub fn graph(&self) -> PlanarMultigraph {
        let mut order: Vec<(i64, i64)> = self.cells.iter().copied().collect();
        order.sort_by_key(|&(i, j)| (j, i));
        let index: BTreeMap<(i64, i64), usize> =
            order.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut edges = Vec::new();
        for &(i, j) in &order {
            for (di, dj) in [(1, 0), (0, 1)] {
                if let Some(&w) = index.get(&(i + di, j + dj)) {
                    edges.push((index[&(i, j)], w));
                }
            }
        }
        PlanarMultigraph::new(order.len(), edges).expect("indices in range")
    }
}

/// |∂H| / |H| with ∂H the vertices of H adjacent to a vertex outside H.
pub fn folner_ratio(h: &GridSubgraphSpec) -> Rational {
    Rational::from((h.boundary_len() as u64, h.len() as u64))
}

/// (vertex count, ln τ(G) / |V(G)|) for each graph, at `precision` bits.
pub fn tree_entropy_sequence(family: &[PlanarMultigraph], precision: u32) -> Result<Vec<(usize, Float)>> {
    family
        .iter()
        .map(|g| {
            let tau = spanning_tree_count(g)?;
            let v = g.vertex_count();
            let h = Float::with_val(precision, &tau).ln() / v as u64;
            Ok((v, h))
        })
        .collect()
}
