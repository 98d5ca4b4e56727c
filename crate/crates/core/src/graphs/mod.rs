//! Planar multigraphs attached to diagrams, exact spanning-tree counts and
//! square-grid subgraphs.

mod grid;
mod matrix_tree;
mod tait;

use crate::error::{KnotError, Result};

pub use grid::{folner_ratio, grid_graph, path_graph, tree_entropy_sequence, GridSubgraphSpec};
pub use matrix_tree::{bareiss_determinant, signed_laplacian_cofactor, spanning_tree_count};
pub use tait::{checkerboard_graph, projection_graph, tait_graph, tait_graph_dual, Checkerboard};

/// Undirected multigraph; parallel edges and loops allowed, edges optionally signed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarMultigraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    signs: Option<Vec<i8>>,
}

impl PlanarMultigraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<PlanarMultigraph> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices || v >= vertices) {
            return Err(KnotError::Validation(format!(
                "edge ({u}, {v}) references a vertex outside 0..{vertices}"
            )));
        }
        Ok(PlanarMultigraph { vertices, edges, signs: None })
    }

    /// Attaches a ±1 sign to every edge.
    pub fn with_signs(mut self, signs: Vec<i8>) -> Result<PlanarMultigraph> {
        if signs.len() != self.edges.len() || signs.iter().any(|s| s.abs() != 1) {
            return Err(KnotError::Validation("need one ±1 sign per edge".into()));
        }
        self.signs = Some(signs);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn signs(&self) -> Option<&[i8]> {
        self.signs.as_deref()
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertices).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); self.vertices];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Merges vertex `v` into `u`; edges between them become loops.
    pub fn identify(&self, u: usize, v: usize) -> Result<PlanarMultigraph> {
        if u >= self.vertices || v >= self.vertices || u == v {
            return Err(KnotError::Domain(format!("cannot identify vertices {u} and {v}")));
        }
        let map = |w: usize| {
            let w = if w == v { u } else { w };
            if w > v {
                w - 1
            } else {
                w
            }
        };
        Ok(PlanarMultigraph {
            vertices: self.vertices - 1,
            edges: self.edges.iter().map(|&(a, b)| (map(a), map(b))).collect(),
            signs: self.signs.clone(),
        })
    }

    /// Edge list, one `u v` pair per line; a first line `# vertices N`
    /// records isolated vertices.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("# vertices {}\n", self.vertices);
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn from_edge_list(text: &str) -> Result<PlanarMultigraph> {
        let mut declared = None;
        let mut edges = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(n) = rest.trim().strip_prefix("vertices") {
                    declared = Some(n.trim().parse::<usize>().map_err(|_| {
                        KnotError::Syntax(format!("bad vertex count line `{line}`"))
                    })?);
                }
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| KnotError::Syntax(format!("bad edge line `{line}`")))
            };
            if parts.len() != 2 {
                return Err(KnotError::Syntax(format!("bad edge line `{line}`")));
            }
            edges.push((parse(parts[0])?, parse(parts[1])?));
        }
        let inferred = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        PlanarMultigraph::new(declared.unwrap_or(inferred), edges)
    }
}
