use std::collections::VecDeque;

use super::PlanarMultigraph;
use crate::diagram::{Diagram, Embedding};
use crate::error::{KnotError, Result};

/// Checkerboard coloring of a diagram's regions.
#[derive(Clone, Debug)]
pub struct Checkerboard {
    pub embedding: Embedding,
    /// Color of each face; color `true` holds the corner between slots 1 and 2 of crossing 0.
    pub shaded: Vec<bool>,
}

impl Checkerboard {
    pub fn new(d: &Diagram) -> Checkerboard {
        let embedding = d.embedding();
        let faces = embedding.face_count();
        let mut color: Vec<Option<bool>> = vec![None; faces];
        if faces > 0 {
            // Adjacent corners at a crossing lie in faces of opposite color.
            let mut adj = vec![Vec::new(); faces];
            for x in 0..d.crossing_number() {
                for i in 0..4 {
                    let (f, g) = (embedding.face_at(x, i), embedding.face_at(x, i + 1));
                    adj[f].push(g);
                    adj[g].push(f);
                }
            }
            let root = embedding.face_at(0, 1);
            color[root] = Some(true);
            let mut queue = VecDeque::from([root]);
            while let Some(f) = queue.pop_front() {
                let c = color[f].expect("queued faces are colored");
                for &g in &adj[f] {
                    if color[g].is_none() {
                        color[g] = Some(!c);
                        queue.push_back(g);
                    }
                }
            }
        }
        let shaded = color.into_iter().map(|c| c.expect("face graph is connected")).collect();
        Checkerboard { embedding, shaded }
    }
}

/// Graph on the regions of one color, with an edge for each crossing.
/// An edge is signed +1 when its regions sit in the crossing's A-corners
/// (slots 1–2 and 3–0), −1 otherwise.
pub fn checkerboard_graph(d: &Diagram, shaded: bool) -> PlanarMultigraph {
    if d.crossing_number() == 0 {
        return PlanarMultigraph::new(1, Vec::new()).expect("valid");
    }
    let board = Checkerboard::new(d);
    let mut index = vec![usize::MAX; board.shaded.len()];
    let mut count = 0;
    for (f, &s) in board.shaded.iter().enumerate() {
        if s == shaded {
            index[f] = count;
            count += 1;
        }
    }
    let mut edges = Vec::with_capacity(d.crossing_number());
    let mut signs = Vec::with_capacity(d.crossing_number());
    for x in 0..d.crossing_number() {
        let a_side = board.shaded[board.embedding.face_at(x, 1)] == shaded;
        let (i, j) = if a_side { (1, 3) } else { (0, 2) };
        edges.push((index[board.embedding.face_at(x, i)], index[board.embedding.face_at(x, j)]));
        signs.push(if a_side { 1 } else { -1 });
    }
    PlanarMultigraph::new(count, edges)
        .and_then(|g| g.with_signs(signs))
        .expect("face indices in range")
}

/// Tait graph on the regions meeting each crossing in its A-corners.
pub fn tait_graph(d: &Diagram) -> Result<PlanarMultigraph> {
    if !d.is_alternating() {
        return Err(KnotError::Domain("Tait graph requires an alternating diagram".into()));
    }
    Ok(checkerboard_graph(d, true))
}

/// The planar dual of [`tait_graph`], from the other checkerboard color.
pub fn tait_graph_dual(d: &Diagram) -> Result<PlanarMultigraph> {
    if !d.is_alternating() {
        return Err(KnotError::Domain("Tait graph requires an alternating diagram".into()));
    }
    Ok(checkerboard_graph(d, false))
}

/// 4-valent graph with a vertex per crossing and an edge per arc.
pub fn projection_graph(d: &Diagram) -> PlanarMultigraph {
    let emb = d.embedding();
    let edges = (0..4 * d.crossing_number())
        .filter(|&a| a < emb.partner[a])
        .map(|a| (a / 4, emb.partner[a] / 4))
        .collect();
    PlanarMultigraph::new(d.crossing_number(), edges).expect("crossing indices in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{celtic_grid, parse_dt, parse_pd, weaving_knot, BraidWord};
    use crate::graphs::spanning_tree_count;

    #[test]
    fn trefoil_tait_graphs() {
        let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let g = tait_graph(&d).unwrap();
        let h = tait_graph_dual(&d).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.vertex_count() + h.vertex_count(), 5);
        assert_eq!(spanning_tree_count(&g).unwrap(), 3);
        assert_eq!(spanning_tree_count(&h).unwrap(), 3);
        assert!(g.signs().unwrap().iter().all(|&s| s == 1));
    }

    #[test]
    fn figure_eight_and_torus() {
        let d = parse_dt(&[4, 6, 8, 2]).unwrap();
        assert_eq!(spanning_tree_count(&tait_graph(&d).unwrap()).unwrap(), 5);
        for n in 2..9 {
            let t = Diagram::from_braid(&BraidWord::new(2, vec![1; n]).unwrap()).unwrap();
            let g = tait_graph(&t).unwrap();
            let h = tait_graph_dual(&t).unwrap();
            let banana = if g.vertex_count() == 2 { &g } else { &h };
            assert_eq!(banana.vertex_count(), 2);
            assert_eq!(banana.edge_count(), n);
            assert_eq!(spanning_tree_count(&g).unwrap(), n as u32);
        }
    }

    #[test]
    fn non_alternating_rejected() {
        let d = parse_dt(&[4, 8, -12, 2, -14, -16, -6, -10]).unwrap();
        assert!(matches!(tait_graph(&d), Err(KnotError::Domain(_))));
        let g = checkerboard_graph(&d, true);
        assert!(g.signs().unwrap().contains(&-1));
    }

    #[test]
    fn projection_graphs_are_four_valent() {
        let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let p = projection_graph(&d);
        assert_eq!((p.vertex_count(), p.edge_count()), (3, 6));
        assert!((0..3).all(|v| p.degree(v) == 4));
        for q in 2..6 {
            assert_eq!(projection_graph(&weaving_knot(3, q).unwrap()).vertex_count(), 2 * q);
        }
    }

    /// Backtracking search for an a×b grid subgraph (not necessarily induced).
    fn contains_grid(g: &PlanarMultigraph, a: usize, b: usize) -> bool {
        let n = g.vertex_count();
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in g.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        fn place(k: usize, a: usize, b: usize, adj: &[Vec<bool>], img: &mut Vec<usize>, used: &mut [bool]) -> bool {
            if k == a * b {
                return true;
            }
            let (i, j) = (k % a, k / a);
            for v in 0..adj.len() {
                if used[v] || (i > 0 && !adj[img[k - 1]][v]) || (j > 0 && !adj[img[k - a]][v]) {
                    continue;
                }
                used[v] = true;
                img.push(v);
                if place(k + 1, a, b, adj, img, used) {
                    return true;
                }
                img.pop();
                used[v] = false;
            }
            false
        }
        place(0, a, b, &adj, &mut Vec::new(), &mut vec![false; n])
    }

    #[test]
    fn celtic_projection_contains_grid() {
        for (m, n) in [(2, 2), (3, 3), (3, 4), (4, 4), (5, 4), (5, 5)] {
            let p = projection_graph(&celtic_grid(m, n).unwrap());
            assert!(contains_grid(&p, m - 1, n - 1), "({m},{n})");
        }
    }
}
