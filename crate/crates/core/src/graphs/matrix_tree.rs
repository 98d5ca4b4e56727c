use rug::Integer;

use super::PlanarMultigraph;
use crate::error::{KnotError, Result};

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn bareiss_determinant(mut m: Vec<Vec<Integer>>) -> Integer {
    let n = m.len();
    if n == 0 {
        return Integer::from(1);
    }
    let mut sign = 1;
    let mut prev = Integer::from(1);
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Integer::new(),
            }
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            for j in k + 1..n {
                let v = Integer::from(&row[j] * &pivot_row[k]) - Integer::from(&row[k] * &pivot_row[j]);
                row[j] = v.div_exact(&prev);
            }
            row[k] = Integer::new();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Determinant of the Laplacian with the last vertex deleted. With
/// `signed`, edge weights are the graph's ±1 signs. Loops are ignored.
pub(crate) fn laplacian_cofactor(g: &PlanarMultigraph, signed: bool) -> Integer {
    let n = g.vertex_count();
    if n <= 1 {
        return Integer::from(1);
    }
    let mut lap = vec![vec![0i64; n]; n];
    for (k, &(u, v)) in g.edges().iter().enumerate() {
        if u == v {
            continue;
        }
        let w = match (signed, g.signs()) {
            (true, Some(s)) => s[k] as i64,
            _ => 1,
        };
        lap[u][u] += w;
        lap[v][v] += w;
        lap[u][v] -= w;
        lap[v][u] -= w;
    }
    let m = lap
        .into_iter()
        .take(n - 1)
        .map(|row| row.into_iter().take(n - 1).map(Integer::from).collect())
        .collect();
    bareiss_determinant(m)
}

/// Cofactor of the Laplacian weighted by the edge signs (the Goeritz form).
pub fn signed_laplacian_cofactor(g: &PlanarMultigraph) -> Integer {
    laplacian_cofactor(g, true)
}

/// Number of spanning trees, via the matrix-tree theorem.
pub fn spanning_tree_count(g: &PlanarMultigraph) -> Result<Integer> {
    if !g.is_connected() {
        return Err(KnotError::Domain("spanning_tree_count needs a connected graph".into()));
    }
    Ok(laplacian_cofactor(g, false))
}
