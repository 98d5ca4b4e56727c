//! Diagram families: weaving knots, Celtic grids, cycles of tangles,
//! connect sums and twist insertion.

use std::collections::HashMap;

use crate::error::{KnotError, Result};

use super::{rotate_dart, Arc, BraidWord, Diagram};

/// Closure of (σ1 σ2⁻¹ σ3 σ4⁻¹ …)^q on p strands.
pub fn weaving_knot(p: usize, q: usize) -> Result<Diagram> {
    if p < 3 || q < 2 {
        return Err(KnotError::Domain(format!("weaving_knot needs p >= 3 and q >= 2, got ({p}, {q})")));
    }
    let period: Vec<i32> = (1..p as i32).map(|i| if i % 2 == 1 { i } else { -i }).collect();
    let letters = period.iter().copied().cycle().take(period.len() * q).collect();
    Diagram::from_braid(&BraidWord::new(p, letters)?)
}

/// Removes Reidemeister-I loops (a label filling two adjacent slots) from
/// unoriented tuples until none remain.
fn strip_loops(mut tuples: Vec<[Arc; 4]>) -> Vec<[Arc; 4]> {
    'outer: loop {
        for x in 0..tuples.len() {
            let t = tuples[x];
            for i in 0..4 {
                if t[i] == t[(i + 1) % 4] {
                    let keep = t[(i + 2) % 4];
                    let drop = t[(i + 3) % 4];
                    tuples.remove(x);
                    for u in &mut tuples {
                        for a in u.iter_mut() {
                            if *a == drop {
                                *a = keep;
                            }
                        }
                    }
                    continue 'outer;
                }
            }
        }
        return tuples;
    }
}

/// Alternating diagram on an m×n array of crossings: straight row and
/// column strands with checkerboard over/under, whose ends are capped off
/// in adjacent pairs around the boundary. Caps that would turn a corner at a
/// single crossing form kinks, which are removed.
pub fn celtic_grid(m: usize, n: usize) -> Result<Diagram> {
    if m < 2 || n < 2 {
        return Err(KnotError::Domain(format!("celtic_grid needs m, n >= 2, got ({m}, {n})")));
    }
    const E: usize = 0;
    const N: usize = 1;
    const W: usize = 2;
    const S: usize = 3;
    let id = |i: usize, j: usize| j * m + i;
    let mut ports = vec![[0 as Arc; 4]; m * n];
    let mut next: Arc = 1;
    for j in 0..n {
        for i in 0..m {
            if i + 1 < m {
                ports[id(i, j)][E] = next;
                ports[id(i + 1, j)][W] = next;
                next += 1;
            }
            if j + 1 < n {
                ports[id(i, j)][N] = next;
                ports[id(i, j + 1)][S] = next;
                next += 1;
            }
        }
    }
    let mut ends = Vec::with_capacity(2 * (m + n));
    ends.extend((0..m).map(|i| (id(i, n - 1), N)));
    ends.extend((0..n).rev().map(|j| (id(m - 1, j), E)));
    ends.extend((0..m).rev().map(|i| (id(i, 0), S)));
    ends.extend((0..n).map(|j| (id(0, j), W)));
    for pair in ends.chunks(2) {
        for &(x, port) in pair {
            ports[x][port] = next;
        }
        next += 1;
    }
    let tuples = (0..n)
        .flat_map(|j| (0..m).map(move |i| (i, j)))
        .map(|(i, j)| {
            let p = ports[id(i, j)];
            if (i + j) % 2 == 0 {
                [p[S], p[E], p[N], p[W]]
            } else {
                [p[W], p[S], p[E], p[N]]
            }
        })
        .collect();
    Ok(Diagram::from_unoriented(strip_loops(tuples))?.relabeled())
}

/// A 2-string tangle: crossings as counterclockwise tuples starting at an
/// under-strand end, and four boundary arcs NW, NE, SW, SE.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tangle {
    crossings: Vec<[Arc; 4]>,
    ends: [Arc; 4],
}

impl Tangle {
    /// `ends` is `[NW, NE, SW, SE]`.
    pub fn new(crossings: Vec<[Arc; 4]>, ends: [Arc; 4]) -> Result<Tangle> {
        if crossings.is_empty() {
            return Err(KnotError::Validation("tangle has no crossings".into()));
        }
        let mut count: HashMap<Arc, usize> = HashMap::new();
        for a in crossings.iter().flatten() {
            if *a == 0 {
                return Err(KnotError::Validation("arc labels must be positive".into()));
            }
            *count.entry(*a).or_default() += 1;
        }
        for (k, e) in ends.iter().enumerate() {
            if ends[..k].contains(e) || count.get(e) != Some(&1) {
                return Err(KnotError::Validation(format!("tangle end {e} must be a distinct, unpaired arc")));
            }
        }
        if count.iter().any(|(a, &c)| c != 2 && !ends.contains(a)) {
            return Err(KnotError::Validation("internal tangle arcs must appear exactly twice".into()));
        }
        Ok(Tangle { crossings, ends })
    }

    /// One crossing with NE–SW over.
    pub fn single_crossing() -> Tangle {
        Tangle { crossings: vec![[1, 3, 4, 2]], ends: [1, 2, 3, 4] }
    }

    /// k crossings stacked vertically (rational tangle 1/k).
    pub fn vertical_twist(k: usize) -> Result<Tangle> {
        if k == 0 {
            return Err(KnotError::Domain("twist tangle needs at least one crossing".into()));
        }
        let crossings = (0..k as Arc)
            .map(|t| [2 * t + 1, 2 * t + 3, 2 * t + 4, 2 * t + 2])
            .collect();
        let k = k as Arc;
        Tangle::new(crossings, [1, 2, 2 * k + 1, 2 * k + 2])
    }

    /// k crossings side by side (integer tangle k).
    pub fn horizontal_twist(k: usize) -> Result<Tangle> {
        if k == 0 {
            return Err(KnotError::Domain("twist tangle needs at least one crossing".into()));
        }
        let crossings = (0..k as Arc)
            .map(|t| [2 * t + 1, 2 * t + 2, 2 * t + 4, 2 * t + 3])
            .collect();
        let k = k as Arc;
        Tangle::new(crossings, [1, 2 * k + 1, 2, 2 * k + 2])
    }

    pub fn crossing_number(&self) -> usize {
        self.crossings.len()
    }

    /// Ends as `[NW, NE, SW, SE]`.
    pub fn ends(&self) -> [Arc; 4] {
        self.ends
    }

    /// Joins NE to NW and SE to SW.
    pub fn closure(&self) -> Result<Diagram> {
        cycle_of_tangles(self, 1)
    }

    fn max_label(&self) -> Arc {
        self.crossings.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Crossings with every label mapped through `f`.
    fn mapped(&self, f: impl Fn(Arc) -> Arc) -> Vec<[Arc; 4]> {
        self.crossings.iter().map(|t| t.map(&f)).collect()
    }
}

/// n copies of `t` in a ring, NE and SE of each copy joined to NW and SW of the next.
pub fn cycle_of_tangles(t: &Tangle, n: usize) -> Result<Diagram> {
    if n == 0 {
        return Err(KnotError::Domain("cycle_of_tangles needs n >= 1".into()));
    }
    let m = t.max_label();
    let [nw, ne, sw, se] = t.ends;
    let mut tuples = Vec::with_capacity(n * t.crossing_number());
    for k in 0..n {
        let off = k as Arc * m;
        let prev = ((k + n - 1) % n) as Arc * m;
        tuples.extend(t.mapped(|a| {
            if a == nw {
                ne + prev
            } else if a == sw {
                se + prev
            } else {
                a + off
            }
        }));
    }
    Ok(Diagram::from_unoriented(tuples)?.relabeled())
}

/// n copies of `t` in a row, NE and SE of each copy joined to NW and SW of
/// the next; NW is joined to SW on the first copy and NE to SE on the last.
pub fn row_of_tangles(t: &Tangle, n: usize) -> Result<Diagram> {
    if n == 0 {
        return Err(KnotError::Domain("row_of_tangles needs n >= 1".into()));
    }
    let m = t.max_label();
    let [nw, ne, sw, se] = t.ends;
    let mut tuples = Vec::with_capacity(n * t.crossing_number());
    for k in 0..n {
        let off = k as Arc * m;
        let prev = off.saturating_sub(m);
        let last = k + 1 == n;
        tuples.extend(t.mapped(|a| {
            if a == nw && k > 0 {
                ne + prev
            } else if a == sw {
                if k > 0 {
                    se + prev
                } else {
                    nw + off
                }
            } else if a == se && last {
                ne + off
            } else {
                a + off
            }
        }));
    }
    Ok(Diagram::from_unoriented(tuples)?.relabeled())
}

/// Connected sum along the lowest-labeled arc of each diagram.
pub fn connect_sum(d1: &Diagram, d2: &Diagram) -> Result<Diagram> {
    if d1.crossing_number() == 0 {
        return Ok(d2.clone());
    }
    if d2.crossing_number() == 0 {
        return Ok(d1.clone());
    }
    let off = d1.arcs().last().copied().unwrap_or(0);
    let mut tuples = d1.tuples();
    tuples.extend(d2.tuples().into_iter().map(|t| t.map(|a| a + off)));
    let e1 = d1.arcs()[0];
    let e2 = d2.arcs()[0];
    let h1 = d1.arc_darts()[&e1].1;
    let h2 = d2.arc_darts()[&e2].1 + 4 * d1.crossing_number();
    tuples[h1 / 4][h1 & 3] = e2 + off;
    tuples[h2 / 4][h2 & 3] = e1;
    Ok(Diagram::from_pd(tuples)?.relabeled())
}

/// Inserts a k-crossing twist between arcs `site.0` and `site.1`, which must
/// border a common region. The twist keeps an alternating diagram alternating.
pub fn twist_on_two_strands(d: &Diagram, site: (Arc, Arc), k: usize) -> Result<Diagram> {
    if k == 0 {
        return Ok(d.clone());
    }
    let (e1, e2) = site;
    if e1 == e2 {
        return Err(KnotError::Domain("twist site needs two distinct arcs".into()));
    }
    let emb = d.embedding();
    let mut found = None;
    for face in &emb.faces {
        let mut s1 = None;
        let mut s2 = None;
        for &c in face {
            let out = rotate_dart(c, 1);
            let a = d.arc_at(out);
            if a == e1 && s1.is_none() {
                s1 = Some(out);
            } else if a == e2 && s2.is_none() {
                s2 = Some(out);
            }
        }
        if let (Some(p1), Some(p2)) = (s1, s2) {
            found = Some((p1, p2));
            break;
        }
    }
    let (p1, p2) = found.ok_or_else(|| {
        KnotError::Domain(format!("arcs {e1} and {e2} do not border a common region"))
    })?;
    let (q1, q2) = (emb.partner[p1], emb.partner[p2]);
    let base = d.arcs().last().copied().unwrap_or(0) + 1;
    let (l_nw, l_ne, l_sw, l_se) = (base, base + 1, base + 2, base + 3);
    let mut tuples = d.tuples();
    for (dart, label) in [(p1, l_nw), (q1, l_ne), (p2, l_se), (q2, l_sw)] {
        tuples[dart / 4][dart & 3] = label;
    }
    let twist = Tangle::horizontal_twist(k)?;
    let [nw, ne, sw, se] = twist.ends;
    let inner = twist.mapped(|a| match a {
        a if a == nw => l_nw,
        a if a == ne => l_ne,
        a if a == sw => l_sw,
        a if a == se => l_se,
        a => a + base + 4,
    });
    let want_alternating = d.is_alternating();
    let mut first = None;
    for mirrored in [false, true] {
        let mut all = tuples.clone();
        all.extend(inner.iter().map(|t| {
            let mut t = *t;
            if mirrored {
                t.rotate_left(1);
            }
            t
        }));
        let out = Diagram::from_unoriented(all)?.relabeled();
        if !want_alternating || out.is_alternating() {
            return Ok(out);
        }
        first.get_or_insert(out);
    }
    Ok(first.expect("two candidates built"))
}
