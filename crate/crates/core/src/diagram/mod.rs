//! Link diagrams in planar-diagram (PD) form.
//!
//! A crossing lists its four arc labels counterclockwise, starting at the
//! incoming under-strand. The under-strand therefore runs from position 0 to
//! position 2; the over-strand runs 3 -> 1 at a positive crossing and 1 -> 3
//! at a negative one. Every arc label occurs in exactly two crossing slots.
//!
//! Positions are addressed as darts `4 * crossing + slot`. The corner
//! `4 * crossing + slot` is the region between slot and slot + 1
//! (counterclockwise); faces are traced as cycles of corners.

mod codec;
mod families;

use std::collections::HashMap;

use crate::error::{KnotError, Result};

pub use codec::{parse_braid, parse_dt, parse_dt_str, parse_pd, BraidWord};
pub use families::{celtic_grid, connect_sum, cycle_of_tangles, row_of_tangles, twist_on_two_strands, weaving_knot, Tangle};

/// Arc label.
pub type Arc = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    /// Arc labels counterclockwise from the incoming under-strand.
    pub arcs: [Arc; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    positive: Vec<bool>,
    components: usize,
    braid_strands: Option<usize>,
}

/// Planar embedding data derived from the cyclic order at each crossing.
#[derive(Clone, Debug)]
pub struct Embedding {
    /// The dart at the other end of each dart's arc.
    pub partner: Vec<usize>,
    /// Face containing each corner.
    pub corner_face: Vec<usize>,
    /// Corners of each face, in traversal order (face kept on the right).
    pub faces: Vec<Vec<usize>>,
}

#[inline]
pub(crate) fn dart(crossing: usize, slot: usize) -> usize {
    4 * crossing + (slot & 3)
}

#[inline]
pub(crate) fn rotate_dart(d: usize, by: usize) -> usize {
    (d & !3) | ((d + by) & 3)
}

impl Embedding {
    fn trace(tuples: &[[Arc; 4]], partner: Vec<usize>) -> Embedding {
        let n = 4 * tuples.len();
        let mut corner_face = vec![usize::MAX; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if corner_face[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut face = Vec::new();
            let mut c = start;
            while corner_face[c] == usize::MAX {
                corner_face[c] = id;
                face.push(c);
                c = partner[rotate_dart(c, 1)];
            }
            faces.push(face);
        }
        Embedding { partner, corner_face, faces }
    }

    /// Face containing the corner between `slot` and `slot + 1` at `crossing`.
    pub fn face_at(&self, crossing: usize, slot: usize) -> usize {
        self.corner_face[dart(crossing, slot)]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }
}

/// Partner map for a list of 4-tuples; every label must occur exactly twice.
pub(crate) fn partner_map(tuples: &[[Arc; 4]]) -> Result<Vec<usize>> {
    let mut seen: HashMap<Arc, Vec<usize>> = HashMap::new();
    for (x, t) in tuples.iter().enumerate() {
        for (i, &a) in t.iter().enumerate() {
            if a == 0 {
                return Err(KnotError::Validation("arc labels must be positive".into()));
            }
            seen.entry(a).or_default().push(dart(x, i));
        }
    }
    let mut partner = vec![0; 4 * tuples.len()];
    let mut bad: Vec<Arc> = seen.iter().filter(|(_, v)| v.len() != 2).map(|(&a, _)| a).collect();
    if !bad.is_empty() {
        bad.sort_unstable();
        return Err(KnotError::Validation(format!(
            "arcs {bad:?} do not appear exactly twice"
        )));
    }
    for v in seen.values() {
        partner[v[0]] = v[1];
        partner[v[1]] = v[0];
    }
    Ok(partner)
}

fn is_connected(tuples: &[[Arc; 4]], partner: &[usize]) -> bool {
    let n = tuples.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for i in 0..4 {
            let y = partner[dart(x, i)] / 4;
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}

/// Traverses strands: returns, per component, the darts at which the strand
/// enters a crossing, following the tentative direction that starts by
/// entering at the lowest unvisited dart.
fn strand_cycles(n_crossings: usize, partner: &[usize]) -> Vec<Vec<usize>> {
    let mut visited = vec![false; 4 * n_crossings];
    let mut cycles = Vec::new();
    for start in 0..4 * n_crossings {
        if visited[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut d = start;
        while !visited[d] {
            let exit = rotate_dart(d, 2);
            visited[d] = true;
            visited[exit] = true;
            cycle.push(d);
            d = partner[exit];
        }
        cycles.push(cycle);
    }
    cycles
}

impl Diagram {
    /// The crossingless unknot.
    pub fn unknot() -> Diagram {
        Diagram { crossings: Vec::new(), positive: Vec::new(), components: 1, braid_strands: None }
    }

    /// Builds a diagram from PD tuples whose first slot is the incoming
    /// under-strand. Orientations of the over-strands are inferred.
    pub fn from_pd(tuples: Vec<[Arc; 4]>) -> Result<Diagram> {
        Self::build(tuples, true)
    }

    /// Builds a diagram from tuples listed counterclockwise from either
    /// under-strand end; each component is oriented by traversal and the
    /// tuples are rotated into PD convention.
    pub fn from_unoriented(tuples: Vec<[Arc; 4]>) -> Result<Diagram> {
        Self::build(tuples, false)
    }

    fn build(mut tuples: Vec<[Arc; 4]>, fixed: bool) -> Result<Diagram> {
        if tuples.is_empty() {
            return Err(KnotError::Validation("diagram has no crossings; use Diagram::unknot".into()));
        }
        let n = tuples.len();
        let partner = partner_map(&tuples)?;
        if !is_connected(&tuples, &partner) {
            return Err(KnotError::Validation("diagram is split (projection graph disconnected)".into()));
        }
        let cycles = strand_cycles(n, &partner);
        let mut entering = vec![false; 4 * n];
        for cycle in &cycles {
            let mut agree = 0usize;
            let mut disagree = 0usize;
            for &d in cycle {
                match d & 3 {
                    0 => agree += 1,
                    2 => disagree += 1,
                    _ => {}
                }
            }
            let flip = if fixed {
                if agree > 0 && disagree > 0 {
                    return Err(KnotError::Validation(
                        "under-strand directions are inconsistent along a component".into(),
                    ));
                }
                disagree > 0
            } else {
                false
            };
            for &d in cycle {
                let e = if flip { rotate_dart(d, 2) } else { d };
                entering[e] = true;
            }
        }
        if !fixed {
            for (x, t) in tuples.iter_mut().enumerate() {
                if !entering[dart(x, 0)] {
                    t.rotate_left(2);
                    entering.swap(dart(x, 0), dart(x, 2));
                    entering.swap(dart(x, 1), dart(x, 3));
                }
            }
        }
        let positive = (0..n).map(|x| entering[dart(x, 3)]).collect();
        let partner = partner_map(&tuples)?;
        let emb = Embedding::trace(&tuples, partner);
        if emb.face_count() != n + 2 {
            return Err(KnotError::Validation(format!(
                "diagram is not planar ({} faces, expected {})",
                emb.face_count(),
                n + 2
            )));
        }
        Ok(Diagram {
            crossings: tuples.into_iter().map(|arcs| Crossing { arcs }).collect(),
            positive,
            components: cycles.len(),
            braid_strands: None,
        })
    }

    pub(crate) fn with_braid_strands(mut self, strands: usize) -> Diagram {
        self.braid_strands = Some(strands);
        self
    }

    /// Number of strands when the diagram was built as a braid closure.
    pub fn braid_strands(&self) -> Option<usize> {
        self.braid_strands
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub(crate) fn tuples(&self) -> Vec<[Arc; 4]> {
        self.crossings.iter().map(|c| c.arcs).collect()
    }

    pub fn crossing_number(&self) -> usize {
        self.crossings.len()
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn is_knot(&self) -> bool {
        self.components == 1
    }

    /// Crossing sign: +1 when the over-strand runs from slot 3 to slot 1.
    pub fn sign(&self, crossing: usize) -> i32 {
        if self.positive[crossing] {
            1
        } else {
            -1
        }
    }

    pub fn writhe(&self) -> i64 {
        self.positive.iter().map(|&p| if p { 1 } else { -1 }).sum()
    }

    /// Whether the strand enters its crossing at this dart.
    pub fn is_entering(&self, d: usize) -> bool {
        match d & 3 {
            0 => true,
            2 => false,
            3 => self.positive[d / 4],
            _ => !self.positive[d / 4],
        }
    }

    pub fn arc_at(&self, d: usize) -> Arc {
        self.crossings[d / 4].arcs[d & 3]
    }

    /// All arc labels in increasing order.
    pub fn arcs(&self) -> Vec<Arc> {
        let mut v: Vec<Arc> = self.crossings.iter().flat_map(|c| c.arcs).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn embedding(&self) -> Embedding {
        let tuples = self.tuples();
        let partner = partner_map(&tuples).expect("validated at construction");
        Embedding::trace(&tuples, partner)
    }

    /// For each arc: (tail dart, head dart).
    pub fn arc_darts(&self) -> HashMap<Arc, (usize, usize)> {
        let mut out: HashMap<Arc, (usize, usize)> = HashMap::new();
        for d in 0..4 * self.crossings.len() {
            let e = out.entry(self.arc_at(d)).or_insert((usize::MAX, usize::MAX));
            if self.is_entering(d) {
                e.1 = d;
            } else {
                e.0 = d;
            }
        }
        out
    }

    /// Over- and under-passes alternate along every component.
    pub fn is_alternating(&self) -> bool {
        let emb = self.embedding();
        (0..4 * self.crossings.len()).all(|d| (d & 1) != (emb.partner[d] & 1))
    }

    /// No nugatory crossing: no region touches a crossing in two opposite corners.
    pub fn is_reduced(&self) -> bool {
        let emb = self.embedding();
        (0..self.crossings.len()).all(|x| {
            emb.face_at(x, 0) != emb.face_at(x, 2) && emb.face_at(x, 1) != emb.face_at(x, 3)
        })
    }

    /// Indices of nugatory crossings.
    pub fn nugatory_crossings(&self) -> Vec<usize> {
        let emb = self.embedding();
        (0..self.crossings.len())
            .filter(|&x| {
                emb.face_at(x, 0) == emb.face_at(x, 2) || emb.face_at(x, 1) == emb.face_at(x, 3)
            })
            .collect()
    }

    /// Swaps over and under at each listed crossing; orientation is kept.
    pub fn change_crossings(&self, subset: &[usize]) -> Result<Diagram> {
        let mut out = self.clone();
        for &x in subset {
            if x >= self.crossings.len() {
                return Err(KnotError::Domain(format!("crossing index {x} out of range")));
            }
        }
        let mut flip = vec![false; self.crossings.len()];
        for &x in subset {
            flip[x] = true;
        }
        for (x, f) in flip.into_iter().enumerate() {
            if !f {
                continue;
            }
            let t = self.crossings[x].arcs;
            out.crossings[x].arcs = if self.positive[x] {
                [t[3], t[0], t[1], t[2]]
            } else {
                [t[1], t[2], t[3], t[0]]
            };
            out.positive[x] = !self.positive[x];
        }
        Ok(out)
    }

    pub fn mirror(&self) -> Diagram {
        let all: Vec<usize> = (0..self.crossings.len()).collect();
        self.change_crossings(&all).expect("indices in range")
    }

    /// Relabels arcs 1..=2c in traversal order, component by component.
    pub fn relabeled(&self) -> Diagram {
        if self.crossings.is_empty() {
            return self.clone();
        }
        let emb = self.embedding();
        let n = self.crossings.len();
        let mut label: HashMap<Arc, Arc> = HashMap::new();
        let mut next = 1;
        for start in 0..4 * n {
            if !self.is_entering(start) || label.contains_key(&self.arc_at(start)) {
                continue;
            }
            let mut d = start;
            loop {
                let a = self.arc_at(d);
                if label.contains_key(&a) {
                    break;
                }
                label.insert(a, next);
                next += 1;
                d = emb.partner[rotate_dart(d, 2)];
            }
        }
        let mut out = self.clone();
        for c in &mut out.crossings {
            for a in &mut c.arcs {
                *a = label[a];
            }
        }
        out
    }

    /// PD text: `X(a,b,c,d)` terms separated by single spaces.
    pub fn to_pd(&self) -> String {
        self.crossings
            .iter()
            .map(|c| format!("X({},{},{},{})", c.arcs[0], c.arcs[1], c.arcs[2], c.arcs[3]))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Dowker–Thistlethwaite code of a knot diagram, starting at the lowest
    /// arc label. An entry is positive when the odd visit is the under-pass.
    pub fn to_dt(&self) -> Result<Vec<i64>> {
        if !self.is_knot() {
            return Err(KnotError::Domain("DT codes describe knots only".into()));
        }
        let n = self.crossings.len();
        if n == 0 {
            return Ok(Vec::new());
        }
        let emb = self.embedding();
        let lowest = *self.arcs().first().expect("nonempty");
        let arc_darts = self.arc_darts();
        let mut d = arc_darts[&lowest].1;
        let mut visits: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
        for pos in 1..=2 * n {
            visits[d / 4].push((pos, d & 1 == 0));
            d = emb.partner[rotate_dart(d, 2)];
        }
        let mut code = vec![0i64; n];
        for v in &visits {
            let (odd, even) = if v[0].0 % 2 == 1 { (v[0], v[1]) } else { (v[1], v[0]) };
            if odd.0 % 2 != 1 || even.0 % 2 != 0 {
                return Err(KnotError::Validation("crossing visited at two positions of equal parity".into()));
            }
            let sign = if odd.1 { 1 } else { -1 };
            code[(odd.0 - 1) / 2] = sign * even.0 as i64;
        }
        Ok(code)
    }
}

impl std::fmt::Display for Diagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_pd())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> Diagram {
        parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap()
    }

    #[test]
    fn trefoil_structure() {
        let d = trefoil();
        assert_eq!(d.crossing_number(), 3);
        assert_eq!(d.components(), 1);
        assert_eq!(d.writhe(), -3);
        assert!(d.is_alternating());
        assert!(d.is_reduced());
        assert_eq!(d.embedding().face_count(), 5);
    }

    #[test]
    fn kink_is_legal_but_nugatory() {
        let d = parse_pd("X(1,1,2,2)").unwrap();
        assert_eq!(d.crossing_number(), 1);
        assert_eq!(d.components(), 1);
        assert_eq!(d.writhe(), 1);
        assert!(!d.is_reduced());
        assert_eq!(d.nugatory_crossings(), vec![0]);
    }

    #[test]
    fn unpaired_arcs_rejected() {
        let err = parse_pd("X(1,4,2,5) X(3,6,4,1)").unwrap_err();
        assert!(matches!(err, KnotError::Validation(_)), "{err:?}");
    }

    #[test]
    fn split_diagram_rejected() {
        let err = parse_pd("X(1,1,2,2) X(3,3,4,4)").unwrap_err();
        assert!(matches!(err, KnotError::Validation(m) if m.contains("split")));
    }

    #[test]
    fn nonplanar_code_rejected() {
        // Trefoil with one crossing reflected: a virtual diagram.
        let err = parse_pd("X(1,5,2,4) X(3,6,4,1) X(5,2,6,3)").unwrap_err();
        assert!(matches!(err, KnotError::Validation(_)), "{err:?}");
    }

    #[test]
    fn mirror_is_involution_and_flips_writhe() {
        let d = trefoil();
        let m = d.mirror();
        assert_eq!(m.writhe(), 3);
        assert_ne!(m, d);
        assert_eq!(m.mirror(), d);
        assert_eq!(d.change_crossings(&[]).unwrap(), d);
    }

    #[test]
    fn relabel_keeps_structure() {
        let d = parse_pd("X(10,40,20,50) X(30,60,40,10) X(50,20,60,30)").unwrap();
        let r = d.relabeled();
        assert_eq!(r.arcs(), (1..=6).collect::<Vec<_>>());
        assert_eq!(r.writhe(), d.writhe());
        assert!(r.is_alternating());
    }

    #[test]
    fn dt_of_trefoil() {
        let d = parse_dt(&[4, 6, 2]).unwrap();
        assert_eq!(d.to_dt().unwrap(), vec![4, 6, 2]);
        assert!(d.is_alternating());
    }
}
