//! Rotation numbers of an upright drawing.
//!
//! Every crossing is drawn with both strands pointing up. An arc then turns
//! from "up" to "up" by a whole number `r` of counterclockwise turns. Walking
//! a face with the face on the right, N/S corners turn by −π and E/W corners
//! by 0, so each face gives a linear equation in the rotation numbers.

use std::collections::{BTreeMap, VecDeque};

use crate::diagram::{rotate_dart, Arc, Diagram};

/// Whether corner `c` lies above or below its crossing.
fn is_north_south(d: &Diagram, c: usize) -> bool {
    let slot = c & 3;
    if d.sign(c / 4) > 0 {
        slot % 2 == 1
    } else {
        slot.is_multiple_of(2)
    }
}

/// Rotation numbers with the face to the right of `outer_arc` as the unbounded face.
pub fn rotation_numbers(d: &Diagram, outer_arc: Arc) -> BTreeMap<Arc, i64> {
    let emb = d.embedding();
    let darts = d.arc_darts();
    let tail = darts[&outer_arc].0;
    let outer = (0..emb.partner.len())
        .find(|&c| rotate_dart(c, 1) == tail)
        .map(|c| emb.corner_face[c])
        .expect("tail dart belongs to a corner");

    // face -> (arc, sigma) incidences; arc -> the two faces it separates
    let nf = emb.face_count();
    let mut incidence: Vec<Vec<(Arc, i64)>> = vec![Vec::new(); nf];
    let mut rhs = vec![0i64; nf];
    let mut sides: BTreeMap<Arc, Vec<usize>> = BTreeMap::new();
    for (f, face) in emb.faces.iter().enumerate() {
        let ns = face.iter().filter(|&&c| is_north_south(d, c)).count() as i64;
        debug_assert!(ns % 2 == 0, "face with an odd number of N/S corners");
        rhs[f] = ns / 2 + if f == outer { 1 } else { -1 };
        for &c in face {
            let leave = rotate_dart(c, 1);
            let arc = d.arc_at(leave);
            let sigma = if d.is_entering(leave) { -1 } else { 1 };
            incidence[f].push((arc, sigma));
            sides.entry(arc).or_default().push(f);
        }
    }

    // spanning tree of the dual graph rooted at the outer face
    let mut parent: Vec<Option<(usize, Arc)>> = vec![None; nf];
    let mut seen = vec![false; nf];
    let mut order = Vec::with_capacity(nf);
    let mut queue = VecDeque::from([outer]);
    seen[outer] = true;
    while let Some(f) = queue.pop_front() {
        order.push(f);
        for &(arc, _) in &incidence[f] {
            for &g in &sides[&arc] {
                if !seen[g] {
                    seen[g] = true;
                    parent[g] = Some((f, arc));
                    queue.push_back(g);
                }
            }
        }
    }

    let mut r: BTreeMap<Arc, i64> = sides.keys().map(|&a| (a, 0)).collect();
    for &f in order.iter().rev() {
        let Some((_, tree_arc)) = parent[f] else { continue };
        let mut residual = rhs[f];
        let mut coeff = 0;
        for &(arc, sigma) in &incidence[f] {
            if arc == tree_arc {
                coeff += sigma;
            } else {
                residual -= sigma * r[&arc];
            }
        }
        debug_assert!(coeff.abs() == 1);
        r.insert(tree_arc, residual * coeff);
    }
    debug_assert_eq!(
        incidence[outer].iter().map(|&(a, s)| s * r[&a]).sum::<i64>(),
        rhs[outer],
        "face equations inconsistent"
    );
    r
}
