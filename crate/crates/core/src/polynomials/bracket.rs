//! Kauffman bracket by frontier contraction: crossings are absorbed one at a
//! time and partial states are merged by how they connect the open arc ends.

use std::collections::HashMap;

use super::{LaurentPolynomial, Variable};
use crate::diagram::{Arc, Diagram};
use crate::error::{KnotError, Result};

/// Default crossing cap for diagrams without a braid presentation.
pub const BRACKET_CROSSING_CAP: usize = 40;

/// δ = −A² − A⁻², the value of a closed loop.
pub fn loop_value() -> LaurentPolynomial {
    LaurentPolynomial::from_terms(Variable::A, [(2, -1), (-2, -1)])
}

/// Bracket normalized so the crossingless unknot is 1. Diagrams built from a
/// braid word are exempt from the default crossing cap.
pub fn kauffman_bracket(d: &Diagram) -> Result<LaurentPolynomial> {
    let cap = if d.braid_strands().is_some() { usize::MAX } else { BRACKET_CROSSING_CAP };
    kauffman_bracket_capped(d, cap)
}

pub fn kauffman_bracket_capped(d: &Diagram, cap: usize) -> Result<LaurentPolynomial> {
    let n = d.crossing_number();
    if n > cap {
        return Err(KnotError::Resource(format!(
            "bracket of a {n}-crossing diagram exceeds the {cap}-crossing cap"
        )));
    }
    if n == 0 {
        return Ok(LaurentPolynomial::one(Variable::A));
    }
    let delta = loop_value();
    let mut delta_pow = vec![LaurentPolynomial::one(Variable::A)];
    let mut states: HashMap<Vec<(Arc, Arc)>, LaurentPolynomial> = HashMap::new();
    states.insert(Vec::new(), LaurentPolynomial::one(Variable::A));
    for x in contraction_order(d) {
        let t = d.crossings()[x].arcs;
        let mut next: HashMap<Vec<(Arc, Arc)>, LaurentPolynomial> = HashMap::with_capacity(states.len() * 2);
        for (key, value) in &states {
            for (pairs, a_exp) in [([(0, 1), (2, 3)], 1i64), ([(0, 3), (1, 2)], -1)] {
                let mut m: HashMap<Arc, Arc> = HashMap::with_capacity(2 * key.len() + 4);
                for &(p, q) in key {
                    m.insert(p, q);
                    m.insert(q, p);
                }
                let mut loops = 0usize;
                for (i, j) in pairs {
                    join(&mut m, t[i], t[j], &mut loops);
                }
                while delta_pow.len() <= loops {
                    let last = delta_pow.last().expect("nonempty");
                    delta_pow.push(last * &delta);
                }
                let term = (&delta_pow[loops] * value).scaled(1, a_exp);
                let mut k: Vec<(Arc, Arc)> = m.into_iter().filter(|(p, q)| p < q).collect();
                k.sort_unstable();
                match next.get_mut(&k) {
                    Some(acc) => *acc = &*acc + &term,
                    None => {
                        next.insert(k, term);
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    let total = states.remove(&Vec::new()).unwrap_or_else(|| LaurentPolynomial::zero(Variable::A));
    total.div_exact(&delta)
}

/// Connects arc ends `p` and `q` inside the current crossing.
fn join(m: &mut HashMap<Arc, Arc>, p: Arc, q: Arc, loops: &mut usize) {
    if p == q {
        *loops += 1;
        return;
    }
    if m.get(&p) == Some(&q) {
        m.remove(&p);
        m.remove(&q);
        *loops += 1;
        return;
    }
    let x = m.remove(&p).unwrap_or(p);
    let y = m.remove(&q).unwrap_or(q);
    m.remove(&x);
    m.remove(&y);
    m.insert(x, y);
    m.insert(y, x);
}

/// Greedy order: next take the crossing sharing the most arcs with the frontier.
pub(crate) fn contraction_order(d: &Diagram) -> Vec<usize> {
    let n = d.crossing_number();
    let mut done = vec![false; n];
    let mut seen: HashMap<Arc, usize> = HashMap::new();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&x| !done[x])
            .max_by_key(|&x| {
                let shared = d.crossings()[x].arcs.iter().filter(|a| seen.get(a) == Some(&1)).count();
                (shared, std::cmp::Reverse(x))
            })
            .expect("unprocessed crossing exists");
        done[best] = true;
        for &a in &d.crossings()[best].arcs {
            *seen.entry(a).or_default() += 1;
        }
        order.push(best);
    }
    order
}
