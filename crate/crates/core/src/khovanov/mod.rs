//! Reduced Khovanov homology from the cube of resolutions.
//!
//! State bit `x` = 0 takes the A-smoothing at crossing `x` (slots 0–1, 2–3),
//! bit 1 the B-smoothing (slots 0–3, 1–2). A generator labels every circle
//! v+ or v−; the circle through the lowest arc is pinned to v−, which spans
//! the reduced subcomplex. Gradings are h = |s| − n₋ and
//! q = #v+ − #v− + |s| + n₊ − 2n₋ + 1.

mod linalg;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::diagram::Diagram;
use crate::error::{KnotError, Result};
use crate::polynomials::{LaurentPolynomial, Variable};

pub use linalg::{rank_f2, rank_rational, SparseRow};

/// Default crossing cap for the cube of resolutions.
pub const KH_CROSSING_CAP: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    F2,
}

impl FromStr for Field {
    type Err = KnotError;
    fn from_str(s: &str) -> Result<Field> {
        match s.to_ascii_lowercase().as_str() {
            "q" | "rationals" | "rational" => Ok(Field::Rationals),
            "f2" | "z2" | "two" => Ok(Field::F2),
            _ => Err(KnotError::Syntax(format!("unknown field `{s}` (expected q or f2)"))),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Rationals => "Q",
            Field::F2 => "F2",
        })
    }
}

/// Bigraded sizes of the reduced complex and its homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexSummary {
    pub field: Field,
    /// dim C^{h,q}.
    pub chain: BTreeMap<(i64, i64), usize>,
    /// rank of d: C^{h,q} → C^{h+1,q}.
    pub boundary: BTreeMap<(i64, i64), usize>,
    /// dim H^{h,q}; zero entries omitted.
    pub homology: BTreeMap<(i64, i64), usize>,
}

impl ChainComplexSummary {
    pub fn total_rank(&self) -> usize {
        self.homology.values().sum()
    }

    /// Σ (−1)^h dim C^{h,q} t^{q/2}, exponents in units of t^(1/2).
    pub fn euler_characteristic(&self) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::zero(Variable::HalfT);
        for (&(h, q), &dim) in &self.chain {
            let sign = if h.rem_euclid(2) == 0 { 1 } else { -1 };
            p.add_term(q, rug::Integer::from(sign * dim as i64));
        }
        p
    }

    /// Rows `h,q,rank` with a header line.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("h,q,rank\n");
        for (&(h, q), &r) in &self.homology {
            s.push_str(&format!("{h},{q},{r}\n"));
        }
        s
    }
}

/// Circle structure of one resolution.
struct Resolution {
    /// Circle index of each arc.
    circle: Vec<u8>,
    count: usize,
    marked: usize,
}

fn resolve(tuples: &[[usize; 4]], arcs: usize, state: u32) -> Resolution {
    let mut parent: Vec<usize> = (0..arcs).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (x, t) in tuples.iter().enumerate() {
        let pairs = if state >> x & 1 == 0 { [(t[0], t[1]), (t[2], t[3])] } else { [(t[0], t[3]), (t[1], t[2])] };
        for (u, v) in pairs {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
    }
    let mut id = vec![usize::MAX; arcs];
    let mut circle = vec![0u8; arcs];
    let mut count = 0;
    for a in 0..arcs {
        let r = find(&mut parent, a);
        if id[r] == usize::MAX {
            id[r] = count;
            count += 1;
        }
        circle[a] = id[r] as u8;
    }
    let marked = circle[0] as usize;
    Resolution { circle, count, marked }
}

/// Image of the generator `(state, mask)` under the cube differential.
fn differential(res: &[Resolution], tuples: &[[usize; 4]], s: u32, mask: u32) -> Vec<((u32, u32), i64)> {
    let n = tuples.len();
    let src = &res[s as usize];
    let mut out = Vec::new();
    for x in 0..n {
        if s >> x & 1 == 1 {
            continue;
        }
        let t = s | 1 << x;
        let dst = &res[t as usize];
        let sign = if (s & ((1u32 << x) - 1)).count_ones().is_multiple_of(2) { 1 } else { -1 };
        let [a0, a1, a2, _] = tuples[x];
        // Carry the untouched circles across.
        let mut base = 0u32;
        let touched = [src.circle[a0], src.circle[a2]];
        for c in 0..src.count as u8 {
            if touched.contains(&c) || mask >> c & 1 == 0 {
                continue;
            }
            let rep = src.circle.iter().position(|&k| k == c).expect("circle has an arc");
            base |= 1 << dst.circle[rep];
        }
        if touched[0] != touched[1] {
            let (pa, pb) = (mask >> touched[0] & 1, mask >> touched[1] & 1);
            let merged = dst.circle[a0];
            match pa + pb {
                2 => out.push(((t, base | 1 << merged), sign)),
                1 => out.push(((t, base), sign)),
                _ => {}
            }
        } else {
            let (b, c) = (dst.circle[a0], dst.circle[a1]);
            debug_assert_ne!(b, c);
            if mask >> touched[0] & 1 == 1 {
                for plus in [b, c] {
                    if plus as usize != dst.marked {
                        out.push(((t, base | 1 << plus), sign));
                    }
                }
            } else {
                out.push(((t, base), sign));
            }
        }
    }
    out
}

/// Computes the reduced complex and its homology, refusing diagrams above `cap` crossings.
pub fn reduced_khovanov_capped(d: &Diagram, field: Field, cap: usize) -> Result<ChainComplexSummary> {
    let n = d.crossing_number();
    if n > cap {
        return Err(KnotError::Resource(format!(
            "Khovanov complex of a {n}-crossing diagram exceeds the {cap}-crossing cap"
        )));
    }
    if n > 24 {
        return Err(KnotError::Resource("cube of resolutions limited to 24 crossings".into()));
    }
    let labels = d.arcs();
    let index: HashMap<u32, usize> = labels.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let tuples: Vec<[usize; 4]> = d.crossings().iter().map(|c| c.arcs.map(|a| index[&a])).collect();
    let n_plus = (0..n).filter(|&x| d.sign(x) > 0).count() as i64;
    let n_minus = n as i64 - n_plus;
    let arcs = labels.len().max(1);

    if n == 0 {
        let mut chain = BTreeMap::new();
        chain.insert((0, 0), 1);
        return Ok(ChainComplexSummary { field, homology: chain.clone(), chain, boundary: BTreeMap::new() });
    }

    let states = 1u32 << n;
    let res: Vec<Resolution> = (0..states).into_par_iter().map(|s| resolve(&tuples, arcs, s)).collect();
    let q_of = |s: u32, mask: u32| -> i64 {
        let k = res[s as usize].count as i64;
        2 * mask.count_ones() as i64 - k + s.count_ones() as i64 + n_plus - 2 * n_minus + 1
    };
    // Generators per homological degree and q, with their indices inside each block.
    let mut blocks: Vec<BTreeMap<i64, Vec<(u32, u32)>>> = vec![BTreeMap::new(); n + 1];
    for s in 0..states {
        let r = &res[s as usize];
        let deg = s.count_ones() as usize;
        for mask in 0u32..(1 << r.count) {
            if mask >> r.marked & 1 == 1 {
                continue;
            }
            blocks[deg].entry(q_of(s, mask)).or_default().push((s, mask));
        }
    }
    let lookup: Vec<HashMap<(u32, u32), usize>> = blocks
        .iter()
        .map(|by_q| {
            by_q.values()
                .flat_map(|gens| gens.iter().enumerate().map(|(i, &g)| (g, i)))
                .collect()
        })
        .collect();

    let image = |s: u32, mask: u32| differential(&res, &tuples, s, mask);

    let mut chain = BTreeMap::new();
    let mut jobs = Vec::new();
    for deg in 0..=n {
        let h = deg as i64 - n_minus;
        for (&q, gens) in &blocks[deg] {
            chain.insert((h, q), gens.len());
            if deg < n && blocks[deg + 1].contains_key(&q) {
                jobs.push((deg, q));
            }
        }
    }
    let ranks: Vec<((i64, i64), usize)> = jobs
        .par_iter()
        .map(|&(deg, q)| {
            let rows: Vec<SparseRow> = blocks[deg][&q]
                .iter()
                .map(|&(s, mask)| {
                    let mut row: Vec<(usize, i64)> = image(s, mask)
                        .into_iter()
                        .map(|(g, c)| (lookup[deg + 1][&g], c))
                        .collect();
                    row.sort_unstable();
                    let mut merged: Vec<(usize, i64)> = Vec::with_capacity(row.len());
                    for (col, c) in row {
                        match merged.last_mut() {
                            Some(last) if last.0 == col => last.1 += c,
                            _ => merged.push((col, c)),
                        }
                    }
                    merged.retain(|&(_, c)| c != 0);
                    merged
                })
                .collect();
            let rank = match field {
                Field::F2 => rank_f2(&rows),
                Field::Rationals => rank_rational(&rows),
            };
            ((deg as i64 - n_minus, q), rank)
        })
        .collect();
    let boundary: BTreeMap<(i64, i64), usize> = ranks.into_iter().filter(|&(_, r)| r > 0).collect();
    let mut homology = BTreeMap::new();
    for (&(h, q), &dim) in &chain {
        let out = boundary.get(&(h, q)).copied().unwrap_or(0);
        let inc = boundary.get(&(h - 1, q)).copied().unwrap_or(0);
        let r = dim - out - inc;
        if r > 0 {
            homology.insert((h, q), r);
        }
    }
    Ok(ChainComplexSummary { field, chain, boundary, homology })
}

pub fn reduced_khovanov(d: &Diagram, field: Field) -> Result<ChainComplexSummary> {
    reduced_khovanov_capped(d, field, KH_CROSSING_CAP)
}

/// Total rank of reduced Khovanov homology over `field`.
pub fn reduced_kh_rank(d: &Diagram, field: Field) -> Result<usize> {
    Ok(reduced_khovanov(d, field)?.total_rank())
}

/// 2π ln(rank) / c.
pub fn kh_density(d: &Diagram, field: Field) -> Result<f64> {
    let c = d.crossing_number();
    if c == 0 {
        return Err(KnotError::Domain("Khovanov density needs at least one crossing".into()));
    }
    let rank = reduced_kh_rank(d, field)?;
    Ok(2.0 * std::f64::consts::PI * (rank as f64).ln() / c as f64)
}
