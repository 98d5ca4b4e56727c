//! Kashaev invariant ⟨K⟩_N: the N-colored Jones polynomial at q = e^{2πi/N},
//! normalized by the unknot, computed as a state sum over a long-knot
//! presentation.

mod rmatrix;
mod upright;

use std::collections::{BTreeMap, HashMap};

use rug::{Complex, Float};

use crate::diagram::{parse_pd, Arc, Diagram};
use crate::error::{KnotError, Result};
use crate::polynomials::contraction_order;

pub use rmatrix::{root_of_unity, Braiding};
pub use upright::rotation_numbers;

use rmatrix::{lambda, Powers};

pub const KASHAEV_N_CAP: usize = 16;
/// Largest number of simultaneous partial colorings kept during contraction.
pub const KASHAEV_STATE_CAP: usize = 1 << 22;
pub const DEFAULT_PRECISION: u32 = 128;
const MAX_PRECISION: u32 = 4096;

#[derive(Clone, Debug)]
pub struct KashaevValue {
    pub n: usize,
    pub crossings: usize,
    pub value: Complex,
    pub abs: Float,
    /// A posteriori bound on the absolute rounding error of `value`.
    pub error_bound: f64,
    pub precision: u32,
}

impl KashaevValue {
    pub fn density(&self) -> Result<Float> {
        quantum_density(self)
    }
}

/// (2π / (N·c)) · ln|⟨K⟩_N|.
pub fn quantum_density(v: &KashaevValue) -> Result<Float> {
    if v.crossings == 0 {
        return Err(KnotError::Domain("quantum density of a crossingless diagram".into()));
    }
    if v.abs.is_zero() || v.abs.to_f64() <= v.error_bound {
        return Err(KnotError::Domain(format!("⟨K⟩_{} vanishes, density undefined", v.n)));
    }
    let prec = v.abs.prec();
    let two_pi = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;
    Ok(two_pi * v.abs.clone().ln() / (v.n * v.crossings) as u64)
}

/// Σ_{j=0}^{N−1} Π_{k=1}^{j} 4 sin²(πk/N).
pub fn figure_eight_kashaev(n: usize, precision: u32) -> Float {
    let pi = Float::with_val(precision, rug::float::Constant::Pi);
    let mut sum = Float::with_val(precision, 0);
    let mut term = Float::with_val(precision, 1);
    for k in 0..n {
        if k > 0 {
            let s = Float::with_val(precision, &pi * k as u64) / n as u64;
            term *= s.sin().square() * 4u32;
        }
        sum += &term;
    }
    sum
}

/// ⟨K⟩_N at `precision` bits; on an inconclusive error bound the precision is
/// doubled, up to 4096 bits, before a `Precision` error is returned.
pub fn kashaev_invariant(d: &Diagram, n: usize, precision: u32) -> Result<KashaevValue> {
    if n < 2 {
        return Err(KnotError::Domain(format!("N = {n}; need N ≥ 2")));
    }
    if n > KASHAEV_N_CAP {
        return Err(KnotError::Resource(format!("N = {n} exceeds the cap {KASHAEV_N_CAP}")));
    }
    if !d.is_knot() {
        return Err(KnotError::Domain("the Kashaev invariant needs a knot".into()));
    }
    let mut prec = precision.max(32);
    loop {
        let v = root_of_unity(n, prec);
        match long_knot_scalar(d, n, &v) {
            Err(KnotError::Precision(_)) if prec < MAX_PRECISION => prec *= 2,
            other => return other,
        }
    }
}

/// The normalized N-colored Jones invariant at an arbitrary unit `v` (q = v²).
pub fn colored_jones_at(d: &Diagram, n: usize, v: &Complex) -> Result<KashaevValue> {
    if !d.is_knot() {
        return Err(KnotError::Domain("the colored Jones state sum needs a knot".into()));
    }
    long_knot_scalar(d, n, v)
}

struct Engine {
    n: usize,
    pw: Powers,
    positive: Braiding,
    negative: Braiding,
    by_input: [HashMap<(u8, u8), Vec<usize>>; 2],
    by_output: [HashMap<(u8, u8), Vec<usize>>; 2],
}

impl Engine {
    fn new(n: usize, v: &Complex) -> Engine {
        let positive = Braiding::new(n, v, false);
        let negative = Braiding::new(n, v, true);
        let index = |b: &Braiding, out: bool| {
            let mut m: HashMap<(u8, u8), Vec<usize>> = HashMap::new();
            for (k, e) in b.entries.iter().enumerate() {
                let key = if out { (e.out_l, e.out_r) } else { (e.in_l, e.in_r) };
                m.entry(key).or_default().push(k);
            }
            m
        };
        Engine {
            n,
            pw: Powers::new(v),
            by_input: [index(&positive, false), index(&negative, false)],
            by_output: [index(&positive, true), index(&negative, true)],
            positive,
            negative,
        }
    }

    /// Scalar of the (1,1)-tangle obtained by cutting `cut`, with colour `a` on the open ends,
    /// and the total absolute mass of the state sum.
    fn tangle_scalar(&self, d: &Diagram, cut: Arc, a: u8) -> Result<(Complex, f64)> {
        let prec = self.pw.prec();
        let mut rot = rotation_numbers(d, cut);
        // opening the cut arc into a long knot removes one counterclockwise turn
        *rot.get_mut(&cut).expect("cut arc exists") -= 1;
        // each counterclockwise turn of an arc coloured k contributes v^{−λ(k)}
        let edge_factor = |arc: Arc, k: u8| self.pw.half(-2 * lambda(self.n, k as usize) * rot[&arc]);

        let mut remaining: BTreeMap<Arc, u8> = d.arcs().into_iter().map(|a| (a, 2)).collect();
        let mut states: BTreeMap<Vec<(Arc, u8)>, (Complex, f64)> = BTreeMap::new();
        states.insert(Vec::new(), (Complex::with_val(prec, 1), 1.0));
        for x in contraction_order(d) {
            let t = d.crossings()[x].arcs;
            let pos = d.sign(x) > 0;
            // ports in the order in_l, in_r, out_l, out_r
            let ports = if pos { [t[3], t[0], t[2], t[1]] } else { [t[0], t[1], t[3], t[2]] };
            let side = if pos { 0 } else { 1 };
            let braid = if pos { &self.positive } else { &self.negative };
            for &p in &ports {
                *remaining.get_mut(&p).expect("arc exists") -= 1;
            }
            let mut next: BTreeMap<Vec<(Arc, u8)>, (Complex, f64)> = BTreeMap::new();
            for (key, (value, mass)) in &states {
                let lookup = |arc: Arc| -> Option<u8> {
                    if arc == cut {
                        return Some(a);
                    }
                    key.binary_search_by_key(&arc, |e| e.0).ok().map(|i| key[i].1)
                };
                let known: Vec<Option<u8>> = ports.iter().map(|&p| lookup(p)).collect();
                let candidates: Box<dyn Iterator<Item = usize>> = match (known[0], known[1], known[2], known[3]) {
                    (Some(i), Some(j), _, _) => {
                        Box::new(self.by_input[side].get(&(i, j)).into_iter().flatten().copied())
                    }
                    (_, _, Some(k), Some(l)) => {
                        Box::new(self.by_output[side].get(&(k, l)).into_iter().flatten().copied())
                    }
                    _ => Box::new(0..braid.entries.len()),
                };
                'entry: for idx in candidates {
                    let e = &braid.entries[idx];
                    let colors = [e.in_l, e.in_r, e.out_l, e.out_r];
                    let mut fresh: Vec<(Arc, u8)> = Vec::new();
                    for (slot, &p) in ports.iter().enumerate() {
                        let c = colors[slot];
                        if let Some(k) = known[slot] {
                            if k != c {
                                continue 'entry;
                            }
                        } else if let Some(&(_, k)) = fresh.iter().find(|f| f.0 == p) {
                            if k != c {
                                continue 'entry;
                            }
                        } else {
                            fresh.push((p, c));
                        }
                    }
                    let mut w = Complex::with_val(prec, value * &e.value);
                    let m = mass * e.value.clone().abs().real().to_f64();
                    for &(p, c) in &fresh {
                        w *= edge_factor(p, c);
                    }
                    let mut new_key: Vec<(Arc, u8)> =
                        key.iter().copied().filter(|&(arc, _)| remaining[&arc] > 0).collect();
                    new_key.extend(fresh.iter().copied().filter(|&(arc, _)| remaining[&arc] > 0));
                    new_key.sort_unstable();
                    let slot = next
                        .entry(new_key)
                        .or_insert_with(|| (Complex::with_val(prec, 0), 0.0));
                    slot.0 += w;
                    slot.1 += m;
                }
            }
            if next.len() > KASHAEV_STATE_CAP {
                return Err(KnotError::Resource(format!(
                    "state sum frontier exceeds {KASHAEV_STATE_CAP} colorings"
                )));
            }
            states = next;
        }
        let cut_factor = edge_factor(cut, a);
        let (value, mass) = states
            .remove(&Vec::new())
            .unwrap_or_else(|| (Complex::with_val(prec, 0), 0.0));
        Ok((value * cut_factor, mass))
    }
}

impl Powers {
    fn prec(&self) -> (u32, u32) {
        self.half(0).prec()
    }
}

fn positive_kink() -> Diagram {
    parse_pd("X(1,1,2,2)").expect("valid kink")
}

fn long_knot_scalar(d: &Diagram, n: usize, v: &Complex) -> Result<KashaevValue> {
    let prec = v.prec().0;
    let c = d.crossing_number();
    if c == 0 {
        let one = Complex::with_val(prec, 1);
        return Ok(KashaevValue {
            n,
            crossings: 0,
            abs: Float::with_val(prec, 1),
            value: one,
            error_bound: 0.0,
            precision: prec,
        });
    }
    let engine = Engine::new(n, v);
    let cut = d.arcs()[0];
    let (raw, mass) = engine.tangle_scalar(d, cut, 0)?;
    let (theta, _) = engine.tangle_scalar(&positive_kink(), 1, 0)?;
    let w = d.writhe();
    let framing = pow_i(&theta, -w);
    let value = raw * framing;
    let abs = Complex::with_val(prec, value.abs_ref()).real().clone();
    let ops = (6 * c + 20 * n + 10) as f64;
    let error_bound = mass * ops * (2f64).powi(1 - prec as i32);
    let tolerance = (2f64).powi(-(prec as i32) / 2) * abs.to_f64().max(1.0);
    if !(error_bound <= tolerance) {
        return Err(KnotError::Precision(format!(
            "error bound {error_bound:e} exceeds {tolerance:e} at {prec} bits"
        )));
    }
    Ok(KashaevValue { n, crossings: c, value, abs, error_bound, precision: prec })
}

fn pow_i(z: &Complex, e: i64) -> Complex {
    let base = if e < 0 { z.clone().recip() } else { z.clone() };
    let mut acc = Complex::with_val(z.prec(), 1);
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}
