//! Directed-rounding enclosures for exact-direction comparisons.

use std::cmp::Ordering;

use rug::float::{Constant, Round};
use rug::{Float, Rational};

const START_PRECISION: u32 = 128;
const MAX_PRECISION: u32 = 4096;

/// A closed interval [lo, hi] known to contain a real number.
#[derive(Clone, Debug)]
pub struct Bounds {
    pub lo: Float,
    pub hi: Float,
}

impl Bounds {
    pub fn exact(x: f64) -> Bounds {
        let f = Float::with_val(64, x);
        Bounds { lo: f.clone(), hi: f }
    }

    /// Encloses 2π·ln(x)/c for x > 0, c ≥ 1.
    pub fn log_density(c: usize, x: &Rational, precision: u32) -> Bounds {
        let (x_lo, _) = Float::with_val_round(precision, x, Round::Down);
        let (x_hi, _) = Float::with_val_round(precision, x, Round::Up);
        let mut ln_lo = x_lo;
        ln_lo.ln_round(Round::Down);
        let mut ln_hi = x_hi;
        ln_hi.ln_round(Round::Up);
        let (pi_lo, _) = Float::with_val_round(precision, Constant::Pi, Round::Down);
        let (pi_hi, _) = Float::with_val_round(precision, Constant::Pi, Round::Up);
        let lo_factor = if ln_lo >= 0 { &pi_lo } else { &pi_hi };
        let hi_factor = if ln_hi >= 0 { &pi_hi } else { &pi_lo };
        let (lo, _) = Float::with_val_round(precision, &ln_lo * lo_factor, Round::Down);
        let (hi, _) = Float::with_val_round(precision, &ln_hi * hi_factor, Round::Up);
        let (lo, _) = Float::with_val_round(precision, lo * 2u32 / c as u64, Round::Down);
        let (hi, _) = Float::with_val_round(precision, hi * 2u32 / c as u64, Round::Up);
        Bounds { lo, hi }
    }

    /// Encloses 2π·ln(x) (no division by a crossing number).
    pub fn two_pi_log(x: &Rational, precision: u32) -> Bounds {
        Bounds::log_density(1, x, precision)
    }

    pub fn voct(precision: u32) -> Bounds {
        let (lo, _) = Float::with_val_round(precision, Constant::Catalan, Round::Down);
        let (hi, _) = Float::with_val_round(precision, Constant::Catalan, Round::Up);
        Bounds { lo: lo * 4u32, hi: hi * 4u32 }
    }
}

/// Certified order of two reals given by enclosure builders, refining the
/// precision until the enclosures separate. `None` when they still overlap
/// at the maximum precision.
pub fn certified_cmp(a: impl Fn(u32) -> Bounds, b: impl Fn(u32) -> Bounds) -> Option<Ordering> {
    let mut prec = START_PRECISION;
    loop {
        let (x, y) = (a(prec), b(prec));
        if x.hi < y.lo {
            return Some(Ordering::Less);
        }
        if x.lo > y.hi {
            return Some(Ordering::Greater);
        }
        if x.lo == x.hi && y.lo == y.hi && x.lo == y.lo {
            return Some(Ordering::Equal);
        }
        if prec >= MAX_PRECISION {
            return None;
        }
        prec *= 2;
    }
}
