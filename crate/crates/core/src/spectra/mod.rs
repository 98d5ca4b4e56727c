//! Density functionals, family sweeps and census-wide conjecture checks.

mod bounds;
mod record;
mod sequence;
mod verify;

use rug::float::Constant;
use rug::{Float, Integer, Rational};

use crate::error::{KnotError, Result};

pub use bounds::{certified_cmp, Bounds};
pub use record::{density_record, DensityRecord, KashaevEntry, RecordOptions};
pub use sequence::{aitken, CycleRow, cycle_density_convergence, maximality_sweep, CycleReport, Family, SequenceReport};
pub use verify::{
    crossing_change_det_drop, verify_crossing_drop, verify_det_density_bound, verify_jones_density_bound,
    verify_kh_vol, verify_vol_det, CrossingDropReport, RowResult, RowStatus, VerificationReport,
};

pub(crate) mod ser {
    use rug::{Integer, Rational};
    use serde::Serializer;

    pub fn integer<S: Serializer>(v: &Integer, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn integers<S: Serializer>(v: &[Integer], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn opt_rational<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }
}

/// Working precision of density values, in bits.
pub const DENSITY_PRECISION: u32 = 128;

/// Volume of the regular ideal octahedron, 4·Catalan.
pub const VOCT_DIGITS: &str = "3.66386237670887606021841405972";
/// Volume of the regular ideal tetrahedron.
pub const V_TET_DIGITS: &str = "1.01494160640965362502120255427";
pub const VOCT: f64 = 3.663_862_376_708_876;
pub const V_TET: f64 = 1.014_941_606_409_653_6;

/// 4·Catalan at `precision` bits.
pub fn voct(precision: u32) -> Float {
    Float::with_val(precision, Constant::Catalan) * 4u32
}

pub fn v_tet(precision: u32) -> Float {
    Float::with_val(precision, Float::parse(V_TET_DIGITS).expect("valid literal"))
}

fn density_of(c: usize, x: &Rational) -> Float {
    let two_pi = Float::with_val(DENSITY_PRECISION, Constant::Pi) * 2u32;
    let ln = Float::with_val(DENSITY_PRECISION, x).ln();
    two_pi * ln / c as u64
}

fn need_crossings(c: usize) -> Result<()> {
    if c == 0 {
        return Err(KnotError::Domain("density needs at least one crossing".into()));
    }
    Ok(())
}

/// 2π·ln det / c.
pub fn det_density(c: usize, det: &Integer) -> Result<Float> {
    need_crossings(c)?;
    if *det <= 0 {
        return Err(KnotError::Domain(format!("determinant {det}: log undefined")));
    }
    Ok(density_of(c, &Rational::from(det)))
}

/// 2π·ln μ / c.
pub fn jones_density(c: usize, mu: &Rational) -> Result<Float> {
    need_crossings(c)?;
    if *mu <= 0 {
        return Err(KnotError::Domain(format!("μ = {mu}: log undefined")));
    }
    Ok(density_of(c, mu))
}

/// 2π·ln rank / c.
pub fn kh_rank_density(c: usize, rank: usize) -> Result<Float> {
    need_crossings(c)?;
    if rank == 0 {
        return Err(KnotError::Domain("Khovanov rank 0: log undefined".into()));
    }
    Ok(density_of(c, &Rational::from(rank as u64)))
}

/// vol / c.
pub fn vol_density(c: usize, vol: f64) -> Result<Float> {
    need_crossings(c)?;
    if !(vol > 0.0 && vol.is_finite()) {
        return Err(KnotError::Domain(format!("volume {vol} is not positive")));
    }
    Ok(Float::with_val(DENSITY_PRECISION, vol) / c as u64)
}

/// Fixed 12-significant-digit rendering used by every report.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..15).contains(&mag) {
        return format!("{:.11e}", x);
    }
    let decimals = (11 - mag).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
