//! Per-knot record of invariants and densities.

use rug::{Integer, Rational};
use serde::Serialize;

use super::{det_density, format_real, jones_density, kh_rank_density, ser, vol_density};
use crate::diagram::Diagram;
use crate::error::{KnotError, Result};
use crate::kashaev::{kashaev_invariant, DEFAULT_PRECISION};
use crate::khovanov::{reduced_khovanov_capped, Field, KH_CROSSING_CAP};
use crate::polynomials::{determinant, jones_polynomial};

#[derive(Clone, Debug)]
pub struct RecordOptions {
    pub field: Field,
    pub kh_cap: usize,
    /// Compute ⟨K⟩_N for N = 2..=n_max.
    pub kashaev_n_max: Option<usize>,
    pub precision: u32,
    pub volume: Option<f64>,
}

impl Default for RecordOptions {
    fn default() -> Self {
        RecordOptions {
            field: Field::Rationals,
            kh_cap: KH_CROSSING_CAP,
            kashaev_n_max: None,
            precision: DEFAULT_PRECISION,
            volume: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KashaevEntry {
    pub n: usize,
    pub abs: f64,
    pub density: Option<f64>,
}

/// Invariants of one diagram. A density is `None` when its logarithm is undefined
/// or the invariant was not computed; `notes` says which.
#[derive(Clone, Debug, Serialize)]
pub struct DensityRecord {
    pub knot: String,
    pub crossings: usize,
    pub components: usize,
    pub alternating: bool,
    #[serde(serialize_with = "ser::integer")]
    pub determinant: Integer,
    pub jones: Option<String>,
    #[serde(serialize_with = "ser::opt_rational")]
    pub mu: Option<Rational>,
    pub kh_rank: Option<usize>,
    pub kashaev: Vec<KashaevEntry>,
    pub volume: Option<f64>,
    pub vol_density: Option<f64>,
    pub det_density: Option<f64>,
    pub jones_density: Option<f64>,
    pub kh_density: Option<f64>,
    pub notes: Vec<String>,
}

fn keep<T>(r: Result<T>, what: &str, notes: &mut Vec<String>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(e) => {
            notes.push(format!("{what}: {e}"));
            None
        }
    }
}

pub fn density_record(name: &str, d: &Diagram, opts: &RecordOptions) -> Result<DensityRecord> {
    let mut notes = Vec::new();
    let c = d.crossing_number();
    let det = determinant(d);
    let jones = keep(jones_polynomial(d), "jones", &mut notes);
    let kh_rank = if d.is_knot() {
        keep(reduced_khovanov_capped(d, opts.field, opts.kh_cap).map(|s| s.total_rank()), "khovanov", &mut notes)
    } else {
        notes.push("khovanov: reduced homology computed for knots only".into());
        None
    };
    let mut kashaev = Vec::new();
    if let Some(n_max) = opts.kashaev_n_max {
        if !d.is_knot() {
            notes.push("kashaev: knots only".into());
        }
        for n in 2..=n_max {
            if !d.is_knot() {
                break;
            }
            match kashaev_invariant(d, n, opts.precision) {
                Ok(v) => kashaev.push(KashaevEntry {
                    n,
                    abs: v.abs.to_f64(),
                    density: keep(v.density(), &format!("quantum density N={n}"), &mut notes).map(|f| f.to_f64()),
                }),
                Err(e) => {
                    notes.push(format!("kashaev N={n}: {e}"));
                    if matches!(e, KnotError::Resource(_)) {
                        break;
                    }
                }
            }
        }
    }
    let density = |r: Result<rug::Float>, what: &str, notes: &mut Vec<String>| keep(r, what, notes).map(|f| f.to_f64());
    let det_d = density(det_density(c, &det), "det density", &mut notes);
    let jones_d = jones.as_ref().and_then(|j| density(jones_density(c, &j.mu), "jones density", &mut notes));
    let kh_d = kh_rank.and_then(|r| density(kh_rank_density(c, r), "kh density", &mut notes));
    let vol_d = match opts.volume {
        Some(v) if v > 0.0 => density(vol_density(c, v), "vol density", &mut notes),
        Some(_) => {
            notes.push("vol density: not hyperbolic".into());
            None
        }
        None => None,
    };
    Ok(DensityRecord {
        knot: name.to_string(),
        crossings: c,
        components: d.components(),
        alternating: d.is_alternating(),
        determinant: det,
        jones: jones.as_ref().map(|j| j.polynomial.to_string()),
        mu: jones.map(|j| j.mu),
        kh_rank,
        kashaev,
        volume: opts.volume,
        vol_density: vol_d,
        det_density: det_d,
        jones_density: jones_d,
        kh_density: kh_d,
        notes,
    })
}

impl DensityRecord {
    pub const CSV_HEADER: &'static str =
        "knot,crossings,determinant,mu,kh_rank,volume,vol_density,det_density,jones_density,kh_density,quantum_densities";

    pub fn to_csv_row(&self) -> String {
        let opt = |x: Option<f64>| x.map(format_real).unwrap_or_default();
        let quantum: Vec<String> = self
            .kashaev
            .iter()
            .map(|k| format!("{}:{}", k.n, k.density.map(format_real).unwrap_or_else(|| "undefined".into())))
            .collect();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.knot,
            self.crossings,
            self.determinant,
            self.mu.as_ref().map(|m| m.to_string()).unwrap_or_default(),
            self.kh_rank.map(|r| r.to_string()).unwrap_or_default(),
            opt(self.volume),
            opt(self.vol_density),
            opt(self.det_density),
            opt(self.jones_density),
            opt(self.kh_density),
            quantum.join(" ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_dt;

    #[test]
    fn figure_eight_record() {
        let d = parse_dt(&[4, 6, 8, 2]).unwrap();
        let opts = RecordOptions { kashaev_n_max: Some(8), volume: Some(2.029_883_212_8), ..Default::default() };
        let r = density_record("4_1", &d, &opts).unwrap();
        assert_eq!(r.determinant, 5);
        assert_eq!(r.mu, Some(Rational::from(1)));
        assert_eq!(r.kh_rank, Some(5));
        assert_eq!(r.kashaev.len(), 7);
        assert!((r.kashaev[0].abs - 5.0).abs() < 1e-20);
        // quantum density at N = 2 is half the determinant density
        let half = r.det_density.unwrap() / 2.0;
        assert!((r.kashaev[0].density.unwrap() - half).abs() < 1e-12);
        assert_eq!(r.jones_density, Some(0.0));
        assert!((r.vol_density.unwrap() - 0.507_470_803_2).abs() < 1e-9);
        assert!(r.notes.is_empty(), "{:?}", r.notes);
    }

    #[test]
    fn alternating_jones_density_identity() {
        for code in [vec![4, 6, 2], vec![4, 8, 10, 2, 6], vec![6, 8, 12, 14, 4, 16, 2, 10]] {
            let d = parse_dt(&code).unwrap();
            let r = density_record("k", &d, &RecordOptions::default()).unwrap();
            let c = r.crossings as f64;
            let expect = r.det_density.unwrap() - 2.0 * std::f64::consts::PI * (c + 1.0).ln() / c;
            assert!((r.jones_density.unwrap() - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn unknot_densities_are_flagged() {
        let r = density_record("0_1", &Diagram::unknot(), &RecordOptions::default()).unwrap();
        assert_eq!(r.det_density, None);
        assert!(r.notes.iter().any(|n| n.starts_with("det density")));
        assert!(r.to_csv_row().starts_with("0_1,0,1,1,1,"));
    }
}
