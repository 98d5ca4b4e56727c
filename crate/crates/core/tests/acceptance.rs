//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::time::Instant;

use knotdensity::census::{load_census, CensusEntry};
use knotdensity::diagram::parse_dt;
use knotdensity::graphs::{folner_ratio, grid_graph, tree_entropy_sequence, GridSubgraphSpec};
use knotdensity::kashaev::{figure_eight_kashaev, kashaev_invariant, quantum_density};
use knotdensity::khovanov::{reduced_khovanov, Field};
use knotdensity::polynomials::{goeritz_determinant, jones_polynomial, tait_determinant};
use knotdensity::spectra::{
    cycle_density_convergence, maximality_sweep, verify_crossing_drop, verify_det_density_bound,
    verify_jones_density_bound, verify_kh_vol, verify_vol_det, voct, Bounds, Family, SequenceReport,
    VerificationReport, VOCT, V_TET,
};
use knotdensity::{Diagram, Tangle};
use rayon::prelude::*;
use rug::float::Constant;
use rug::{Float, Rational};

/// Relative tolerance on the extrapolated limits of the maximal families.
const MAXIMAL_LIMIT_TOLERANCE: f64 = 0.02;
/// Relative tolerance on the figure-eight quantum density at N = 100.
const FIGURE_EIGHT_TOLERANCE: f64 = 0.15;
/// Relative tolerance on the grid tree entropy at n = 10.
const ENTROPY_TOLERANCE: f64 = 0.02;

struct Census {
    entries: Vec<CensusEntry>,
    diagrams: Vec<Diagram>,
}

impl Census {
    fn load() -> Census {
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/census12.csv");
        let entries: Vec<CensusEntry> =
            load_census(&path).expect("census loads").into_iter().filter(|e| e.crossings > 0).collect();
        let diagrams = entries.par_iter().map(|e| e.diagram().expect("census DT parses")).collect();
        Census { entries, diagrams }
    }

    fn rows(&self) -> impl Iterator<Item = (&CensusEntry, &Diagram)> {
        self.entries.iter().zip(&self.diagrams)
    }

    fn par_rows(&self) -> impl ParallelIterator<Item = (&CensusEntry, &Diagram)> {
        self.entries.par_iter().zip(self.diagrams.par_iter())
    }
}

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn report_line(r: &VerificationReport) -> String {
    format!(
        "{}: {} pass, {} violations, {} skipped, min margin {:.6} ({})",
        r.check,
        r.passed,
        r.violations,
        r.skipped,
        r.min_margin.unwrap_or(f64::NAN),
        r.min_margin_knot.as_deref().unwrap_or("-")
    )
}

fn first_failures(failures: &[String]) -> String {
    failures.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
}

fn determinant_agreement(census: &Census) -> Outcome {
    let failures: Vec<String> = census
        .par_rows()
        .filter_map(|(e, d)| {
            let jones = jones_polynomial(d).expect("jones").determinant;
            let goeritz = goeritz_determinant(d);
            if jones != goeritz {
                return Some(format!("{}: |V(-1)| = {jones}, Goeritz {goeritz}", e.name));
            }
            if e.alternating {
                let tait = tait_determinant(d).expect("tait graph");
                if tait != jones {
                    return Some(format!("{}: |V(-1)| = {jones}, tau(Tait) = {tait}", e.name));
                }
            }
            None
        })
        .collect();
    let alternating = census.entries.iter().filter(|e| e.alternating).count();
    outcome(
        failures.is_empty(),
        format!(
            "{} knots ({alternating} alternating), {} disagreements {}",
            census.entries.len(),
            failures.len(),
            first_failures(&failures)
        ),
    )
}

fn det_density_sweep(census: &Census) -> Outcome {
    let r = verify_det_density_bound(&census.entries);
    outcome(r.violations == 0 && r.skipped == 0, report_line(&r))
}

fn mu_identity(census: &Census) -> Outcome {
    let r = verify_jones_density_bound(&census.entries);
    let non_alternating = census.entries.iter().filter(|e| !e.alternating).count();
    outcome(
        r.violations == 0 && r.skipped == 0,
        format!("{} ({non_alternating} non-alternating with strict coefficient bound)", report_line(&r)),
    )
}

fn trend(r: &SequenceReport) -> (bool, String) {
    let increasing = r.is_strictly_increasing();
    let within = r.limit_within(MAXIMAL_LIMIT_TOLERANCE) == Some(true);
    let limit = r.limit.unwrap_or(f64::NAN);
    let detail = format!(
        "{}: strictly increasing {increasing}, last {:.6}, limit {limit:.6} vs {:.6} ({:+.2}%)",
        r.family,
        r.densities.last().copied().unwrap_or(f64::NAN),
        r.target,
        100.0 * (limit - r.target) / r.target
    );
    (increasing && within, detail)
}

fn maximality_trend() -> Outcome {
    let weaving = maximality_sweep(&Family::Weaving { p: 3 }, &(3..=30).collect::<Vec<_>>()).expect("weaving");
    let celtic = maximality_sweep(&Family::Celtic, &(3..=10).collect::<Vec<_>>()).expect("celtic");
    let (a, da) = trend(&weaving);
    let (b, db) = trend(&celtic);
    outcome(a && b, format!("{da}; {db}; tolerance {}%", 100.0 * MAXIMAL_LIMIT_TOLERANCE))
}

fn cycle_laws() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for k in [3usize, 5, 7] {
        let t = Tangle::vertical_twist(k).expect("tangle");
        let r = cycle_density_convergence(&t, 8).expect("cycle family");
        let power = r.rows.iter().filter(|row| row.n <= 6).all(|row| row.power_law_holds());
        let (r2, r8) = (r.residual(2).unwrap(), r.residual(8).unwrap());
        let ok = power && r8 < r2;
        pass &= ok;
        parts.push(format!("seed {k}-twist: det(L^n) = det(K)^n {power}, residual n=2 {r2:.6} n=8 {r8:.6}"));
    }
    outcome(pass, parts.join("; "))
}

fn crossing_drop(census: &Census) -> Outcome {
    let within: Vec<CensusEntry> = census.entries.iter().filter(|e| e.crossings <= 9).cloned().collect();
    let r = verify_crossing_drop(&within, 9);
    let checked_alternating = within.iter().filter(|e| e.alternating).count();
    outcome(
        r.violations == 0 && r.passed == checked_alternating,
        format!("{} ({checked_alternating} alternating knots with c <= 9)", report_line(&r)),
    )
}

fn khovanov_thinness(census: &Census) -> Outcome {
    let failures: Vec<String> = census
        .par_rows()
        .filter(|(e, _)| e.crossings <= 10)
        .flat_map_iter(|(e, d)| {
            let jones = jones_polynomial(d).expect("jones");
            let mut problems = Vec::new();
            for field in [Field::Rationals, Field::F2] {
                let kh = reduced_khovanov(d, field).expect("khovanov");
                if kh.euler_characteristic() != jones.polynomial {
                    problems.push(format!("{} over {field}: Euler characteristic differs from Jones", e.name));
                }
                if e.alternating && kh.total_rank() != jones.determinant {
                    problems.push(format!("{} over {field}: rank {} but det {}", e.name, kh.total_rank(), jones.determinant));
                }
            }
            problems
        })
        .collect();
    let n = census.entries.iter().filter(|e| e.crossings <= 10).count();
    outcome(failures.is_empty(), format!("{n} knots, both fields, {} failures {}", failures.len(), first_failures(&failures)))
}

fn volume_sweeps(census: &Census) -> Outcome {
    let vol_det = verify_vol_det(&census.entries);
    let kh_vol = verify_kh_vol(&census.entries, Field::Rationals, 12);
    let missing = |r: &VerificationReport| r.rows.iter().filter(|row| row.note.contains("missing")).count();
    let (m1, m2) = (missing(&vol_det), missing(&kh_vol));
    let pass = vol_det.violations == 0 && kh_vol.violations == 0 && m1 == 0 && m2 == 0 && vol_det.passed > 0 && kh_vol.passed > 0;
    outcome(pass, format!("{}; {}; missing volumes {}", report_line(&vol_det), report_line(&kh_vol), m1 + m2))
}

fn figure_eight_density(n: usize, prec: u32) -> Float {
    let pi = Float::with_val(prec, Constant::Pi);
    let ln = figure_eight_kashaev(n, prec).ln();
    pi * 2u32 * ln / (4 * n) as u64
}

fn kashaev(census: &Census) -> Outcome {
    let eps = Float::with_val(128, Float::i_exp(1, -64));
    let voct_hi = Bounds::voct(256).hi;
    let mut failures: Vec<String> = census
        .par_rows()
        .filter(|(e, _)| e.crossings <= 10)
        .filter_map(|(e, d)| {
            let v = kashaev_invariant(d, 2, 128).expect("kashaev N=2");
            let det = e.determinant.clone().expect("census determinant");
            let err = Float::with_val(128, &v.abs - &det).abs();
            let rounded = v.abs.to_integer().expect("finite");
            if err >= eps || rounded != det {
                return Some(format!("{}: |<K>_2| = {} vs det {det}", e.name, v.abs.to_f64()));
            }
            match quantum_density(&v) {
                Ok(q) if q > voct_hi => Some(format!("{}: quantum density {} above voct", e.name, q.to_f64())),
                _ => None,
            }
        })
        .collect();
    let n_low = census.entries.iter().filter(|e| e.crossings <= 10).count();

    let fig8 = parse_dt(&[4, 6, 8, 2]).expect("4_1");
    let tol = Float::with_val(128, Float::i_exp(1, -67)); // below 10^-20
    for n in 2..=16 {
        let v = kashaev_invariant(&fig8, n, 128).expect("kashaev 4_1");
        let oracle = figure_eight_kashaev(n, 256);
        let diff = Float::with_val(256, &v.abs - &oracle).abs();
        if diff > tol {
            failures.push(format!("4_1 N={n}: {} vs oracle {}", v.abs.to_f64(), oracle.to_f64()));
        }
        if quantum_density(&v).expect("density") > voct_hi {
            failures.push(format!("4_1 N={n}: quantum density above voct"));
        }
    }

    let densities: Vec<Float> = (2..=100).map(|n| figure_eight_density(n, 256)).collect();
    let first_drop = densities.windows(2).position(|w| w[1] <= w[0]).map(|i| i + 2);
    let monotone = first_drop.is_none();
    if densities.iter().any(|q| *q > voct_hi) {
        failures.push("figure-eight oracle density above voct".into());
    }
    let last = densities.last().unwrap().to_f64();
    let target = V_TET / 2.0;
    let rel = (last - target).abs() / target;
    let close = rel <= FIGURE_EIGHT_TOLERANCE;
    let pass = failures.is_empty() && monotone && close;
    outcome(
        pass,
        format!(
            "N=2 on {n_low} knots and 4_1 oracle N=2..16: {} failures {}; figure-eight density N=2 {:.5}, N=3 {:.5}, N=100 {last:.5}; monotone increasing {monotone}{}; N=100 vs {target:.5}: {:.1}% off (tolerance {}%)",
            failures.len(),
            first_failures(&failures),
            densities[0].to_f64(),
            densities[1].to_f64(),
            first_drop.map(|n| format!(" (first decrease at N={n})")).unwrap_or_default(),
            100.0 * rel,
            100.0 * FIGURE_EIGHT_TOLERANCE
        ),
    )
}

fn folner_entropy() -> Outcome {
    let ratios_ok = (2..=30u32).all(|n| {
        folner_ratio(&GridSubgraphSpec::block(n as usize, n as usize)) == Rational::from((4 * n - 4, n * n))
    });
    let grids: Vec<_> = (2..=10).map(|n| grid_graph(n, n)).collect();
    let entropy = tree_entropy_sequence(&grids, 256).expect("entropy");
    let h10 = entropy.last().unwrap().1.clone();
    let target = Float::with_val(256, Constant::Catalan) * 4u32 / Float::with_val(256, Constant::Pi);
    let rel = Float::with_val(256, &h10 - &target).abs() / &target;
    let close = rel <= ENTROPY_TOLERANCE;
    outcome(
        ratios_ok && close,
        format!(
            "boundary ratio (4n-4)/n^2 for 2 <= n <= 30: {ratios_ok}; entropy n=10 {:.6} vs 4G/pi {:.6}: {:.1}% off (tolerance {}%)",
            h10.to_f64(),
            target.to_f64(),
            100.0 * rel.to_f64(),
            100.0 * ENTROPY_TOLERANCE
        ),
    )
}

fn main() {
    // The bound every density check is compared against.
    assert!((voct(128).to_f64() - VOCT).abs() < 1e-15);
    let start = Instant::now();
    let census = Census::load();
    println!("census: {} knots with c <= 12 loaded in {:.1}s", census.entries.len(), start.elapsed().as_secs_f64());
    assert!(census.rows().all(|(e, d)| e.crossings == d.crossing_number()));

    let criteria: Vec<(&str, Check)> = vec![
        ("AC1 determinant agreement", Box::new(|| determinant_agreement(&census))),
        ("AC2 determinant density below voct", Box::new(|| det_density_sweep(&census))),
        ("AC3 mu identity and coefficient bound", Box::new(|| mu_identity(&census))),
        ("AC4 maximal family trend", Box::new(maximality_trend)),
        ("AC5 cycle and connected-sum laws", Box::new(cycle_laws)),
        ("AC6 crossing-change determinant drop", Box::new(|| crossing_drop(&census))),
        ("AC7 Khovanov thinness", Box::new(|| khovanov_thinness(&census))),
        ("AC8 volume bounds", Box::new(|| volume_sweeps(&census))),
        ("AC9 Kashaev invariant", Box::new(|| kashaev(&census))),
        ("AC10 Folner ratio and tree entropy", Box::new(folner_entropy)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let t = Instant::now();
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} {name} [{:.1}s]: {}",
            if o.pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
