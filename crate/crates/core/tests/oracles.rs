//! Jones polynomials and reduced Khovanov ranks against published tables.

use std::collections::HashMap;
use std::path::PathBuf;

use knotdensity::census::{load_census, CensusEntry};
use knotdensity::khovanov::{reduced_khovanov, Field};
use knotdensity::polynomials::{jones_polynomial, LaurentPolynomial, Variable};

struct OracleRow {
    name: String,
    jones: LaurentPolynomial,
    rank_q: usize,
    rank_f2: usize,
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn oracle() -> Vec<OracleRow> {
    let mut rdr = csv::Reader::from_path(root().join("tests/data/knotinfo_oracle.csv")).unwrap();
    rdr.records()
        .map(|r| {
            let r = r.unwrap();
            let terms = r[1].split_whitespace().map(|t| {
                let (e, c) = t.split_once(':').unwrap();
                (2 * e.parse::<i64>().unwrap(), c.parse::<i64>().unwrap())
            });
            OracleRow {
                name: r[0].to_string(),
                jones: LaurentPolynomial::from_terms(Variable::HalfT, terms),
                rank_q: r[2].parse().unwrap(),
                rank_f2: r[3].parse().unwrap(),
            }
        })
        .collect()
}

fn census() -> HashMap<String, CensusEntry> {
    load_census(root().join("../../data/census12.csv")).unwrap().into_iter().map(|e| (e.name.clone(), e)).collect()
}

#[test]
fn jones_matches_table_up_to_mirror() {
    let census = census();
    let rows = oracle();
    assert!(rows.len() > 400);
    for row in &rows {
        let d = census[&row.name].diagram().unwrap();
        let v = jones_polynomial(&d).unwrap().polynomial;
        assert!(v == row.jones || v.inverted() == row.jones, "{}: {v} vs {}", row.name, row.jones);
    }
}

#[test]
fn khovanov_ranks_match_table() {
    let census = census();
    for row in oracle().iter().filter(|r| census[&r.name].crossings <= 10) {
        let d = census[&row.name].diagram().unwrap();
        let q = reduced_khovanov(&d, Field::Rationals).unwrap();
        assert_eq!(q.total_rank(), row.rank_q, "{} over Q", row.name);
        let f2 = reduced_khovanov(&d, Field::F2).unwrap();
        assert_eq!(f2.total_rank(), row.rank_f2, "{} over F2", row.name);
    }
}

#[test]
fn khovanov_ranks_match_table_eleven_crossings() {
    let census = census();
    // every eleventh row keeps the debug-build runtime modest
    for row in oracle().iter().filter(|r| census[&r.name].crossings == 11).step_by(11) {
        let d = census[&row.name].diagram().unwrap();
        assert_eq!(reduced_khovanov(&d, Field::Rationals).unwrap().total_rank(), row.rank_q, "{}", row.name);
        assert_eq!(reduced_khovanov(&d, Field::F2).unwrap().total_rank(), row.rank_f2, "{}", row.name);
    }
}

#[test]
fn thin_knots_have_rank_equal_to_determinant() {
    let census = census();
    for row in oracle() {
        let e = &census[&row.name];
        if e.alternating {
            assert_eq!(Some(rug::Integer::from(row.rank_q)), e.determinant, "{}", row.name);
        }
    }
}
