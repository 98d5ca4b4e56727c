//! Knot census tables: `name,crossings,dt,alternating,determinant,volume`.

use std::path::Path;

use rayon::prelude::*;
use rug::Integer;
use serde::Deserialize;

use crate::diagram::{parse_dt_str, Diagram};
use crate::error::{KnotError, Result};
use crate::polynomials::determinant;

pub const CENSUS_HEADER: [&str; 6] = ["name", "crossings", "dt", "alternating", "determinant", "volume"];

#[derive(Clone, Debug, PartialEq)]
pub struct CensusEntry {
    pub name: String,
    pub crossings: usize,
    pub dt: String,
    pub alternating: bool,
    pub determinant: Option<Integer>,
    /// Hyperbolic volume; 0 marks a non-hyperbolic knot, `None` a missing value.
    pub volume: Option<f64>,
}

#[derive(Deserialize)]
struct Row {
    name: String,
    crossings: String,
    dt: String,
    alternating: String,
    determinant: String,
    volume: String,
}

impl CensusEntry {
    pub fn diagram(&self) -> Result<Diagram> {
        parse_dt_str(&self.dt).map_err(|e| e.context(&self.name, "parse_dt"))
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.volume.is_some_and(|v| v > 0.0)
    }

    fn from_row(row: Row) -> Result<CensusEntry> {
        let name = row.name.trim().to_string();
        let bad = |field: &str, value: &str| {
            KnotError::Schema(format!("{name}: column `{field}` has invalid value `{value}`"))
        };
        let crossings = row.crossings.trim().parse().map_err(|_| bad("crossings", &row.crossings))?;
        let alternating = match row.alternating.trim().to_ascii_lowercase().as_str() {
            "true" | "y" | "yes" | "1" => true,
            "false" | "n" | "no" | "0" => false,
            _ => return Err(bad("alternating", &row.alternating)),
        };
        let determinant = match row.determinant.trim() {
            "" => None,
            s => Some(s.parse::<Integer>().map_err(|_| bad("determinant", s))?),
        };
        let volume = match row.volume.trim() {
            "" => None,
            s => {
                let v: f64 = s.parse().map_err(|_| bad("volume", s))?;
                if !(v >= 0.0 && v.is_finite()) {
                    return Err(bad("volume", s));
                }
                Some(v)
            }
        };
        Ok(CensusEntry { name, crossings, dt: row.dt.trim().to_string(), alternating, determinant, volume })
    }

    /// Parses the DT code and checks it against the stated columns.
    pub fn validate(&self) -> Result<Diagram> {
        let d = self.diagram()?;
        let fail = |msg: String| Err(KnotError::Validation(format!("{}: {msg}", self.name)));
        if d.crossing_number() != self.crossings {
            return fail(format!(
                "DT code has {} crossings, table says {}",
                d.crossing_number(),
                self.crossings
            ));
        }
        if d.is_alternating() != self.alternating {
            return fail(format!("DT diagram alternating = {}, table says {}", d.is_alternating(), self.alternating));
        }
        if let Some(stated) = &self.determinant {
            let computed = determinant(&d);
            if &computed != stated {
                return fail(format!("stated determinant {stated} but computed {computed}"));
            }
        }
        Ok(d)
    }
}

/// Reads and validates a census table.
pub fn load_census(path: impl AsRef<Path>) -> Result<Vec<CensusEntry>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| KnotError::Io(format!("{}: {e}", path.display())))?;
    load_census_str(&text)
}

pub fn load_census_str(text: &str) -> Result<Vec<CensusEntry>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::Headers).from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| KnotError::Schema(e.to_string()))?;
    if headers.iter().collect::<Vec<_>>() != CENSUS_HEADER {
        return Err(KnotError::Schema(format!(
            "expected header `{}`, found `{}`",
            CENSUS_HEADER.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let entries = reader
        .deserialize::<Row>()
        .map(|r| r.map_err(|e| KnotError::Schema(e.to_string())).and_then(CensusEntry::from_row))
        .collect::<Result<Vec<_>>>()?;
    entries.par_iter().map(|e| e.validate().map(|_| ())).collect::<Result<Vec<()>>>()?;
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "name,crossings,dt,alternating,determinant,volume\n";

    #[test]
    fn figure_eight_row() {
        let t = format!("{HEADER}4_1,4,\"4 6 8 2\",true,5,2.02988321\n");
        let e = &load_census_str(&t).unwrap()[0];
        assert_eq!(e.name, "4_1");
        assert_eq!(e.crossings, 4);
        assert_eq!(e.determinant, Some(Integer::from(5)));
        assert_eq!(e.volume, Some(2.02988321));
        assert!(e.is_hyperbolic());
    }

    #[test]
    fn blank_volume_is_missing() {
        let t = format!("{HEADER}3_1,3,\"4 6 2\",true,,\n");
        let e = &load_census_str(&t).unwrap()[0];
        assert_eq!((e.determinant.clone(), e.volume), (None, None));
        assert!(!e.is_hyperbolic());
    }

    #[test]
    fn wrong_determinant_rejected() {
        let t = format!("{HEADER}4_1,4,\"4 6 8 2\",true,7,2.02988321\n");
        assert!(matches!(load_census_str(&t), Err(KnotError::Validation(m)) if m.contains("4_1")));
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(load_census_str("name,dt\n4_1,\"4 6 8 2\"\n"), Err(KnotError::Schema(_))));
        let t = format!("{HEADER}4_1,four,\"4 6 8 2\",true,5,\n");
        assert!(matches!(load_census_str(&t), Err(KnotError::Schema(_))));
        let t = format!("{HEADER}4_1,4,\"4 6 8 2\",maybe,5,\n");
        assert!(matches!(load_census_str(&t), Err(KnotError::Schema(_))));
        let t = format!("{HEADER}4_1,4,\"4 6 8 2\",true,5,-1\n");
        assert!(matches!(load_census_str(&t), Err(KnotError::Schema(_))));
    }

    #[test]
    fn bad_dt_rejected_with_context() {
        let t = format!("{HEADER}bad,3,\"3 6 2\",true,,\n");
        assert!(matches!(load_census_str(&t), Err(KnotError::Validation(m)) if m.starts_with("bad: parse_dt")));
        assert!(matches!(load_census("/nonexistent/census.csv"), Err(KnotError::Io(_))));
    }
}
