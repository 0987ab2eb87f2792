//! Published table values bundled as `data/paper_tables.json`.
//!
//! Ranges with unknown endpoint closedness carry `None` in `lo_open` /
//! `hi_open`; `NA` cells are `null`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::broadcast::{Scan, SweepSpec};
use crate::cloners::ClonerKind;
use crate::error::{Error, Result};

const RAW: &str = include_str!("../data/paper_tables.json");

/// Endpoints farther apart than this count as a disagreement between two
/// published cells.
pub const CONFLICT_TOL: f64 = 0.005;

#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct PaperRange {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: Option<bool>,
    pub hi_open: Option<bool>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct PaperRow {
    pub fixed: BTreeMap<String, f64>,
    pub n_copies: usize,
    pub range: Option<PaperRange>,
    pub sum_tf: Option<f64>,
    pub sum_dc: Option<f64>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
pub struct PaperTable {
    /// CLI identifier: `1`..`6` for the main tables, `A1`..`A6` for the
    /// appendix.
    pub id: String,
    /// Roman numeral used in the paper.
    pub label: String,
    pub family: String,
    pub cloner: String,
    pub swept: String,
    pub fixed: Vec<String>,
    pub sum_columns: Vec<String>,
    pub rows: Vec<PaperRow>,
}

#[derive(Debug, Deserialize)]
struct PaperTables {
    tables: Vec<PaperTable>,
}

/// All bundled tables in paper order.
pub fn paper_tables() -> &'static [PaperTable] {
    static TABLES: OnceLock<Vec<PaperTable>> = OnceLock::new();
    TABLES.get_or_init(|| {
        serde_json::from_str::<PaperTables>(RAW).expect("bundled paper_tables.json is well formed").tables
    })
}

/// Looks a table up by CLI id (`3`, `A1`) or roman label (`III`, `VII`).
pub fn table(id: &str) -> Result<&'static PaperTable> {
    let key = id.trim();
    paper_tables()
        .iter()
        .find(|t| t.id.eq_ignore_ascii_case(key) || t.label.eq_ignore_ascii_case(key))
        .ok_or_else(|| Error::ParameterOutOfRange(format!("unknown table '{id}' (expected 1..6, A1..A6 or all)")))
}

impl PaperTable {
    pub fn cloner_kind(&self) -> ClonerKind {
        match self.cloner.as_str() {
            "local" => ClonerKind::Local,
            _ => ClonerKind::Nonlocal,
        }
    }

    pub fn scan(&self, row: &PaperRow) -> Result<Scan> {
        let get = |name: &str| {
            row.fixed
                .get(name)
                .copied()
                .ok_or_else(|| Error::InvalidState(format!("table {} row lacks {name}", self.label)))
        };
        match (self.family.as_str(), self.swept.as_str()) {
            ("werner", "p") => Ok(Scan::WernerP { alpha2: get("alpha2")? }),
            ("werner", "alpha2") => Ok(Scan::WernerAlpha2 { p: get("p")? }),
            ("belldiag", var) => {
                let swept = match var {
                    "c1" => 0,
                    "c2" => 1,
                    "c3" => 2,
                    _ => return Err(Error::InvalidState(format!("table {} sweeps {var}", self.label))),
                };
                let mut fixed = [0.0; 3];
                for (k, name) in ["c1", "c2", "c3"].iter().enumerate() {
                    if k != swept {
                        fixed[k] = get(name)?;
                    }
                }
                Ok(Scan::Bell { fixed, swept })
            }
            (family, var) => Err(Error::InvalidState(format!("unsupported table layout {family}/{var}"))),
        }
    }

    pub fn sweep_spec(&self, row: &PaperRow, grid: usize) -> Result<SweepSpec> {
        Ok(SweepSpec::new(self.scan(row)?, self.cloner_kind(), row.n_copies).with_grid(grid))
    }

    /// Appendix table listing the other sum for the same rows.
    pub fn companion(&self) -> Option<&'static PaperTable> {
        let other = match self.id.as_str() {
            "A1" => "A3",
            "A3" => "A1",
            "A2" => "A4",
            "A4" => "A2",
            "A5" => "A6",
            "A6" => "A5",
            _ => return None,
        };
        table(other).ok()
    }

    /// Row of this table with the same fixed parameters and copy count.
    pub fn matching_row(&self, row: &PaperRow) -> Option<&PaperRow> {
        self.rows.iter().find(|r| r.fixed == row.fixed && r.n_copies == row.n_copies)
    }
}

/// Two published cells for the same parameters that disagree on the range.
#[derive(Clone, Debug, PartialEq)]
pub struct RangeConflict {
    pub tables: (String, String),
    pub fixed: BTreeMap<String, f64>,
    pub n_copies: usize,
    pub ranges: (Option<PaperRange>, Option<PaperRange>),
}

fn ranges_differ(a: &Option<PaperRange>, b: &Option<PaperRange>) -> bool {
    match (a, b) {
        (None, None) => false,
        (Some(x), Some(y)) => (x.lo - y.lo).abs() > CONFLICT_TOL || (x.hi - y.hi).abs() > CONFLICT_TOL,
        _ => true,
    }
}

/// Range cells on which an appendix table and its companion disagree.
pub fn range_conflicts() -> Vec<RangeConflict> {
    let mut out = Vec::new();
    for t in paper_tables() {
        let Some(other) = t.companion() else { continue };
        // report each pair once
        if t.id > other.id {
            continue;
        }
        for row in &t.rows {
            if let Some(o) = other.matching_row(row) {
                if ranges_differ(&row.range, &o.range) {
                    out.push(RangeConflict {
                        tables: (t.label.clone(), other.label.clone()),
                        fixed: row.fixed.clone(),
                        n_copies: row.n_copies,
                        ranges: (row.range.clone(), o.range.clone()),
                    });
                }
            }
        }
    }
    out
}

/// Conflict entry for a given row, if any.
pub fn conflict_for(table: &PaperTable, row: &PaperRow) -> Option<RangeConflict> {
    range_conflicts().into_iter().find(|c| {
        (c.tables.0 == table.label || c.tables.1 == table.label) && c.fixed == row.fixed && c.n_copies == row.n_copies
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_tables_load() {
        let ids: Vec<&str> = paper_tables().iter().map(|t| t.id.as_str()).collect();
        assert_eq!(ids, ["1", "2", "3", "4", "5", "6", "A1", "A2", "A3", "A4", "A5", "A6"]);
        for t in paper_tables() {
            for row in &t.rows {
                t.sweep_spec(row, 100).unwrap();
            }
        }
    }

    #[test]
    fn lookup_by_label() {
        assert_eq!(table("vii").unwrap().id, "A1");
        assert_eq!(table("A5").unwrap().label, "XI");
        assert!(table("13").is_err());
    }

    #[test]
    fn detects_known_conflicts() {
        let c = range_conflicts();
        let at = |a: f64| c.iter().find(|x| x.fixed.get("alpha2") == Some(&a) && x.n_copies == 5);
        let half = at(0.5).expect("alpha2 = 0.5, N = 5 differs between VII and IX");
        assert_eq!(half.tables, ("VII".to_string(), "IX".to_string()));
        assert!(at(0.6).is_some());
        assert!(at(0.4).is_none());
    }
}
