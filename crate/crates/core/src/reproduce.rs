//! Recomputes the published tables and scores the sum columns against every
//! DC/FB convention and every reading of "the" sum over a range.

use crate::broadcast::{sweep_rows, Conventions, Extrema, SweepRow, SweepSpec};
use crate::error::Result;
use crate::reference::{PaperRow, PaperTable};

/// Residual within which a recomputed sum counts as matching.
pub const SUM_MATCH_TOL: f64 = 0.05;

/// Recomputed rows of one table, aligned with its published rows.
#[derive(Clone, Debug)]
pub struct TableRun {
    pub table: &'static PaperTable,
    pub rows: Vec<(&'static PaperRow, SweepRow)>,
}

/// Sweeps every row of `tables`, evaluating each distinct parameter set once.
pub fn run_tables(tables: &[&'static PaperTable], grid: usize) -> Result<Vec<TableRun>> {
    let mut specs: Vec<SweepSpec> = Vec::new();
    let mut index = Vec::new();
    for t in tables {
        for row in &t.rows {
            let spec = t.sweep_spec(row, grid)?;
            let k = match specs.iter().position(|s| *s == spec) {
                Some(k) => k,
                None => {
                    specs.push(spec);
                    specs.len() - 1
                }
            };
            index.push(k);
        }
    }
    let swept = sweep_rows(&specs)?;
    let mut next = index.into_iter();
    Ok(tables
        .iter()
        .map(|t| TableRun {
            table: t,
            rows: t.rows.iter().map(|r| (r, swept[next.next().expect("one index per row")].clone())).collect(),
        })
        .collect())
}

/// Reading of the single sum printed per table row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Semantics {
    Max,
    Min,
    AtLo,
    AtHi,
}

impl Semantics {
    pub const ALL: [Semantics; 4] = [Semantics::Max, Semantics::Min, Semantics::AtLo, Semantics::AtHi];

    pub fn name(self) -> &'static str {
        match self {
            Semantics::Max => "max",
            Semantics::Min => "min",
            Semantics::AtLo => "at_lo",
            Semantics::AtHi => "at_hi",
        }
    }

    pub fn pick(self, e: &Extrema) -> f64 {
        match self {
            Semantics::Max => e.max,
            Semantics::Min => e.min,
            Semantics::AtLo => e.at_lo,
            Semantics::AtHi => e.at_hi,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SumColumn {
    Tf,
    Dc,
}

impl SumColumn {
    pub fn name(self) -> &'static str {
        match self {
            SumColumn::Tf => "tf",
            SumColumn::Dc => "dc",
        }
    }

    fn paper(self, row: &PaperRow) -> Option<f64> {
        match self {
            SumColumn::Tf => row.sum_tf,
            SumColumn::Dc => row.sum_dc,
        }
    }

    /// Recomputed value under a convention and semantics.
    pub fn recomputed(self, row: &SweepRow, c: Conventions, s: Semantics) -> Option<f64> {
        let sums = row.sums_for(c);
        let e = match self {
            SumColumn::Tf => sums.tf,
            SumColumn::Dc => sums.dc,
        };
        e.map(|e| s.pick(&e))
    }
}

/// One published sum cell evaluated under one convention and semantics.
#[derive(Clone, Debug, PartialEq)]
pub struct CalibrationCell {
    pub table: &'static str,
    pub row: usize,
    pub n_copies: usize,
    pub fixed: String,
    pub column: SumColumn,
    pub conventions: Conventions,
    pub semantics: Semantics,
    pub paper: f64,
    pub recomputed: Option<f64>,
}

impl CalibrationCell {
    pub fn residual(&self) -> Option<f64> {
        self.recomputed.map(|r| r - self.paper)
    }

    pub fn matched(&self) -> bool {
        self.residual().is_some_and(|r| r.abs() <= SUM_MATCH_TOL)
    }
}

/// Aggregate fit of one convention/semantics pair to one column group.
#[derive(Clone, Debug, PartialEq)]
pub struct ConventionScore {
    pub column: SumColumn,
    pub conventions: Conventions,
    pub semantics: Semantics,
    pub cells: usize,
    pub missing: usize,
    pub matched: usize,
    pub mean_abs: f64,
    pub max_abs: f64,
}

#[derive(Clone, Debug)]
pub struct Calibration {
    pub cells: Vec<CalibrationCell>,
    pub scores: Vec<ConventionScore>,
}

impl Calibration {
    /// Best-scoring convention for a column: most matches, then lowest mean
    /// residual.
    pub fn best(&self, column: SumColumn) -> Option<&ConventionScore> {
        self.scores.iter().filter(|s| s.column == column).min_by(|a, b| {
            b.matched.cmp(&a.matched).then(a.mean_abs.partial_cmp(&b.mean_abs).unwrap_or(std::cmp::Ordering::Equal))
        })
    }

    /// Cells under a given convention and semantics.
    pub fn cells_for(
        &self,
        column: SumColumn,
        conventions: Conventions,
        semantics: Semantics,
    ) -> impl Iterator<Item = &CalibrationCell> {
        self.cells
            .iter()
            .filter(move |c| c.column == column && c.conventions == conventions && c.semantics == semantics)
    }

    /// Cells not matched by the best convention of their column.
    pub fn unmatched(&self) -> Vec<&CalibrationCell> {
        [SumColumn::Tf, SumColumn::Dc]
            .into_iter()
            .filter_map(|col| self.best(col).map(|b| (col, b.conventions, b.semantics)))
            .flat_map(|(col, c, s)| self.cells_for(col, c, s).filter(|cell| !cell.matched()))
            .collect()
    }
}

fn fixed_label(row: &PaperRow) -> String {
    row.fixed.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

/// Scores every published sum cell of `runs`.
pub fn calibrate(runs: &[TableRun]) -> Calibration {
    let mut cells = Vec::new();
    for run in runs {
        for (k, (paper, swept)) in run.rows.iter().enumerate() {
            for column in [SumColumn::Tf, SumColumn::Dc] {
                let Some(value) = column.paper(paper) else { continue };
                for conventions in Conventions::all() {
                    for semantics in Semantics::ALL {
                        cells.push(CalibrationCell {
                            table: run.table.label.as_str(),
                            row: k,
                            n_copies: paper.n_copies,
                            fixed: fixed_label(paper),
                            column,
                            conventions,
                            semantics,
                            paper: value,
                            recomputed: column.recomputed(swept, conventions, semantics),
                        });
                    }
                }
            }
        }
    }
    let mut scores = Vec::new();
    for column in [SumColumn::Tf, SumColumn::Dc] {
        for conventions in Conventions::all() {
            for semantics in Semantics::ALL {
                let group: Vec<&CalibrationCell> = cells
                    .iter()
                    .filter(|c| c.column == column && c.conventions == conventions && c.semantics == semantics)
                    .collect();
                if group.is_empty() {
                    continue;
                }
                let res: Vec<f64> = group.iter().filter_map(|c| c.residual()).map(f64::abs).collect();
                scores.push(ConventionScore {
                    column,
                    conventions,
                    semantics,
                    cells: group.len(),
                    missing: group.len() - res.len(),
                    matched: group.iter().filter(|c| c.matched()).count(),
                    mean_abs: if res.is_empty() { f64::NAN } else { res.iter().sum::<f64>() / res.len() as f64 },
                    max_abs: res.iter().copied().fold(0.0, f64::max),
                });
            }
        }
    }
    Calibration { cells, scores }
}
