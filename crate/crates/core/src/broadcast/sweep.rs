//! Grid sweeps over one state parameter with endpoint refinement.

use rayon::prelude::*;

use super::ranges::{bell_range, werner_range};
use super::{pool, Conventions, Interval, PairVerdicts, RangeResult, RawMeasures};
use crate::cloners::{clone_state, ClonerKind};
use crate::error::{Error, Result};
use crate::states::{bell_diagonal, werner_like, BellDiagonalParams, BlochState, WernerLikeParams};

pub const DEFAULT_GRID: usize = 1000;
pub const MIN_GRID: usize = 100;
/// Width below which endpoint bisection stops.
const BISECT_TOL: f64 = 1e-6;

/// Which parameter is swept and which are held fixed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scan {
    /// Werner-like, `p` swept over `[0, 1]`.
    WernerP { alpha2: f64 },
    /// Werner-like, `alpha^2` swept over `[0, 1]`.
    WernerAlpha2 { p: f64 },
    /// Bell-diagonal, `c[swept]` swept over `[-1, 1]`; its entry in `fixed`
    /// is ignored.
    Bell { fixed: [f64; 3], swept: usize },
}

impl Scan {
    pub fn family(&self) -> &'static str {
        match self {
            Scan::WernerP { .. } | Scan::WernerAlpha2 { .. } => "werner",
            Scan::Bell { .. } => "belldiag",
        }
    }

    pub fn variable(&self) -> &'static str {
        match self {
            Scan::WernerP { .. } => "p",
            Scan::WernerAlpha2 { .. } => "alpha2",
            Scan::Bell { swept, .. } => ["c1", "c2", "c3"][(*swept).min(2)],
        }
    }

    /// Names and values of the fixed parameters.
    pub fn fixed(&self) -> Vec<(&'static str, f64)> {
        match *self {
            Scan::WernerP { alpha2 } => vec![("alpha2", alpha2)],
            Scan::WernerAlpha2 { p } => vec![("p", p)],
            Scan::Bell { fixed, swept } => {
                (0..3).filter(|&k| k != swept).map(|k| (["c1", "c2", "c3"][k], fixed[k])).collect()
            }
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        match self {
            Scan::WernerP { .. } | Scan::WernerAlpha2 { .. } => (0.0, 1.0),
            Scan::Bell { .. } => (-1.0, 1.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad =
            |name: &str, x: f64, lo: f64| Err(Error::ParameterOutOfRange(format!("{name} = {x} not in [{lo}, 1]")));
        match *self {
            Scan::WernerP { alpha2 } if !(0.0..=1.0).contains(&alpha2) => bad("alpha2", alpha2, 0.0),
            Scan::WernerAlpha2 { p } if !(0.0..=1.0).contains(&p) => bad("p", p, 0.0),
            Scan::Bell { swept, .. } if swept > 2 => {
                Err(Error::ParameterOutOfRange(format!("swept coefficient index {swept} not in 0..3")))
            }
            Scan::Bell { .. } => {
                for (name, x) in self.fixed() {
                    if !(-1.0..=1.0).contains(&x) {
                        return bad(name, x, -1.0);
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Input state at swept value `x`, or `None` outside the valid set.
    pub fn state_at(&self, x: f64) -> Option<BlochState> {
        match *self {
            Scan::WernerP { alpha2 } => WernerLikeParams::new(x, alpha2).ok().map(werner_like),
            Scan::WernerAlpha2 { p } => WernerLikeParams::new(p, x).ok().map(werner_like),
            Scan::Bell { mut fixed, swept } => {
                fixed[swept] = x;
                BellDiagonalParams::new(fixed[0], fixed[1], fixed[2]).ok().map(bell_diagonal)
            }
        }
    }

    /// Closed-form range for the same scan.
    pub fn analytic(&self, cloner: ClonerKind, n_copies: usize) -> Result<RangeResult> {
        match *self {
            Scan::WernerP { alpha2 } => werner_range(cloner, n_copies, Some(alpha2), None),
            Scan::WernerAlpha2 { p } => werner_range(cloner, n_copies, None, Some(p)),
            Scan::Bell { fixed, swept } => bell_range(fixed, swept, cloner, n_copies),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepSpec {
    pub scan: Scan,
    pub cloner: ClonerKind,
    pub n_copies: usize,
    pub grid: usize,
}

impl SweepSpec {
    pub fn new(scan: Scan, cloner: ClonerKind, n_copies: usize) -> Self {
        SweepSpec { scan, cloner, n_copies, grid: DEFAULT_GRID }
    }

    pub fn with_grid(mut self, grid: usize) -> Self {
        self.grid = grid;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.grid < MIN_GRID {
            return Err(Error::ParameterOutOfRange(format!(
                "grid = {} below the minimum of {MIN_GRID} points",
                self.grid
            )));
        }
        self.scan.validate()?;
        // surfaces unsupported cloner/copy combinations before sweeping
        self.scan.analytic(self.cloner, self.n_copies).map(|_| ())
    }
}

/// Extreme and endpoint values of one sum over the broadcastable set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Extrema {
    pub max: f64,
    pub min: f64,
    /// At the lower end of the first interval.
    pub at_lo: f64,
    /// At the upper end of the last interval.
    pub at_hi: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConventionSums {
    pub conventions: Conventions,
    pub tf: Option<Extrema>,
    pub dc: Option<Extrema>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub spec: SweepSpec,
    /// Numerically detected broadcastable set.
    pub range: RangeResult,
    pub analytic: RangeResult,
    /// One entry per element of [`Conventions::all`].
    pub sums: Vec<ConventionSums>,
    pub broadcast_points: usize,
    pub invalid_points: usize,
    /// Some broadcast point had a larger TF after cloning than before.
    pub anomaly: bool,
}

impl SweepRow {
    pub fn sums_for(&self, c: Conventions) -> &ConventionSums {
        self.sums.iter().find(|s| s.conventions == c).expect("every convention is evaluated")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    Invalid,
    NotBroadcast,
    Broadcast,
}

struct Point {
    class: Class,
    raw: Option<RawMeasures>,
}

fn evaluate(spec: &SweepSpec, x: f64, with_measures: bool) -> Result<Point> {
    let Some(state) = spec.scan.state_at(x) else {
        return Ok(Point { class: Class::Invalid, raw: None });
    };
    let out = clone_state(&state, spec.cloner, spec.n_copies)?;
    let verdicts = PairVerdicts::of(&out)?;
    if !verdicts.broadcast_ok() {
        return Ok(Point { class: Class::NotBroadcast, raw: None });
    }
    let raw = if with_measures { Some(RawMeasures::compute(&state, &out.desired_pair)?) } else { None };
    Ok(Point { class: Class::Broadcast, raw })
}

/// Bisects between a broadcast point and a neighbour of another class.
/// Returns the boundary estimate, whether it is closed, and the last
/// broadcast point seen.
fn refine(spec: &SweepSpec, mut inside: f64, mut outside: f64, mut out_class: Class) -> Result<(f64, bool, f64)> {
    while (inside - outside).abs() > BISECT_TOL {
        let mid = 0.5 * (inside + outside);
        let class = evaluate(spec, mid, false)?.class;
        if class == Class::Broadcast {
            inside = mid;
        } else {
            outside = mid;
            out_class = class;
        }
    }
    Ok((0.5 * (inside + outside), out_class == Class::Invalid, inside))
}

fn grid_points(spec: &SweepSpec) -> Vec<f64> {
    let (lo, hi) = spec.scan.domain();
    let last = (spec.grid - 1) as f64;
    (0..spec.grid).map(|k| if k + 1 == spec.grid { hi } else { lo + (hi - lo) * k as f64 / last }).collect()
}

fn extrema(values: &[f64], at_lo: f64, at_hi: f64) -> Extrema {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    Extrema { max, min, at_lo, at_hi }
}

fn sweep_inner(spec: &SweepSpec) -> Result<SweepRow> {
    spec.validate()?;
    let analytic = spec.scan.analytic(spec.cloner, spec.n_copies)?;
    let xs = grid_points(spec);
    let points: Vec<Point> = xs.par_iter().map(|&x| evaluate(spec, x, true)).collect::<Result<_>>()?;

    let mut intervals = Vec::new();
    let mut edge_points = Vec::new();
    let mut k = 0;
    while k < points.len() {
        if points[k].class != Class::Broadcast {
            k += 1;
            continue;
        }
        let start = k;
        while k + 1 < points.len() && points[k + 1].class == Class::Broadcast {
            k += 1;
        }
        let end = k;
        let (lo, lo_closed, lo_inside) = if start == 0 {
            (xs[0], true, xs[0])
        } else {
            refine(spec, xs[start], xs[start - 1], points[start - 1].class)?
        };
        let (hi, hi_closed, hi_inside) = if end + 1 == points.len() {
            (xs[end], true, xs[end])
        } else {
            refine(spec, xs[end], xs[end + 1], points[end + 1].class)?
        };
        intervals.push(Interval { lo, hi, lo_open: !lo_closed, hi_open: !hi_closed });
        edge_points.push(lo_inside);
        edge_points.push(hi_inside);
        k += 1;
    }

    let mut raws: Vec<RawMeasures> = points.iter().filter_map(|p| p.raw).collect();
    let broadcast_points = raws.len();
    let invalid_points = points.iter().filter(|p| p.class == Class::Invalid).count();
    let edges: Vec<RawMeasures> = edge_points
        .par_iter()
        .map(|&x| {
            evaluate(spec, x, true)?
                .raw
                .ok_or_else(|| Error::InvalidState(format!("refined endpoint {x} is not broadcast")))
        })
        .collect::<Result<_>>()?;
    raws.extend(edges.iter().copied());
    let anomaly = raws.iter().any(|r| r.dtf < -1e-12);

    let sums = Conventions::all()
        .into_iter()
        .map(|c| {
            if raws.is_empty() {
                return ConventionSums { conventions: c, tf: None, dc: None };
            }
            let tf: Vec<f64> = raws.iter().map(|r| r.sum_tf(c)).collect();
            let dc: Vec<f64> = raws.iter().map(|r| r.sum_dc(c)).collect();
            let (first, last) = (edges[0], edges[edges.len() - 1]);
            ConventionSums {
                conventions: c,
                tf: Some(extrema(&tf, first.sum_tf(c), last.sum_tf(c))),
                dc: Some(extrema(&dc, first.sum_dc(c), last.sum_dc(c))),
            }
        })
        .collect();

    Ok(SweepRow {
        spec: *spec,
        range: RangeResult { variable: spec.scan.variable(), intervals },
        analytic,
        sums,
        broadcast_points,
        invalid_points,
        anomaly,
    })
}

/// Sweeps one row. Grid points are evaluated in parallel and merged in grid
/// order.
pub fn sweep(spec: &SweepSpec) -> Result<SweepRow> {
    pool().install(|| sweep_inner(spec))
}

/// Sweeps several rows; output order follows `specs`.
pub fn sweep_rows(specs: &[SweepSpec]) -> Result<Vec<SweepRow>> {
    pool().install(|| specs.par_iter().map(sweep_inner).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lo_of(row: &SweepRow) -> f64 {
        row.range.intervals[0].lo
    }

    #[test]
    fn rejects_coarse_grid() {
        let spec = SweepSpec::new(Scan::WernerP { alpha2: 0.5 }, ClonerKind::Local, 2).with_grid(50);
        assert!(matches!(sweep(&spec), Err(Error::ParameterOutOfRange(_))));
        let spec = SweepSpec::new(Scan::WernerP { alpha2: 0.5 }, ClonerKind::Local, 3);
        assert!(sweep(&spec).is_err());
    }

    #[test]
    fn werner_local_matches_closed_form() {
        let row = sweep(&SweepSpec::new(Scan::WernerP { alpha2: 0.2 }, ClonerKind::Local, 2).with_grid(200)).unwrap();
        let a = row.analytic.intervals[0];
        let n = row.range.intervals[0];
        assert!((n.lo - a.lo).abs() < 1e-5 && n.lo_open && !n.hi_open && n.hi == 1.0);
        assert!(row.sums_for(Conventions::default()).tf.is_some());
    }

    #[test]
    fn empty_row_has_no_sums() {
        let row =
            sweep(&SweepSpec::new(Scan::WernerP { alpha2: 0.2 }, ClonerKind::Nonlocal, 5).with_grid(100)).unwrap();
        assert!(row.range.is_empty() && row.analytic.is_empty());
        assert!(row.sums.iter().all(|s| s.tf.is_none() && s.dc.is_none()));
        assert_eq!(row.range.to_string(), "NA");
    }

    #[test]
    fn nonlocal_alpha2_row() {
        let row =
            sweep(&SweepSpec::new(Scan::WernerP { alpha2: 0.5 }, ClonerKind::Nonlocal, 3).with_grid(100)).unwrap();
        assert!((lo_of(&row) - 0.714_285_7).abs() < 1e-5);
    }

    #[test]
    fn bell_row_closed_at_validity_edge() {
        let scan = Scan::Bell { fixed: [-0.875, -0.875, 0.0], swept: 2 };
        let row = sweep(&SweepSpec::new(scan, ClonerKind::Local, 2).with_grid(100)).unwrap();
        let iv = row.range.intervals[0];
        assert!(!iv.lo_open && !iv.hi_open);
        assert!((iv.lo + 1.0).abs() < 1e-12 && (iv.hi + 0.75).abs() < 1e-5);
        assert!(row.invalid_points > 0);
    }

    #[test]
    fn rows_are_deterministic_and_ordered() {
        let specs: Vec<SweepSpec> = [0.4, 0.5, 0.6]
            .iter()
            .map(|&a| SweepSpec::new(Scan::WernerP { alpha2: a }, ClonerKind::Nonlocal, 2).with_grid(100))
            .collect();
        let a = sweep_rows(&specs).unwrap();
        let b = sweep_rows(&specs).unwrap();
        assert_eq!(a, b);
        for (row, spec) in a.iter().zip(&specs) {
            assert_eq!(&row.spec, spec);
        }
    }
}
