//! Broadcasting verdicts, closed-form ranges, complementarity sums and the
//! parameter sweeps behind the tables and figures.
//!
//! A state is broadcast when the desired (nonlocal) output pair is
//! inseparable while both side (local) pairs are separable.

mod datasets;
mod ranges;
mod sweep;

use std::fmt;
use std::sync::OnceLock;

pub use datasets::{scatter_dataset, surface_grid, ScatterRow, SurfaceRow, SUM_DC_BOUND, SUM_TF_BOUND};
pub use ranges::{
    bell_local_inseparable, bell_nonlocal_inseparable, bell_range, nonlocal_h, werner_local_range,
    werner_local_range_p, werner_nonlocal_range, werner_nonlocal_range_p, werner_range,
};
pub use sweep::{sweep, sweep_rows, ConventionSums, Extrema, Scan, SweepRow, SweepSpec, DEFAULT_GRID, MIN_GRID};

use crate::cloners::{clone_state, CloneOutput, ClonerKind};
use crate::error::Result;
use crate::measures::{
    dense_coding_capacity, ppt_verdict_bloch, teleportation_fidelity, uhlmann_fidelity, DcFormula, FbConvention,
    SeparabilityVerdict,
};
use crate::states::{purity, BlochState};

/// Environment variable capping the number of sweep worker threads.
pub const THREADS_ENV: &str = "ENTBROADCAST_THREADS";

/// Worker pool shared by sweeps and dataset generators.
pub(crate) fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
            if n > 0 {
                builder = builder.num_threads(n);
            }
        }
        builder.build().expect("failed to start sweep thread pool")
    })
}

/// DC formula and FB power used to form the complementarity sums.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Conventions {
    pub dc: DcFormula,
    pub fb: FbConvention,
}

impl Conventions {
    pub fn all() -> [Conventions; 4] {
        let mut out = [Conventions::default(); 4];
        let mut k = 0;
        for fb in FbConvention::ALL {
            for dc in DcFormula::ALL {
                out[k] = Conventions { dc, fb };
                k += 1;
            }
        }
        out
    }
}

impl fmt::Display for Conventions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dc={}, fb={}", self.dc.name(), self.fb.name())
    }
}

/// Convention-free ingredients of the complementarity sums.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RawMeasures {
    /// `tr sqrt(sqrt(rho) sigma sqrt(rho))` between input and desired pair.
    pub fb_root: f64,
    pub dtf: f64,
    /// Unclamped dense-coding capacities.
    pub dc_input: f64,
    pub dc_output: f64,
}

impl RawMeasures {
    pub fn compute(input: &BlochState, output: &BlochState) -> Result<Self> {
        let rin = input.density_unchecked();
        let rout = output.density_unchecked();
        Ok(RawMeasures {
            fb_root: uhlmann_fidelity(&rin, &rout)?,
            dtf: teleportation_fidelity(input)? - teleportation_fidelity(output)?,
            dc_input: dense_coding_capacity(&rin, DcFormula::Unclamped)?,
            dc_output: dense_coding_capacity(&rout, DcFormula::Unclamped)?,
        })
    }

    pub fn fb(&self, c: FbConvention) -> f64 {
        c.apply(self.fb_root)
    }

    pub fn ddc(&self, f: DcFormula) -> f64 {
        f.apply(self.dc_input) - f.apply(self.dc_output)
    }

    pub fn sum_tf(&self, c: Conventions) -> f64 {
        self.dtf + self.fb(c.fb)
    }

    pub fn sum_dc(&self, c: Conventions) -> f64 {
        self.ddc(c.dc) + self.fb(c.fb)
    }
}

/// Outcome of cloning one input state and testing its output pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct BroadcastReport {
    pub input: BlochState,
    pub cloner: ClonerKind,
    pub n_copies: usize,
    pub conventions: Conventions,
    pub desired_pair: BlochState,
    pub desired_verdict: SeparabilityVerdict,
    pub side_verdicts: [SeparabilityVerdict; 2],
    pub input_inseparable: bool,
    pub desired_pair_inseparable: bool,
    pub side_pair_separable: bool,
    pub broadcast_ok: bool,
    pub fb: f64,
    pub dtf: f64,
    pub ddc: f64,
    pub sum_tf: f64,
    pub sum_dc: f64,
    pub purity: f64,
    /// Set when cloning increased the teleportation fidelity.
    pub anomaly: bool,
    pub raw: RawMeasures,
}

/// Verdicts on one clone output.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct PairVerdicts {
    pub desired: SeparabilityVerdict,
    pub side: [SeparabilityVerdict; 2],
}

impl PairVerdicts {
    pub fn of(out: &CloneOutput) -> Result<Self> {
        Ok(PairVerdicts {
            desired: ppt_verdict_bloch(&out.desired_pair)?,
            side: [ppt_verdict_bloch(&out.side_pair_a)?, ppt_verdict_bloch(&out.side_pair_b)?],
        })
    }

    pub fn side_separable(&self) -> bool {
        self.side.iter().all(|v| !v.inseparable)
    }

    pub fn broadcast_ok(&self) -> bool {
        self.desired.inseparable && self.side_separable()
    }
}

/// Report with the default conventions (unclamped DC, root FB).
pub fn broadcast_report(s: &BlochState, cloner: ClonerKind, n_copies: usize) -> Result<BroadcastReport> {
    broadcast_report_with(s, cloner, n_copies, Conventions::default())
}

pub fn broadcast_report_with(
    s: &BlochState,
    cloner: ClonerKind,
    n_copies: usize,
    conventions: Conventions,
) -> Result<BroadcastReport> {
    let out = clone_state(s, cloner, n_copies)?;
    let verdicts = PairVerdicts::of(&out)?;
    let raw = RawMeasures::compute(s, &out.desired_pair)?;
    let input_inseparable = ppt_verdict_bloch(s)?.inseparable;
    let dtf = raw.dtf;
    Ok(BroadcastReport {
        input: s.clone(),
        cloner,
        n_copies,
        conventions,
        desired_pair: out.desired_pair,
        desired_verdict: verdicts.desired,
        side_verdicts: verdicts.side,
        input_inseparable,
        desired_pair_inseparable: verdicts.desired.inseparable,
        side_pair_separable: verdicts.side_separable(),
        broadcast_ok: verdicts.broadcast_ok(),
        fb: raw.fb(conventions.fb),
        dtf,
        ddc: raw.ddc(conventions.dc),
        sum_tf: raw.sum_tf(conventions),
        sum_dc: raw.sum_dc(conventions),
        purity: purity(s),
        anomaly: dtf < -1e-12,
        raw,
    })
}

/// One interval of a broadcasting range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_open { x > self.lo } else { x >= self.lo };
        let below = if self.hi_open { x < self.hi } else { x <= self.hi };
        above && below
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

fn fmt_endpoint(x: f64) -> String {
    let r = (x * 100.0).round() / 100.0;
    if r == r.trunc() {
        format!("{}", r as i64)
    } else {
        format!("{r:.2}")
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { '(' } else { '[' },
            fmt_endpoint(self.lo),
            fmt_endpoint(self.hi),
            if self.hi_open { ')' } else { ']' }
        )
    }
}

/// Set of broadcastable values of one swept variable.
#[derive(Clone, Debug, PartialEq)]
pub struct RangeResult {
    pub variable: &'static str,
    pub intervals: Vec<Interval>,
}

impl RangeResult {
    pub fn empty(variable: &'static str) -> Self {
        RangeResult { variable, intervals: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }

    /// Smallest and largest endpoint, if nonempty.
    pub fn hull(&self) -> Option<(f64, f64)> {
        Some((self.intervals.first()?.lo, self.intervals.last()?.hi))
    }
}

impl fmt::Display for RangeResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "NA");
        }
        for (k, iv) in self.intervals.iter().enumerate() {
            if k > 0 {
                write!(f, " U ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}
