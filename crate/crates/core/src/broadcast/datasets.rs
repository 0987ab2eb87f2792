//! Random-state scatter data and Werner-like surfaces for the figures.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{broadcast_report_with, pool, Conventions};
use crate::cloners::ClonerKind;
use crate::error::{Error, Result};
use crate::states::{sample_random_state, werner_like, Sampler, WernerLikeParams};

/// `Delta TF <= 1/2` and `FB <= 1`, so the TF sum stays below 2.
pub const SUM_TF_BOUND: f64 = 2.0;
/// `Delta DC <= 2` and `FB <= 1`, so the DC sum stays below 3.
pub const SUM_DC_BOUND: f64 = 3.0;
const BOUND_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScatterRow {
    pub index: usize,
    pub purity: f64,
    pub sum_tf: f64,
    pub sum_dc: f64,
    pub broadcast_ok: bool,
    pub input_inseparable: bool,
}

/// One row per random state. Sample `i` draws from stream `i` of a ChaCha
/// generator seeded with `seed`, so rows do not depend on thread count.
pub fn scatter_dataset(
    n_samples: usize,
    seed: u64,
    cloner: ClonerKind,
    n_copies: usize,
    sampler: Sampler,
    conventions: Conventions,
) -> Result<Vec<ScatterRow>> {
    if n_samples == 0 {
        return Err(Error::ParameterOutOfRange("sample count must be at least 1".into()));
    }
    pool().install(|| {
        (0..n_samples)
            .into_par_iter()
            .map(|index| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(index as u64);
                let s = sample_random_state(&mut rng, sampler);
                let r = broadcast_report_with(&s, cloner, n_copies, conventions)?;
                check_bounds(index, r.sum_tf, r.sum_dc)?;
                Ok(ScatterRow {
                    index,
                    purity: r.purity,
                    sum_tf: r.sum_tf,
                    sum_dc: r.sum_dc,
                    broadcast_ok: r.broadcast_ok,
                    input_inseparable: r.input_inseparable,
                })
            })
            .collect()
    })
}

fn check_bounds(index: usize, sum_tf: f64, sum_dc: f64) -> Result<()> {
    if sum_tf > SUM_TF_BOUND + BOUND_SLACK {
        return Err(Error::BoundViolation(format!("sample {index}: TF sum {sum_tf} > {SUM_TF_BOUND}")));
    }
    if sum_dc > SUM_DC_BOUND + BOUND_SLACK {
        return Err(Error::BoundViolation(format!("sample {index}: DC sum {sum_dc} > {SUM_DC_BOUND}")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceRow {
    pub alpha2: f64,
    pub p: f64,
    pub broadcast_ok: bool,
    pub sum_tf: f64,
    pub sum_dc: f64,
}

/// Sums over a `grid x grid` lattice of Werner-like states, `alpha^2` outer.
pub fn surface_grid(
    cloner: ClonerKind,
    n_copies: usize,
    grid: usize,
    conventions: Conventions,
) -> Result<Vec<SurfaceRow>> {
    if grid < 2 {
        return Err(Error::ParameterOutOfRange(format!("surface grid = {grid} needs at least 2 points")));
    }
    let last = (grid - 1) as f64;
    pool().install(|| {
        (0..grid * grid)
            .into_par_iter()
            .map(|k| {
                let alpha2 = (k / grid) as f64 / last;
                let p = (k % grid) as f64 / last;
                let s = werner_like(WernerLikeParams::new(p, alpha2)?);
                let r = broadcast_report_with(&s, cloner, n_copies, conventions)?;
                check_bounds(k, r.sum_tf, r.sum_dc)?;
                Ok(SurfaceRow { alpha2, p, broadcast_ok: r.broadcast_ok, sum_tf: r.sum_tf, sum_dc: r.sum_dc })
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scatter_is_deterministic() {
        let a = scatter_dataset(50, 42, ClonerKind::Local, 2, Sampler::HilbertSchmidt, Conventions::default()).unwrap();
        let b = scatter_dataset(50, 42, ClonerKind::Local, 2, Sampler::HilbertSchmidt, Conventions::default()).unwrap();
        assert_eq!(a, b);
        let c = scatter_dataset(50, 43, ClonerKind::Local, 2, Sampler::HilbertSchmidt, Conventions::default()).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn scatter_rejects_zero_samples() {
        assert!(scatter_dataset(0, 1, ClonerKind::Local, 2, Sampler::HilbertSchmidt, Conventions::default()).is_err());
    }

    #[test]
    fn surface_covers_unit_square() {
        let rows = surface_grid(ClonerKind::Nonlocal, 2, 11, Conventions::default()).unwrap();
        assert_eq!(rows.len(), 121);
        assert_eq!((rows[0].alpha2, rows[0].p), (0.0, 0.0));
        assert_eq!((rows[120].alpha2, rows[120].p), (1.0, 1.0));
        let mid = rows.iter().find(|r| r.alpha2 == 0.5 && r.p == 1.0).unwrap();
        assert!(mid.broadcast_ok);
    }
}
