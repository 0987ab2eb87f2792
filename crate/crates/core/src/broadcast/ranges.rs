//! Closed-form broadcasting ranges.
//!
//! Both cloners act covariantly, so the desired pair of a Werner-like or
//! Bell-diagonal input keeps its family and only its correlation matrix
//! shrinks by `eta_T` (4/9 locally, `(N+4)/(5N)` for the nonlocal 1→N
//! machine). Inseparability of the output then reduces to one linear
//! inequality per partial-transpose eigenvalue. The side pairs of these
//! families stay separable wherever the desired pair is inseparable, which
//! the numeric sweep confirms independently.

use super::{Interval, RangeResult};
use crate::cloners::{ClonerKind, LocalClonerSpec, NonlocalClonerSpec};
use crate::error::{Error, Result};
use crate::states::BellDiagonalParams;

const LOCAL_ETA_T: f64 = 4.0 / 9.0;
const EDGE_TOL: f64 = 1e-12;

fn correlation_shrink(cloner: ClonerKind, n_copies: usize) -> Result<f64> {
    match cloner {
        ClonerKind::Local => {
            LocalClonerSpec::new(n_copies)?;
            Ok(LOCAL_ETA_T)
        }
        ClonerKind::Nonlocal => Ok(NonlocalClonerSpec::new(n_copies)?.shrink_factor()),
    }
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::ParameterOutOfRange(format!("{name} = {x} not in [0, 1]")));
    }
    Ok(())
}

/// The shrunken Werner-like pair is entangled iff
/// `4 eta p alpha beta > 1 - eta p`.
fn werner_p_range(alpha2: f64, eta: f64) -> RangeResult {
    let ab = (alpha2 * (1.0 - alpha2)).max(0.0).sqrt();
    let lo = 1.0 / (eta * (4.0 * ab + 1.0));
    if lo >= 1.0 {
        return RangeResult::empty("p");
    }
    RangeResult { variable: "p", intervals: vec![Interval { lo, hi: 1.0, lo_open: true, hi_open: false }] }
}

fn werner_alpha2_range(p: f64, eta: f64) -> RangeResult {
    if p <= 0.0 {
        return RangeResult::empty("alpha2");
    }
    let c = (1.0 - eta * p) / (4.0 * eta * p);
    let rad = 0.25 - c * c;
    if c >= 0.5 || rad <= 0.0 {
        return RangeResult::empty("alpha2");
    }
    let h = rad.sqrt();
    RangeResult {
        variable: "alpha2",
        intervals: vec![Interval { lo: 0.5 - h, hi: 0.5 + h, lo_open: true, hi_open: true }],
    }
}

/// Local range over `p` at fixed `alpha^2`: `p > 9 / (16 alpha beta + 4)`,
/// which implies `p > 3/4`.
pub fn werner_local_range(alpha2: f64) -> Result<RangeResult> {
    check_unit("alpha2", alpha2)?;
    Ok(werner_p_range(alpha2, LOCAL_ETA_T))
}

/// Local range over `alpha^2` at fixed `p`: `N- < alpha^2 < N+` with
/// `N± = (8 ± sqrt(48 - 81/p^2 + 72/p)) / 16`, nonempty for `p > 3/4`.
pub fn werner_local_range_p(p: f64) -> Result<RangeResult> {
    check_unit("p", p)?;
    Ok(werner_alpha2_range(p, LOCAL_ETA_T))
}

/// Nonlocal 1→N range over `p` at fixed `alpha^2`.
pub fn werner_nonlocal_range(alpha2: f64, n_copies: usize) -> Result<RangeResult> {
    check_unit("alpha2", alpha2)?;
    Ok(werner_p_range(alpha2, NonlocalClonerSpec::new(n_copies)?.shrink_factor()))
}

/// Nonlocal 1→N range over `alpha^2` at fixed `p`. For N = 2 this is
/// `1/2 - H < alpha^2 < 1/2 + H` with [`nonlocal_h`].
pub fn werner_nonlocal_range_p(p: f64, n_copies: usize) -> Result<RangeResult> {
    check_unit("p", p)?;
    Ok(werner_alpha2_range(p, NonlocalClonerSpec::new(n_copies)?.shrink_factor()))
}

/// Half-width `H = sqrt((27p^2 + 30p - 25) / (144 p^2))` of the 1→2
/// nonlocal `alpha^2` window; zero below `p = 5/9`.
pub fn nonlocal_h(p: f64) -> f64 {
    if p <= 0.0 {
        return 0.0;
    }
    ((27.0 * p * p + 30.0 * p - 25.0) / (144.0 * p * p)).max(0.0).sqrt()
}

/// Werner-like range for either orientation: `alpha2 = Some(a)` scans `p`,
/// `p = Some(p)` scans `alpha^2`.
pub fn werner_range(cloner: ClonerKind, n_copies: usize, alpha2: Option<f64>, p: Option<f64>) -> Result<RangeResult> {
    let eta = correlation_shrink(cloner, n_copies)?;
    match (alpha2, p) {
        (Some(a), None) => {
            check_unit("alpha2", a)?;
            Ok(werner_p_range(a, eta))
        }
        (None, Some(p)) => {
            check_unit("p", p)?;
            Ok(werner_alpha2_range(p, eta))
        }
        _ => Err(Error::ParameterOutOfRange("fix exactly one of alpha2 and p".into())),
    }
}

/// Published inequality set for the local-cloner desired pair
/// `{0, 0, 4/9 T}`.
pub fn bell_local_inseparable(params: &BellDiagonalParams) -> bool {
    let [c1, c2, c3] = params.c();
    let q = 9.0 / 4.0;
    let neg = (-1.0..-0.25).contains(&c1) && (c1 + c2 + c3 < -q || (c1 - c3 + q < c2 && c2 <= 1.0));
    let pos = c1 > 0.25 && c1 <= 1.0 && ((q - c1 + c3 < c2 && c2 <= 1.0) || (-1.0 <= c2 && c2 < c1 + c3 - q));
    valid(params) && (neg || pos)
}

/// Published polynomial inequalities for the 1→2 nonlocal desired pair
/// `{0, 0, 3/5 T}`, with `gamma = tr T`.
pub fn bell_nonlocal_inseparable(params: &BellDiagonalParams) -> bool {
    let [c1, c2, c3] = params.c();
    let g = params.gamma();
    let first = (6.0 * c1 - 3.0 * g + 5.0) * (3.0 * g - 6.0 * c3 - 5.0) * (3.0 * g - 6.0 * c2 - 5.0) * (3.0 * g + 5.0);
    let second = (3.0 * c3 + 5.0) * ((5.0 - 3.0 * c3).powi(2) - 9.0 * (c1 - c2).powi(2));
    valid(params) && (first < 0.0 || second < 0.0)
}

fn valid(params: &BellDiagonalParams) -> bool {
    params.lambdas().iter().all(|&l| l >= -1e-12)
}

/// Sign vectors `s` with `lambda_mn = (1 + s.c) / 4`.
fn bell_signs() -> [[f64; 3]; 4] {
    let sign = |k: u32| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut out = [[0.0; 3]; 4];
    for m in 0..2u32 {
        for n in 0..2u32 {
            out[(2 * m + n) as usize] = [sign(m), -sign(m + n), sign(n)];
        }
    }
    out
}

/// Closed-form range of `c[swept]` with the other two coefficients fixed.
/// The desired pair `{0, 0, eta T}` is entangled iff its largest Bell
/// weight exceeds 1/2, i.e. `s.c > 1/eta` for some sign vector; validity
/// needs `s.c >= -1` for all four.
pub fn bell_range(fixed: [f64; 3], swept: usize, cloner: ClonerKind, n_copies: usize) -> Result<RangeResult> {
    if swept > 2 {
        return Err(Error::ParameterOutOfRange(format!("swept coefficient index {swept} not in 0..3")));
    }
    for (k, &c) in fixed.iter().enumerate() {
        if k != swept && !(-1.0..=1.0).contains(&c) {
            return Err(Error::ParameterOutOfRange(format!("c{} = {c} not in [-1, 1]", k + 1)));
        }
    }
    let eta = correlation_shrink(cloner, n_copies)?;
    let variable = ["c1", "c2", "c3"][swept];

    let (mut vlo, mut vhi) = (-1.0f64, 1.0f64);
    // entangled for x > ent_lo or x < ent_hi
    let (mut ent_lo, mut ent_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for s in bell_signs() {
        let rest: f64 = (0..3).filter(|&k| k != swept).map(|k| s[k] * fixed[k]).sum();
        let sk = s[swept];
        // validity: sk x >= -1 - rest
        let bound = -1.0 - rest;
        // entanglement: sk x > 1/eta - rest
        let thr = 1.0 / eta - rest;
        if sk > 0.0 {
            vlo = vlo.max(bound);
            ent_lo = ent_lo.min(thr);
        } else {
            vhi = vhi.min(-bound);
            ent_hi = ent_hi.max(-thr);
        }
    }
    let mut intervals = Vec::new();
    if vlo <= vhi {
        if ent_lo < ent_hi {
            intervals.push(Interval { lo: vlo, hi: vhi, lo_open: false, hi_open: false });
        } else {
            // a threshold landing on the validity edge leaves that edge unentangled
            if ent_hi > vlo {
                let (hi, hi_open) = if ent_hi > vhi + EDGE_TOL { (vhi, false) } else { (ent_hi.min(vhi), true) };
                intervals.push(Interval { lo: vlo, hi, lo_open: false, hi_open });
            }
            if ent_lo < vhi {
                let (lo, lo_open) = if ent_lo < vlo - EDGE_TOL { (vlo, false) } else { (ent_lo.max(vlo), true) };
                intervals.push(Interval { lo, hi: vhi, lo_open, hi_open: false });
            }
            // a single valid point counts when it is entangled
            if intervals.is_empty() && vlo == vhi && (vlo > ent_lo || vlo < ent_hi) {
                intervals.push(Interval { lo: vlo, hi: vhi, lo_open: false, hi_open: false });
            }
        }
    }
    Ok(RangeResult { variable, intervals })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(r: &RangeResult) -> Interval {
        assert_eq!(r.intervals.len(), 1, "{r}");
        r.intervals[0]
    }

    #[test]
    fn local_p_range_examples() {
        let iv = single(&werner_local_range(0.2).unwrap());
        assert!((iv.lo - 0.87).abs() < 0.005 && iv.lo_open && !iv.hi_open);
        assert!((single(&werner_local_range(0.5).unwrap()).lo - 0.75).abs() < 1e-12);
        assert_eq!(werner_local_range(0.2).unwrap().to_string(), "(0.87, 1]");
        assert!(werner_local_range(0.0).unwrap().is_empty());
        assert!(werner_local_range(1.5).is_err());
    }

    #[test]
    fn local_alpha2_range_matches_n_pm() {
        for p in [0.76, 0.8, 0.9, 1.0] {
            let iv = single(&werner_local_range_p(p).unwrap());
            let disc: f64 = 48.0 - 81.0 / (p * p) + 72.0 / p;
            assert!((iv.lo - (8.0 - disc.sqrt()) / 16.0).abs() < 1e-12);
            assert!((iv.hi - (8.0 + disc.sqrt()) / 16.0).abs() < 1e-12);
        }
        assert_eq!(werner_local_range_p(0.8).unwrap().to_string(), "(0.29, 0.71)");
        assert!(werner_local_range_p(0.75).unwrap().is_empty());
    }

    #[test]
    fn nonlocal_examples() {
        assert_eq!(werner_nonlocal_range(0.5, 2).unwrap().to_string(), "(0.56, 1]");
        assert!((single(&werner_nonlocal_range(0.5, 2).unwrap()).lo - 5.0 / 9.0).abs() < 1e-12);
        assert_eq!(werner_nonlocal_range_p(0.75, 2).unwrap().to_string(), "(0.10, 0.90)");
        assert!(werner_nonlocal_range_p(5.0 / 9.0, 2).unwrap().is_empty());
        assert!(werner_nonlocal_range(0.2, 5).unwrap().is_empty());
        for p in [0.6, 0.75, 0.9, 1.0] {
            let iv = single(&werner_nonlocal_range_p(p, 2).unwrap());
            assert!((iv.hi - 0.5 - nonlocal_h(p)).abs() < 1e-12);
        }
        assert_eq!(nonlocal_h(0.5), 0.0);
    }

    #[test]
    fn werner_range_dispatch() {
        assert!(werner_range(ClonerKind::Local, 3, Some(0.5), None).is_err());
        assert!(werner_range(ClonerKind::Local, 2, Some(0.5), Some(0.5)).is_err());
        let r = werner_range(ClonerKind::Nonlocal, 3, Some(0.5), None).unwrap();
        assert_eq!(r.to_string(), "(0.71, 1]");
    }

    #[test]
    fn bell_predicate_examples() {
        let p = BellDiagonalParams::new(-7.0 / 8.0, -7.0 / 8.0, -7.0 / 8.0).unwrap();
        assert!(bell_local_inseparable(&p));
        let zero = BellDiagonalParams::new(0.0, 0.0, 0.0).unwrap();
        assert!(!bell_local_inseparable(&zero) && !bell_nonlocal_inseparable(&zero));
        let bell = BellDiagonalParams::new(1.0, -1.0, 1.0).unwrap();
        assert!(bell_nonlocal_inseparable(&bell) && bell_local_inseparable(&bell));
    }

    #[test]
    fn bell_range_main_tables() {
        let local = |c1: f64, c2: f64| bell_range([c1, c2, 0.0], 2, ClonerKind::Local, 2).unwrap();
        assert_eq!(local(-0.875, -0.875).to_string(), "[-1, -0.75]");
        assert_eq!(local(-0.75, -0.75).to_string(), "[-1, -0.75)");
        let r = local(-0.875, -0.75);
        assert_eq!(r.to_string(), "[-0.88, -0.63)");
        assert!((r.intervals[0].lo + 0.875).abs() < 1e-12 && (r.intervals[0].hi + 0.625).abs() < 1e-12);

        let nl = |c1: f64, c2: f64| bell_range([c1, c2, 0.0], 2, ClonerKind::Nonlocal, 2).unwrap();
        let r = nl(-7.0 / 9.0, -7.0 / 9.0);
        assert!(!r.intervals[0].hi_open && (r.intervals[0].hi + 5.0 / 9.0).abs() < 1e-12);
        let r = nl(-5.0 / 9.0, -5.0 / 9.0);
        assert!(r.intervals[0].hi_open && (r.intervals[0].hi + 5.0 / 9.0).abs() < 1e-12);
        let r = nl(-7.0 / 9.0, -5.0 / 9.0);
        assert!((r.intervals[0].lo + 7.0 / 9.0).abs() < 1e-12 && (r.intervals[0].hi + 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn bell_range_single_valid_point() {
        let r = bell_range([0.0, -1.0, 1.0], 0, ClonerKind::Nonlocal, 5).unwrap();
        assert_eq!(r.intervals, vec![Interval { lo: 1.0, hi: 1.0, lo_open: false, hi_open: false }]);
        let r = bell_range([0.0, -0.56, 0.56], 0, ClonerKind::Nonlocal, 2).unwrap();
        assert_eq!(r.to_string(), "(0.55, 1]");
    }
}
