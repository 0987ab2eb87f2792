//! C ABI for `entbroadcast`.
//!
//! Every function returns an [`EbStatus`]; results go through out-pointers.
//! On failure a message is stored per thread and can be read with
//! [`eb_last_error_message`]. States are opaque [`EbState`] handles created
//! by the `eb_state_*` constructors and released with [`eb_state_free`].
//! Enumerated arguments are plain `uint32_t` values from the `Eb*` enums, so
//! out-of-range values are reported instead of being undefined behaviour.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use entbroadcast::broadcast::{broadcast_report_with, sweep, Conventions, Interval, Scan, SweepSpec};
use entbroadcast::cloners::{clone_state, ClonerKind};
use entbroadcast::measures::{
    dense_coding_capacity, ppt_verdict_bloch, teleportation_fidelity, DcFormula, FbConvention,
};
use entbroadcast::states::{
    bell_diagonal, purity, sample_with_seed, werner_like, BellDiagonalParams, BlochState, Sampler, WernerLikeParams,
};
use entbroadcast::Error;
use nalgebra::{Matrix3, Vector3};

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidState = 3,
    Unsupported = 4,
    BufferTooSmall = 5,
    Internal = 6,
}

#[repr(u32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EbCloner {
    Local = 0,
    Nonlocal = 1,
}

#[repr(u32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EbDcFormula {
    Unclamped = 0,
    Clamped = 1,
}

#[repr(u32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EbFbConvention {
    Root = 0,
    Squared = 1,
}

#[repr(u32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EbSampler {
    HilbertSchmidt = 0,
    BlochRejection = 1,
}

#[repr(u32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EbWernerSweep {
    /// Sweep `p` at fixed `alpha^2`.
    P = 0,
    /// Sweep `alpha^2` at fixed `p`.
    Alpha2 = 1,
}

#[repr(u32)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EbRangeMethod {
    /// Closed-form inequalities.
    Analytic = 0,
    /// Grid sweep with bisected endpoints.
    Numeric = 1,
}

/// Opaque two-qubit state.
pub struct EbState {
    inner: BlochState,
}

/// Outcome of cloning one state.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EbReport {
    pub input_inseparable: bool,
    pub desired_pair_inseparable: bool,
    pub side_pair_separable: bool,
    pub broadcast_ok: bool,
    pub desired_min_pt_eigenvalue: f64,
    pub fb: f64,
    pub dtf: f64,
    pub ddc: f64,
    pub sum_tf: f64,
    pub sum_dc: f64,
    pub purity: f64,
}

/// One interval of a broadcasting range.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EbInterval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl From<Interval> for EbInterval {
    fn from(i: Interval) -> Self {
        EbInterval { lo: i.lo, hi: i.hi, lo_open: i.lo_open, hi_open: i.hi_open }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(EbStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::ParameterOutOfRange(_) | Error::ShapeMismatch(_) | Error::NotSquare(..) => EbStatus::InvalidArgument,
            Error::InvalidState(_) | Error::NotHermitian(_) => EbStatus::InvalidState,
            Error::Unsupported(_) => EbStatus::Unsupported,
            _ => EbStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(EbStatus::InvalidArgument, msg.into())
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> EbStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EbStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            EbStatus::Internal
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| Failure(EbStatus::NullPointer, format!("{name} is null")))
}

unsafe fn state<'a>(p: *const EbState) -> Result<&'a BlochState, Failure> {
    p.as_ref().map(|s| &s.inner).ok_or_else(|| Failure(EbStatus::NullPointer, "state is null".into()))
}

unsafe fn array<'a>(p: *const f64, len: usize, name: &str) -> Result<&'a [f64], Failure> {
    if p.is_null() {
        return Err(Failure(EbStatus::NullPointer, format!("{name} is null")));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn array_mut<'a>(p: *mut f64, len: usize, name: &str) -> Result<&'a mut [f64], Failure> {
    if p.is_null() {
        return Err(Failure(EbStatus::NullPointer, format!("{name} is null")));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

fn cloner(v: u32) -> Result<ClonerKind, Failure> {
    match v {
        0 => Ok(ClonerKind::Local),
        1 => Ok(ClonerKind::Nonlocal),
        _ => Err(invalid(format!("unknown cloner {v}"))),
    }
}

fn dc_formula(v: u32) -> Result<DcFormula, Failure> {
    match v {
        0 => Ok(DcFormula::Unclamped),
        1 => Ok(DcFormula::Clamped),
        _ => Err(invalid(format!("unknown DC formula {v}"))),
    }
}

fn fb_convention(v: u32) -> Result<FbConvention, Failure> {
    match v {
        0 => Ok(FbConvention::Root),
        1 => Ok(FbConvention::Squared),
        _ => Err(invalid(format!("unknown FB convention {v}"))),
    }
}

fn emit(s: BlochState, dst: &mut *mut EbState) {
    *dst = Box::into_raw(Box::new(EbState { inner: s }));
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn eb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn eb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Werner-like state `p |psi><psi| + (1 - p) I/4`, `|psi> = a|00> + b|11>`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn eb_state_werner(p: f64, alpha2: f64, out: *mut *mut EbState) -> EbStatus {
    guard(|| {
        let dst = unsafe { self::out(out, "out")? };
        emit(werner_like(WernerLikeParams::new(p, alpha2)?), dst);
        Ok(())
    })
}

/// Bell-diagonal state with correlation matrix `diag(c1, c2, c3)`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn eb_state_bell_diagonal(c1: f64, c2: f64, c3: f64, out: *mut *mut EbState) -> EbStatus {
    guard(|| {
        let dst = unsafe { self::out(out, "out")? };
        emit(bell_diagonal(BellDiagonalParams::new(c1, c2, c3)?), dst);
        Ok(())
    })
}

/// State from its Bloch form: `x[3]`, `y[3]` and row-major `t[9]`.
///
/// # Safety
/// `x` and `y` must point to 3 doubles, `t` to 9, and `out` to writable
/// storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn eb_state_from_bloch(
    x: *const f64,
    y: *const f64,
    t: *const f64,
    out: *mut *mut EbState,
) -> EbStatus {
    guard(|| {
        let (x, y, t) = unsafe { (array(x, 3, "x")?, array(y, 3, "y")?, array(t, 9, "t")?) };
        let dst = unsafe { self::out(out, "out")? };
        let s =
            BlochState::new(Vector3::from_column_slice(x), Vector3::from_column_slice(y), Matrix3::from_row_slice(t));
        if !s.x.iter().chain(s.y.iter()).chain(s.t.iter()).all(|v| v.is_finite()) {
            return Err(invalid("Bloch components must be finite"));
        }
        s.validate()?;
        emit(s, dst);
        Ok(())
    })
}

/// Random state drawn with a fixed seed from an [`EbSampler`] ensemble.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn eb_state_random(seed: u64, sampler: u32, out: *mut *mut EbState) -> EbStatus {
    guard(|| {
        let dst = unsafe { self::out(out, "out")? };
        let sampler = match sampler {
            0 => Sampler::HilbertSchmidt,
            1 => Sampler::BlochRejection,
            v => return Err(invalid(format!("unknown sampler {v}"))),
        };
        emit(sample_with_seed(seed, sampler), dst);
        Ok(())
    })
}

/// Releases a state. NULL is ignored.
///
/// # Safety
/// `state` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn eb_state_free(state: *mut EbState) {
    if !state.is_null() {
        drop(unsafe { Box::from_raw(state) });
    }
}

/// Copies the Bloch form into `x[3]`, `y[3]` and row-major `t[9]`.
///
/// # Safety
/// `state` must be a live handle; the arrays must hold 3, 3 and 9 doubles.
#[no_mangle]
pub unsafe extern "C" fn eb_state_bloch(state: *const EbState, x: *mut f64, y: *mut f64, t: *mut f64) -> EbStatus {
    guard(|| {
        let s = unsafe { self::state(state)? };
        let (x, y, t) = unsafe { (array_mut(x, 3, "x")?, array_mut(y, 3, "y")?, array_mut(t, 9, "t")?) };
        x.copy_from_slice(s.x.as_slice());
        y.copy_from_slice(s.y.as_slice());
        for i in 0..3 {
            for j in 0..3 {
                t[3 * i + j] = s.t[(i, j)];
            }
        }
        Ok(())
    })
}

/// Row-major 4x4 density matrix split into real and imaginary parts.
///
/// # Safety
/// `state` must be a live handle; `re` and `im` must hold 16 doubles each.
#[no_mangle]
pub unsafe extern "C" fn eb_state_density(state: *const EbState, re: *mut f64, im: *mut f64) -> EbStatus {
    guard(|| {
        let s = unsafe { self::state(state)? };
        let (re, im) = unsafe { (array_mut(re, 16, "re")?, array_mut(im, 16, "im")?) };
        let rho = s.density_unchecked();
        for i in 0..4 {
            for j in 0..4 {
                re[4 * i + j] = rho[(i, j)].re;
                im[4 * i + j] = rho[(i, j)].im;
            }
        }
        Ok(())
    })
}

/// `tr(rho^2)`.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eb_state_purity(state: *const EbState, out: *mut f64) -> EbStatus {
    guard(|| {
        let s = unsafe { self::state(state)? };
        *unsafe { self::out(out, "out")? } = purity(s);
        Ok(())
    })
}

/// Maximal teleportation fidelity.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eb_teleportation_fidelity(state: *const EbState, out: *mut f64) -> EbStatus {
    guard(|| {
        let s = unsafe { self::state(state)? };
        *unsafe { self::out(out, "out")? } = teleportation_fidelity(s)?;
        Ok(())
    })
}

/// Dense-coding capacity in bits under an [`EbDcFormula`].
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eb_dense_coding_capacity(state: *const EbState, formula: u32, out: *mut f64) -> EbStatus {
    guard(|| {
        let s = unsafe { self::state(state)? };
        let dst = unsafe { self::out(out, "out")? };
        *dst = dense_coding_capacity(&s.density_unchecked(), dc_formula(formula)?)?;
        Ok(())
    })
}

/// Smallest partial-transpose eigenvalue and the PPT verdict.
///
/// # Safety
/// `state` must be a live handle; `min_eigenvalue` and `inseparable` writable.
#[no_mangle]
pub unsafe extern "C" fn eb_ppt(state: *const EbState, min_eigenvalue: *mut f64, inseparable: *mut bool) -> EbStatus {
    guard(|| {
        let s = unsafe { self::state(state)? };
        let (m, i) = unsafe { (out(min_eigenvalue, "min_eigenvalue")?, out(inseparable, "inseparable")?) };
        let v = ppt_verdict_bloch(s)?;
        *m = v.min_pt_eigenvalue;
        *i = v.inseparable;
        Ok(())
    })
}

/// Desired output pair of a cloner as a new state handle.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eb_clone_desired_pair(
    state: *const EbState,
    cloner: u32,
    n_copies: usize,
    out: *mut *mut EbState,
) -> EbStatus {
    guard(|| {
        let s = unsafe { self::state(state)? };
        let dst = unsafe { self::out(out, "out")? };
        let pair = clone_state(s, self::cloner(cloner)?, n_copies)?.desired_pair;
        emit(pair, dst);
        Ok(())
    })
}

/// Clones `state` and fills `out` with the broadcast verdict and sums.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn eb_broadcast_report(
    state: *const EbState,
    cloner: u32,
    n_copies: usize,
    dc: u32,
    fb: u32,
    out: *mut EbReport,
) -> EbStatus {
    guard(|| {
        let s = unsafe { self::state(state)? };
        let dst = unsafe { self::out(out, "out")? };
        let conv = Conventions { dc: dc_formula(dc)?, fb: fb_convention(fb)? };
        let r = broadcast_report_with(s, self::cloner(cloner)?, n_copies, conv)?;
        *dst = EbReport {
            input_inseparable: r.input_inseparable,
            desired_pair_inseparable: r.desired_pair_inseparable,
            side_pair_separable: r.side_pair_separable,
            broadcast_ok: r.broadcast_ok,
            desired_min_pt_eigenvalue: r.desired_verdict.min_pt_eigenvalue,
            fb: r.fb,
            dtf: r.dtf,
            ddc: r.ddc,
            sum_tf: r.sum_tf,
            sum_dc: r.sum_dc,
            purity: r.purity,
        };
        Ok(())
    })
}

unsafe fn write_range(
    scan: Scan,
    cloner: u32,
    n_copies: usize,
    method: u32,
    intervals: *mut EbInterval,
    capacity: usize,
    count: *mut usize,
) -> Result<(), Failure> {
    let count = unsafe { out(count, "count")? };
    let kind = self::cloner(cloner)?;
    let range = match method {
        0 => scan.analytic(kind, n_copies)?,
        1 => sweep(&SweepSpec::new(scan, kind, n_copies))?.range,
        v => return Err(invalid(format!("unknown range method {v}"))),
    };
    *count = range.intervals.len();
    if range.intervals.len() > capacity {
        return Err(Failure(
            EbStatus::BufferTooSmall,
            format!("range has {} intervals, buffer holds {capacity}", range.intervals.len()),
        ));
    }
    if !range.intervals.is_empty() {
        if intervals.is_null() {
            return Err(Failure(EbStatus::NullPointer, "intervals is null".into()));
        }
        let buf = unsafe { std::slice::from_raw_parts_mut(intervals, capacity) };
        for (slot, iv) in buf.iter_mut().zip(&range.intervals) {
            *slot = (*iv).into();
        }
    }
    Ok(())
}

/// Broadcasting range of the Werner-like family along `swept`
/// ([`EbWernerSweep`]) with the other parameter fixed. Writes up to
/// `capacity` intervals and stores the interval count in `count`; returns
/// `BufferTooSmall` (with `count` set) when they do not fit.
///
/// # Safety
/// `intervals` must hold `capacity` elements (may be NULL when `capacity` is
/// 0) and `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eb_werner_range(
    cloner: u32,
    n_copies: usize,
    swept: u32,
    fixed: f64,
    method: u32,
    intervals: *mut EbInterval,
    capacity: usize,
    count: *mut usize,
) -> EbStatus {
    guard(|| {
        let scan = match swept {
            0 => Scan::WernerP { alpha2: fixed },
            1 => Scan::WernerAlpha2 { p: fixed },
            v => return Err(invalid(format!("unknown Werner sweep {v}"))),
        };
        unsafe { write_range(scan, cloner, n_copies, method, intervals, capacity, count) }
    })
}

/// Broadcasting range of the Bell-diagonal family along `c[swept]`
/// (`swept` in 0..3), the other two coefficients taken from `c[3]`.
///
/// # Safety
/// `c` must point to 3 doubles; see [`eb_werner_range`] for the buffers.
#[no_mangle]
pub unsafe extern "C" fn eb_bell_range(
    cloner: u32,
    n_copies: usize,
    c: *const f64,
    swept: u32,
    method: u32,
    intervals: *mut EbInterval,
    capacity: usize,
    count: *mut usize,
) -> EbStatus {
    guard(|| {
        let c = unsafe { array(c, 3, "c")? };
        if swept > 2 {
            return Err(invalid(format!("swept index {swept} not in 0..3")));
        }
        let scan = Scan::Bell { fixed: [c[0], c[1], c[2]], swept: swept as usize };
        unsafe { write_range(scan, cloner, n_copies, method, intervals, capacity, count) }
    })
}
