//! C ABI for `semitree`.
//!
//! Every function returns a [`SemitreeStatus`]; results go through out-pointers.
//! On failure a message is kept per thread and can be fetched with
//! [`semitree_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;
use semitree::spectra::{self, Exponent, Verdict};
use semitree::{kernels, oracle, spherical, Error, Parity, TreeParams};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemitreeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OnCut = 3,
    Pole = 4,
    NeedsDirection = 5,
    ParityMismatch = 6,
    Capacity = 7,
    Divergent = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemitreeParity {
    Plus = 0,
    Minus = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemitreeEvaluator {
    ClosedForm = 0,
    Recurrence = 1,
    ArcSum = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SemitreeVerdict {
    Inside = 0,
    Boundary = 1,
    Outside = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SemitreeComplex {
    pub re: f64,
    pub im: f64,
}

impl From<SemitreeComplex> for Complex64 {
    fn from(z: SemitreeComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl From<Complex64> for SemitreeComplex {
    fn from(z: Complex64) -> Self {
        SemitreeComplex { re: z.re, im: z.im }
    }
}

impl From<SemitreeParity> for Parity {
    fn from(p: SemitreeParity) -> Self {
        match p {
            SemitreeParity::Plus => Parity::Plus,
            SemitreeParity::Minus => Parity::Minus,
        }
    }
}

/// Opaque handle to a tree `T(q₊, q₋)`.
pub struct SemitreeTree {
    params: TreeParams,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn status_of(e: &Error) -> SemitreeStatus {
    match e {
        Error::InvalidParams(_) | Error::Domain(_) => SemitreeStatus::InvalidArgument,
        Error::OnCut(_) => SemitreeStatus::OnCut,
        Error::Pole => SemitreeStatus::Pole,
        Error::NeedsDirection => SemitreeStatus::NeedsDirection,
        Error::ParityMismatch { .. } => SemitreeStatus::ParityMismatch,
        Error::Capacity { .. } => SemitreeStatus::Capacity,
        Error::Divergent(_) => SemitreeStatus::Divergent,
    }
}

fn fail(status: SemitreeStatus, msg: impl Into<String>) -> SemitreeStatus {
    LAST_ERROR.with(|l| *l.borrow_mut() = Some(msg.into()));
    status
}

/// Runs `f`, recording errors and containing panics.
fn guard(f: impl FnOnce() -> Result<(), SemitreeStatus>) -> SemitreeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SemitreeStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(SemitreeStatus::Panic, "internal panic"),
    }
}

fn lib<T>(r: semitree::Result<T>) -> Result<T, SemitreeStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn handle<'a>(t: *const SemitreeTree) -> Result<&'a TreeParams, SemitreeStatus> {
    t.as_ref().map(|t| &t.params).ok_or_else(|| fail(SemitreeStatus::NullPointer, "null tree handle"))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), SemitreeStatus> {
    if out.is_null() {
        return Err(fail(SemitreeStatus::NullPointer, "null output pointer"));
    }
    out.write(v);
    Ok(())
}

fn exponent(p: f64) -> Result<Exponent, SemitreeStatus> {
    lib(Exponent::new(p))
}

/// Creates a handle; release it with [`semitree_tree_free`].
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn semitree_tree_new(q_plus: u32, q_minus: u32, out: *mut *mut SemitreeTree) -> SemitreeStatus {
    guard(|| {
        let params = lib(TreeParams::new(q_plus, q_minus))?;
        put(out, Box::into_raw(Box::new(SemitreeTree { params })))
    })
}

/// # Safety
/// `tree` must be null or a handle from [`semitree_tree_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn semitree_tree_free(tree: *mut SemitreeTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// Copies the calling thread's last error message, or returns null when there
/// is none. Release with [`semitree_string_free`].
#[no_mangle]
pub extern "C" fn semitree_last_error() -> *mut c_char {
    LAST_ERROR.with(|l| {
        l.borrow()
            .as_ref()
            .and_then(|m| CString::new(m.replace('\0', " ")).ok())
            .map_or(std::ptr::null_mut(), CString::into_raw)
    })
}

/// # Safety
/// `s` must be null or a string from [`semitree_last_error`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn semitree_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `tree` must be a live handle; `a` and `b` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn semitree_endpoints(tree: *const SemitreeTree, a: *mut f64, b: *mut f64) -> SemitreeStatus {
    guard(|| {
        let e = kernels::endpoints(handle(tree)?);
        put(a, e.a)?;
        put(b, e.b)
    })
}

/// `F±(γ)` off the cuts.
///
/// # Safety
/// `tree` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn semitree_hitting_f(
    tree: *const SemitreeTree,
    gamma: SemitreeComplex,
    sign: SemitreeParity,
    out: *mut SemitreeComplex,
) -> SemitreeStatus {
    guard(|| {
        let v = lib(kernels::hitting_f(handle(tree)?, gamma.into(), sign.into()))?;
        put(out, v.into())
    })
}

/// `F̃±(γ)` off the cuts.
///
/// # Safety
/// `tree` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn semitree_hitting_ft(
    tree: *const SemitreeTree,
    gamma: SemitreeComplex,
    sign: SemitreeParity,
    out: *mut SemitreeComplex,
) -> SemitreeStatus {
    guard(|| {
        let v = lib(kernels::hitting_ft(handle(tree)?, gamma.into(), sign.into()))?;
        put(out, v.into())
    })
}

/// `B(γ)` and `B̃(γ) = 1/B(γ)`.
///
/// # Safety
/// `tree` must be a live handle; `b` and `bt` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn semitree_b_of_gamma(
    tree: *const SemitreeTree,
    gamma: SemitreeComplex,
    b: *mut SemitreeComplex,
    bt: *mut SemitreeComplex,
) -> SemitreeStatus {
    guard(|| {
        let (x, y) = lib(kernels::b_of_gamma(handle(tree)?, gamma.into()))?;
        put(b, x.into())?;
        put(bt, y.into())
    })
}

/// Writes `φ_0..φ_{n_max}` into `out[0..=n_max]`; `len` is the capacity of `out`.
///
/// # Safety
/// `tree` must be a live handle; `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn semitree_spherical(
    tree: *const SemitreeTree,
    gamma: SemitreeComplex,
    evaluator: SemitreeEvaluator,
    n_max: usize,
    out: *mut SemitreeComplex,
    len: usize,
) -> SemitreeStatus {
    guard(|| {
        let params = handle(tree)?;
        if out.is_null() {
            return Err(fail(SemitreeStatus::NullPointer, "null output buffer"));
        }
        if len <= n_max {
            return Err(fail(SemitreeStatus::BufferTooSmall, format!("need {} slots, got {len}", n_max + 1)));
        }
        let g = gamma.into();
        let profile = match evaluator {
            SemitreeEvaluator::ClosedForm => lib(spherical::closed_form_profile(params, g, n_max))?,
            SemitreeEvaluator::Recurrence => spherical::recurrence_eval(params, g, n_max),
            SemitreeEvaluator::ArcSum => {
                let table = spherical::ArcTable::new(params, n_max);
                lib(spherical::arc_sum_profile(params, &table, g, n_max))?
            }
        };
        let dst = std::slice::from_raw_parts_mut(out, n_max + 1);
        for (d, v) in dst.iter_mut().zip(profile.values) {
            *d = v.into();
        }
        Ok(())
    })
}

/// `ρ_p`; pass `INFINITY` for `p = ∞`.
///
/// # Safety
/// `tree` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn semitree_spectral_radius(tree: *const SemitreeTree, p: f64, out: *mut f64) -> SemitreeStatus {
    guard(|| {
        let params = handle(tree)?;
        put(out, spectra::spectral_radius(params, exponent(p)?))
    })
}

/// Membership of `γ` in the `ℓ^p` spectrum; `isolated_zero` may be null.
///
/// # Safety
/// `tree` must be a live handle; `verdict` valid for writes; `isolated_zero` null or valid.
#[no_mangle]
pub unsafe extern "C" fn semitree_membership(
    tree: *const SemitreeTree,
    p: f64,
    gamma: SemitreeComplex,
    verdict: *mut SemitreeVerdict,
    isolated_zero: *mut bool,
) -> SemitreeStatus {
    guard(|| {
        let q = spectra::membership(handle(tree)?, exponent(p)?, gamma.into());
        let v = match q.verdict {
            Verdict::Inside => SemitreeVerdict::Inside,
            Verdict::Boundary => SemitreeVerdict::Boundary,
            Verdict::Outside => SemitreeVerdict::Outside,
        };
        put(verdict, v)?;
        if !isolated_zero.is_null() {
            isolated_zero.write(q.includes_isolated_zero);
        }
        Ok(())
    })
}

/// # Safety
/// `tree` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn semitree_p_crit(tree: *const SemitreeTree, out: *mut f64) -> SemitreeStatus {
    guard(|| put(out, spectra::p_crit(handle(tree)?)))
}

/// # Safety
/// `tree` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn semitree_split_exponent(tree: *const SemitreeTree, out: *mut f64) -> SemitreeStatus {
    guard(|| put(out, spectra::split_exponent(handle(tree)?)))
}

/// Seeded Monte Carlo estimate of `F±(1)`.
///
/// # Safety
/// `tree` must be a live handle; `estimate` and `std_error` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn semitree_monte_carlo(
    tree: *const SemitreeTree,
    start: SemitreeParity,
    walks: u64,
    cap: u64,
    seed: u64,
    estimate: *mut f64,
    std_error: *mut f64,
) -> SemitreeStatus {
    guard(|| {
        let params = handle(tree)?;
        if walks == 0 || cap == 0 {
            return Err(fail(SemitreeStatus::InvalidArgument, "walks and cap must be positive"));
        }
        let e = oracle::monte_carlo_hitting(params, start.into(), walks, cap, seed);
        put(estimate, e.estimate)?;
        put(std_error, e.std_error)
    })
}
