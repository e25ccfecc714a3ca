//! C ABI over the `prolate` crate.
//!
//! Every fallible call returns a [`ProlateStatus`]; on anything other than
//! `PROLATE_STATUS_OK` the message is available from
//! [`prolate_last_error_message`] on the same thread. Handles are opaque and
//! must be released with their `_free` function. Panics never cross the
//! boundary; they are reported as `PROLATE_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use prolate::bounds::{function_suite, Verdict};
use prolate::elliptic::{ellint_e, ellint_f};
use prolate::harness::format::NumberStyle;
use prolate::harness::{reproduce_figure, reproduce_table, ArtifactId, RunOptions};
use prolate::roots::{special_points, Regime};
use prolate::{ProlateContext, ProlateError, ProlateSpectrum};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProlateStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    NoConvergence = 4,
    /// Eigen-solver, integrator or root-count failure.
    Numerical = 5,
    Io = 6,
    UnknownId = 7,
    /// Caller buffer too short; the required length was written back.
    BufferTooSmall = 8,
    Panic = 9,
}

/// Opaque spectrum handle.
pub struct ProlateSpectrumHandle {
    inner: ProlateSpectrum,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior NULs were replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &ProlateError) -> ProlateStatus {
    match err {
        ProlateError::InvalidArgument(_) => ProlateStatus::InvalidArgument,
        ProlateError::Domain(_) | ProlateError::Divergent => ProlateStatus::Domain,
        ProlateError::NoConvergence { .. } => ProlateStatus::NoConvergence,
        ProlateError::Io(_) => ProlateStatus::Io,
        ProlateError::UnknownId(_) => ProlateStatus::UnknownId,
        ProlateError::EigenSolver(_)
        | ProlateError::Integration(_)
        | ProlateError::RootCount { .. }
        | ProlateError::DegenerateEvaluation(_)
        | ProlateError::Regime(_) => ProlateStatus::Numerical,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard<F: FnOnce() -> Result<(), (ProlateStatus, String)>>(f: F) -> ProlateStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ProlateStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal panic: {msg}"));
            ProlateStatus::Panic
        }
    }
}

fn lift<T>(r: prolate::Result<T>) -> Result<T, (ProlateStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (ProlateStatus, String) {
    (ProlateStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn handle<'a>(h: *const ProlateSpectrumHandle) -> Result<&'a ProlateSpectrum, (ProlateStatus, String)> {
    h.as_ref().map(|h| &h.inner).ok_or_else(|| null("spectrum handle"))
}

fn index(spec: &ProlateSpectrum, n: usize) -> Result<(), (ProlateStatus, String)> {
    if n > spec.n_max() {
        return Err((
            ProlateStatus::InvalidArgument,
            format!("n = {n} exceeds n_max = {}", spec.n_max()),
        ));
    }
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn prolate_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn prolate_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds `χ_0..χ_{n_max}` and `ψ_0..ψ_{n_max}` for band limit `c`.
/// Pass `tol <= 0` for the default tolerance.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn prolate_spectrum_new(
    c: f64,
    n_max: usize,
    tol: f64,
    out: *mut *mut ProlateSpectrumHandle,
) -> ProlateStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let ctx = if tol > 0.0 {
            lift(ProlateContext::with_tol(c, n_max, tol))?
        } else {
            lift(ProlateContext::new(c, n_max))?
        };
        let inner = lift(ProlateSpectrum::build(&ctx))?;
        *out = Box::into_raw(Box::new(ProlateSpectrumHandle { inner }));
        Ok(())
    })
}

/// Releases a handle from [`prolate_spectrum_new`]. NULL is ignored.
///
/// # Safety
/// `h` must come from [`prolate_spectrum_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn prolate_spectrum_free(h: *mut ProlateSpectrumHandle) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prolate_spectrum_n_max(h: *const ProlateSpectrumHandle, out: *mut usize) -> ProlateStatus {
    guard(|| {
        let spec = handle(h)?;
        *out.as_mut().ok_or_else(|| null("out"))? = spec.n_max();
        Ok(())
    })
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prolate_spectrum_chi(h: *const ProlateSpectrumHandle, n: usize, out: *mut f64) -> ProlateStatus {
    guard(|| {
        let spec = handle(h)?;
        index(spec, n)?;
        *out.as_mut().ok_or_else(|| null("out"))? = spec.chi(n);
        Ok(())
    })
}

/// `ψ_n(t)` and `ψ_n'(t)` for `-1 <= t <= 1`. Either output may be NULL.
///
/// # Safety
/// `h` must be a live handle; non-NULL outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn prolate_psi(
    h: *const ProlateSpectrumHandle,
    n: usize,
    t: f64,
    value: *mut f64,
    derivative: *mut f64,
) -> ProlateStatus {
    guard(|| {
        let spec = handle(h)?;
        index(spec, n)?;
        if !(-1.0..=1.0).contains(&t) {
            return Err((ProlateStatus::Domain, format!("t = {t} is outside [-1, 1]")));
        }
        let j = spec.function(n).jet(t);
        if let Some(v) = value.as_mut() {
            *v = j.value;
        }
        if let Some(d) = derivative.as_mut() {
            *d = j.d1;
        }
        Ok(())
    })
}

/// `|λ_n|` and `μ_n = (c/2π)|λ_n|²`. Either output may be NULL.
///
/// # Safety
/// `h` must be a live handle; non-NULL outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn prolate_lambda(
    h: *const ProlateSpectrumHandle,
    n: usize,
    lambda_abs: *mut f64,
    mu: *mut f64,
) -> ProlateStatus {
    guard(|| {
        let spec = handle(h)?;
        index(spec, n)?;
        let ie = lift(spec.function(n).integral_eigenvalue())?;
        if let Some(l) = lambda_abs.as_mut() {
            *l = ie.lambda_abs;
        }
        if let Some(m) = mu.as_mut() {
            *m = ie.mu;
        }
        Ok(())
    })
}

/// Writes the `n` roots of `ψ_n` in increasing order into `buf`. `len`
/// receives `n`; when `cap < n` nothing else is written and
/// `PROLATE_STATUS_BUFFER_TOO_SMALL` is returned. `above` (may be NULL)
/// receives 1 when `χ_n > c²` and 0 otherwise.
///
/// # Safety
/// `h` must be a live handle; `buf` must hold `cap` doubles; `len` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn prolate_roots(
    h: *const ProlateSpectrumHandle,
    n: usize,
    buf: *mut f64,
    cap: usize,
    len: *mut usize,
    above: *mut i32,
) -> ProlateStatus {
    guard(|| {
        let spec = handle(h)?;
        index(spec, n)?;
        let len = len.as_mut().ok_or_else(|| null("len"))?;
        *len = n;
        if cap < n {
            return Err((ProlateStatus::BufferTooSmall, format!("need {n} doubles, got {cap}")));
        }
        if n > 0 && buf.is_null() {
            return Err(null("buf"));
        }
        let f = spec.function(n);
        if n > 0 {
            let sp = lift(special_points(f))?;
            std::slice::from_raw_parts_mut(buf, n).copy_from_slice(&sp.t);
        }
        if let Some(a) = above.as_mut() {
            *a = (Regime::of(f) == Regime::Above) as i32;
        }
        Ok(())
    })
}

/// Runs every bound for `ψ_n` (`n >= 2`) and reports how many claims were
/// checked and how many failed.
///
/// # Safety
/// `h` must be a live handle; `checked` and `failed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prolate_check_bounds(
    h: *const ProlateSpectrumHandle,
    n: usize,
    checked: *mut usize,
    failed: *mut usize,
) -> ProlateStatus {
    guard(|| {
        let spec = handle(h)?;
        index(spec, n)?;
        if n < 2 {
            return Err((ProlateStatus::InvalidArgument, "bounds need n >= 2".into()));
        }
        let (checked, failed) = (
            checked.as_mut().ok_or_else(|| null("checked"))?,
            failed.as_mut().ok_or_else(|| null("failed"))?,
        );
        let f = spec.function(n);
        let sp = lift(special_points(f))?;
        let reports = lift(function_suite(f, &sp))?;
        *checked = reports.iter().filter(|r| r.verdict != Verdict::NotApplicable).count();
        *failed = reports.iter().filter(|r| r.verdict == Verdict::Fail).count();
        Ok(())
    })
}

/// Incomplete elliptic integral of the first kind `F(y, k)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prolate_ellint_f(y: f64, k: f64, out: *mut f64) -> ProlateStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = lift(ellint_f(y, k))?;
        Ok(())
    })
}

/// Incomplete elliptic integral of the second kind `E(y, k)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prolate_ellint_e(y: f64, k: f64, out: *mut f64) -> ProlateStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = lift(ellint_e(y, k))?;
        Ok(())
    })
}

/// Recomputes a reference table or figure (`"77a"`, `"171b"`, ...) as CSV.
/// `heavy` nonzero allows the `c = 10000` table. The string in `out` must
/// be released with [`prolate_string_free`].
///
/// # Safety
/// `id` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn prolate_artifact_csv(id: *const c_char, heavy: i32, out: *mut *mut c_char) -> ProlateStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        if id.is_null() {
            return Err(null("id"));
        }
        let id = CStr::from_ptr(id)
            .to_str()
            .map_err(|_| (ProlateStatus::InvalidArgument, "id is not UTF-8".to_string()))?;
        let id: ArtifactId = lift(id.parse())?;
        let opts = RunOptions {
            heavy: heavy != 0,
            ..Default::default()
        };
        let table = if id.is_table() { lift(reproduce_table(id, &opts))? } else { lift(reproduce_figure(id, &opts))? };
        let text = lift(table.to_csv_string(NumberStyle::Fortran))?;
        *out = CString::new(text).expect("CSV has no NUL").into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn prolate_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
