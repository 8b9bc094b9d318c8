//! C ABI over `heller-core`.
//!
//! A truncated model lives behind an opaque `HellerModel` handle created by
//! `heller_chebyshev_new` / `heller_partial_wave_new` and released with
//! `heller_free`. Every fallible call returns a `HellerStatus`; on failure
//! the message is kept per thread and read with `heller_last_error`.
//!
//! Pointer arguments are checked for null; beyond that the caller must pass
//! live handles and buffers of the stated length, as usual for a C API.

// The entry points are called from C, where `unsafe` has no meaning.
#![allow(clippy::not_unsafe_ptr_arg_deref)]

use heller_core::{Discretized, Error, ExtraKnots, Method, ModelProblem};
use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HellerStatus {
    Ok = 0,
    NullPointer = 1,
    /// A parameter or buffer length was rejected.
    InvalidArgument = 2,
    /// A numerical routine failed; see `heller_last_error`.
    Numerical = 3,
    /// Internal panic caught at the boundary.
    Panic = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HellerMethod {
    Heller = 0,
    Broad = 1,
    JmatrixInterp = 2,
    JmatrixExact = 3,
    Oracle = 4,
}

impl From<HellerMethod> for Method {
    fn from(m: HellerMethod) -> Self {
        match m {
            HellerMethod::Heller => Method::Heller,
            HellerMethod::Broad => Method::Broad,
            HellerMethod::JmatrixInterp => Method::JmatrixInterp,
            HellerMethod::JmatrixExact => Method::JmatrixExact,
            HellerMethod::Oracle => Method::Oracle,
        }
    }
}

/// Opaque handle to a model truncated to `N` basis states.
pub struct HellerModel {
    inner: Discretized,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn classify(e: &Error) -> HellerStatus {
    match e {
        Error::Precondition(_) | Error::ModelParameter(_) | Error::Unsupported { .. } => {
            HellerStatus::InvalidArgument
        }
        _ => HellerStatus::Numerical,
    }
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), (HellerStatus, String)>) -> HellerStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HellerStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HellerStatus::Panic
        }
    }
}

fn core_err(e: Error) -> (HellerStatus, String) {
    (classify(&e), e.to_string())
}

fn null(what: &str) -> (HellerStatus, String) {
    (HellerStatus::NullPointer, format!("{what} is null"))
}

fn create(
    model: Result<ModelProblem, Error>,
    n: usize,
    out: *mut *mut HellerModel,
) -> HellerStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = model
            .and_then(|m| Discretized::new(&m, n))
            .map_err(core_err)?;
        // SAFETY: `out` is non-null and the caller provides a writable slot.
        unsafe { *out = Box::into_raw(Box::new(HellerModel { inner })) };
        Ok(())
    })
}

/// Copies `values` into the caller's buffer of `len` doubles.
fn fill(values: &[f64], out: *mut f64, len: usize) -> Result<(), (HellerStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    if len < values.len() {
        return Err((
            HellerStatus::InvalidArgument,
            format!("buffer holds {len} values, {} needed", values.len()),
        ));
    }
    // SAFETY: `out` points to at least `len >= values.len()` doubles.
    unsafe { ptr::copy_nonoverlapping(values.as_ptr(), out, values.len()) };
    Ok(())
}

fn model_ref<'a>(model: *const HellerModel) -> Result<&'a Discretized, (HellerStatus, String)> {
    // SAFETY: non-null handles come from `create` and are live until freed.
    unsafe { model.as_ref() }
        .map(|m| &m.inner)
        .ok_or_else(|| null("model"))
}

/// Modified Chebyshev chain with first diagonal `a` and first coupling `b`.
#[no_mangle]
pub extern "C" fn heller_chebyshev_new(
    a: f64,
    b: f64,
    n: usize,
    out: *mut *mut HellerModel,
) -> HellerStatus {
    create(ModelProblem::chebyshev_modified(a, b), n, out)
}

/// Free partial wave of angular momentum `ell` in the Laguerre basis of
/// scale `lambda`.
#[no_mangle]
pub extern "C" fn heller_partial_wave_new(
    ell: u32,
    lambda: f64,
    n: usize,
    out: *mut *mut HellerModel,
) -> HellerStatus {
    create(ModelProblem::partial_wave(ell, lambda), n, out)
}

/// Releases a handle; null is ignored.
#[no_mangle]
pub extern "C" fn heller_free(model: *mut HellerModel) {
    if !model.is_null() {
        // SAFETY: the handle was produced by `Box::into_raw` in `create`.
        drop(unsafe { Box::from_raw(model) });
    }
}

/// Basis size `N`, or 0 for a null handle.
#[no_mangle]
pub extern "C" fn heller_size(model: *const HellerModel) -> usize {
    model_ref(model).map_or(0, Discretized::size)
}

/// Writes the `N` ascending eigenvalues into `out`.
#[no_mangle]
pub extern "C" fn heller_eigenvalues(
    model: *const HellerModel,
    out: *mut f64,
    len: usize,
) -> HellerStatus {
    guard(|| fill(model_ref(model)?.eigenvalues(), out, len))
}

/// Writes the `N` derivative weights of `method` into `out`. `all_knots`
/// selects every fractional-index knot for the interpolation schemes
/// instead of the default set.
#[no_mangle]
pub extern "C" fn heller_weights(
    model: *const HellerModel,
    method: HellerMethod,
    all_knots: bool,
    out: *mut f64,
    len: usize,
) -> HellerStatus {
    guard(|| {
        let policy = if all_knots {
            ExtraKnots::All
        } else {
            ExtraKnots::SkipLast
        };
        let w = model_ref(model)?
            .weights(method.into(), policy)
            .map_err(core_err)?;
        fill(&w, out, len)
    })
}

/// `x = zeta^{-1}(energy)`, the continuous eigenvalue index.
#[no_mangle]
pub extern "C" fn heller_zeta_inverse(
    model: *const HellerModel,
    energy: f64,
    out: *mut f64,
) -> HellerStatus {
    guard(|| {
        let x = model_ref(model)?.zeta_inverse(energy).map_err(core_err)?;
        if out.is_null() {
            return Err(null("out"));
        }
        // SAFETY: `out` is non-null and writable.
        unsafe { *out = x };
        Ok(())
    })
}

/// Message of the last failure on this thread, or null if none. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn heller_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
