//! C ABI over the bezout-qe engine.
//!
//! Handles are opaque and owned by the caller; every `*_new`/producing call
//! is paired with a `*_free`. Strings returned through out-parameters are
//! freed with [`bq_string_free`]. On a non-`OK` status the message is
//! available from [`bq_last_error_message`] until the next call on the
//! same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bezout_qe::cli::CliError;
use bezout_qe::decide::{self, DecisionProblem};
use bezout_qe::formula::{self, PPFormula};
use bezout_qe::fv;
use bezout_qe::oracle::{self, ModuleSpec};
use bezout_qe::qe::{self, LocalOracle};
use bezout_qe::ring::Backend;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    CapabilityError = 4,
    Failed = 5,
    Panic = 6,
}

/// A ring backend.
pub struct BqBackend(Backend);

/// A pp formula bound to the backend it was parsed with.
pub struct BqFormula {
    backend: Backend,
    formula: PPFormula,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(BqStatus, String);

impl From<CliError> for Fail {
    fn from(e: CliError) -> Self {
        let status = match e.exit_code() {
            2 => BqStatus::ParseError,
            3 => BqStatus::CapabilityError,
            _ => BqStatus::Failed,
        };
        Fail(status, e.to_string())
    }
}

macro_rules! impl_from_core {
    ($($t:ty),*) => {$(
        impl From<$t> for Fail {
            fn from(e: $t) -> Self {
                CliError::from(e).into()
            }
        }
    )*};
}

impl_from_core!(
    bezout_qe::ring::RingError,
    bezout_qe::formula::FormulaError,
    bezout_qe::oracle::OracleError,
    bezout_qe::fv::FvError,
    bezout_qe::decide::DecideError
);

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BqStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BqStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            BqStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(BqStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(BqStatus::InvalidUtf8, "argument is not valid UTF-8".into()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(BqStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(BqStatus::NullPointer, "null out-parameter".into()));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(BqStatus::Failed, "output contains a nul byte".into()))?;
    put(out, c.into_raw())
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call on this thread; do not free it.
#[no_mangle]
pub extern "C" fn bq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn bq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a backend selector: `z`, `q_poly`, `z_loc:<p>`, `q_poly_loc:<p>`.
///
/// # Safety
/// `selector` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bq_backend_new(selector: *const c_char, out: *mut *mut BqBackend) -> BqStatus {
    guard(|| {
        let b: Backend = text(selector)?.parse()?;
        put(out, Box::into_raw(Box::new(BqBackend(b))))
    })
}

/// # Safety
/// `b` must come from [`bq_backend_new`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bq_backend_free(b: *mut BqBackend) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Parses a pp formula.
///
/// # Safety
/// Pointers must be valid; `src` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn bq_formula_parse(
    backend: *const BqBackend,
    src: *const c_char,
    out: *mut *mut BqFormula,
) -> BqStatus {
    guard(|| {
        let b = &deref(backend)?.0;
        let f = formula::parse_pp(text(src)?, b)?;
        put(out, Box::into_raw(Box::new(BqFormula { backend: b.clone(), formula: f })))
    })
}

/// # Safety
/// `f` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn bq_formula_free(f: *mut BqFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Canonical text of a formula.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bq_formula_to_string(f: *const BqFormula, out: *mut *mut c_char) -> BqStatus {
    guard(|| put_string(out, deref(f)?.formula.to_string()))
}

/// Eliminates quantifiers; the formula's backend must be a valuation ring.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bq_qe(f: *const BqFormula, out: *mut *mut BqFormula) -> BqStatus {
    guard(|| {
        let f = deref(f)?;
        if !f.backend.is_valuation() {
            return Err(Fail(
                BqStatus::CapabilityError,
                format!("qe needs a valuation backend; {} is global", f.backend.name()),
            ));
        }
        let res = qe::eliminate(&f.formula, &LocalOracle::new(f.backend.clone()))
            .map_err(|e| Fail(BqStatus::Failed, e.to_string()))?;
        put(out, Box::into_raw(Box::new(BqFormula { backend: f.backend.clone(), formula: res })))
    })
}

/// Guarded decomposition as a JSON array of `{guard, body}`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bq_decompose_json(f: *const BqFormula, out: *mut *mut c_char) -> BqStatus {
    guard(|| {
        let f = deref(f)?;
        let g = fv::decompose(&f.backend, &f.formula)?;
        put_string(out, serde_json::to_string(&g).expect("serializable"))
    })
}

/// Truth of the formula at `params` (e.g. `y=6,z=[1;2]`) in `module`
/// (`free:<n>`, `cyclic:<elem>`, `field`).
///
/// # Safety
/// Pointers must be valid; strings nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn bq_eval(
    f: *const BqFormula,
    module: *const c_char,
    params: *const c_char,
    out: *mut bool,
) -> BqStatus {
    guard(|| {
        let f = deref(f)?;
        let m = ModuleSpec::parse(text(module)?, &f.backend)?;
        let p = oracle::parse_params(text(params)?, &f.backend)?;
        put(out, oracle::eval_pp(&f.backend, &f.formula, &p, &m)?)
    })
}

/// Decides a sentence; writes `{verdict, certificate}` as JSON.
///
/// # Safety
/// Pointers must be valid; `src` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn bq_decide_json(
    backend: *const BqBackend,
    src: *const c_char,
    out: *mut *mut c_char,
) -> BqStatus {
    guard(|| {
        let b = &deref(backend)?.0;
        let s = formula::parse_sentence(text(src)?, b)?;
        let d = decide::decide(&DecisionProblem::new(b.clone(), s)?)?;
        put_string(out, serde_json::to_string(&d).expect("serializable"))
    })
}
