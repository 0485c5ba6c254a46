//! C ABI for cslab.
//!
//! Algebras and computed quivers are opaque handles owned by the caller and
//! released with the matching `_free` function. Every call returns a
//! [`CslabStatus`]; on failure, [`cslab_last_error_message`] describes the
//! error for the calling thread. Strings returned through out-parameters are
//! NUL-terminated UTF-8 and must be released with [`cslab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use cslab::algebra::Algebra;
use cslab::csl::{csl_check, semiprimary_structure, AlgebraAnalysis};
use cslab::spec_file::{load_algebra, parse_algebra, FileResolver};
use cslab::subcat::quasi_csl_check;
use cslab::{corpus, Error, Guard};

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CslabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    GuardExceeded = 5,
    TheoremViolation = 6,
    Io = 7,
    OutOfRange = 8,
    Panic = 9,
}

/// A validated algebra.
pub struct CslabAlgebra {
    algebra: Arc<Algebra>,
}

/// Simples, Ext¹ dimensions and radical of an algebra.
pub struct CslabQuiver {
    analysis: AlgebraAnalysis,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> CslabStatus {
    match e {
        Error::Parse { .. } => CslabStatus::ParseError,
        Error::GuardExceeded { .. } => CslabStatus::GuardExceeded,
        Error::TheoremViolation(_) => CslabStatus::TheoremViolation,
        Error::Io { .. } => CslabStatus::Io,
        _ => CslabStatus::InvalidInput,
    }
}

fn fail(e: Error) -> CslabStatus {
    let status = status_of(&e);
    set_error(e.to_string());
    status
}

/// Runs `f`, turning panics into [`CslabStatus::Panic`].
fn guarded(f: impl FnOnce() -> CslabStatus) -> CslabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            CslabStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, CslabStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(CslabStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        CslabStatus::InvalidUtf8
    })
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> CslabStatus {
    if out.is_null() {
        set_error("null output pointer");
        return CslabStatus::NullPointer;
    }
    let c = CString::new(text.replace('\0', " ")).expect("NUL removed");
    *out = c.into_raw();
    CslabStatus::Ok
}

fn guard_of(limit: u64) -> Guard {
    if limit == 0 {
        Guard::from_env()
    } else {
        Guard(limit)
    }
}

unsafe fn store_algebra(result: cslab::Result<Algebra>, out: *mut *mut CslabAlgebra) -> CslabStatus {
    if out.is_null() {
        set_error("null output pointer");
        return CslabStatus::NullPointer;
    }
    *out = ptr::null_mut();
    match result.and_then(Algebra::validated) {
        Ok(a) => {
            *out = Box::into_raw(Box::new(CslabAlgebra { algebra: Arc::new(a) }));
            CslabStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cslab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses and validates an algebra document. Sub-document references are
/// resolved relative to the working directory.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cslab_algebra_from_json(json: *const c_char, out: *mut *mut CslabAlgebra) -> CslabStatus {
    guarded(|| {
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        store_algebra(parse_algebra(text, "./inline.json", &FileResolver), out)
    })
}

/// Loads and validates an algebra document from a file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cslab_algebra_load(path: *const c_char, out: *mut *mut CslabAlgebra) -> CslabStatus {
    guarded(|| {
        let path = match read_str(path) {
            Ok(t) => t,
            Err(s) => return s,
        };
        store_algebra(load_algebra(path), out)
    })
}

/// Loads one of the bundled algebras by file name, e.g. `"u2_f2.json"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cslab_algebra_from_corpus(name: *const c_char, out: *mut *mut CslabAlgebra) -> CslabStatus {
    guarded(|| {
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        store_algebra(corpus::load(name), out)
    })
}

/// # Safety
/// `algebra` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cslab_algebra_free(algebra: *mut CslabAlgebra) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}

/// Dimension over GF(p); 0 for a null handle.
///
/// # Safety
/// `algebra` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cslab_algebra_dim(algebra: *const CslabAlgebra) -> usize {
    algebra.as_ref().map_or(0, |a| a.algebra.dim())
}

/// The prime `p`; 0 for a null handle.
///
/// # Safety
/// `algebra` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cslab_algebra_prime(algebra: *const CslabAlgebra) -> u32 {
    algebra.as_ref().map_or(0, |a| a.algebra.p())
}

/// Computes the simple modules, Ext¹ dimensions and Gabriel quiver.
/// `guard` bounds exhaustive enumerations; 0 uses `CSLAB_GUARD` or the default.
///
/// # Safety
/// `algebra` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cslab_quiver_compute(
    algebra: *const CslabAlgebra,
    guard: u64,
    out: *mut *mut CslabQuiver,
) -> CslabStatus {
    guarded(|| {
        let (Some(a), false) = (algebra.as_ref(), out.is_null()) else {
            set_error("null argument");
            return CslabStatus::NullPointer;
        };
        *out = ptr::null_mut();
        match AlgebraAnalysis::new(a.algebra.clone(), guard_of(guard)) {
            Ok(analysis) => {
                *out = Box::into_raw(Box::new(CslabQuiver { analysis }));
                CslabStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `quiver` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cslab_quiver_free(quiver: *mut CslabQuiver) {
    if !quiver.is_null() {
        drop(Box::from_raw(quiver));
    }
}

/// Number of simple modules; 0 for a null handle.
///
/// # Safety
/// `quiver` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cslab_quiver_vertex_count(quiver: *const CslabQuiver) -> usize {
    quiver.as_ref().map_or(0, |q| q.analysis.quiver.vertex_count())
}

/// `dim Ext¹(S_i, S_j)` with 0-based vertex indices.
///
/// # Safety
/// `quiver` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cslab_quiver_ext_dim(
    quiver: *const CslabQuiver,
    i: usize,
    j: usize,
    out: *mut usize,
) -> CslabStatus {
    let (Some(q), false) = (quiver.as_ref(), out.is_null()) else {
        set_error("null argument");
        return CslabStatus::NullPointer;
    };
    let n = q.analysis.quiver.vertex_count();
    if i >= n || j >= n {
        set_error(format!("vertex index out of range for {n} vertices"));
        return CslabStatus::OutOfRange;
    }
    *out = q.analysis.quiver.ext_dims[i][j];
    CslabStatus::Ok
}

/// True when every arrow is a loop; false for a null handle.
///
/// # Safety
/// `quiver` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cslab_quiver_is_totally_disconnected(quiver: *const CslabQuiver) -> bool {
    quiver.as_ref().is_some_and(|q| q.analysis.quiver.disconnected)
}

/// Graphviz DOT text for the quiver.
///
/// # Safety
/// `quiver` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cslab_quiver_to_dot(quiver: *const CslabQuiver, out: *mut *mut c_char) -> CslabStatus {
    guarded(|| match quiver.as_ref() {
        Some(q) => write_string(out, q.analysis.quiver.to_dot()),
        None => {
            set_error("null quiver");
            CslabStatus::NullPointer
        }
    })
}

/// JSON quiver report.
///
/// # Safety
/// `quiver` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cslab_quiver_to_json(quiver: *const CslabQuiver, out: *mut *mut c_char) -> CslabStatus {
    guarded(|| match quiver.as_ref() {
        Some(q) => write_string(out, to_json(&q.analysis.quiver.report())),
        None => {
            set_error("null quiver");
            CslabStatus::NullPointer
        }
    })
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

/// Runs the converse-of-Schur check up to `max_length` and writes the JSON
/// report. `exit_code`, if not null, receives 0 (consistent), 2 (stopped at
/// a guard) or 1 (inconsistent).
///
/// # Safety
/// `quiver` must be a live handle, `out` a valid pointer, `exit_code` null
/// or valid.
#[no_mangle]
pub unsafe extern "C" fn cslab_csl_check_json(
    quiver: *const CslabQuiver,
    max_length: usize,
    force_exhaustive: bool,
    out: *mut *mut c_char,
    exit_code: *mut i32,
) -> CslabStatus {
    guarded(|| {
        let Some(q) = quiver.as_ref() else {
            set_error("null quiver");
            return CslabStatus::NullPointer;
        };
        match csl_check(&q.analysis, max_length, force_exhaustive) {
            Ok(report) => {
                if let Some(code) = exit_code.as_mut() {
                    *code = report.exit_code();
                }
                write_string(out, to_json(&report))
            }
            Err(e) => fail(e),
        }
    })
}

/// JSON report on the algebra as a product of matrix rings over local rings.
///
/// # Safety
/// `quiver` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cslab_structure_json(quiver: *const CslabQuiver, out: *mut *mut c_char) -> CslabStatus {
    guarded(|| {
        let Some(q) = quiver.as_ref() else {
            set_error("null quiver");
            return CslabStatus::NullPointer;
        };
        match semiprimary_structure(&q.analysis) {
            Ok(report) => write_string(out, to_json(&report)),
            Err(e) => fail(e),
        }
    })
}

/// JSON report on monomorphisms of `GF(p)[t]/(t^n)`-modules with
/// `dim B ≤ max_dim`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cslab_subcat_json(
    p: u32,
    n: usize,
    max_dim: usize,
    guard: u64,
    out: *mut *mut c_char,
) -> CslabStatus {
    guarded(|| match quasi_csl_check(p, n, max_dim, guard_of(guard)) {
        Ok(report) => write_string(out, to_json(&report)),
        Err(e) => fail(e),
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cslab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
