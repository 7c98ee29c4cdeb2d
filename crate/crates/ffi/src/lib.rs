//! C ABI over `cremona-core`.
//!
//! Every function returns a `CremonaStatus`; results go through out-pointers.
//! Classes are opaque `CremonaClass` handles released with `cremona_class_free`.
//! Strings returned to the caller are NUL-terminated and released with
//! `cremona_string_free`. After a failed call, `cremona_last_error` gives a
//! message for the current thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cremona_core::curves::enumerate_minus_one;
use cremona_core::lattice::{pairing, parse_vector, PicClass};
use cremona_core::nef::{curve_check, is_nef_k_nonpositive};
use cremona_core::polytope::{cartan_matrix, PolytopeName};
use cremona_core::verify::{self, Suite, VerifyOptions};
use cremona_core::weyl::reduce;
use cremona_core::Error;

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CremonaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    /// The class has `v.K > 0`.
    KPositive = 4,
    /// A result does not fit the C type.
    Overflow = 5,
    /// A Rust panic was caught at the boundary.
    Internal = 6,
}

/// Nef verdict.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CremonaVerdict {
    Nef = 0,
    NotNef = 1,
}

/// Opaque handle to a class in the Picard lattice.
pub struct CremonaClass(PicClass);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> CremonaStatus {
    match e {
        Error::DimensionMismatch { .. } => CremonaStatus::DimensionMismatch,
        Error::KPositive(_) => CremonaStatus::KPositive,
        _ => CremonaStatus::InvalidArgument,
    }
}

/// Runs `f`, recording the error message and mapping panics to `Internal`.
fn guard(f: impl FnOnce() -> Result<(), (CremonaStatus, String)>) -> CremonaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CremonaStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            CremonaStatus::Internal
        }
    }
}

fn lib<T>(r: cremona_core::Result<T>) -> Result<T, (CremonaStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (CremonaStatus, String) {
    (CremonaStatus::NullPointer, format!("{what} is null"))
}

unsafe fn class_ref<'a>(
    p: *const CremonaClass,
    what: &str,
) -> Result<&'a PicClass, (CremonaStatus, String)> {
    p.as_ref().map(|c| &c.0).ok_or_else(|| null(what))
}

fn string_out(s: String, out: *mut *mut c_char) -> Result<(), (CremonaStatus, String)> {
    let c = CString::new(s).map_err(|_| (CremonaStatus::Internal, "NUL in output".to_string()))?;
    // SAFETY: caller checked `out` for null.
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn class_out(v: PicClass, out: *mut *mut CremonaClass) {
    // SAFETY: caller checked `out` for null.
    unsafe { *out = Box::into_raw(Box::new(CremonaClass(v))) };
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn cremona_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates a class from `len = n + 1` coordinates `x_0, ..., x_n`.
///
/// # Safety
/// `coords` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cremona_class_new(
    coords: *const i64,
    len: usize,
    out: *mut *mut CremonaClass,
) -> CremonaStatus {
    guard(|| {
        if coords.is_null() {
            return Err(null("coords"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let xs = std::slice::from_raw_parts(coords, len);
        class_out(lib(PicClass::from_i64(xs))?, out);
        Ok(())
    })
}

/// Parses a comma-separated coordinate list such as `"3,-1,-1,-1"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cremona_class_parse(
    text: *const c_char,
    out: *mut *mut CremonaClass,
) -> CremonaStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let s = CStr::from_ptr(text).to_str().map_err(|_| {
            (
                CremonaStatus::InvalidArgument,
                "text is not UTF-8".to_string(),
            )
        })?;
        class_out(lib(parse_vector(s))?, out);
        Ok(())
    })
}

/// Releases a class. Null is ignored.
///
/// # Safety
/// `class` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cremona_class_free(class: *mut CremonaClass) {
    if !class.is_null() {
        drop(Box::from_raw(class));
    }
}

/// Number of blown-up points `n`.
///
/// # Safety
/// `class` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cremona_class_n(
    class: *const CremonaClass,
    out: *mut usize,
) -> CremonaStatus {
    guard(|| {
        let v = class_ref(class, "class")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = v.n();
        Ok(())
    })
}

/// Copies the `n + 1` coordinates into `buf` of capacity `cap`.
///
/// # Safety
/// `class` must be a live handle; `buf` must hold `cap` values.
#[no_mangle]
pub unsafe extern "C" fn cremona_class_coords(
    class: *const CremonaClass,
    buf: *mut i64,
    cap: usize,
) -> CremonaStatus {
    guard(|| {
        let v = class_ref(class, "class")?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        if cap < v.n() + 1 {
            return Err((
                CremonaStatus::DimensionMismatch,
                format!("buffer holds {cap} values, class has {}", v.n() + 1),
            ));
        }
        for (i, x) in v.coords().iter().enumerate() {
            *buf.add(i) = i64::try_from(x).map_err(|_| {
                (
                    CremonaStatus::Overflow,
                    format!("coordinate {x} exceeds int64"),
                )
            })?;
        }
        Ok(())
    })
}

/// Renders a class as `(x_0,...,x_n)`.
///
/// # Safety
/// `class` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cremona_class_to_string(
    class: *const CremonaClass,
    out: *mut *mut c_char,
) -> CremonaStatus {
    guard(|| {
        let v = class_ref(class, "class")?;
        if out.is_null() {
            return Err(null("out"));
        }
        string_out(v.to_string(), out)
    })
}

/// Intersection pairing `a . b` with form `diag(1, -1, ..., -1)`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cremona_pairing(
    a: *const CremonaClass,
    b: *const CremonaClass,
    out: *mut i64,
) -> CremonaStatus {
    guard(|| {
        let (a, b) = (class_ref(a, "a")?, class_ref(b, "b")?);
        if out.is_null() {
            return Err(null("out"));
        }
        let p = lib(pairing(a, b))?;
        *out = i64::try_from(&p).map_err(|_| {
            (
                CremonaStatus::Overflow,
                format!("pairing {p} exceeds int64"),
            )
        })?;
        Ok(())
    })
}

/// Reduces a class with `v.K <= 0` into the fundamental cone.
/// `reduced` receives the reduced class, `in_cone` whether `v` is nef, and
/// `json` (optional, may be null) the full result as JSON.
///
/// # Safety
/// `class` must be a live handle; non-null out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn cremona_reduce(
    class: *const CremonaClass,
    reduced: *mut *mut CremonaClass,
    in_cone: *mut bool,
    json: *mut *mut c_char,
) -> CremonaStatus {
    guard(|| {
        let v = class_ref(class, "class")?;
        if reduced.is_null() {
            return Err(null("reduced"));
        }
        if in_cone.is_null() {
            return Err(null("in_cone"));
        }
        let r = lib(reduce(v))?;
        if !json.is_null() {
            string_out(r.to_json().to_string(), json)?;
        }
        *in_cone = r.is_in_cone();
        class_out(r.reduced, reduced);
        Ok(())
    })
}

/// Nef test. With `max_degree < 0` the exact reduction method is used
/// (requires `v.K <= 0`); otherwise the curve check up to that degree.
///
/// # Safety
/// `class` must be a live handle; `verdict` must be writable; `json` may be null.
#[no_mangle]
pub unsafe extern "C" fn cremona_nef_test(
    class: *const CremonaClass,
    max_degree: i64,
    verdict: *mut CremonaVerdict,
    json: *mut *mut c_char,
) -> CremonaStatus {
    guard(|| {
        let v = class_ref(class, "class")?;
        if verdict.is_null() {
            return Err(null("verdict"));
        }
        let r = if max_degree < 0 {
            lib(is_nef_k_nonpositive(v))?
        } else {
            lib(curve_check(v, max_degree as u64))?
        };
        if !json.is_null() {
            string_out(serde_json::to_string(&r).expect("verdict serializes"), json)?;
        }
        *verdict = if r.is_nef() {
            CremonaVerdict::Nef
        } else {
            CremonaVerdict::NotNef
        };
        Ok(())
    })
}

/// Number of (-1)-classes with `n` points and degree at most `max_degree`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cremona_curve_count(
    n: usize,
    max_degree: u64,
    out: *mut usize,
) -> CremonaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = lib(enumerate_minus_one(n, max_degree))?.len();
        Ok(())
    })
}

/// Cartan matrix of `polytope` (`p_tilde`, `p`, `p_minus`, `fundamental`) as a
/// JSON array of rows of rendered entries.
///
/// # Safety
/// `polytope` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cremona_cartan_json(
    polytope: *const c_char,
    n: usize,
    out: *mut *mut c_char,
) -> CremonaStatus {
    guard(|| {
        if polytope.is_null() {
            return Err(null("polytope"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let name: PolytopeName = lib(CStr::from_ptr(polytope)
            .to_str()
            .map_err(|_| Error::Parse("polytope is not UTF-8".into()))
            .and_then(str::parse))?;
        let m = lib(cartan_matrix(&lib(name.build(n))?))?;
        let rows: Vec<Vec<String>> = m
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        string_out(
            serde_json::to_string(&rows).expect("strings serialize"),
            out,
        )
    })
}

/// Runs the quick (`full = false`) or full check suite. `passed` receives
/// whether every check passed; `json` (optional) the report.
///
/// # Safety
/// `passed` must be writable; `json` may be null.
#[no_mangle]
pub unsafe extern "C" fn cremona_verify(
    full: bool,
    seed: u64,
    passed: *mut bool,
    json: *mut *mut c_char,
) -> CremonaStatus {
    guard(|| {
        if passed.is_null() {
            return Err(null("passed"));
        }
        let mut opts = VerifyOptions::new(if full { Suite::Paper } else { Suite::Quick });
        opts.seed = seed;
        let rep = lib(verify::run(&opts))?;
        if !json.is_null() {
            string_out(
                serde_json::to_string(&rep).expect("report serializes"),
                json,
            )?;
        }
        *passed = rep.ok();
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cremona_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
