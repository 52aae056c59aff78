//! C interface to the `macwilliams` enumerator library.
//!
//! Fallible functions return an [`MwStatus`] and write their result through an
//! out-pointer. After a failure, [`mw_last_error_message`] describes it on the
//! calling thread. Handles and strings written to out-pointers belong to the
//! caller and are released with `mw_code_free`, `mw_poly_free` or
//! `mw_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use macwilliams::codes::{CodeFile, CodeTuple, LinearCode};
use macwilliams::enumerators::{self, EnumeratorKind};
use macwilliams::polynomials::MultiPoly;
use macwilliams::transforms::{dual_enumerator_via_transform, verify_identity, IdentityKind};
use macwilliams::{Error, Limits};

/// Status codes. `Ok` through `CapExceeded` match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MwStatus {
    Ok = 0,
    IdentityFailed = 1,
    InvalidInput = 2,
    CapExceeded = 3,
    NullPointer = 4,
    Utf8 = 5,
    Panic = 6,
}

/// Opaque linear code handle.
pub struct MwCode(LinearCode);

/// Opaque enumerator polynomial handle.
pub struct MwPoly(MultiPoly);

struct Failure(MwStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if e.is_cap_exceeded() { MwStatus::CapExceeded } else { MwStatus::InvalidInput };
        Failure(status, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).ok();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<MwStatus, Failure>) -> MwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Failure(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            MwStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(MwStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(MwStatus::Utf8, format!("{what} is not valid UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T, what: &str) -> Result<MwStatus, Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(MwStatus::Ok)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<MwStatus, Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| Failure(MwStatus::InvalidInput, "output contains a NUL byte".into()))?;
    *out = c.into_raw();
    Ok(MwStatus::Ok)
}

unsafe fn tuple_arg(codes: *const *const MwCode, count: usize) -> Result<CodeTuple, Failure> {
    if codes.is_null() {
        return Err(null("codes"));
    }
    let handles = std::slice::from_raw_parts(codes, count);
    let codes = handles
        .iter()
        .map(|&h| ref_arg(h, "code handle").map(|c| c.0.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CodeTuple::new(codes)?)
}

fn kind_arg(name: &str, m: usize) -> Result<EnumeratorKind, Failure> {
    Ok(match name {
        "hamming" => EnumeratorKind::Hamming(m),
        "complete" => EnumeratorKind::Complete(m),
        "support" => EnumeratorKind::Support(m),
        "exact" => EnumeratorKind::Exact(m),
        _ => return Err(Failure(MwStatus::InvalidInput, format!("unknown enumerator kind {name:?}"))),
    })
}

/// Message for the most recent failure on this thread, or null if there was none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Built-in code by name (`C1`..`C5`, `D1`, `D2`).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mw_code_named(name: *const c_char, out: *mut *mut MwCode) -> MwStatus {
    guard(|| {
        let code = LinearCode::named(str_arg(name, "name")?, &Limits::default())?;
        write_out(out, MwCode(code), "out")
    })
}

/// Code from the JSON code-file format.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mw_code_from_json(json: *const c_char, out: *mut *mut MwCode) -> MwStatus {
    guard(|| {
        let code = CodeFile::parse(str_arg(json, "json")?)?.build(&Limits::default())?;
        write_out(out, MwCode(code), "out")
    })
}

/// Code in the JSON code-file format. Free the string with [`mw_string_free`].
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mw_code_to_json(code: *const MwCode, out: *mut *mut c_char) -> MwStatus {
    guard(|| write_string(out, ref_arg(code, "code")?.0.to_file().to_json()))
}

/// Dual code.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mw_code_dual(code: *const MwCode, out: *mut *mut MwCode) -> MwStatus {
    guard(|| {
        let dual = ref_arg(code, "code")?.0.dual(&Limits::default())?;
        write_out(out, MwCode(dual), "out")
    })
}

/// Number of codewords, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mw_code_size(code: *const MwCode) -> u64 {
    code.as_ref().map_or(0, |c| c.0.cardinality())
}

/// Code length `N`, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mw_code_length(code: *const MwCode) -> usize {
    code.as_ref().map_or(0, |c| c.0.length())
}

/// # Safety
/// `code` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mw_code_free(code: *mut MwCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Enumerator of kind `hamming`, `complete`, `support` or `exact` for the tuple
/// `codes[0..count]`.
///
/// # Safety
/// `kind` must be a NUL-terminated string, `codes` must point to `count` live
/// handles and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mw_enumerate(
    kind: *const c_char,
    codes: *const *const MwCode,
    count: usize,
    out: *mut *mut MwPoly,
) -> MwStatus {
    guard(|| {
        let kind = kind_arg(str_arg(kind, "kind")?, count)?;
        let tuple = tuple_arg(codes, count)?;
        let poly = enumerators::enumerate(kind, &tuple, &Limits::default())?;
        write_out(out, MwPoly(poly), "out")
    })
}

/// Enumerator of the dual tuple, by brute force or through the transform.
///
/// # Safety
/// As for [`mw_enumerate`].
#[no_mangle]
pub unsafe extern "C" fn mw_enumerate_dual(
    kind: *const c_char,
    codes: *const *const MwCode,
    count: usize,
    via_transform: bool,
    out: *mut *mut MwPoly,
) -> MwStatus {
    guard(|| {
        let kind = kind_arg(str_arg(kind, "kind")?, count)?;
        let tuple = tuple_arg(codes, count)?;
        let lim = Limits::default();
        let poly = if via_transform {
            dual_enumerator_via_transform(kind, &tuple, &lim)?
        } else {
            enumerators::enumerate(kind, &tuple.duals(&lim)?, &lim)?
        };
        write_out(out, MwPoly(poly), "out")
    })
}

/// Canonical text form. Free the string with [`mw_string_free`].
///
/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mw_poly_render(poly: *const MwPoly, out: *mut *mut c_char) -> MwStatus {
    guard(|| write_string(out, ref_arg(poly, "poly")?.0.render()?))
}

/// Writes whether `a` and `b` are the same polynomial.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mw_poly_equal(a: *const MwPoly, b: *const MwPoly, out: *mut bool) -> MwStatus {
    guard(|| {
        let diff = ref_arg(a, "a")?.0.sub(&ref_arg(b, "b")?.0)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = diff.is_zero();
        Ok(MwStatus::Ok)
    })
}

/// # Safety
/// `poly` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mw_poly_free(poly: *mut MwPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Checks the identity named `theorem` (`macwilliams`, `wan`, `cwrcs2`, `britz`,
/// `exact`, `hamw`, `klove`, `dps`) on `codes[0..count]`. Returns `Ok` when it
/// holds and `IdentityFailed` when it does not. When `report` is not null it
/// receives the JSON report either way.
///
/// # Safety
/// As for [`mw_enumerate`]; `report` may be null.
#[no_mangle]
pub unsafe extern "C" fn mw_verify(
    theorem: *const c_char,
    codes: *const *const MwCode,
    count: usize,
    report: *mut *mut c_char,
) -> MwStatus {
    guard(|| {
        let kind: IdentityKind = str_arg(theorem, "theorem")?.parse()?;
        let tuple = tuple_arg(codes, count)?;
        let r = verify_identity(kind, &tuple, &Limits::default())?;
        if !report.is_null() {
            write_string(report, r.to_json().to_string())?;
        }
        if r.passed {
            Ok(MwStatus::Ok)
        } else {
            Err(Failure(MwStatus::IdentityFailed, r.to_string()))
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
