//! C ABI over `k2norm`.
//!
//! Every handle is opaque and owned by the caller once returned; release it
//! with the matching `*_free` function. Every fallible function returns a
//! [`K2Status`] and writes its result through an out pointer only on
//! success. The message for the last failure on the calling thread is
//! available from [`k2_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use k2norm::cli_io::{
    parse_extension_json, parse_field_json, parse_inline_element, parse_symbols_json,
    symbols_to_records, verdict_to_record, RecordError,
};
use k2norm::k_theory_norm::{is_norm, obstruction_group, witness_non_norm, SymbolProduct};
use k2norm::number_field::{sign_at_place, NumberField};
use k2norm::relative_ext::RelativeExtension;
use k2norm::Error;

/// Status codes. The nonzero input codes match the exit codes of the
/// command-line tool.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum K2Status {
    Ok = 0,
    Malformed = 2,
    Precondition = 3,
    Inconsistent = 4,
    NullPointer = 20,
    InvalidUtf8 = 21,
    Panic = 99,
}

pub struct K2Field(NumberField);

pub struct K2Extension(RelativeExtension);

pub struct K2Symbols(SymbolProduct);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(K2Status, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(e.exit_code()), e.to_string())
    }
}

impl From<RecordError> for Failure {
    fn from(e: RecordError) -> Self {
        Failure(status_of(e.exit_code()), e.to_string())
    }
}

fn status_of(code: i32) -> K2Status {
    match code {
        2 => K2Status::Malformed,
        4 => K2Status::Inconsistent,
        _ => K2Status::Precondition,
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> K2Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => K2Status::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            K2Status::Panic
        }
    }
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(K2Status::NullPointer, format!("{what} is null")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure(K2Status::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(K2Status::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(K2Status::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no nul bytes").into_raw()
}

/// Message describing the last failure on this thread, or null if there was
/// none. The pointer stays valid until the next failing call on the thread.
#[no_mangle]
pub extern "C" fn k2_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn k2_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a field record `{"name", "var", "min_poly"}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k2_field_from_json(
    json: *const c_char,
    out_field: *mut *mut K2Field,
) -> K2Status {
    guard(|| {
        let slot = out(out_field, "out_field")?;
        let f = parse_field_json(text(json, "json")?)?;
        *slot = Box::into_raw(Box::new(K2Field(f)));
        Ok(())
    })
}

/// # Safety
/// `field` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn k2_field_free(field: *mut K2Field) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn k2_field_degree(
    field: *const K2Field,
    out_degree: *mut usize,
) -> K2Status {
    guard(|| {
        let f = get(field, "field")?;
        *out(out_degree, "out_degree")? = f.0.degree();
        Ok(())
    })
}

/// Number of real places r₁.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn k2_field_real_place_count(
    field: *const K2Field,
    out_count: *mut usize,
) -> K2Status {
    guard(|| {
        let f = get(field, "field")?;
        *out(out_count, "out_count")? = f.0.real_places().len();
        Ok(())
    })
}

/// Sign (−1, 0 or 1) of an element at a real place. `element` is a JSON list
/// of rational strings or a comma-separated list of rationals.
///
/// # Safety
/// Pointers must be valid; `element` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn k2_field_sign_at_place(
    field: *const K2Field,
    element: *const c_char,
    place: usize,
    out_sign: *mut i8,
) -> K2Status {
    guard(|| {
        let f = &get(field, "field")?.0;
        let slot = out(out_sign, "out_sign")?;
        let a = parse_inline_element(f, text(element, "element")?)?;
        let v = f.real_place(place)?;
        *slot = sign_at_place(&a, &v)?;
        Ok(())
    })
}

/// Parses an extension record `{"base", "var", "min_poly_over_base"}`.
///
/// # Safety
/// `json` must be nul-terminated; `out_ext` writable.
#[no_mangle]
pub unsafe extern "C" fn k2_extension_from_json(
    json: *const c_char,
    out_ext: *mut *mut K2Extension,
) -> K2Status {
    guard(|| {
        let slot = out(out_ext, "out_ext")?;
        let e = parse_extension_json(text(json, "json")?)?;
        *slot = Box::into_raw(Box::new(K2Extension(e)));
        Ok(())
    })
}

/// # Safety
/// `ext` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn k2_extension_free(ext: *mut K2Extension) {
    if !ext.is_null() {
        drop(Box::from_raw(ext));
    }
}

/// New handle to the base field; free it separately.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn k2_extension_base(
    ext: *const K2Extension,
    out_field: *mut *mut K2Field,
) -> K2Status {
    guard(|| {
        let e = get(ext, "ext")?;
        *out(out_field, "out_field")? = Box::into_raw(Box::new(K2Field(e.0.base().clone())));
        Ok(())
    })
}

/// Writes the indices of the ramified real places (no real place above)
/// into `buf`, up to `cap` of them, and their total number into `out_len`.
/// `buf` may be null when `cap` is 0.
///
/// # Safety
/// `buf` must have room for `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn k2_extension_ramified_places(
    ext: *const K2Extension,
    buf: *mut usize,
    cap: usize,
    out_len: *mut usize,
) -> K2Status {
    guard(|| {
        let e = get(ext, "ext")?;
        let len = out(out_len, "out_len")?;
        if cap > 0 && buf.is_null() {
            return Err(Failure(K2Status::NullPointer, "buf is null".into()));
        }
        let sr = e.0.ramified_real_places()?;
        for (i, v) in sr.iter().take(cap).enumerate() {
            *buf.add(i) = v.index();
        }
        *len = sr.len();
        Ok(())
    })
}

/// Parses a list of `{"f", "g", "e"}` records over `field`.
///
/// # Safety
/// Pointers must be valid; `json` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn k2_symbols_from_json(
    field: *const K2Field,
    json: *const c_char,
    out_symbols: *mut *mut K2Symbols,
) -> K2Status {
    guard(|| {
        let f = get(field, "field")?;
        let slot = out(out_symbols, "out_symbols")?;
        let x = parse_symbols_json(&f.0, text(json, "json")?)?;
        *slot = Box::into_raw(Box::new(K2Symbols(x)));
        Ok(())
    })
}

/// # Safety
/// `symbols` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn k2_symbols_free(symbols: *mut K2Symbols) {
    if !symbols.is_null() {
        drop(Box::from_raw(symbols));
    }
}

/// Whether the image of the symbol product in K₂ₙ(F) is a norm from L.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn k2_is_norm(
    ext: *const K2Extension,
    symbols: *const K2Symbols,
    n: u32,
    out_is_norm: *mut bool,
) -> K2Status {
    guard(|| {
        let e = get(ext, "ext")?;
        let x = get(symbols, "symbols")?;
        let slot = out(out_is_norm, "out_is_norm")?;
        *slot = is_norm(&e.0, &x.0, n)?.is_norm;
        Ok(())
    })
}

/// The full verdict record as JSON; free with [`k2_string_free`].
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn k2_verdict_json(
    ext: *const K2Extension,
    symbols: *const K2Symbols,
    n: u32,
    out_json: *mut *mut c_char,
) -> K2Status {
    guard(|| {
        let e = get(ext, "ext")?;
        let x = get(symbols, "symbols")?;
        let slot = out(out_json, "out_json")?;
        let v = is_norm(&e.0, &x.0, n)?;
        let s = serde_json::to_string(&verdict_to_record(&v)).expect("records serialize");
        *slot = to_c_string(s);
        Ok(())
    })
}

/// Rank r of the obstruction group (ℤ/2)^r for K₂ₙ.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn k2_obstruction_rank(
    ext: *const K2Extension,
    n: u32,
    out_rank: *mut usize,
) -> K2Status {
    guard(|| {
        let e = get(ext, "ext")?;
        let slot = out(out_rank, "out_rank")?;
        *slot = obstruction_group(&e.0, n)?.rank;
        Ok(())
    })
}

/// A symbol product that is not a norm, with nonzero parity exactly at the
/// ramified place `place`, as a JSON symbols record.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn k2_witness_json(
    ext: *const K2Extension,
    place: usize,
    out_json: *mut *mut c_char,
) -> K2Status {
    guard(|| {
        let e = get(ext, "ext")?;
        let slot = out(out_json, "out_json")?;
        let v = e.0.base().real_place(place)?;
        let w = witness_non_norm(&e.0, &v)?;
        let s = serde_json::to_string(&symbols_to_records(&w)).expect("records serialize");
        *slot = to_c_string(s);
        Ok(())
    })
}
