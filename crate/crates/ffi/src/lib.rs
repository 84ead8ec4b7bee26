//! C ABI over the efsynth library.
//!
//! Conventions:
//! - Handles (`EfSample`, `EfFormula`) are opaque; create them through the
//!   `ef_*` constructors and release them with the matching `ef_*_free`.
//! - Every fallible call returns an [`EfStatus`]; on anything other than
//!   `EF_STATUS_OK` the output arguments are untouched and
//!   [`ef_last_error`] returns a thread-local description of the failure.
//! - Strings returned through `char **` are NUL-terminated, owned by the
//!   caller, and must be released with [`ef_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use efsynth::formulas::{expand, render_core, render_macro, CoreStyle};
use efsynth::semantics::eval_macro;
use efsynth::synthesis::{check_consistent, synthesize, synthesize_minimized};
use efsynth::{cli, efgame, Error, MacroFormula, Sample, StringStructure};

/// Result codes for every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EfStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    Utf8 = 2,
    /// The input was rejected (bad sample, bad formula, unknown symbol,
    /// undefined similarity, ...).
    InvalidInput = 3,
    /// The sample is internally contradictory.
    Inconsistent = 4,
    /// A resource guard tripped before an answer was reached.
    Capacity = 5,
}

/// An owned classified sample. Opaque.
pub struct EfSample(Sample);

/// An owned sentence. Opaque.
pub struct EfFormula(MacroFormula);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: EfStatus, message: impl Into<Vec<u8>>) -> EfStatus {
    let text = CString::new(message).unwrap_or_else(|_| c"invalid error text".to_owned());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
    status
}

fn fail_with(err: Error) -> EfStatus {
    let status = match err {
        Error::Capacity(_) => EfStatus::Capacity,
        Error::InconsistentSample(_) | Error::EmptySample => EfStatus::Inconsistent,
        _ => EfStatus::InvalidInput,
    };
    fail(status, err.to_string())
}

/// # Safety
/// `text` must be a valid NUL-terminated string or NULL.
unsafe fn utf8_arg<'a>(text: *const c_char) -> Result<&'a str, EfStatus> {
    if text.is_null() {
        return Err(fail(EfStatus::NullArgument, "NULL string argument"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| fail(EfStatus::Utf8, "argument is not valid UTF-8"))
}

fn export_string(text: String, out: *mut *mut c_char) -> EfStatus {
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            EfStatus::Ok
        }
        Err(_) => fail(EfStatus::InvalidInput, "output contains a NUL byte"),
    }
}

/// Description of the most recent failure on this thread, or NULL when no
/// call has failed yet. The pointer stays valid until the next failing
/// call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn ef_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null(), |text| text.as_ptr())
    })
}

/// Parses a classified sample from text: one `+ string` or `- string` per
/// line, `#` comments, blank lines, and an optional `@alphabet SYMBOLS`
/// directive.
///
/// # Safety
/// `text` must be NUL-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ef_sample_parse(
    text: *const c_char,
    out: *mut *mut EfSample,
) -> EfStatus {
    if out.is_null() {
        return fail(EfStatus::NullArgument, "NULL output argument");
    }
    let text = match utf8_arg(text) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match cli::parse_sample(text) {
        Ok(sample) => {
            *out = Box::into_raw(Box::new(EfSample(sample)));
            EfStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Releases a sample handle. NULL is ignored.
///
/// # Safety
/// `sample` must come from `ef_sample_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ef_sample_free(sample: *mut EfSample) {
    if !sample.is_null() {
        drop(Box::from_raw(sample));
    }
}

/// Synthesizes a separating sentence of minimal quantifier rank. With
/// `minimize` the number of disjuncts is also minimized (exactly up to
/// `exact_limit` positive strings, greedily beyond).
///
/// # Safety
/// `sample` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ef_synthesize(
    sample: *const EfSample,
    minimize: bool,
    exact_limit: usize,
    out: *mut *mut EfFormula,
) -> EfStatus {
    if sample.is_null() || out.is_null() {
        return fail(EfStatus::NullArgument, "NULL argument");
    }
    let sample = &(*sample).0;
    let hypothesis = if minimize {
        synthesize_minimized(sample, exact_limit)
    } else {
        synthesize(sample)
    };
    match hypothesis {
        Ok(h) => {
            *out = Box::into_raw(Box::new(EfFormula(h.to_macro())));
            EfStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Deserializes a sentence from its JSON form.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ef_formula_from_json(
    json: *const c_char,
    out: *mut *mut EfFormula,
) -> EfStatus {
    if out.is_null() {
        return fail(EfStatus::NullArgument, "NULL output argument");
    }
    let json = match utf8_arg(json) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match MacroFormula::deserialize(json) {
        Ok(m) => {
            *out = Box::into_raw(Box::new(EfFormula(m)));
            EfStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Serializes a sentence to JSON. The caller frees the string with
/// `ef_string_free`.
///
/// # Safety
/// `formula` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ef_formula_to_json(
    formula: *const EfFormula,
    out: *mut *mut c_char,
) -> EfStatus {
    if formula.is_null() || out.is_null() {
        return fail(EfStatus::NullArgument, "NULL argument");
    }
    export_string((*formula).0.serialize(), out)
}

/// Renders a sentence in human-readable form; with `core` it is first
/// expanded into plain first-order syntax. The caller frees the string
/// with `ef_string_free`.
///
/// # Safety
/// `formula` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ef_formula_render(
    formula: *const EfFormula,
    core: bool,
    out: *mut *mut c_char,
) -> EfStatus {
    if formula.is_null() || out.is_null() {
        return fail(EfStatus::NullArgument, "NULL argument");
    }
    let m = &(*formula).0;
    let text = if core {
        render_core(&expand(m), CoreStyle::Ascii)
    } else {
        render_macro(m)
    };
    export_string(text, out)
}

/// Quantifier rank of a sentence.
///
/// # Safety
/// `formula` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ef_formula_rank(formula: *const EfFormula) -> u32 {
    if formula.is_null() {
        return u32::MAX;
    }
    (*formula).0.qr()
}

/// Releases a formula handle. NULL is ignored.
///
/// # Safety
/// `formula` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ef_formula_free(formula: *mut EfFormula) {
    if !formula.is_null() {
        drop(Box::from_raw(formula));
    }
}

/// Evaluates a sentence on a string; writes the truth value to `out`.
///
/// # Safety
/// `text` must be NUL-terminated; `formula` must be a live handle; `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ef_eval(
    text: *const c_char,
    formula: *const EfFormula,
    out: *mut bool,
) -> EfStatus {
    if formula.is_null() || out.is_null() {
        return fail(EfStatus::NullArgument, "NULL argument");
    }
    let text = match utf8_arg(text) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match StringStructure::parse(text) {
        Ok(w) => {
            *out = eval_macro(&w, &(*formula).0);
            EfStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Checks a sentence against a sample; writes whether every string is
/// classified correctly to `out`.
///
/// # Safety
/// `sample` and `formula` must be live handles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ef_check(
    sample: *const EfSample,
    formula: *const EfFormula,
    out: *mut bool,
) -> EfStatus {
    if sample.is_null() || formula.is_null() || out.is_null() {
        return fail(EfStatus::NullArgument, "NULL argument");
    }
    *out = check_consistent(&(*sample).0, &(*formula).0).consistent();
    EfStatus::Ok
}

/// Similarity of two distinct strings: the number of game rounds after
/// which the Spoiler first wins. Fails on identical strings, where no
/// round count separates them.
///
/// # Safety
/// `u` and `v` must be NUL-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ef_efsim(
    u: *const c_char,
    v: *const c_char,
    out: *mut u32,
) -> EfStatus {
    if out.is_null() {
        return fail(EfStatus::NullArgument, "NULL output argument");
    }
    let (u, v) = match (utf8_arg(u), utf8_arg(v)) {
        (Ok(u), Ok(v)) => (u, v),
        (Err(status), _) | (_, Err(status)) => return status,
    };
    let shared = match efsynth::Alphabet::new(u.chars().chain(v.chars())) {
        Ok(a) => a,
        Err(e) => return fail_with(e),
    };
    let pair = StringStructure::new(u, shared.clone())
        .and_then(|u| Ok((u, StringStructure::new(v, shared)?)));
    match pair.and_then(|(u, v)| efgame::efsim(&u, &v)) {
        Ok(value) => {
            *out = value;
            EfStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Releases a string produced by this library. NULL is ignored.
///
/// # Safety
/// `text` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ef_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}
