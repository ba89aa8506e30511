//! C ABI for `logknot`.
//!
//! Every function returns a [`LogknotStatus`]; on failure the message is kept per thread and
//! read with [`logknot_last_error`]. Handles are opaque and freed by their `_free` function.
//! Panics never cross the boundary and are reported as `LOGKNOT_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use logknot::alexander::{Alexander, AlexanderOptions};
use logknot::center::{CentralDecomposition, Decomposer, DecomposerOptions};
use logknot::cli::DecompositionOutput;
use logknot::scalar::{CyclotomicNumber, Exact};
use logknot::tangle::{preset, FramedBraidWord, DEFAULT_CAP};
use logknot::Error;

/// Status codes. The numeric values of the knot-specific failures match the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogknotStatus {
    Ok = 0,
    Failure = 1,
    Parse = 2,
    MultiComponent = 3,
    CapExceeded = 4,
    NullPointer = 5,
    Panic = 6,
}

/// Selects a family of central coefficients.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogknotCoefficient {
    /// `a_s`, `0 <= s <= p`.
    A = 0,
    /// `b_s^+`, `1 <= s <= p-1`.
    BPlus = 1,
    /// `b_s^-`, `1 <= s <= p-1`.
    BMinus = 2,
}

/// A framed braid whose closure is a knot.
pub struct LogknotKnot {
    word: FramedBraidWord,
}

/// Decomposition of the universal invariant of a knot.
pub struct LogknotDecomposition {
    word: FramedBraidWord,
    dec: CentralDecomposition<CyclotomicNumber>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> LogknotStatus {
    match e {
        Error::Parse(_) | Error::InvalidParameter(_) => LogknotStatus::Parse,
        Error::MultiComponent { .. } => LogknotStatus::MultiComponent,
        Error::CapExceeded { .. } => LogknotStatus::CapExceeded,
        _ => LogknotStatus::Failure,
    }
}

enum Fail {
    Core(Error),
    Null(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> LogknotStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LogknotStatus::Ok,
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer passed as {what}"));
            LogknotStatus::NullPointer
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            LogknotStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Core(Error::Parse(format!("{what} is not UTF-8"))))
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

fn out_ptr<T>(p: *mut T, what: &'static str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail::Null(what))
    } else {
        Ok(())
    }
}

/// Message of the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn logknot_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn logknot_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Knot from a preset name such as `"trefoil"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn logknot_knot_from_preset(name: *const c_char, out: *mut *mut LogknotKnot) -> LogknotStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let word = preset(read_str(name, "name")?)?;
        *out = Box::into_raw(Box::new(LogknotKnot { word }));
        Ok(())
    })
}

/// Knot from a braid word like `"s1 S2 s1 S2"` on `strands` strands.
///
/// # Safety
/// `braid` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn logknot_knot_parse(
    braid: *const c_char,
    strands: usize,
    out: *mut *mut LogknotKnot,
) -> LogknotStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let word = FramedBraidWord::parse(read_str(braid, "braid")?, strands)?;
        word.ensure_knot()?;
        *out = Box::into_raw(Box::new(LogknotKnot { word }));
        Ok(())
    })
}

/// # Safety
/// `knot` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn logknot_knot_free(knot: *mut LogknotKnot) {
    if !knot.is_null() {
        drop(Box::from_raw(knot));
    }
}

/// Blackboard framing (writhe plus twists).
///
/// # Safety
/// `knot` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn logknot_knot_framing(knot: *const LogknotKnot, out: *mut i64) -> LogknotStatus {
    guard(|| {
        out_ptr(out, "out")?;
        *out = deref(knot, "knot")?.word.framing();
        Ok(())
    })
}

/// Exact decomposition at `q = exp(πi/p)`. `cap` of 0 means the default cap.
///
/// # Safety
/// `knot` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn logknot_decompose(
    knot: *const LogknotKnot,
    p: u32,
    framing_correct: bool,
    cap: usize,
    out: *mut *mut LogknotDecomposition,
) -> LogknotStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let word = deref(knot, "knot")?.word.clone();
        let opts = DecomposerOptions {
            cap: if cap == 0 { DEFAULT_CAP } else { cap },
            framing_correct,
            ..Default::default()
        };
        let dec = Decomposer::new(&Exact::new(p)?, opts)?.decompose(&word)?;
        *out = Box::into_raw(Box::new(LogknotDecomposition { word, dec }));
        Ok(())
    })
}

/// # Safety
/// `dec` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn logknot_decomposition_free(dec: *mut LogknotDecomposition) {
    if !dec.is_null() {
        drop(Box::from_raw(dec));
    }
}

/// Double-precision value of one coefficient.
///
/// # Safety
/// `dec` must be a live handle; `re` and `im` writable pointers.
#[no_mangle]
pub unsafe extern "C" fn logknot_decomposition_coefficient(
    dec: *const LogknotDecomposition,
    kind: LogknotCoefficient,
    s: u32,
    re: *mut f64,
    im: *mut f64,
) -> LogknotStatus {
    guard(|| {
        out_ptr(re, "re")?;
        out_ptr(im, "im")?;
        let d = &deref(dec, "dec")?.dec;
        let (list, first) = match kind {
            LogknotCoefficient::A => (&d.a, 0),
            LogknotCoefficient::BPlus => (&d.b_plus, 1),
            LogknotCoefficient::BMinus => (&d.b_minus, 1),
        };
        let x = (s as usize)
            .checked_sub(first)
            .and_then(|k| list.get(k))
            .ok_or_else(|| Error::InvalidParameter(format!("coefficient index s={s} out of range for p={}", d.p)))?;
        let z = x.to_c64();
        *re = z.re;
        *im = z.im;
        Ok(())
    })
}

/// JSON document with exact and approximate coefficients. Free with [`logknot_string_free`].
///
/// # Safety
/// `dec` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn logknot_decomposition_to_json(
    dec: *const LogknotDecomposition,
    out: *mut *mut c_char,
) -> LogknotStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let d = deref(dec, "dec")?;
        let text = DecompositionOutput::new(&d.word, &d.dec).to_json();
        *out = CString::new(text).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn logknot_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `O_λ` for the knot at `λ = re + i·im`. `precision` of 0 means the default bit precision.
///
/// # Safety
/// `knot` must be a live handle; `out_re` and `out_im` writable pointers.
#[no_mangle]
pub unsafe extern "C" fn logknot_colored_alexander(
    knot: *const LogknotKnot,
    p: u32,
    re: f64,
    im: f64,
    precision: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> LogknotStatus {
    guard(|| {
        out_ptr(out_re, "out_re")?;
        out_ptr(out_im, "out_im")?;
        let word = &deref(knot, "knot")?.word;
        let mut opts = AlexanderOptions::default();
        if precision != 0 {
            opts.precision = precision;
        }
        let z = Alexander::new(p, opts)?
            .colored_alexander(word, logknot::Complex64::new(re, im))?
            .to_c64();
        *out_re = z.re;
        *out_im = z.im;
        Ok(())
    })
}
