//! C ABI over `boolcube`.
//!
//! Functions and spectra are opaque handles created by `bc_*` constructors and
//! released with the matching `*_free`. Every call returns a [`BcStatus`];
//! on failure `bc_last_error_message` describes the error for the calling thread.
//! Strings returned to the caller are released with `bc_string_free`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use std::ffi::c_char;

use boolcube::entropy::efi_ratios;
use boolcube::format;
use boolcube::influence::{influence_pivot, pivot_profile};
use boolcube::social;
use boolcube::suite::{self, Check, VerifyOptions};
use boolcube::{zoo, BooleanFunction, Error, Point, Sign, Spectrum, Subset, Tolerance};

/// Opaque Boolean function.
pub struct BcFunction(BooleanFunction);

/// Opaque Fourier spectrum.
pub struct BcSpectrum(Spectrum);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ArityTooLarge = 3,
    Parse = 4,
    NotMonotone = 5,
    ConstantFunction = 6,
    Precondition = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// Result of the FKN computation.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BcFkn {
    pub w1: f64,
    pub best_i: u32,
    pub coefficient: f64,
    pub distance: f64,
    pub bound: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BcStatus {
    match e {
        Error::ArityTooLarge { .. } => BcStatus::ArityTooLarge,
        Error::Parse { .. } => BcStatus::Parse,
        Error::NotMonotone { .. } => BcStatus::NotMonotone,
        Error::ConstantFunction => BcStatus::ConstantFunction,
        Error::Precondition(_) => BcStatus::Precondition,
        _ => BcStatus::InvalidArgument,
    }
}

fn fail(status: BcStatus, msg: impl Into<String>) -> BcStatus {
    set_error(msg.into());
    status
}

/// Runs `body`, translating errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), BcStatus>) -> BcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => BcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(BcStatus::Panic, "internal panic"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, BcStatus>;
}

impl<T> OrStatus<T> for boolcube::Result<T> {
    fn or_status(self) -> Result<T, BcStatus> {
        self.map_err(|e| fail(status_of(&e), e.to_string()))
    }
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, BcStatus> {
    p.as_ref().ok_or_else(|| fail(BcStatus::NullPointer, "null pointer argument"))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, BcStatus> {
    p.as_mut().ok_or_else(|| fail(BcStatus::NullPointer, "null output pointer"))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, BcStatus> {
    if p.is_null() {
        return Err(fail(BcStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(BcStatus::InvalidArgument, "string is not UTF-8"))
}

fn into_c_string(s: String) -> Result<*mut c_char, BcStatus> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| fail(BcStatus::InvalidArgument, "string contains a nul byte"))
}

fn give(f: BooleanFunction) -> *mut BcFunction {
    Box::into_raw(Box::new(BcFunction(f)))
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next `bc_*` call on the same thread.
#[no_mangle]
pub extern "C" fn bc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Sets the process-wide arity cap (at most 30).
#[no_mangle]
pub extern "C" fn bc_set_max_arity(n: u32) -> BcStatus {
    guard(|| boolcube::set_max_arity(n).or_status())
}

/// Builds a function from `2^n` characters in {0,1}; character `i` is 1 when `f = -1` at point `i`.
///
/// # Safety
/// `bits` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bc_function_from_bits(n: u32, bits: *const c_char, out_fn: *mut *mut BcFunction) -> BcStatus {
    guard(|| {
        let dst = out(out_fn)?;
        let f = BooleanFunction::from_bit_string(n, text(bits)?).or_status()?;
        *dst = give(f);
        Ok(())
    })
}

/// Parses the `.bfn` text format.
///
/// # Safety
/// `bfn` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bc_function_from_bfn(bfn: *const c_char, out_fn: *mut *mut BcFunction) -> BcStatus {
    guard(|| {
        let dst = out(out_fn)?;
        let f = format::parse_bfn(text(bfn)?).or_status()?;
        *dst = give(f);
        Ok(())
    })
}

/// Named constructors. `name` and the meaning of `a`, `b`:
/// `dictator` (n, i), `parity` (n, subset mask), `maj` (n), `or` (n), `and` (n),
/// `tribes` (width, count), `bl` (width).
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bc_function_zoo(name: *const c_char, a: u32, b: u32, out_fn: *mut *mut BcFunction) -> BcStatus {
    guard(|| {
        let dst = out(out_fn)?;
        let f = match text(name)? {
            "dictator" => zoo::dictator(a, b as usize),
            "parity" => zoo::parity(a, Subset(b as usize)),
            "maj" => zoo::majority(a),
            "or" => zoo::or_fn(a),
            "and" => zoo::and_fn(a),
            "tribes" => zoo::Partition::uniform(a as usize, b as usize).and_then(|p| zoo::tribes(&p)),
            "bl" => zoo::bl_params(a as usize).and_then(|p| p.partition()).and_then(|p| zoo::tribes(&p)),
            other => return Err(fail(BcStatus::InvalidArgument, format!("unknown function {other:?}"))),
        }
        .or_status()?;
        *dst = give(f);
        Ok(())
    })
}

/// # Safety
/// `f` must be NULL or a handle from a `bc_function_*` constructor not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bc_function_free(f: *mut BcFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Arity of `f`, or 0 for a NULL handle.
///
/// # Safety
/// `f` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bc_function_arity(f: *const BcFunction) -> u32 {
    f.as_ref().map_or(0, |f| f.0.arity())
}

/// `f(x)` in {-1, 1}, where bit `j-1` of `point` is set when `x_j = -1`.
///
/// # Safety
/// `f` must be a live handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_function_evaluate(f: *const BcFunction, point: u64, value: *mut i8) -> BcStatus {
    guard(|| {
        let f = deref(f)?;
        let dst = out(value)?;
        *dst = f.0.evaluate(Point(point as usize)).or_status()?;
        Ok(())
    })
}

/// Truth table in `.bfn` format; release with `bc_string_free`.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_function_to_bfn(f: *const BcFunction, out_str: *mut *mut c_char) -> BcStatus {
    guard(|| {
        let f = deref(f)?;
        let dst = out(out_str)?;
        *dst = into_c_string(format::write_bfn(&f.0))?;
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_function_spectrum(f: *const BcFunction, out_spec: *mut *mut BcSpectrum) -> BcStatus {
    guard(|| {
        let f = deref(f)?;
        let dst = out(out_spec)?;
        *dst = Box::into_raw(Box::new(BcSpectrum(f.0.spectrum())));
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a handle from `bc_function_spectrum` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bc_spectrum_free(s: *mut BcSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bc_spectrum_arity(s: *const BcSpectrum) -> u32 {
    s.as_ref().map_or(0, |s| s.0.arity())
}

/// The coefficient at subset `mask`.
///
/// # Safety
/// `s` must be a live handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_spectrum_get(s: *const BcSpectrum, mask: u64, value: *mut f64) -> BcStatus {
    guard(|| {
        let s = deref(s)?;
        let dst = out(value)?;
        let coeffs = s.0.coeffs();
        *dst = *coeffs
            .get(mask as usize)
            .ok_or_else(|| fail(BcStatus::InvalidArgument, format!("mask {mask} outside [{}]", s.0.arity())))?;
        Ok(())
    })
}

/// Copies all `2^n` coefficients in mask order into `buf`.
///
/// # Safety
/// `s` must be a live handle and `buf` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn bc_spectrum_copy(s: *const BcSpectrum, buf: *mut f64, len: usize) -> BcStatus {
    guard(|| {
        let s = deref(s)?;
        let coeffs = s.0.coeffs();
        if len < coeffs.len() {
            return Err(fail(BcStatus::BufferTooSmall, format!("need {} doubles, got {len}", coeffs.len())));
        }
        if buf.is_null() {
            return Err(fail(BcStatus::NullPointer, "null buffer"));
        }
        ptr::copy_nonoverlapping(coeffs.as_ptr(), buf, coeffs.len());
        Ok(())
    })
}

/// `I_i(f)` for `1 <= i <= n`.
///
/// # Safety
/// `f` must be a live handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_influence(f: *const BcFunction, i: u32, value: *mut f64) -> BcStatus {
    guard(|| {
        let f = deref(f)?;
        let dst = out(value)?;
        *dst = influence_pivot(&f.0, i as usize).or_status()?;
        Ok(())
    })
}

/// # Safety
/// `f` must be a live handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_total_influence(f: *const BcFunction, value: *mut f64) -> BcStatus {
    guard(|| {
        let f = deref(f)?;
        *out(value)? = pivot_profile(&f.0).total;
        Ok(())
    })
}

/// Fourier entropy and min-entropy, base 2. Either output may be NULL.
///
/// # Safety
/// `f` must be a live handle; non-NULL outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn bc_entropy(f: *const BcFunction, entropy: *mut f64, min_entropy: *mut f64) -> BcStatus {
    guard(|| {
        let e = efi_ratios(&deref(f)?.0);
        if let Some(h) = entropy.as_mut() {
            *h = e.entropy;
        }
        if let Some(h) = min_entropy.as_mut() {
            *h = e.min_entropy;
        }
        Ok(())
    })
}

/// `H / I` (0 for constants).
///
/// # Safety
/// `f` must be a live handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_efi_ratio(f: *const BcFunction, value: *mut f64) -> BcStatus {
    guard(|| {
        let f = deref(f)?;
        *out(value)? = efi_ratios(&f.0).efi_ratio;
        Ok(())
    })
}

/// # Safety
/// `f` must be a live handle and `result` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_fkn(f: *const BcFunction, result: *mut BcFkn) -> BcStatus {
    guard(|| {
        let f = deref(f)?;
        let dst = out(result)?;
        let r = social::fkn(&f.0).or_status()?;
        *dst = BcFkn {
            w1: r.w1,
            best_i: r.best_i as u32,
            coefficient: r.coefficient,
            distance: r.distance,
            bound: r.bound,
        };
        Ok(())
    })
}

/// `max_i I_i · n / (ln n · Var f)`.
///
/// # Safety
/// `f` must be a live handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn bc_kkl_ratio(f: *const BcFunction, value: *mut f64) -> BcStatus {
    guard(|| {
        let f = deref(f)?;
        let dst = out(value)?;
        *dst = social::kkl_ratio(&f.0).or_status()?;
        Ok(())
    })
}

/// Greedy coalition towards `direction` (+1 or -1). Writes the chosen
/// coordinates to `coalition` (capacity `cap`), their number to `len` and the
/// final expectation to `final_expectation` (may be NULL). When `cap` is too
/// small, `len` still receives the required size.
///
/// # Safety
/// `f` must be a live handle, `coalition` must hold `cap` values and `len` be writable.
#[no_mangle]
pub unsafe extern "C" fn bc_greedy_coalition(
    f: *const BcFunction,
    target: f64,
    direction: i32,
    coalition: *mut u32,
    cap: usize,
    len: *mut usize,
    final_expectation: *mut f64,
) -> BcStatus {
    guard(|| {
        let f = deref(f)?;
        let len = out(len)?;
        let dir = Sign::from_value(i64::from(direction)).or_status()?;
        let trace = social::greedy_coalition(&f.0, target, dir).or_status()?;
        *len = trace.coalition.len();
        if let Some(e) = final_expectation.as_mut() {
            *e = trace.final_expectation;
        }
        if cap < trace.coalition.len() {
            return Err(fail(BcStatus::BufferTooSmall, format!("need {} slots, got {cap}", trace.coalition.len())));
        }
        if trace.coalition.is_empty() {
            return Ok(());
        }
        if coalition.is_null() {
            return Err(fail(BcStatus::NullPointer, "null coalition buffer"));
        }
        for (k, &c) in trace.coalition.iter().enumerate() {
            *coalition.add(k) = c as u32;
        }
        Ok(())
    })
}

/// Runs a named check (`bonami`, `hyper`, `kkl`, ...) and returns the JSON report.
/// `passed` receives whether every assertion held.
///
/// # Safety
/// `f` must be a live handle, `check` a nul-terminated string, outputs writable.
#[no_mangle]
pub unsafe extern "C" fn bc_verify_json(
    f: *const BcFunction,
    check: *const c_char,
    tolerance: f64,
    passed: *mut bool,
    json: *mut *mut c_char,
) -> BcStatus {
    guard(|| {
        let f = deref(f)?;
        let name = text(check)?;
        let passed = out(passed)?;
        let json = out(json)?;
        let check = Check::ALL
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| fail(BcStatus::InvalidArgument, format!("unknown check {name:?}")))?;
        if !(tolerance >= 0.0 && tolerance.is_finite()) {
            return Err(fail(BcStatus::InvalidArgument, "tolerance must be a non-negative number"));
        }
        let r = suite::check_boolean(&f.0, check, &VerifyOptions::default(), Tolerance(tolerance)).or_status()?;
        *passed = r.passed();
        *json = into_c_string(r.to_json())?;
        Ok(())
    })
}
