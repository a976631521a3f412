//! C ABI over `freeperiod`. Every fallible call returns an `FplStatus`;
//! on failure `fpl_last_error_message` describes the error for the calling
//! thread. Handles are opaque and owned by the caller until freed.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use freeperiod::hartley::{self, BoundMode, HartleyProfile};
use freeperiod::{factor_over_z, parse_poly, Error, FactoredPoly, IntPoly};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FplStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    NotAlexander = 5,
    Computation = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FplMode {
    Heuristic = 0,
    Rigorous = 1,
}

/// An integer polynomial.
pub struct FplPoly {
    inner: IntPoly,
}

/// A factorization over the integers.
pub struct FplFactorization {
    inner: FactoredPoly,
}

/// The set of n for which a polynomial is n-Hartley.
pub struct FplProfile {
    inner: HartleyProfile,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> FplStatus {
    match e {
        Error::Parse(_) => FplStatus::Parse,
        Error::NotAlexander(_) => FplStatus::NotAlexander,
        Error::ZeroPolynomial
        | Error::NotPrimitive(_)
        | Error::Reducible
        | Error::Cyclotomic(_)
        | Error::DegreeTooSmall(_)
        | Error::CompositeModulus(_)
        | Error::NotPrimePower(_)
        | Error::InvalidN(_)
        | Error::TrivialRational(_)
        | Error::NotHartley(_)
        | Error::Input(_) => FplStatus::InvalidArgument,
        _ => FplStatus::Computation,
    }
}

fn fail(status: FplStatus, msg: &str) -> FplStatus {
    set_error(msg);
    status
}

/// Runs `body`, converting errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), FplStatus>>(body: F) -> FplStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            FplStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => fail(FplStatus::Panic, "internal panic"),
    }
}

fn lift(e: Error) -> FplStatus {
    fail(status_of(&e), &e.to_string())
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, FplStatus> {
    p.as_ref().ok_or_else(|| fail(FplStatus::NullPointer, &format!("{what} is null")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, FplStatus> {
    p.as_mut().ok_or_else(|| fail(FplStatus::NullPointer, &format!("{what} is null")))
}

fn mode_of(mode: FplMode) -> BoundMode {
    match mode {
        FplMode::Heuristic => BoundMode::Heuristic,
        FplMode::Rigorous => BoundMode::Rigorous,
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn fpl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn fpl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parses a symbolic polynomial in `t` or an ascending coefficient list.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fpl_poly_parse(text: *const c_char, out_poly: *mut *mut FplPoly) -> FplStatus {
    guard(|| {
        let slot = out(out_poly, "out")?;
        *slot = ptr::null_mut();
        if text.is_null() {
            return Err(fail(FplStatus::NullPointer, "text is null"));
        }
        let s = CStr::from_ptr(text).to_str().map_err(|_| fail(FplStatus::InvalidUtf8, "text is not UTF-8"))?;
        let poly = parse_poly(s).map_err(|e| lift(e.into()))?;
        *slot = Box::into_raw(Box::new(FplPoly { inner: poly }));
        Ok(())
    })
}

/// Builds a polynomial from `len` ascending coefficients.
///
/// # Safety
/// `coeffs` must point to `len` readable values (or be null with `len == 0`).
#[no_mangle]
pub unsafe extern "C" fn fpl_poly_from_coeffs(coeffs: *const i64, len: usize, out_poly: *mut *mut FplPoly) -> FplStatus {
    guard(|| {
        let slot = out(out_poly, "out")?;
        *slot = ptr::null_mut();
        let c: &[i64] = if len == 0 {
            &[]
        } else if coeffs.is_null() {
            return Err(fail(FplStatus::NullPointer, "coeffs is null"));
        } else {
            std::slice::from_raw_parts(coeffs, len)
        };
        *slot = Box::into_raw(Box::new(FplPoly { inner: IntPoly::from_i64s(c) }));
        Ok(())
    })
}

/// # Safety
/// `poly` must come from this library and not have been freed; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fpl_poly_free(poly: *mut FplPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Degree of the polynomial, `-1` for zero.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fpl_poly_degree(poly: *const FplPoly, degree: *mut i64) -> FplStatus {
    guard(|| {
        let p = deref(poly, "poly")?;
        *out(degree, "degree")? = p.inner.degree().map_or(-1, |d| d as i64);
        Ok(())
    })
}

/// Symbolic form; release with `fpl_string_free`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fpl_poly_to_string(poly: *const FplPoly, text: *mut *mut c_char) -> FplStatus {
    guard(|| {
        let p = deref(poly, "poly")?;
        let slot = out(text, "text")?;
        *slot = CString::new(p.inner.to_string()).unwrap_or_default().into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fpl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Complete factorization over the integers.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fpl_factor(poly: *const FplPoly, result: *mut *mut FplFactorization) -> FplStatus {
    guard(|| {
        let p = deref(poly, "poly")?;
        let slot = out(result, "out")?;
        *slot = ptr::null_mut();
        let fac = factor_over_z(&p.inner).map_err(lift)?;
        *slot = Box::into_raw(Box::new(FplFactorization { inner: fac }));
        Ok(())
    })
}

/// # Safety
/// `fac` must come from this library; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fpl_factorization_free(fac: *mut FplFactorization) {
    if !fac.is_null() {
        drop(Box::from_raw(fac));
    }
}

/// Number of distinct irreducible factors and the overall sign (+1 or -1).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fpl_factorization_len(fac: *const FplFactorization, len: *mut usize, sign: *mut i32) -> FplStatus {
    guard(|| {
        let f = deref(fac, "factorization")?;
        *out(len, "len")? = f.inner.factors.len();
        *out(sign, "sign")? = f.inner.sign as i32;
        Ok(())
    })
}

/// The `index`-th factor (a new handle) and its multiplicity.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fpl_factorization_factor(
    fac: *const FplFactorization,
    index: usize,
    factor: *mut *mut FplPoly,
    multiplicity: *mut u32,
) -> FplStatus {
    guard(|| {
        let f = deref(fac, "factorization")?;
        let slot = out(factor, "factor")?;
        *slot = ptr::null_mut();
        let (g, m) = f
            .inner
            .factors
            .get(index)
            .ok_or_else(|| fail(FplStatus::InvalidArgument, &format!("factor index {index} out of range")))?;
        *out(multiplicity, "multiplicity")? = *m;
        *slot = Box::into_raw(Box::new(FplPoly { inner: g.clone() }));
        Ok(())
    })
}

/// Hartley profile of a primitive polynomial.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fpl_profile_new(poly: *const FplPoly, mode: FplMode, profile: *mut *mut FplProfile) -> FplStatus {
    guard(|| {
        let p = deref(poly, "poly")?;
        let slot = out(profile, "out")?;
        *slot = ptr::null_mut();
        let prof = hartley::hartley_profile(&p.inner, mode_of(mode)).map_err(lift)?;
        *slot = Box::into_raw(Box::new(FplProfile { inner: prof }));
        Ok(())
    })
}

/// # Safety
/// `profile` must come from this library; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fpl_profile_free(profile: *mut FplProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// Whether the bound behind the profile is unconditional.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fpl_profile_is_rigorous(profile: *const FplProfile, rigorous: *mut bool) -> FplStatus {
    guard(|| {
        *out(rigorous, "rigorous")? = deref(profile, "profile")?.inner.rigorous;
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fpl_profile_is_n_hartley(profile: *const FplProfile, n: u64, result: *mut bool) -> FplStatus {
    guard(|| {
        let p = deref(profile, "profile")?;
        *out(result, "result")? = hartley::is_n_hartley(&p.inner, n).map_err(lift)?;
        Ok(())
    })
}

/// Writes the members of the Hartley set (all of them when `finite`, those up
/// to `limit` otherwise) into `buf`. `len` receives the member count; when it
/// exceeds `cap` nothing is written and `FPL_STATUS_BUFFER_TOO_SMALL` is returned.
///
/// # Safety
/// `buf` must have room for `cap` values (or be null with `cap == 0`).
#[no_mangle]
pub unsafe extern "C" fn fpl_profile_hartley_set(
    profile: *const FplProfile,
    limit: u64,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
    finite: *mut bool,
) -> FplStatus {
    guard(|| {
        let p = deref(profile, "profile")?;
        let set = hartley::hartley_set(&p.inner, limit);
        *out(len, "len")? = set.members.len();
        *out(finite, "finite")? = set.finite;
        if set.members.len() > cap {
            return Err(fail(FplStatus::BufferTooSmall, &format!("need room for {} values", set.members.len())));
        }
        if !set.members.is_empty() {
            if buf.is_null() {
                return Err(fail(FplStatus::NullPointer, "buf is null"));
            }
            std::slice::from_raw_parts_mut(buf, set.members.len()).copy_from_slice(&set.members);
        }
        Ok(())
    })
}

/// `E(Δ)`; `defined` is false for products of cyclotomic polynomials.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fpl_profile_e(profile: *const FplProfile, e: *mut u64, defined: *mut bool) -> FplStatus {
    guard(|| {
        let p = deref(profile, "profile")?;
        *out(defined, "defined")? = p.inner.e_delta.is_some();
        *out(e, "e")? = p.inner.e_delta.unwrap_or(0);
        Ok(())
    })
}

/// Checks `Δ(t^n) = ±∏ g(ζ^i t)`. `sign` is 0 when the identity fails.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fpl_verify_witness(
    delta: *const FplPoly,
    n: u64,
    g: *const FplPoly,
    sign: *mut i32,
    holds: *mut bool,
) -> FplStatus {
    guard(|| {
        let d = deref(delta, "delta")?;
        let w = deref(g, "g")?;
        if n < 2 {
            return Err(fail(FplStatus::InvalidArgument, "n must be at least 2"));
        }
        let check = hartley::verify_witness(&d.inner, n, &w.inner);
        *out(holds, "holds")? = check.holds;
        *out(sign, "sign")? = check.sign.map_or(0, i32::from);
        Ok(())
    })
}
