//! C ABI over the verification engine. Handles are opaque pointers with
//! explicit constructors and destructors; every fallible call returns an
//! [`HgmStatus`] code and writes results through out-pointers. The last
//! error message per thread is retrievable as a UTF-8 string.
//!
//! The generated header lands in `include/hypergeom.h` at build time.

use hypergeom::charsum::{integer_reconstruct, sums, PrimeFieldContext};
use hypergeom::datum::{parse_datum, Rat};
use hypergeom::error::Error;
use hypergeom::numeric::{show, Ctx};
use hypergeom::qseries::EigenTables;
use hypergeom::num::bigint::BigInt;
use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

/// Status codes of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HgmStatus {
    Ok = 0,
    ParameterError = 1,
    ParseError = 2,
    IncompatiblePrime = 3,
    DomainError = 4,
    PrecisionError = 5,
    ConsistencyError = 6,
    IntegralityError = 7,
    TruncationError = 8,
    GridError = 9,
    IoError = 10,
    NullPointer = 11,
    InvalidUtf8 = 12,
    BufferTooSmall = 13,
    Panic = 14,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(e: &Error) -> HgmStatus {
    match e {
        Error::Parameter(_) => HgmStatus::ParameterError,
        Error::Parse { .. } => HgmStatus::ParseError,
        Error::IncompatiblePrime(_) => HgmStatus::IncompatiblePrime,
        Error::Domain(_) => HgmStatus::DomainError,
        Error::Precision(_) => HgmStatus::PrecisionError,
        Error::Consistency(_) => HgmStatus::ConsistencyError,
        Error::Integrality(_) => HgmStatus::IntegralityError,
        Error::Truncation(_) => HgmStatus::TruncationError,
        Error::Grid(_) => HgmStatus::GridError,
        Error::Io(_) => HgmStatus::IoError,
    }
}

fn fail(e: Error) -> HgmStatus {
    let code = status_of(&e);
    set_error(e.to_string());
    code
}

fn guarded(f: impl FnOnce() -> HgmStatus + std::panic::UnwindSafe) -> HgmStatus {
    match catch_unwind(f) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic");
            HgmStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, HgmStatus> {
    if ptr.is_null() {
        set_error("null string pointer");
        return Err(HgmStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string is not valid UTF-8");
        HgmStatus::InvalidUtf8
    })
}

fn write_out<T>(ptr: *mut T, value: T) -> Result<(), HgmStatus> {
    if ptr.is_null() {
        set_error("null out-pointer");
        return Err(HgmStatus::NullPointer);
    }
    unsafe { ptr.write(value) };
    Ok(())
}

fn write_string(buf: *mut c_char, buf_len: usize, s: &str) -> HgmStatus {
    if buf.is_null() {
        set_error("null buffer");
        return HgmStatus::NullPointer;
    }
    let bytes = s.as_bytes();
    if bytes.len() + 1 > buf_len {
        set_error(format!("buffer of {buf_len} bytes too small for {} bytes", bytes.len() + 1));
        return HgmStatus::BufferTooSmall;
    }
    unsafe {
        std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast(), bytes.len());
        buf.add(bytes.len()).write(0);
    }
    HgmStatus::Ok
}

fn rat_from(num: i64, den: i64) -> Result<Rat, HgmStatus> {
    if den == 0 {
        set_error("zero denominator");
        return Err(HgmStatus::ParameterError);
    }
    Ok(Rat::new(BigInt::from(num), BigInt::from(den)))
}

fn bigint_to_i64(n: &BigInt) -> Result<i64, HgmStatus> {
    use hypergeom::num::ToPrimitive;
    n.to_i64().ok_or_else(|| {
        set_error("value exceeds the 64-bit output range");
        HgmStatus::ParameterError
    })
}

/// Copy the last error message of this thread into `buf`; returns the
/// number of bytes (excluding the terminator) that the full message has.
#[no_mangle]
pub extern "C" fn hgm_last_error(buf: *mut c_char, buf_len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && buf_len > 0 {
            let n = msg.len().min(buf_len - 1);
            unsafe {
                std::ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast(), n);
                buf.add(n).write(0);
            }
        }
        msg.len()
    })
}

/// Discrete-log tables and embedding choice for one odd prime.
pub struct HgmPrimeContext {
    inner: Arc<PrimeFieldContext>,
}

/// Create a prime-field context; `root_choice` must be coprime to p-1
/// (pass 1 for the default embedding).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hgm_prime_context_new(
    p: u64,
    root_choice: u64,
    out: *mut *mut HgmPrimeContext,
) -> HgmStatus {
    guarded(AssertUnwindSafe(|| {
        match PrimeFieldContext::with_root_choice(p, root_choice) {
            Ok(inner) => {
                let boxed = Box::new(HgmPrimeContext { inner });
                match write_out(out, Box::into_raw(boxed)) {
                    Ok(()) => HgmStatus::Ok,
                    Err(code) => code,
                }
            }
            Err(e) => fail(e),
        }
    }))
}

/// Destroy a context created by `hgm_prime_context_new`.
///
/// # Safety
/// `ctx` must come from `hgm_prime_context_new` and not be used after.
#[no_mangle]
pub unsafe extern "C" fn hgm_prime_context_free(ctx: *mut HgmPrimeContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Shared q-expansion store for eigencoefficient extraction.
pub struct HgmEigenTables {
    inner: EigenTables,
}

/// Create an expansion store with the default verification depth.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hgm_eigen_tables_new(out: *mut *mut HgmEigenTables) -> HgmStatus {
    guarded(AssertUnwindSafe(|| {
        let boxed = Box::new(HgmEigenTables { inner: EigenTables::default() });
        match write_out(out, Box::into_raw(boxed)) {
            Ok(()) => HgmStatus::Ok,
            Err(code) => code,
        }
    }))
}

/// Destroy a store created by `hgm_eigen_tables_new`.
///
/// # Safety
/// `tables` must come from `hgm_eigen_tables_new` and not be used after.
#[no_mangle]
pub unsafe extern "C" fn hgm_eigen_tables_free(tables: *mut HgmEigenTables) {
    if !tables.is_null() {
        drop(Box::from_raw(tables));
    }
}

/// Normalized character sum of a datum string "r1,..;q1,..@lambda" over
/// the context's prime: complex value plus the certified rounding bound.
///
/// # Safety
/// All pointers must be valid; the datum must be NUL-terminated UTF-8.
#[no_mangle]
pub unsafe extern "C" fn hgm_h_value(
    ctx: *const HgmPrimeContext,
    datum: *const c_char,
    out_re: *mut f64,
    out_im: *mut f64,
    out_abs_err: *mut f64,
) -> HgmStatus {
    guarded(AssertUnwindSafe(|| {
        if ctx.is_null() {
            set_error("null context");
            return HgmStatus::NullPointer;
        }
        let text = match read_str(datum) {
            Ok(t) => t,
            Err(code) => return code,
        };
        let (hd, lambda) = match parse_datum(text) {
            Ok(v) => v,
            Err(e) => return fail(e),
        };
        match sums::h_value(&hd, &lambda, &(*ctx).inner) {
            Ok(v) => {
                let value = v.value();
                if let Err(c) = write_out(out_re, value.re) {
                    return c;
                }
                if let Err(c) = write_out(out_im, value.im) {
                    return c;
                }
                if let Err(c) = write_out(out_abs_err, v.abs_err()) {
                    return c;
                }
                HgmStatus::Ok
            }
            Err(e) => fail(e),
        }
    }))
}

/// As `hgm_h_value`, but certified-rounded to an integer.
///
/// # Safety
/// All pointers must be valid; the datum must be NUL-terminated UTF-8.
#[no_mangle]
pub unsafe extern "C" fn hgm_h_certified_integer(
    ctx: *const HgmPrimeContext,
    datum: *const c_char,
    out: *mut i64,
) -> HgmStatus {
    guarded(AssertUnwindSafe(|| {
        if ctx.is_null() {
            set_error("null context");
            return HgmStatus::NullPointer;
        }
        let text = match read_str(datum) {
            Ok(t) => t,
            Err(code) => return code,
        };
        let (hd, lambda) = match parse_datum(text) {
            Ok(v) => v,
            Err(e) => return fail(e),
        };
        let value = match sums::h_value(&hd, &lambda, &(*ctx).inner) {
            Ok(v) => v,
            Err(e) => return fail(e),
        };
        match integer_reconstruct(&value) {
            Ok(n) => match bigint_to_i64(&n) {
                Ok(v) => match write_out(out, v) {
                    Ok(()) => HgmStatus::Ok,
                    Err(code) => code,
                },
                Err(code) => code,
            },
            Err(e) => fail(e),
        }
    }))
}

/// Morita Gamma at num/den mod p^k: writes the unit residue (the value is
/// always a unit, so the valuation is zero).
///
/// # Safety
/// `out_unit` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hgm_gamma_p(
    num: i64,
    den: i64,
    p: u64,
    k: u32,
    out_unit: *mut u64,
) -> HgmStatus {
    guarded(AssertUnwindSafe(|| {
        let x = match rat_from(num, den) {
            Ok(x) => x,
            Err(code) => return code,
        };
        match hypergeom::padic::gamma_p(&x, p, k) {
            Ok(v) => match v.to_residue_mod(k) {
                Ok(u) => match write_out(out_unit, u) {
                    Ok(()) => HgmStatus::Ok,
                    Err(code) => code,
                },
                Err(e) => fail(e),
            },
            Err(e) => fail(e),
        }
    }))
}

/// Teichmueller lift of a mod p^k.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hgm_teichmuller(a: u64, p: u64, k: u32, out: *mut u64) -> HgmStatus {
    guarded(AssertUnwindSafe(|| {
        match hypergeom::padic::teichmuller(a, p, k) {
            Ok(v) => match v.to_residue_mod(k) {
                Ok(u) => match write_out(out, u) {
                    Ok(()) => HgmStatus::Ok,
                    Err(code) => code,
                },
                Err(e) => fail(e),
            },
            Err(e) => fail(e),
        }
    }))
}

/// p-th coefficient of the weight-2 eigenform attached to orbit
/// denominator `d`, for p = 1 mod lcm(4, d).
///
/// # Safety
/// `tables` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hgm_ap_weight2(
    tables: *const HgmEigenTables,
    d: u64,
    p: u64,
    out: *mut i64,
) -> HgmStatus {
    guarded(AssertUnwindSafe(|| {
        if tables.is_null() {
            set_error("null tables");
            return HgmStatus::NullPointer;
        }
        match (*tables).inner.ap_f2(d, p) {
            Ok(n) => match bigint_to_i64(&n) {
                Ok(v) => match write_out(out, v) {
                    Ok(()) => HgmStatus::Ok,
                    Err(code) => code,
                },
                Err(code) => code,
            },
            Err(e) => fail(e),
        }
    }))
}

/// p-th coefficient of the weight-3 eigenform attached to orbit
/// denominator `d`, for p = 1 mod lcm(4, d).
///
/// # Safety
/// `tables` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hgm_ap_weight3(
    tables: *const HgmEigenTables,
    d: u64,
    p: u64,
    out: *mut i64,
) -> HgmStatus {
    guarded(AssertUnwindSafe(|| {
        if tables.is_null() {
            set_error("null tables");
            return HgmStatus::NullPointer;
        }
        match (*tables).inner.ap_f3(d, p) {
            Ok(n) => match bigint_to_i64(&n) {
                Ok(v) => match write_out(out, v) {
                    Ok(()) => HgmStatus::Ok,
                    Err(code) => code,
                },
                Err(code) => code,
            },
            Err(e) => fail(e),
        }
    }))
}

/// Period value P(r, s) as a decimal string at the requested precision,
/// computed and cross-checked along two routes.
///
/// # Safety
/// `buf` must point to `buf_len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn hgm_p_value(
    r_num: i64,
    r_den: i64,
    s_num: i64,
    s_den: i64,
    digits: u32,
    buf: *mut c_char,
    buf_len: usize,
) -> HgmStatus {
    guarded(AssertUnwindSafe(|| {
        let r = match rat_from(r_num, r_den) {
            Ok(x) => x,
            Err(code) => return code,
        };
        let s = match rat_from(s_num, s_den) {
            Ok(x) => x,
            Err(code) => return code,
        };
        if !(10..=200).contains(&digits) {
            set_error("digits must lie in [10, 200]");
            return HgmStatus::ParameterError;
        }
        let ctx = Ctx::new(digits);
        match hypergeom::numeric::pvalue::p_value(&r, &s, &ctx) {
            Ok(p) => write_string(buf, buf_len, &show(&p.value, digits as usize)),
            Err(e) => fail(e),
        }
    }))
}

/// L-value of the weight-3 family member at tau -> scale tau, argument
/// k in {1, 2}, as a decimal string.
///
/// # Safety
/// `buf` must point to `buf_len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn hgm_lvalue_weight3(
    r_num: i64,
    r_den: i64,
    s_num: i64,
    s_den: i64,
    scale: u64,
    k: u32,
    digits: u32,
    buf: *mut c_char,
    buf_len: usize,
) -> HgmStatus {
    guarded(AssertUnwindSafe(|| {
        let r = match rat_from(r_num, r_den) {
            Ok(x) => x,
            Err(code) => return code,
        };
        let s = match rat_from(s_num, s_den) {
            Ok(x) => x,
            Err(code) => return code,
        };
        if !(10..=200).contains(&digits) {
            set_error("digits must lie in [10, 200]");
            return HgmStatus::ParameterError;
        }
        let ctx = Ctx::new(digits);
        match hypergeom::numeric::lvalue::lvalue_k2(&r, &s, scale, k, &ctx) {
            Ok(v) => write_string(buf, buf_len, &show(&v, digits as usize)),
            Err(e) => fail(e),
        }
    }))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hgm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    #[test]
    fn context_lifecycle_and_h_value() {
        unsafe {
            let mut ctx: *mut HgmPrimeContext = std::ptr::null_mut();
            assert_eq!(hgm_prime_context_new(13, 1, &mut ctx), HgmStatus::Ok);
            let datum = CString::new("1/2,1/2,1/2,1/2;1,1,1,1@-1").unwrap();
            let mut out = 0i64;
            assert_eq!(hgm_h_certified_integer(ctx, datum.as_ptr(), &mut out), HgmStatus::Ok);
            // a_13(f2) a_13(f3) = 6 * (-14) = -84
            assert_eq!(out, -84);
            let (mut re, mut im, mut err) = (0.0f64, 0.0f64, 0.0f64);
            assert_eq!(
                hgm_h_value(ctx, datum.as_ptr(), &mut re, &mut im, &mut err),
                HgmStatus::Ok
            );
            assert!((re + 84.0).abs() < 1e-6 && im.abs() < 1e-6);
            hgm_prime_context_free(ctx);
        }
    }

    #[test]
    fn error_paths_and_messages() {
        unsafe {
            let mut ctx: *mut HgmPrimeContext = std::ptr::null_mut();
            assert_eq!(hgm_prime_context_new(12, 1, &mut ctx), HgmStatus::ParameterError);
            let mut buf = [0u8; 128];
            let n = hgm_last_error(buf.as_mut_ptr().cast(), buf.len());
            assert!(n > 0);
            let msg = std::str::from_utf8(&buf[..n]).unwrap();
            assert!(msg.contains("prime"), "{msg}");

            assert_eq!(hgm_prime_context_new(13, 1, &mut ctx), HgmStatus::Ok);
            let bad = CString::new("1/2,;1@1").unwrap();
            let mut out = 0i64;
            assert_eq!(
                hgm_h_certified_integer(ctx, bad.as_ptr(), &mut out),
                HgmStatus::ParseError
            );
            // imprimitive datum
            let imp = CString::new("1/2,5/4,1/2,1/2,1/2;1,1/4,1,1,1@-1").unwrap();
            assert_eq!(
                hgm_h_certified_integer(ctx, imp.as_ptr(), &mut out),
                HgmStatus::DomainError
            );
            hgm_prime_context_free(ctx);
        }
    }

    #[test]
    fn padic_and_eigen_endpoints() {
        unsafe {
            let mut u = 0u64;
            assert_eq!(hgm_gamma_p(1, 2, 5, 2, &mut u), HgmStatus::Ok);
            assert_eq!(u, 18); // Gamma_5(1/2) mod 25
            assert_eq!(hgm_teichmuller(2, 13, 2, &mut u), HgmStatus::Ok);
            assert_eq!(u % 13, 2);

            let mut tables: *mut HgmEigenTables = std::ptr::null_mut();
            assert_eq!(hgm_eigen_tables_new(&mut tables), HgmStatus::Ok);
            let mut ap = 0i64;
            assert_eq!(hgm_ap_weight2(tables, 4, 13, &mut ap), HgmStatus::Ok);
            assert_eq!(ap, 6);
            assert_eq!(hgm_ap_weight3(tables, 4, 13, &mut ap), HgmStatus::Ok);
            assert_eq!(ap, -14);
            assert_eq!(hgm_ap_weight2(tables, 4, 7, &mut ap), HgmStatus::ParameterError);
            hgm_eigen_tables_free(tables);
        }
    }

    #[test]
    fn string_outputs() {
        unsafe {
            let mut buf = vec![0u8; 256];
            assert_eq!(
                hgm_p_value(1, 4, 3, 4, 30, buf.as_mut_ptr().cast(), buf.len()),
                HgmStatus::Ok
            );
            let s = CStr::from_ptr(buf.as_ptr().cast()).to_str().unwrap();
            assert!(s.starts_with("20.5588845540"), "{s}");
            // tiny buffer
            let mut small = [0u8; 4];
            assert_eq!(
                hgm_p_value(1, 4, 3, 4, 30, small.as_mut_ptr().cast(), small.len()),
                HgmStatus::BufferTooSmall
            );
            let version = CStr::from_ptr(hgm_version()).to_str().unwrap();
            assert_eq!(version, env!("CARGO_PKG_VERSION"));
        }
    }
}
