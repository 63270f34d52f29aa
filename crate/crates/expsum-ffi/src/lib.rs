//! C ABI for the exponential-sum laboratory.
//!
//! Conventions: every fallible entry point returns an [`ExpsumStatus`] and
//! writes results through out-pointers, which are only written on
//! `ExpsumStatus::Ok`. A failing call stores a thread-local message
//! retrievable via [`expsum_last_error_message`]. Spectra are held behind
//! opaque handles created by [`expsum_spectrum_new`] and released by
//! [`expsum_spectrum_free`]; no other resource crosses the boundary.
//!
//! The matching C header is generated into `include/expsum.h` at build time.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CString};

use expsum::diophantine::{count_from_spectrum, Rational};
use expsum::moments::integral_i;
use expsum::stationary_phase::{b_transform_residual, SmoothPhase};
use expsum::sums::{build_spectrum, IntRange, PhaseSpectrum};
use expsum::weyl::{
    best_rational, near_integer_count, weyl_sum, AlphaValue, WeylQuery,
};
use expsum::Error;

/// Result discriminant of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpsumStatus {
    /// The call succeeded and all out-parameters were written.
    Ok = 0,
    /// An input violated a documented precondition.
    InvalidParameter = 1,
    /// The request would exceed a work budget and was refused.
    BudgetExceeded = 2,
    /// An internal routine failed; this indicates a bug.
    InternalError = 3,
    /// A required pointer argument was null.
    NullPointer = 4,
    /// A result does not fit in the C-side integer type.
    Overflow = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: ExpsumStatus, message: &str) -> ExpsumStatus {
    let sanitized: String = message.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
    status
}

fn fail_with(err: Error) -> ExpsumStatus {
    let status = match err {
        Error::Parameter(_) => ExpsumStatus::InvalidParameter,
        Error::Budget { .. } => ExpsumStatus::BudgetExceeded,
        Error::Internal(_) => ExpsumStatus::InternalError,
    };
    fail(status, &err.to_string())
}

fn null_pointer(name: &str) -> ExpsumStatus {
    fail(
        ExpsumStatus::NullPointer,
        &format!("pointer argument {name} is null"),
    )
}

/// Message describing the most recent failure on this thread.
///
/// The pointer stays valid until the next failing call on the same thread.
/// Never null; holds an empty string before any failure.
///
/// # Safety
///
/// The returned pointer must not be freed, and must not be read after a
/// subsequent failing call from the same thread.
#[no_mangle]
pub unsafe extern "C" fn expsum_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn expsum_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Exact multiplicity table of the pair `(sum of n_i^2, sum of n_i^4)` over
/// p-tuples from an integer range; behind this handle every count is an
/// exact-arithmetic operation.
pub struct ExpsumSpectrum(PhaseSpectrum);

/// Builds the spectrum of p-tuples over the integers `lo < n <= hi`.
///
/// # Safety
///
/// `out` must be a valid pointer. On `Ok`, the handle written to `*out` owns
/// the spectrum and must be released with [`expsum_spectrum_free`].
#[no_mangle]
pub unsafe extern "C" fn expsum_spectrum_new(
    lo: i64,
    hi: i64,
    p: u32,
    out: *mut *mut ExpsumSpectrum,
) -> ExpsumStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    let range = match IntRange::open_closed(lo, hi) {
        Ok(r) => r,
        Err(e) => return fail_with(e),
    };
    match build_spectrum(range, p) {
        Ok(spectrum) => {
            unsafe { *out = Box::into_raw(Box::new(ExpsumSpectrum(spectrum))) };
            ExpsumStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Releases a spectrum handle. Passing null is a no-op.
///
/// # Safety
///
/// `spectrum` must be null or a handle obtained from
/// [`expsum_spectrum_new`] that has not already been freed.
#[no_mangle]
pub unsafe extern "C" fn expsum_spectrum_free(spectrum: *mut ExpsumSpectrum) {
    if !spectrum.is_null() {
        drop(unsafe { Box::from_raw(spectrum) });
    }
}

/// Number of tuples the spectrum aggregates (its range length to the p-th
/// power).
///
/// # Safety
///
/// `spectrum` must be a live handle from [`expsum_spectrum_new`]; `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn expsum_spectrum_tuple_count(
    spectrum: *const ExpsumSpectrum,
    out: *mut u64,
) -> ExpsumStatus {
    if spectrum.is_null() {
        return null_pointer("spectrum");
    }
    if out.is_null() {
        return null_pointer("out");
    }
    let total = unsafe { &*spectrum }.0.total_tuples();
    match u64::try_from(total) {
        Ok(v) => {
            unsafe { *out = v };
            ExpsumStatus::Ok
        }
        Err(_) => fail(ExpsumStatus::Overflow, "tuple count exceeds 64 bits"),
    }
}

/// Ordered pairs of tuples whose square sums differ by at most `t2_num /
/// t2_den` and quartic sums by at most `t4_num / t4_den` (exact rational
/// comparison).
///
/// # Safety
///
/// `spectrum` must be a live handle from [`expsum_spectrum_new`]; `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn expsum_spectrum_pair_count(
    spectrum: *const ExpsumSpectrum,
    t2_num: i64,
    t2_den: i64,
    t4_num: i64,
    t4_den: i64,
    out: *mut u64,
) -> ExpsumStatus {
    if spectrum.is_null() {
        return null_pointer("spectrum");
    }
    if out.is_null() {
        return null_pointer("out");
    }
    let t2 = match Rational::new(t2_num as i128, t2_den as i128) {
        Ok(r) => r,
        Err(e) => return fail_with(e),
    };
    let t4 = match Rational::new(t4_num as i128, t4_den as i128) {
        Ok(r) => r,
        Err(e) => return fail_with(e),
    };
    let count = count_from_spectrum(&unsafe { &*spectrum }.0, t2, t4);
    match u64::try_from(count) {
        Ok(v) => {
            unsafe { *out = v };
            ExpsumStatus::Ok
        }
        Err(_) => fail(ExpsumStatus::Overflow, "pair count exceeds 64 bits"),
    }
}

/// Mean value of `|S|^(2p)` over the full alpha period and the gamma window
/// `[-N^-3, N^-3]`, for the block `(N, 2N]`.
///
/// # Safety
///
/// `out_value` and `out_error` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn expsum_window_integral(
    n: i64,
    p: u32,
    out_value: *mut f64,
    out_error: *mut f64,
) -> ExpsumStatus {
    if out_value.is_null() {
        return null_pointer("out_value");
    }
    if out_error.is_null() {
        return null_pointer("out_error");
    }
    match integral_i(n, p) {
        Ok(r) => {
            unsafe {
                *out_value = r.value;
                *out_error = r.error_estimate;
            }
            ExpsumStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Distance between the block sum of `e(alpha n^2 + gamma n^4)` over
/// `(N, 2N]` and its stationary-phase transform.
///
/// # Safety
///
/// `out_residual` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn expsum_transform_residual(
    alpha: f64,
    gamma: f64,
    n: i64,
    out_residual: *mut f64,
) -> ExpsumStatus {
    if out_residual.is_null() {
        return null_pointer("out_residual");
    }
    let phase = match SmoothPhase::new(alpha, gamma, n) {
        Ok(p) => p,
        Err(e) => return fail_with(e),
    };
    match b_transform_residual(&phase) {
        Ok(r) => {
            unsafe { *out_residual = r.residual };
            ExpsumStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

fn write_weyl_sum(
    query: &WeylQuery,
    out_re: *mut f64,
    out_im: *mut f64,
    out_precision_warning: *mut c_int,
) -> ExpsumStatus {
    match weyl_sum(query) {
        Ok(s) => {
            unsafe {
                *out_re = s.value.re;
                *out_im = s.value.im;
                if !out_precision_warning.is_null() {
                    *out_precision_warning = c_int::from(s.precision_warning);
                }
            }
            ExpsumStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Weyl sum of `e(alpha n^k)` for `1 <= n <= N` with a floating frequency.
/// `out_precision_warning` (optional, may be null) receives 1 when a phase
/// left the error-free reduction range.
///
/// # Safety
///
/// `out_re` and `out_im` must be valid pointers;
/// `out_precision_warning` may be null.
#[no_mangle]
pub unsafe extern "C" fn expsum_weyl_sum(
    k: u32,
    n: u64,
    alpha: f64,
    out_re: *mut f64,
    out_im: *mut f64,
    out_precision_warning: *mut c_int,
) -> ExpsumStatus {
    if out_re.is_null() {
        return null_pointer("out_re");
    }
    if out_im.is_null() {
        return null_pointer("out_im");
    }
    let query = WeylQuery {
        k,
        n,
        alpha: AlphaValue::Decimal(alpha),
    };
    write_weyl_sum(&query, out_re, out_im, out_precision_warning)
}

/// Weyl sum with an exact rational frequency `num/den`, evaluated by
/// modular arithmetic (no rounding of the frequency).
///
/// # Safety
///
/// `out_re` and `out_im` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn expsum_weyl_sum_rational(
    k: u32,
    n: u64,
    num: i64,
    den: i64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> ExpsumStatus {
    if out_re.is_null() {
        return null_pointer("out_re");
    }
    if out_im.is_null() {
        return null_pointer("out_im");
    }
    let alpha = match Rational::new(num as i128, den as i128) {
        Ok(r) => r,
        Err(e) => return fail_with(e),
    };
    let query = WeylQuery {
        k,
        n,
        alpha: AlphaValue::Rational(alpha),
    };
    write_weyl_sum(&query, out_re, out_im, std::ptr::null_mut())
}

/// Number of `h in [1, H]` with `alpha h` within `delta` of an integer.
///
/// # Safety
///
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn expsum_near_integer_count(
    alpha: f64,
    h: u64,
    delta: f64,
    out: *mut u64,
) -> ExpsumStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    match near_integer_count(alpha, h, delta) {
        Ok(v) => {
            unsafe { *out = v };
            ExpsumStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Continued-fraction approximation `alpha = a/q + theta` with the largest
/// `q <= q_cap`; guarantees `gcd(a, q) = 1` and `|theta| <= q^-2`.
///
/// # Safety
///
/// `out_a`, `out_q`, and `out_theta` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn expsum_best_rational(
    alpha: f64,
    q_cap: u64,
    out_a: *mut i64,
    out_q: *mut i64,
    out_theta: *mut f64,
) -> ExpsumStatus {
    if out_a.is_null() {
        return null_pointer("out_a");
    }
    if out_q.is_null() {
        return null_pointer("out_q");
    }
    if out_theta.is_null() {
        return null_pointer("out_theta");
    }
    match best_rational(alpha, q_cap) {
        Ok(r) => {
            let (a, q) = match (i64::try_from(r.a), i64::try_from(r.q)) {
                (Ok(a), Ok(q)) => (a, q),
                _ => {
                    return fail(
                        ExpsumStatus::Overflow,
                        "convergent does not fit in 64 bits",
                    )
                }
            };
            unsafe {
                *out_a = a;
                *out_q = q;
                *out_theta = r.theta;
            }
            ExpsumStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}
