//! C ABI over `lietilt`.
//!
//! Every fallible call returns an [`LtStatus`]; results go through out
//! pointers. On failure [`lt_last_error`] describes what went wrong on the
//! calling thread. Decompositions are opaque handles released with
//! [`lt_decomposition_free`]; strings returned by the library are released
//! with [`lt_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lietilt::{Decomposition, Error, PrimeChar, Verdict};

/// Status codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LtStatus {
    Ok = 0,
    InvalidArgument = 1,
    NotPrime = 2,
    NullPointer = 3,
    OutOfRange = 4,
    Overflow = 5,
    Consistency = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LtVerdict {
    Tilting = 0,
    NotTiltingCertified = 1,
    Inconclusive = 2,
}

/// Signed multiplicities in the tilting basis, keyed by highest weight.
pub struct LtDecomposition {
    inner: Decomposition,
    entries: Vec<(u32, i128)>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let msg = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error message").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: LtStatus, msg: impl Into<Vec<u8>>) -> LtStatus {
    set_error(msg);
    status
}

fn status_of(e: Error) -> LtStatus {
    let status = match e {
        Error::NotPrime(_) => LtStatus::NotPrime,
        Error::DegreeTooLarge { .. } => LtStatus::OutOfRange,
        Error::Consistency(_) | Error::CorruptResidual { .. } => LtStatus::Consistency,
        _ => LtStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), LtStatus>) -> LtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LtStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => fail(LtStatus::Internal, "internal panic"),
    }
}

fn prime(p: u64) -> Result<PrimeChar, LtStatus> {
    PrimeChar::new(p).map_err(status_of)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), LtStatus> {
    if out.is_null() {
        return Err(fail(LtStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

fn handle(inner: Decomposition) -> *mut LtDecomposition {
    let entries = inner.iter_desc().collect();
    Box::into_raw(Box::new(LtDecomposition { inner, entries }))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into the library.
#[no_mangle]
pub extern "C" fn lt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Tilting decomposition of the `r`-th tensor power of the natural module.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn lt_tensor_power_decomp(
    r: u32,
    p: u64,
    out: *mut *mut LtDecomposition,
) -> LtStatus {
    guard(|| {
        let dec = lietilt::tensor_power_decomp(r, prime(p)?).map_err(status_of)?;
        write(out, handle(dec))
    })
}

/// Tilting decomposition of the `r`-th Lie power. `verdict` may be null.
///
/// # Safety
/// `out` must be valid for a pointer write; `verdict` null or writable.
#[no_mangle]
pub unsafe extern "C" fn lt_lie_power_decomp(
    r: u32,
    p: u64,
    out: *mut *mut LtDecomposition,
    verdict: *mut LtVerdict,
) -> LtStatus {
    guard(|| {
        if out.is_null() {
            return Err(fail(LtStatus::NullPointer, "null output pointer"));
        }
        let rep = lietilt::lie_tilting_decomp(r, prime(p)?).map_err(status_of)?;
        if !verdict.is_null() {
            verdict.write(match rep.verdict {
                Verdict::Tilting => LtVerdict::Tilting,
                Verdict::NotTiltingCertified => LtVerdict::NotTiltingCertified,
                Verdict::Inconclusive => LtVerdict::Inconclusive,
            });
        }
        write(out, handle(rep.decomposition))
    })
}

/// Number of nonzero entries.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lt_decomposition_len(h: *const LtDecomposition) -> usize {
    h.as_ref().map_or(0, |d| d.entries.len())
}

/// Entry `index`, ordered by decreasing weight. Multiplicities beyond the
/// `int64_t` range yield `LT_STATUS_OVERFLOW`.
///
/// # Safety
/// `h` must be a live handle; `weight` and `mult` writable.
#[no_mangle]
pub unsafe extern "C" fn lt_decomposition_get(
    h: *const LtDecomposition,
    index: usize,
    weight: *mut u32,
    mult: *mut i64,
) -> LtStatus {
    guard(|| {
        let d = h
            .as_ref()
            .ok_or_else(|| fail(LtStatus::NullPointer, "null handle"))?;
        let &(w, m) = d
            .entries
            .get(index)
            .ok_or_else(|| fail(LtStatus::OutOfRange, format!("index {index} out of range")))?;
        let m = i64::try_from(m).map_err(|_| {
            fail(
                LtStatus::Overflow,
                format!("multiplicity {m} exceeds int64_t"),
            )
        })?;
        write(weight, w)?;
        write(mult, m)
    })
}

/// Decimal string of an entry's multiplicity, for values beyond `int64_t`.
/// Free with [`lt_string_free`]. Returns null on bad input.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lt_decomposition_mult_string(
    h: *const LtDecomposition,
    index: usize,
) -> *mut c_char {
    match h.as_ref().and_then(|d| d.entries.get(index)) {
        Some(&(_, m)) => CString::new(m.to_string()).map_or(ptr::null_mut(), CString::into_raw),
        None => {
            set_error("null handle or index out of range");
            ptr::null_mut()
        }
    }
}

/// The decomposition as a JSON object. Free with [`lt_string_free`].
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lt_decomposition_to_json(h: *const LtDecomposition) -> *mut c_char {
    let Some(d) = h.as_ref() else {
        set_error("null handle");
        return ptr::null_mut();
    };
    match serde_json::to_string(&d.inner)
        .ok()
        .and_then(|s| CString::new(s).ok())
    {
        Some(s) => s.into_raw(),
        None => {
            set_error("serialization failed");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `h` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lt_decomposition_free(h: *mut LtDecomposition) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Dimension of the cyclic module generated by the left-normed bracket
/// (requires `p | r`).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lt_gzeta_dim(r: u64, p: u64, out: *mut u64) -> LtStatus {
    guard(|| write(out, lietilt::gzeta_dim(r, prime(p)?).map_err(status_of)?))
}

/// Whether `T(r-1,1)` is a summand of the `r`-th Lie power.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lt_theorem_b_predicate(r: u64, p: u64, out: *mut bool) -> LtStatus {
    guard(|| {
        write(
            out,
            lietilt::theorem_b_predicate(r, prime(p)?).map_err(status_of)?,
        )
    })
}

/// `C(n, k) mod p`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lt_binom_mod(n: u64, k: u64, p: u64, out: *mut u64) -> LtStatus {
    guard(|| write(out, lietilt::binom_mod(n, k, prime(p)?)))
}
