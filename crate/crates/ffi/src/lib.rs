//! C ABI over `sigvar`.
//!
//! Tensors cross the boundary as opaque `SigvarTensor` handles and are
//! released with `sigvar_tensor_free`. Strings returned through out
//! parameters are owned by the caller and released with `sigvar_string_free`.
//! Every function returns a `SigvarStatus`; on failure the message is
//! available from `sigvar_last_error_message` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sigvar::rational::format_rational;
use sigvar::signature::dsign;
use sigvar::tensor::Product;
use sigvar::varieties::jacobian_rank;
use sigvar::words::lambda_u64;
use sigvar::{Error, Tensor, TimeSeries, Word};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigvarStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Parse = 4,
    DimensionMismatch = 5,
    HeightMismatch = 6,
    ConstantTerm = 7,
    OutOfSpace = 8,
    /// A membership check ran and found a violated relation.
    CheckFailed = 9,
    Panic = 10,
    Internal = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigvarHoffmanMap {
    Phi = 0,
    Psi = 1,
    PhiStar = 2,
    PsiStar = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigvarCheck {
    /// Group-like for the quasi-shuffle product.
    GrouplikeQuasiShuffle = 0,
    /// Group-like for the shuffle product.
    GrouplikeShuffle = 1,
    /// Primitive (Lie) for the shuffle product.
    LieShuffle = 2,
}

/// Opaque truncated tensor.
pub struct SigvarTensor {
    inner: Tensor,
}

struct Failure(SigvarStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::DimensionMismatch { .. } => SigvarStatus::DimensionMismatch,
            Error::HeightMismatch { .. } => SigvarStatus::HeightMismatch,
            Error::ConstantTerm { .. } => SigvarStatus::ConstantTerm,
            Error::OutOfSpace { .. } => SigvarStatus::OutOfSpace,
            Error::Parse { .. } => SigvarStatus::Parse,
            Error::Internal(_) => SigvarStatus::Internal,
            _ => SigvarStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SigvarStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SigvarStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(&format!("panic: {message}"));
            SigvarStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(SigvarStatus::NullPointer, "null pointer argument".into())
}

unsafe fn tensor_ref<'a>(t: *const SigvarTensor) -> Result<&'a Tensor, Failure> {
    t.as_ref().map(|t| &t.inner).ok_or_else(null)
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(SigvarStatus::InvalidUtf8, e.to_string()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn write_tensor(out: *mut *mut SigvarTensor, t: Tensor) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(Box::into_raw(Box::new(SigvarTensor { inner: t })));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure(SigvarStatus::Internal, e.to_string()))?;
    write_out(out, c.into_raw())
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next `sigvar_*` call on the same thread.
#[no_mangle]
pub extern "C" fn sigvar_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sigvar_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Releases a tensor handle. Null is ignored.
///
/// # Safety
/// `t` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sigvar_tensor_free(t: *mut SigvarTensor) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Signature truncated at `height` of an integer series of `len` increments,
/// given row-major as `len * dim` values.
///
/// # Safety
/// `values` must point to `len * dim` readable values (it may be null when
/// `len` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sigvar_dsign_i64(
    values: *const i64,
    len: usize,
    dim: usize,
    height: usize,
    out: *mut *mut SigvarTensor,
) -> SigvarStatus {
    guard(|| {
        if len > 0 && values.is_null() {
            return Err(null());
        }
        if dim == 0 || height == 0 {
            return Err(Failure(
                SigvarStatus::InvalidArgument,
                "dim and height must be at least 1".into(),
            ));
        }
        let flat: &[i64] = if len == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(values, len * dim)
        };
        let rows: Vec<Vec<i64>> = flat.chunks(dim).map(<[i64]>::to_vec).collect();
        let y = TimeSeries::from_integers(dim, &rows)?;
        write_tensor(out, dsign(&y, height))
    })
}

/// Parses a tensor from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sigvar_tensor_from_json(json: *const c_char, out: *mut *mut SigvarTensor) -> SigvarStatus {
    guard(|| write_tensor(out, Tensor::from_json(read_str(json)?)?))
}

/// Canonical JSON form of a tensor.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sigvar_tensor_to_json(t: *const SigvarTensor, out: *mut *mut c_char) -> SigvarStatus {
    guard(|| write_string(out, tensor_ref(t)?.to_json()))
}

/// Number of variables of the tensor space.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sigvar_tensor_dim(t: *const SigvarTensor, out: *mut usize) -> SigvarStatus {
    guard(|| write_out(out, tensor_ref(t)?.dim()))
}

/// Truncation height of the tensor.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sigvar_tensor_height(t: *const SigvarTensor, out: *mut usize) -> SigvarStatus {
    guard(|| write_out(out, tensor_ref(t)?.height_bound()))
}

/// Coefficient of a word such as `"12.3"` (`""` for the empty word), as an
/// exact rational string like `"-7/2"`.
///
/// # Safety
/// `t` must be a live handle, `word` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sigvar_tensor_coefficient(
    t: *const SigvarTensor,
    word: *const c_char,
    out: *mut *mut c_char,
) -> SigvarStatus {
    guard(|| {
        let t = tensor_ref(t)?;
        let w = Word::parse(read_str(word)?)?;
        write_string(out, format_rational(&t.coefficient(&w)))
    })
}

/// Applies one of the Hoffman maps.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sigvar_tensor_hoffman(
    t: *const SigvarTensor,
    map: SigvarHoffmanMap,
    out: *mut *mut SigvarTensor,
) -> SigvarStatus {
    guard(|| {
        let t = tensor_ref(t)?;
        let image = match map {
            SigvarHoffmanMap::Phi => t.hoffman_phi(),
            SigvarHoffmanMap::Psi => t.hoffman_psi(),
            SigvarHoffmanMap::PhiStar => t.hoffman_phi_star(),
            SigvarHoffmanMap::PsiStar => t.hoffman_psi_star(),
        };
        write_tensor(out, image)
    })
}

/// Truncated exponential; the constant term must be 0.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sigvar_tensor_exp(t: *const SigvarTensor, out: *mut *mut SigvarTensor) -> SigvarStatus {
    guard(|| write_tensor(out, tensor_ref(t)?.exp()?))
}

/// Truncated logarithm; the constant term must be 1.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sigvar_tensor_log(t: *const SigvarTensor, out: *mut *mut SigvarTensor) -> SigvarStatus {
    guard(|| write_tensor(out, tensor_ref(t)?.log()?))
}

/// Truncated concatenation product `a · b`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sigvar_tensor_concat(
    a: *const SigvarTensor,
    b: *const SigvarTensor,
    out: *mut *mut SigvarTensor,
) -> SigvarStatus {
    guard(|| write_tensor(out, tensor_ref(a)?.concat(tensor_ref(b)?)?))
}

/// Runs a membership check. Returns `Ok` if it holds and `CheckFailed`
/// otherwise; `relations` (if not null) receives the number of relations
/// evaluated.
///
/// # Safety
/// `t` must be a live handle; `relations` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn sigvar_tensor_check(
    t: *const SigvarTensor,
    check: SigvarCheck,
    relations: *mut usize,
) -> SigvarStatus {
    guard(|| {
        let t = tensor_ref(t)?;
        let report = match check {
            SigvarCheck::GrouplikeQuasiShuffle => t.check_grouplike(Product::QuasiShuffle),
            SigvarCheck::GrouplikeShuffle => t.check_grouplike(Product::Shuffle),
            SigvarCheck::LieShuffle => t.check_lie_shuffle(),
        };
        if !relations.is_null() {
            relations.write(report.relations_checked);
        }
        if report.passed() {
            Ok(())
        } else {
            Err(Failure(SigvarStatus::CheckFailed, report.to_string()))
        }
    })
}

/// Number of Lyndon words of height `h` over `d` variables.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sigvar_lambda(d: usize, h: usize, out: *mut u64) -> SigvarStatus {
    guard(|| write_out(out, lambda_u64(d, h)?))
}

/// Rank over F_p of the Jacobian of the signature map at a seeded random
/// integer series of length `n`. Pass `modulus` 0 for the default prime.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sigvar_jacobian_rank(
    d: usize,
    h: usize,
    n: usize,
    seed: u64,
    modulus: u64,
    out: *mut usize,
) -> SigvarStatus {
    guard(|| {
        let p = if modulus == 0 {
            sigvar::varieties::DEFAULT_MODULUS
        } else {
            modulus
        };
        write_out(out, jacobian_rank(d, h, n, seed, p)?)
    })
}
