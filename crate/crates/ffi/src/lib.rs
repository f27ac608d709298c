//! C ABI for `tqf-core`.
//!
//! Forms are opaque [`TqfForm`] handles created by `tqf_form_new` or
//! `tqf_form_diagonal` and released with `tqf_form_free`. Every fallible call
//! returns a [`TqfStatus`]; results are written through out-pointers, and the
//! message for the most recent failure on the calling thread is available via
//! `tqf_last_error_message`. Panics never cross the boundary.
//!
//! Matrices are passed row-major as `n·n` consecutive `int64_t`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use tqf::bell::{r_closed_form, SpinorPairIndex};
use tqf::congruence::{congruence_rep_count, CongruenceCondition};
use tqf::enumerate::set_default_budget;
use tqf::watson::watson_transform;
use tqf::{Error, IntMatrix, QuadForm, ShiftedTarget};

/// Outcome of an FFI call. `TQF_STATUS_OK` is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TqfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotPositiveDefinite = 3,
    BudgetExceeded = 4,
    Overflow = 5,
    NotPrime = 6,
    Unsolvable = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// Opaque handle to a positive-definite integral quadratic form.
pub struct TqfForm {
    inner: QuadForm,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

struct Failure(TqfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NotPositiveDefinite { .. } => TqfStatus::NotPositiveDefinite,
            Error::BudgetExceeded { .. } => TqfStatus::BudgetExceeded,
            Error::Overflow(_) => TqfStatus::Overflow,
            Error::NotPrime(_) => TqfStatus::NotPrime,
            Error::Unsolvable => TqfStatus::Unsolvable,
            _ => TqfStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(TqfStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, records any failure for `tqf_last_error_message` and turns
/// panics into `TQF_STATUS_PANIC`.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> TqfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => TqfStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {message}"));
            TqfStatus::Panic
        }
    }
}

unsafe fn input<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(unsafe { slice::from_raw_parts(p, len) })
}

unsafe fn form<'a>(f: *const TqfForm) -> Result<&'a QuadForm, Failure> {
    unsafe { f.as_ref() }.map(|f| &f.inner).ok_or_else(|| null("form"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    unsafe { out.write(value) };
    Ok(())
}

fn square(data: &[i64], n: usize) -> Result<IntMatrix, Failure> {
    IntMatrix::from_row_major(n, n, data.to_vec()).map_err(Failure::from)
}

fn boxed(f: QuadForm) -> *mut TqfForm {
    Box::into_raw(Box::new(TqfForm { inner: f }))
}

/// Creates a form from an `n×n` row-major Gram matrix.
///
/// # Safety
/// `gram` must point to `n·n` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tqf_form_new(gram: *const i64, n: usize, out: *mut *mut TqfForm) -> TqfStatus {
    guard(|| {
        let data = unsafe { input(gram, n * n, "gram") }?;
        let f = QuadForm::new(square(data, n)?)?;
        unsafe { write(out, boxed(f)) }
    })
}

/// Creates the diagonal form `⟨d_1, …, d_n⟩`.
///
/// # Safety
/// `entries` must point to `n` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tqf_form_diagonal(entries: *const i64, n: usize, out: *mut *mut TqfForm) -> TqfStatus {
    guard(|| {
        let d = unsafe { input(entries, n, "entries") }?;
        let f = QuadForm::diagonal(d)?;
        unsafe { write(out, boxed(f)) }
    })
}

/// Releases a form. Passing null is a no-op.
///
/// # Safety
/// `f` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tqf_form_free(f: *mut TqfForm) {
    if !f.is_null() {
        drop(unsafe { Box::from_raw(f) });
    }
}

/// Dimension of the form, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tqf_form_dim(f: *const TqfForm) -> usize {
    unsafe { f.as_ref() }.map_or(0, |f| f.inner.dim())
}

/// Copies the Gram matrix into `out` (row-major, `len ≥ n·n`).
///
/// # Safety
/// `f` must be a live handle and `out` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn tqf_form_gram(f: *const TqfForm, out: *mut i64, len: usize) -> TqfStatus {
    guard(|| {
        let f = unsafe { form(f) }?;
        let data = f.gram().row_major();
        if len < data.len() {
            return Err(Failure(TqfStatus::BufferTooSmall, format!("need {} entries, got {len}", data.len())));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        unsafe { ptr::copy_nonoverlapping(data.as_ptr(), out, data.len()) };
        Ok(())
    })
}

/// `Q(x) = xᵀMx` for `x` of length `n`.
///
/// # Safety
/// `f` must be a live handle, `x` must hold `n` values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn tqf_form_evaluate(f: *const TqfForm, x: *const i64, n: usize, out: *mut i64) -> TqfStatus {
    guard(|| {
        let f = unsafe { form(f) }?;
        let x = unsafe { input(x, n, "x") }?;
        let v = f.evaluate(x)?;
        unsafe { write(out, v) }
    })
}

/// Number of integer vectors with `Q(x) = k`.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tqf_rep_count(f: *const TqfForm, k: i64, out: *mut u64) -> TqfStatus {
    guard(|| {
        let r = tqf::rep_count(unsafe { form(f) }?, k)?;
        unsafe { write(out, r) }
    })
}

/// Writes `r(0), …, r(upper)` into `out`, which must hold `upper + 1` values.
///
/// # Safety
/// `f` must be a live handle and `out` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn tqf_theta_series(f: *const TqfForm, upper: u64, out: *mut u64, len: usize) -> TqfStatus {
    guard(|| {
        let f = unsafe { form(f) }?;
        let needed = usize::try_from(upper).ok().and_then(|u| u.checked_add(1));
        if needed.is_none_or(|needed| len < needed) {
            return Err(Failure(TqfStatus::BufferTooSmall, format!("need upper + 1 entries, got {len}")));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let series = tqf::theta_series(f, upper)?;
        let counts = series.counts();
        unsafe { ptr::copy_nonoverlapping(counts.as_ptr(), out, counts.len()) };
        Ok(())
    })
}

/// Order of the integral automorphism group.
///
/// # Safety
/// `f` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tqf_aut_order(f: *const TqfForm, out: *mut u64) -> TqfStatus {
    guard(|| {
        let o = tqf::aut_order(unsafe { form(f) }?)?;
        unsafe { write(out, o) }
    })
}

/// Sets `*isometric`; when true and `witness` is non-null, writes `T`
/// (row-major `n·n`) with `Tᵀ M_f T = M_g`.
///
/// # Safety
/// `f`, `g` must be live handles; `witness` is null or has room for `n·n` values.
#[no_mangle]
pub unsafe extern "C" fn tqf_is_isometric(
    f: *const TqfForm,
    g: *const TqfForm,
    isometric: *mut bool,
    witness: *mut i64,
) -> TqfStatus {
    guard(|| {
        let (f, g) = unsafe { (form(f)?, form(g)?) };
        let found = tqf::is_isometric(f, g)?;
        if let (Some(t), false) = (&found, witness.is_null()) {
            let data = t.matrix().row_major();
            unsafe { ptr::copy_nonoverlapping(data.as_ptr(), witness, data.len()) };
        }
        unsafe { write(isometric, found.is_some()) }
    })
}

/// Number of `x` with `Q(x + z) − Q(z) = value`, i.e. `xᵀMx + 2zᵀMx = value`.
///
/// # Safety
/// `f` must be a live handle, `shift` must hold `n` values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn tqf_shifted_rep_count(
    f: *const TqfForm,
    shift: *const i64,
    n: usize,
    value: i64,
    out: *mut u64,
) -> TqfStatus {
    guard(|| {
        let f = unsafe { form(f) }?;
        let z = unsafe { input(shift, n, "shift") }?;
        let t = ShiftedTarget::new(f.clone(), z.to_vec())?;
        let r = tqf::shifted_rep_count(&t, value)?;
        unsafe { write(out, r) }
    })
}

/// Number of `x` with `Q(x) = a` and `Bx ≡ w (mod s)`. A null `b` means the identity.
///
/// # Safety
/// `f` must be a live handle; `b` is null or holds `n·n` values; `w`, `s`
/// hold `n` values; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn tqf_congruence_rep_count(
    f: *const TqfForm,
    a: i64,
    b: *const i64,
    w: *const i64,
    s: *const i64,
    n: usize,
    out: *mut u64,
) -> TqfStatus {
    guard(|| {
        let f = unsafe { form(f) }?;
        let b = if b.is_null() { IntMatrix::identity(n) } else { square(unsafe { input(b, n * n, "b") }?, n)? };
        let w = unsafe { input(w, n, "w") }?.to_vec();
        let s = unsafe { input(s, n, "s") }?.to_vec();
        let cond = CongruenceCondition::new(b, w, s)?;
        let r = congruence_rep_count(f, a, &cond)?;
        unsafe { write(out, r) }
    })
}

/// Closed formula for `r(k, L_i)`, `i ∈ 1..=4`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tqf_bell_closed_form(i: u8, k: i64, out: *mut u64) -> TqfStatus {
    guard(|| {
        let r = r_closed_form(SpinorPairIndex::new(i)?, k)?;
        unsafe { write(out, r) }
    })
}

/// One step of `λ_p`: writes a new handle to `*out` and, when non-null, the
/// divisor used to make the restricted form primitive.
///
/// # Safety
/// `f` must be a live handle; `out` writable; `divisor` null or writable.
#[no_mangle]
pub unsafe extern "C" fn tqf_watson_transform(
    f: *const TqfForm,
    p: u64,
    out: *mut *mut TqfForm,
    divisor: *mut i64,
) -> TqfStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let step = watson_transform(unsafe { form(f) }?, p)?;
        if !divisor.is_null() {
            unsafe { divisor.write(step.scale_divisor) };
        }
        unsafe { write(out, boxed(step.output)) }
    })
}

/// Sets the enumeration node budget for this process.
#[no_mangle]
pub extern "C" fn tqf_set_budget(nodes: u64) {
    set_default_budget(nodes);
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full length excluding the NUL, or 0 when
/// there is no error. `buf` may be null to query the length.
///
/// # Safety
/// `buf` must be null or have room for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn tqf_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(message) = e.as_deref() else {
            return 0;
        };
        if !buf.is_null() && len > 0 {
            let n = message.len().min(len - 1);
            unsafe {
                ptr::copy_nonoverlapping(message.as_ptr().cast::<c_char>(), buf, n);
                buf.add(n).write(0);
            }
        }
        message.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tqf_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version string"),
    };
    VERSION.as_ptr()
}
