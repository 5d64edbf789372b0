//! C ABI over the `cherednik` crate.
//!
//! Every fallible function returns a [`ChkStatus`]; on failure the message is
//! available from [`chk_last_error`] on the same thread. Strings handed out by
//! the library are owned by the caller and released with [`chk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cherednik::diagonal::{chi_equivalent, chi_sequence, ChiEquivalence};
use cherednik::kn::{decomp_number, kn_matrix_for_gamma, Engine};
use cherednik::{delta_character, parse_context, Error, LoadedContext, Mode, Multipartition};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed or inconsistent input; the CLI exits with 1 for these.
    InputError = 3,
    /// A computation hit a violated invariant.
    ComputationError = 4,
    EngineDisagreement = 5,
    Panic = 6,
}

/// A parsed context file, with its Γ when the file names one.
pub struct ChkContext {
    inner: LoadedContext,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(ChkStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.exit_code() {
            1 => ChkStatus::InputError,
            3 => ChkStatus::EngineDisagreement,
            _ => ChkStatus::ComputationError,
        };
        Failure(status, format!("{}: {e}", e.kind()))
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ChkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ChkStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            ChkStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(ChkStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(ChkStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn read_ctx<'a>(p: *const ChkContext) -> Result<&'a LoadedContext, Failure> {
    p.as_ref().map(|c| &c.inner).ok_or_else(|| Failure(ChkStatus::NullPointer, "null context".into()))
}

unsafe fn read_mp(p: *const c_char) -> Result<Multipartition, Failure> {
    read_str(p)?.parse().map_err(Failure::from)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(ChkStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(ChkStatus::ComputationError, "interior NUL in output".into()))?;
    write_out(out, c.into_raw())
}

/// Parses a JSON context file. On success `*out` owns a new handle.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chk_context_parse(json: *const c_char, out: *mut *mut ChkContext) -> ChkStatus {
    guard(|| {
        let inner = parse_context(read_str(json)?)?;
        write_out(out, Box::into_raw(Box::new(ChkContext { inner })))
    })
}

/// # Safety
/// `ctx` must come from [`chk_context_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn chk_context_free(ctx: *mut ChkContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// # Safety
/// `ctx` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chk_gamma_size(ctx: *const ChkContext, out: *mut usize) -> ChkStatus {
    guard(|| {
        let gc = read_ctx(ctx)?.gamma_context()?;
        write_out(out, gc.len())
    })
}

/// The element of Γ at `index`, in the library's fixed order.
///
/// # Safety
/// `ctx` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chk_gamma_element(ctx: *const ChkContext, index: usize, out: *mut *mut c_char) -> ChkStatus {
    guard(|| {
        let gc = read_ctx(ctx)?.gamma_context()?;
        let m = gc.elements().get(index).ok_or_else(|| Failure(ChkStatus::InputError, format!("index {index} out of range for |Γ| = {}", gc.len())))?;
        write_string(out, m.to_string())
    })
}

/// d_{λμ}(t) computed by both engines, which must agree.
///
/// # Safety
/// `ctx` must be a live handle, `lambda` and `mu` NUL-terminated strings and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chk_decomp_number(ctx: *const ChkContext, lambda: *const c_char, mu: *const c_char, out: *mut *mut c_char) -> ChkStatus {
    guard(|| {
        let gc = read_ctx(ctx)?.gamma_context()?;
        let r = decomp_number(&read_mp(lambda)?, &read_mp(mu)?, gc, Engine::Both)?;
        write_string(out, r.value.to_string())
    })
}

/// The full matrix over Γ as JSON: `{"labels": [...], "matrix": [[...]]}`.
///
/// # Safety
/// `ctx` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chk_decomp_matrix_json(ctx: *const ChkContext, out: *mut *mut c_char) -> ChkStatus {
    guard(|| {
        let gc = read_ctx(ctx)?.gamma_context()?;
        let m = kn_matrix_for_gamma(gc)?;
        let labels: Vec<String> = m.labels.iter().map(|l| l.to_string()).collect();
        let cells: Vec<Vec<String>> = m.d.iter().map(|row| row.iter().map(|p| p.to_string()).collect()).collect();
        write_string(out, serde_json::json!({ "labels": labels, "matrix": cells }).to_string())
    })
}

/// Dim Δ_μ(λ) over Γ.
///
/// # Safety
/// As for [`chk_decomp_number`].
#[no_mangle]
pub unsafe extern "C" fn chk_delta_char(ctx: *const ChkContext, lambda: *const c_char, mu: *const c_char, out: *mut *mut c_char) -> ChkStatus {
    guard(|| {
        let lc = read_ctx(ctx)?;
        let gc = lc.gamma_context()?;
        let ch = delta_character(&read_mp(lambda)?, &read_mp(mu)?, &lc.params, Mode::GammaRestricted(gc))?;
        write_string(out, ch.value.to_string())
    })
}

fn chi_of(lc: &LoadedContext) -> Result<cherednik::ChiSequence, Failure> {
    let gc = lc.gamma_context()?;
    let i = gc.single_residue().ok_or_else(|| Failure(ChkStatus::InputError, "χ needs a single-residue multiset".into()))?;
    Ok(chi_sequence(gc.gamma(), i, &lc.params)?)
}

/// The χ-sequence of γ, comma separated.
///
/// # Safety
/// `ctx` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chk_chi_sequence(ctx: *const ChkContext, out: *mut *mut c_char) -> ChkStatus {
    guard(|| {
        let chi = chi_of(read_ctx(ctx)?)?;
        write_string(out, chi.to_string())
    })
}

/// Writes 1 if the two χ-sequences are equivalent, 0 if not and -1 if the
/// search gave up within `depth`.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn chk_chi_compare(a: *const ChkContext, b: *const ChkContext, depth: usize, out: *mut i32) -> ChkStatus {
    guard(|| {
        let (x, y) = (chi_of(read_ctx(a)?)?, chi_of(read_ctx(b)?)?);
        let v = match chi_equivalent(&x, &y, depth) {
            ChiEquivalence::Equivalent(_) => 1,
            ChiEquivalence::Inequivalent { .. } => 0,
            ChiEquivalence::Unknown => -1,
        };
        write_out(out, v)
    })
}

/// The message of the last failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn chk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be a string returned by this library, or NULL.
#[no_mangle]
pub unsafe extern "C" fn chk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn chk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
