//! C ABI for the salab engine.
//!
//! Ideals are opaque handles created by [`salab_ideal_parse`] and released
//! with [`salab_ideal_free`]. Every fallible call returns a [`SalabStatus`];
//! on failure a message is available from [`salab_last_error`] on the same
//! thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use salab::explorer::{parse_file, run_command, Command, CommandArgs, IdealFile, Input};
use salab::groebner::{hilbert_function, krull_dimension};
use salab::resolution::{minimal_resolution, ResolveOptions};
use salab::structure::is_regular_sequence;
use salab::Error;

/// Result codes. The first four agree with the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SalabStatus {
    Ok = 0,
    DomainError = 1,
    ParseError = 2,
    ResourceCap = 3,
    NullArgument = 4,
    InvalidUtf8 = 5,
    Panic = 6,
    /// The caller's buffer is too short; the needed length was written.
    BufferTooSmall = 7,
}

/// A parsed ideal file: ring plus generator list (zero lines kept).
pub struct SalabIdeal {
    file: IdealFile,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn engine_error(e: Error) -> SalabStatus {
    set_error(&e.to_string());
    match e.exit_code() {
        2 => SalabStatus::ParseError,
        3 => SalabStatus::ResourceCap,
        _ => SalabStatus::DomainError,
    }
}

fn guard(f: impl FnOnce() -> Result<(), SalabStatus>) -> SalabStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SalabStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic");
            SalabStatus::Panic
        }
    }
}

fn null(what: &str) -> SalabStatus {
    set_error(&format!("null pointer passed for `{what}`"));
    SalabStatus::NullArgument
}

/// # Safety
/// `p` must be null or point to a nul-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, SalabStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(&format!("`{what}` is not valid UTF-8"));
        SalabStatus::InvalidUtf8
    })
}

/// # Safety
/// `ideal` must be null or a live handle from [`salab_ideal_parse`].
unsafe fn ideal_ref<'a>(ideal: *const SalabIdeal) -> Result<&'a SalabIdeal, SalabStatus> {
    ideal.as_ref().ok_or_else(|| null("ideal"))
}

/// # Safety
/// `p` must be null or valid for a write of `T`.
unsafe fn write_out<T>(p: *mut T, v: T, what: &str) -> Result<(), SalabStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    p.write(v);
    Ok(())
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next salab call on the same thread.
#[no_mangle]
pub extern "C" fn salab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Engine version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn salab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses an ideal file (`ring QQ[x, y]` header, one polynomial per line).
///
/// # Safety
/// `text` must be a nul-terminated string and `out` valid for writing a
/// pointer. On success `*out` owns a handle to release with
/// [`salab_ideal_free`].
#[no_mangle]
pub unsafe extern "C" fn salab_ideal_parse(text: *const c_char, out: *mut *mut SalabIdeal) -> SalabStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let file = parse_file(text, None).map_err(engine_error)?;
        write_out(out, Box::into_raw(Box::new(SalabIdeal { file })), "out")
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `ideal` must be null or a handle from [`salab_ideal_parse`] that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn salab_ideal_free(ideal: *mut SalabIdeal) {
    if !ideal.is_null() {
        drop(Box::from_raw(ideal));
    }
}

/// # Safety
/// `ideal` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn salab_ideal_num_vars(ideal: *const SalabIdeal, out: *mut usize) -> SalabStatus {
    guard(|| write_out(out, ideal_ref(ideal)?.file.ring.num_vars(), "out"))
}

/// Number of generator lines, zeros included.
///
/// # Safety
/// `ideal` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn salab_ideal_num_generators(ideal: *const SalabIdeal, out: *mut usize) -> SalabStatus {
    guard(|| write_out(out, ideal_ref(ideal)?.file.polynomials.len(), "out"))
}

/// `pd(S/I)`.
///
/// # Safety
/// `ideal` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn salab_projective_dimension(ideal: *const SalabIdeal, out: *mut usize) -> SalabStatus {
    guard(|| {
        let i = ideal_ref(ideal)?.file.ideal();
        let (res, _) = minimal_resolution(&i, &ResolveOptions::default()).map_err(engine_error)?;
        write_out(out, res.length(), "out")
    })
}

/// Krull dimension of `S/I`.
///
/// # Safety
/// `ideal` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn salab_krull_dimension(ideal: *const SalabIdeal, out: *mut usize) -> SalabStatus {
    guard(|| {
        let d = krull_dimension(&ideal_ref(ideal)?.file.ideal()).map_err(engine_error)?;
        write_out(out, d, "out")
    })
}

/// Whether the generator lines form a regular sequence.
///
/// # Safety
/// `ideal` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn salab_is_regular_sequence(ideal: *const SalabIdeal, out: *mut bool) -> SalabStatus {
    guard(|| {
        let r = is_regular_sequence(&ideal_ref(ideal)?.file.polynomials).map_err(engine_error)?;
        write_out(out, r, "out")
    })
}

/// # Safety
/// `values` must be valid for `len` writes (or null when `len` is 0).
unsafe fn fill(values: *mut u64, len: usize, data: &[u64], needed: *mut usize) -> Result<(), SalabStatus> {
    write_out(needed, data.len(), "needed")?;
    if data.len() > len {
        set_error(&format!("buffer holds {len} values, {} needed", data.len()));
        return Err(SalabStatus::BufferTooSmall);
    }
    if !data.is_empty() {
        if values.is_null() {
            return Err(null("values"));
        }
        ptr::copy_nonoverlapping(data.as_ptr(), values, data.len());
    }
    Ok(())
}

/// Writes `HF(S/I, 0..=m_max)` into `values`. `*needed` always receives
/// `m_max + 1`; a shorter buffer gives `BufferTooSmall`.
///
/// # Safety
/// `ideal` must be a live handle, `values` valid for `len` writes, and
/// `needed` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn salab_hilbert_function(
    ideal: *const SalabIdeal,
    m_max: u64,
    values: *mut u64,
    len: usize,
    needed: *mut usize,
) -> SalabStatus {
    guard(|| {
        let hf = hilbert_function(&ideal_ref(ideal)?.file.ideal(), m_max).map_err(engine_error)?;
        fill(values, len, &hf.values, needed)
    })
}

/// Writes the total Betti numbers `b_0, ..., b_pd` into `values`, with the
/// same buffer protocol as [`salab_hilbert_function`].
///
/// # Safety
/// As for [`salab_hilbert_function`].
#[no_mangle]
pub unsafe extern "C" fn salab_betti_totals(
    ideal: *const SalabIdeal,
    values: *mut u64,
    len: usize,
    needed: *mut usize,
) -> SalabStatus {
    guard(|| {
        let i = ideal_ref(ideal)?.file.ideal();
        let (_, betti) = minimal_resolution(&i, &ResolveOptions::default()).map_err(engine_error)?;
        let totals: Vec<u64> = betti.totals().into_iter().map(|t| t as u64).collect();
        fill(values, len, &totals, needed)
    })
}

/// Runs an explorer command and returns its JSON report. `ideal_text` may
/// be null for commands without input files. Release `*json_out` with
/// [`salab_string_free`].
///
/// # Safety
/// `command` must be a nul-terminated string, `ideal_text` null or
/// nul-terminated, and `json_out` valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn salab_run_command(
    command: *const c_char,
    ideal_text: *const c_char,
    seed: u64,
    json_out: *mut *mut c_char,
) -> SalabStatus {
    guard(|| {
        let name = read_str(command, "command")?;
        if json_out.is_null() {
            return Err(null("json_out"));
        }
        let cmd: Command = name.parse().map_err(engine_error)?;
        let mut args = CommandArgs {
            seed,
            ..CommandArgs::default()
        };
        if !ideal_text.is_null() {
            args.inputs.push(Input {
                name: "<memory>".into(),
                text: read_str(ideal_text, "ideal_text")?.to_string(),
            });
        }
        let report = run_command(cmd, &args).map_err(engine_error)?;
        let c = CString::new(report.to_json()).expect("JSON has no nul bytes");
        write_out(json_out, c.into_raw(), "json_out")
    })
}

/// Releases a string from [`salab_run_command`]. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn salab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
