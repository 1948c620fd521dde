//! C ABI over `sbox-core`.
//!
//! S-boxes cross the boundary as opaque `SboxHandle` pointers created by
//! `sbox_parse` / `sbox_from_table` and released with `sbox_free`. Every
//! fallible call returns an `SboxStatus`; on failure a description is
//! available from `sbox_last_error_message` on the same thread. Results are
//! written through out-pointers, which must be non-null.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sbox_core::enumeration::{enumerate_strong, EnumerationConfig};
use sbox_core::invariance::is_strongly_anti_invariant;
use sbox_core::predicates::{analyze, is_optimal, is_strong, is_very_strong};
use sbox_core::{
    component_degree, degree_spectrum, derivative_image_size, diff1, differential_uniformity,
    is_weakly_delta_uniform, lin, lin1, n_hat, parse_sbox, SBox, SboxError,
};

/// Degree reported for the constant-zero component.
pub const SBOX_NEG_INFINITY_DEGREE: i32 = -1;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SboxStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    NotBijective = 5,
    NotNormalized = 6,
    WrongDimension = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// Opaque S-box owned by the library.
pub struct SboxHandle {
    inner: SBox,
}

/// Totals from `sbox_enumerate_strong`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SboxEnumerationCounts {
    pub strong: u64,
    pub very_strong: u64,
    pub nodes_visited: u64,
    pub leaves_visited: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn status_of(e: &SboxError) -> SboxStatus {
    match e {
        SboxError::Empty
        | SboxError::MalformedToken { .. }
        | SboxError::ValueOutOfRange { .. }
        | SboxError::BadLength(_)
        | SboxError::BadHexLength(_) => SboxStatus::ParseError,
        SboxError::NotBijective => SboxStatus::NotBijective,
        SboxError::NotNormalized(_) => SboxStatus::NotNormalized,
        SboxError::WrongDimension { .. } => SboxStatus::WrongDimension,
        _ => SboxStatus::InvalidArgument,
    }
}

fn fail(e: SboxError) -> SboxStatus {
    set_last_error(e.to_string());
    status_of(&e)
}

fn guard(body: impl FnOnce() -> SboxStatus) -> SboxStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic");
            SboxStatus::Panic
        }
    }
}

unsafe fn handle<'a>(h: *const SboxHandle) -> Option<&'a SBox> {
    h.as_ref().map(|h| &h.inner)
}

/// Runs `compute` on the handle and stores its value in `out`.
unsafe fn query<T>(
    h: *const SboxHandle,
    out: *mut T,
    compute: impl FnOnce(&SBox) -> Result<T, SboxError>,
) -> SboxStatus {
    guard(|| {
        let Some(f) = handle(h) else {
            set_last_error("null S-box handle");
            return SboxStatus::NullPointer;
        };
        if out.is_null() {
            set_last_error("null output pointer");
            return SboxStatus::NullPointer;
        }
        match compute(f) {
            Ok(v) => {
                out.write(v);
                SboxStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

fn into_handle(f: SBox, out: *mut *mut SboxHandle) -> SboxStatus {
    let boxed = Box::new(SboxHandle { inner: f });
    // SAFETY: callers check `out` for null first.
    unsafe { out.write(Box::into_raw(boxed)) };
    SboxStatus::Ok
}

/// Parses a decimal CSV table or a 16-digit hex string into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sbox_parse(text: *const c_char, out: *mut *mut SboxHandle) -> SboxStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            set_last_error("null pointer argument");
            return SboxStatus::NullPointer;
        }
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            set_last_error("S-box text is not UTF-8");
            return SboxStatus::InvalidUtf8;
        };
        match parse_sbox(s) {
            Ok(f) => into_handle(f, out),
            Err(e) => fail(e),
        }
    })
}

/// Builds a handle from `len` table entries; `len` must be `2^m` with `2 <= m <= 8`.
///
/// # Safety
/// `table` must point to `len` readable bytes and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sbox_from_table(
    table: *const u8,
    len: usize,
    out: *mut *mut SboxHandle,
) -> SboxStatus {
    guard(|| {
        if table.is_null() || out.is_null() {
            set_last_error("null pointer argument");
            return SboxStatus::NullPointer;
        }
        let entries = std::slice::from_raw_parts(table, len).to_vec();
        match SBox::from_table(entries) {
            Ok(f) => into_handle(f, out),
            Err(e) => fail(e),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `h` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sbox_free(h: *mut SboxHandle) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Dimension `m`, or 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sbox_dimension(h: *const SboxHandle) -> u32 {
    handle(h).map_or(0, SBox::dimension)
}

/// Copies the `2^m` table entries into `out`.
///
/// # Safety
/// `h` must be a live handle and `out` must have room for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn sbox_table(h: *const SboxHandle, out: *mut u8, len: usize) -> SboxStatus {
    guard(|| {
        let Some(f) = handle(h) else {
            set_last_error("null S-box handle");
            return SboxStatus::NullPointer;
        };
        if out.is_null() {
            set_last_error("null output pointer");
            return SboxStatus::NullPointer;
        }
        if len < f.size() {
            set_last_error(format!("buffer holds {len} entries, need {}", f.size()));
            return SboxStatus::BufferTooSmall;
        }
        ptr::copy_nonoverlapping(f.table().as_ptr(), out, f.size());
        SboxStatus::Ok
    })
}

/// New handle for `x -> f(x) ^ f(0)`.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sbox_normalize(
    h: *const SboxHandle,
    out: *mut *mut SboxHandle,
) -> SboxStatus {
    guard(|| {
        let Some(f) = handle(h) else {
            set_last_error("null S-box handle");
            return SboxStatus::NullPointer;
        };
        if out.is_null() {
            set_last_error("null output pointer");
            return SboxStatus::NullPointer;
        }
        into_handle(f.normalize(), out)
    })
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sbox_is_bijective(h: *const SboxHandle, out: *mut bool) -> SboxStatus {
    query(h, out, |f| Ok(f.is_bijective()))
}

/// Smallest `delta` for which the S-box is `delta`-differentially uniform.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sbox_differential_uniformity(
    h: *const SboxHandle,
    out: *mut u32,
) -> SboxStatus {
    query(h, out, |f| Ok(differential_uniformity(f)))
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sbox_derivative_image_size(
    h: *const SboxHandle,
    u: usize,
    out: *mut usize,
) -> SboxStatus {
    query(h, out, |f| derivative_image_size(f, u))
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sbox_is_weakly_delta_uniform(
    h: *const SboxHandle,
    delta: u32,
    out: *mut bool,
) -> SboxStatus {
    query(h, out, |f| {
        if delta == 0 {
            return Err(SboxError::InvalidDims("delta must be at least 1".into()));
        }
        Ok(is_weakly_delta_uniform(f, delta))
    })
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sbox_is_weakly_apn(h: *const SboxHandle, out: *mut bool) -> SboxStatus {
    query(h, out, |f| Ok(is_weakly_delta_uniform(f, 2)))
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sbox_diff1(h: *const SboxHandle, out: *mut u32) -> SboxStatus {
    query(h, out, |f| Ok(diff1(f)))
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sbox_lin(h: *const SboxHandle, out: *mut u32) -> SboxStatus {
    query(h, out, |f| Ok(lin(f)))
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sbox_lin1(h: *const SboxHandle, out: *mut u32) -> SboxStatus {
    query(h, out, |f| Ok(lin1(f)))
}

/// Degree of the component `<f, v>`, `v != 0`.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sbox_component_degree(
    h: *const SboxHandle,
    v: usize,
    out: *mut i32,
) -> SboxStatus {
    query(h, out, |f| component_degree(f, v))
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sbox_algebraic_degree(h: *const SboxHandle, out: *mut i32) -> SboxStatus {
    query(h, out, |f| Ok(degree_spectrum(f).max_degree()))
}

/// `n_degree`: number of nonzero masks whose component has this degree.
/// Pass `SBOX_NEG_INFINITY_DEGREE` to count constant-zero components.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sbox_degree_count(
    h: *const SboxHandle,
    degree: i32,
    out: *mut u32,
) -> SboxStatus {
    query(h, out, |f| Ok(degree_spectrum(f).get(degree) as u32))
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sbox_n_hat(h: *const SboxHandle, out: *mut u32) -> SboxStatus {
    query(h, out, |f| Ok(n_hat(f) as u32))
}

/// Needs a normalized permutation.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sbox_is_strongly_anti_invariant(
    h: *const SboxHandle,
    level: u32,
    out: *mut bool,
) -> SboxStatus {
    query(h, out, |f| is_strongly_anti_invariant(f, level))
}

/// Needs a 4-bit permutation.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sbox_is_optimal(h: *const SboxHandle, out: *mut bool) -> SboxStatus {
    query(h, out, is_optimal)
}

/// Needs a normalized 4-bit permutation.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sbox_is_strong(h: *const SboxHandle, out: *mut bool) -> SboxStatus {
    query(h, out, is_strong)
}

/// Needs a normalized 4-bit permutation.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sbox_is_very_strong(h: *const SboxHandle, out: *mut bool) -> SboxStatus {
    query(h, out, is_very_strong)
}

/// Full analysis report as a JSON string, or null on failure. Release it with
/// `sbox_string_free`.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sbox_analyze_json(h: *const SboxHandle) -> *mut c_char {
    let result = catch_unwind(AssertUnwindSafe(|| {
        handle(h).and_then(|f| CString::new(analyze(f).to_json()).ok())
    }));
    match result {
        Ok(Some(s)) => s.into_raw(),
        Ok(None) => {
            set_last_error("null S-box handle");
            ptr::null_mut()
        }
        Err(_) => {
            set_last_error("internal panic");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sbox_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Counts strong and very strong normalized 4-bit S-boxes in one shard.
/// `threads = 0` uses every logical processor.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sbox_enumerate_strong(
    shards: u32,
    shard_id: u32,
    threads: u32,
    out: *mut SboxEnumerationCounts,
) -> SboxStatus {
    guard(|| {
        if out.is_null() {
            set_last_error("null output pointer");
            return SboxStatus::NullPointer;
        }
        let config = EnumerationConfig {
            shards,
            shard_id,
            threads: (threads > 0).then_some(threads as usize),
            ..Default::default()
        };
        match enumerate_strong(&config) {
            Ok(r) => {
                out.write(SboxEnumerationCounts {
                    strong: r.strong_count,
                    very_strong: r.very_strong_count,
                    nodes_visited: r.nodes_visited,
                    leaves_visited: r.leaves_visited,
                });
                SboxStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Message for the last failure on this thread, or null. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn sbox_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn sbox_status_message(status: SboxStatus) -> *const c_char {
    let text: &'static CStr = match status {
        SboxStatus::Ok => c"ok",
        SboxStatus::NullPointer => c"null pointer",
        SboxStatus::InvalidUtf8 => c"invalid UTF-8",
        SboxStatus::ParseError => c"S-box parse error",
        SboxStatus::InvalidArgument => c"invalid argument",
        SboxStatus::NotBijective => c"S-box is not a permutation",
        SboxStatus::NotNormalized => c"S-box is not normalized",
        SboxStatus::WrongDimension => c"wrong S-box dimension",
        SboxStatus::BufferTooSmall => c"buffer too small",
        SboxStatus::Panic => c"internal panic",
    };
    text.as_ptr()
}
