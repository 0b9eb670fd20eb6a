//! C ABI over the `cambrian` crate.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `_free` function. Every fallible call returns a
//! [`CambrianStatus`]; on failure [`cambrian_last_error`] describes it.
//! Strings returned through out-parameters are released with
//! [`cambrian_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cambrian::coxeter::types;
use cambrian::io::{parse_system, summary_json, IoError, RunConfig};
use cambrian::shelling::{
    analyze_all, el_check, homotopy_type, maximal_chains, mobius_recursive, HomotopyType, Summary,
};
use cambrian::sortable::{is_sortable_blocks, sorting_word};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CambrianStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    NotInPoset = 5,
    CapRequired = 6,
    Internal = 7,
}

/// A Coxeter system.
pub struct CambrianSystem {
    inner: cambrian::CoxeterSystem,
}

/// A Cambrian poset truncated at a length cap.
pub struct CambrianLattice {
    inner: cambrian::CambrianPoset,
}

/// Homotopy type of an open interval.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CambrianHomotopy {
    pub contractible: bool,
    /// Sphere dimension; meaningful only when `contractible` is false.
    pub sphere_dimension: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("nul bytes removed"));
}

type Fallible<T> = Result<T, (CambrianStatus, String)>;

fn guard(body: impl FnOnce() -> Fallible<()>) -> CambrianStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            CambrianStatus::Ok
        }
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            CambrianStatus::Internal
        }
    }
}

fn text<'a>(p: *const c_char) -> Fallible<&'a str> {
    if p.is_null() {
        return Err((CambrianStatus::NullPointer, "null string".into()));
    }
    // SAFETY: the caller passes a NUL-terminated string that outlives the call.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|e| (CambrianStatus::InvalidUtf8, e.to_string()))
}

fn optional_text<'a>(p: *const c_char) -> Fallible<Option<&'a str>> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p).map(Some)
    }
}

fn reference<'a, T>(p: *const T) -> Fallible<&'a T> {
    // SAFETY: non-null handles come from this library and are still live.
    unsafe { p.as_ref() }.ok_or((CambrianStatus::NullPointer, "null handle".into()))
}

fn write<T>(out: *mut T, value: T) -> Fallible<()> {
    if out.is_null() {
        return Err((CambrianStatus::NullPointer, "null output pointer".into()));
    }
    // SAFETY: checked non-null; the caller owns the storage.
    unsafe { out.write(value) };
    Ok(())
}

fn invalid(e: impl ToString) -> (CambrianStatus, String) {
    (CambrianStatus::InvalidArgument, e.to_string())
}

fn io_status(e: IoError) -> (CambrianStatus, String) {
    let status = match e {
        IoError::CapRequired => CambrianStatus::CapRequired,
        IoError::Parse(_) | IoError::BadEntry(_) => CambrianStatus::ParseError,
        _ => CambrianStatus::InvalidArgument,
    };
    (status, e.to_string())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

/// Message for the last failed call on this thread; empty after success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn cambrian_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cambrian_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a TOML system description (`generators`, `matrix`).
///
/// # Safety
/// `toml` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cambrian_system_from_toml(
    toml: *const c_char,
    out: *mut *mut CambrianSystem,
) -> CambrianStatus {
    guard(|| {
        let inner = parse_system(text(toml)?).map_err(io_status)?;
        write(out, Box::into_raw(Box::new(CambrianSystem { inner })))
    })
}

/// A built-in type such as `A3`, `B3`, `H3` or `A~2`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cambrian_system_from_type(
    name: *const c_char,
    out: *mut *mut CambrianSystem,
) -> CambrianStatus {
    guard(|| {
        let inner =
            types::by_name(text(name)?).map_err(|e| (CambrianStatus::ParseError, e.to_string()))?;
        write(out, Box::into_raw(Box::new(CambrianSystem { inner })))
    })
}

/// # Safety
/// `sys` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cambrian_system_free(sys: *mut CambrianSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Number of generators, or 0 for a null handle.
///
/// # Safety
/// `sys` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cambrian_system_rank(sys: *const CambrianSystem) -> usize {
    sys.as_ref().map_or(0, |s| s.inner.rank())
}

/// Sorting word of `word` (generator names separated by commas or spaces)
/// with `|` block dividers. A null `gamma` means the generators in order.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cambrian_sorting_word(
    sys: *const CambrianSystem,
    gamma: *const c_char,
    word: *const c_char,
    out: *mut *mut c_char,
) -> CambrianStatus {
    guard(|| {
        let sys = &reference(sys)?.inner;
        let cfg = RunConfig::new(sys.clone(), optional_text(gamma)?, Some(0)).map_err(io_status)?;
        let w = sys.parse_element(text(word)?).map_err(invalid)?;
        let sw = sorting_word(sys, &w, &cfg.gamma).map_err(invalid)?;
        write(out, owned_string(sw.format(sys)))
    })
}

/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cambrian_is_sortable(
    sys: *const CambrianSystem,
    gamma: *const c_char,
    word: *const c_char,
    out: *mut bool,
) -> CambrianStatus {
    guard(|| {
        let sys = &reference(sys)?.inner;
        let cfg = RunConfig::new(sys.clone(), optional_text(gamma)?, Some(0)).map_err(io_status)?;
        let w = sys.parse_element(text(word)?).map_err(invalid)?;
        write(out, is_sortable_blocks(sys, &w, &cfg.gamma))
    })
}

/// Builds the poset of sortable elements of length at most `cap`. A
/// negative `cap` means the length of the longest element (finite groups
/// only).
///
/// # Safety
/// `gamma` must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cambrian_lattice_build(
    sys: *const CambrianSystem,
    gamma: *const c_char,
    cap: i64,
    out: *mut *mut CambrianLattice,
) -> CambrianStatus {
    guard(|| {
        let sys = &reference(sys)?.inner;
        let cap = usize::try_from(cap).ok();
        let cfg = RunConfig::new(sys.clone(), optional_text(gamma)?, cap).map_err(io_status)?;
        let inner = cfg.build();
        write(out, Box::into_raw(Box::new(CambrianLattice { inner })))
    })
}

/// # Safety
/// `lattice` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn cambrian_lattice_free(lattice: *mut CambrianLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// # Safety
/// `lattice` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cambrian_lattice_size(
    lattice: *const CambrianLattice,
    out: *mut usize,
) -> CambrianStatus {
    guard(|| write(out, reference(lattice)?.inner.len()))
}

/// Number of Hasse edges.
///
/// # Safety
/// `lattice` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cambrian_lattice_cover_count(
    lattice: *const CambrianLattice,
    out: *mut usize,
) -> CambrianStatus {
    guard(|| write(out, reference(lattice)?.inner.covers().len()))
}

fn endpoints(
    lattice: &cambrian::CambrianPoset,
    lower: *const c_char,
    upper: *const c_char,
) -> Fallible<(usize, usize)> {
    let sys = lattice.system();
    let locate = |p| -> Fallible<usize> {
        let w = sys.parse_element(text(p)?).map_err(invalid)?;
        lattice
            .locate(&w)
            .map_err(|e| (CambrianStatus::NotInPoset, e.to_string()))
    };
    let (u, v) = (locate(lower)?, locate(upper)?);
    lattice
        .interval(u, v)
        .map_err(|e| (CambrianStatus::NotInPoset, e.to_string()))?;
    Ok((u, v))
}

/// Möbius value `μ(lower, upper)`; an empty string names the identity.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cambrian_interval_mobius(
    lattice: *const CambrianLattice,
    lower: *const c_char,
    upper: *const c_char,
    out: *mut i64,
) -> CambrianStatus {
    guard(|| {
        let l = &reference(lattice)?.inner;
        let (u, v) = endpoints(l, lower, upper)?;
        write(out, mobius_recursive(&l.interval(u, v).expect("checked")))
    })
}

/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cambrian_interval_homotopy(
    lattice: *const CambrianLattice,
    lower: *const c_char,
    upper: *const c_char,
    out: *mut CambrianHomotopy,
) -> CambrianStatus {
    guard(|| {
        let l = &reference(lattice)?.inner;
        let (u, v) = endpoints(l, lower, upper)?;
        let chains = maximal_chains(&l.interval(u, v).expect("checked"));
        let h = homotopy_type(&chains, &el_check(&chains))
            .map_err(|e| (CambrianStatus::Internal, e.to_string()))?;
        write(
            out,
            match h {
                HomotopyType::Contractible => CambrianHomotopy {
                    contractible: true,
                    sphere_dimension: 0,
                },
                HomotopyType::Sphere { dimension } => CambrianHomotopy {
                    contractible: false,
                    sphere_dimension: dimension,
                },
            },
        )
    })
}

/// Analyses every interval and returns the summary as JSON. `verified`
/// receives whether every interval passed all checks.
///
/// # Safety
/// `lattice` must be a live handle; out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn cambrian_lattice_summary_json(
    lattice: *const CambrianLattice,
    verified: *mut bool,
    out: *mut *mut c_char,
) -> CambrianStatus {
    guard(|| {
        let l = &reference(lattice)?.inner;
        if out.is_null() || verified.is_null() {
            return Err((CambrianStatus::NullPointer, "null output pointer".into()));
        }
        let summary = Summary::of(l, &analyze_all(l));
        write(verified, summary.all_verified())?;
        write(out, owned_string(summary_json(&summary)))
    })
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn cambrian_version() -> *const c_char {
    static VERSION: &[u8] = concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes();
    VERSION.as_ptr().cast()
}
