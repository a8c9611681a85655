//! C ABI over `chaintab`.
//!
//! Objects are opaque handles created by `*_new` or returned through out
//! parameters and released with the matching `*_free`. Every fallible call
//! returns a [`ChtStatus`]; on failure a description is available from
//! [`cht_last_error`] on the same thread until the next call.
//!
//! Tableau coordinates are 1-based, matching the library.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use chaintab::{Error, SearchBudget, Tableau, TorsionProfile};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChtStatus {
    Ok = 0,
    /// The query was well-formed and the answer is negative: no tableau of
    /// the requested shape, or the input tableau is not valid.
    NoSolution = 1,
    NullPointer = 2,
    InvalidInput = 3,
    BudgetExhausted = 4,
    Internal = 5,
}

/// Opaque torsion profile.
pub struct ChtProfile(TorsionProfile);

/// Opaque tableau.
pub struct ChtTableau(Tableau);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: ChtStatus, message: impl Into<String>) -> ChtStatus {
    set_error(message.into());
    status
}

fn from_error(e: Error) -> ChtStatus {
    let status = match e {
        Error::BudgetExhausted { .. } => ChtStatus::BudgetExhausted,
        Error::Internal(_) => ChtStatus::Internal,
        _ => ChtStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

/// Runs `f`, converting panics to [`ChtStatus::Internal`].
fn guard(f: impl FnOnce() -> ChtStatus) -> ChtStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(ChtStatus::Internal, "panic inside chaintab"),
    }
}

macro_rules! deref {
    ($p:expr) => {
        match unsafe { $p.as_ref() } {
            Some(v) => v,
            None => return fail(ChtStatus::NullPointer, concat!(stringify!($p), " is null")),
        }
    };
}

macro_rules! out {
    ($p:expr) => {
        match unsafe { $p.as_mut() } {
            Some(v) => v,
            None => return fail(ChtStatus::NullPointer, concat!(stringify!($p), " is null")),
        }
    };
}

fn budget(node_cap: u64) -> SearchBudget {
    SearchBudget {
        node_cap: (node_cap > 0).then_some(node_cap),
        count_cap: None,
    }
}

fn boxed(t: Tableau) -> *mut ChtTableau {
    Box::into_raw(Box::new(ChtTableau(t)))
}

/// Message describing the last failure on this thread, or null. Owned by the
/// library; valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn cht_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a profile from `m_2..m_g`; `len` must equal `genus - 1`.
///
/// # Safety
/// `torsion` must point to `len` readable values (may be null when `len` is 0).
#[no_mangle]
pub unsafe extern "C" fn cht_profile_new(
    genus: usize,
    torsion: *const u32,
    len: usize,
    out: *mut *mut ChtProfile,
) -> ChtStatus {
    guard(|| {
        let out = out!(out);
        *out = ptr::null_mut();
        let entries = if len == 0 {
            Vec::new()
        } else if torsion.is_null() {
            return fail(ChtStatus::NullPointer, "torsion is null");
        } else {
            unsafe { std::slice::from_raw_parts(torsion, len) }.to_vec()
        };
        match TorsionProfile::new(genus, entries) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(ChtProfile(p)));
                ChtStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `profile` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cht_profile_free(profile: *mut ChtProfile) {
    if !profile.is_null() {
        drop(unsafe { Box::from_raw(profile) });
    }
}

/// Genus of the profile, or 0 for a null handle.
///
/// # Safety
/// `profile` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cht_profile_genus(profile: *const ChtProfile) -> usize {
    unsafe { profile.as_ref() }.map_or(0, |p| p.0.genus())
}

/// Builds a tableau from `rows * cols` row-major cells. Checks range and
/// strict increase; torsion rules are checked by [`cht_validate`].
///
/// # Safety
/// `cells` must point to `rows * cols` readable values.
#[no_mangle]
pub unsafe extern "C" fn cht_tableau_new(
    genus: usize,
    rows: usize,
    cols: usize,
    cells: *const u32,
    out: *mut *mut ChtTableau,
) -> ChtStatus {
    guard(|| {
        let out = out!(out);
        *out = ptr::null_mut();
        let Some(n) = rows.checked_mul(cols) else {
            return fail(ChtStatus::InvalidInput, "rows * cols overflows");
        };
        if n == 0 {
            return from_error(Error::EmptyGrid);
        }
        if cells.is_null() {
            return fail(ChtStatus::NullPointer, "cells is null");
        }
        let cells = unsafe { std::slice::from_raw_parts(cells, n) }.to_vec();
        match Tableau::from_cells(genus, rows, cols, cells) {
            Ok(t) => {
                *out = boxed(t);
                ChtStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `tableau` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cht_tableau_free(tableau: *mut ChtTableau) {
    if !tableau.is_null() {
        drop(unsafe { Box::from_raw(tableau) });
    }
}

/// # Safety
/// `tableau` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cht_tableau_rows(tableau: *const ChtTableau) -> usize {
    unsafe { tableau.as_ref() }.map_or(0, |t| t.0.rows())
}

/// # Safety
/// `tableau` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cht_tableau_cols(tableau: *const ChtTableau) -> usize {
    unsafe { tableau.as_ref() }.map_or(0, |t| t.0.cols())
}

/// # Safety
/// `tableau` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cht_tableau_genus(tableau: *const ChtTableau) -> usize {
    unsafe { tableau.as_ref() }.map_or(0, |t| t.0.genus())
}

/// Entry at 1-based `(x, y)`.
///
/// # Safety
/// `tableau` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cht_tableau_get(tableau: *const ChtTableau, x: usize, y: usize, out: *mut u32) -> ChtStatus {
    guard(|| {
        let t = deref!(tableau);
        let out = out!(out);
        if x == 0 || y == 0 || x > t.0.rows() || y > t.0.cols() {
            return fail(
                ChtStatus::InvalidInput,
                format!("({x}, {y}) outside {}x{}", t.0.rows(), t.0.cols()),
            );
        }
        *out = t.0.get(x, y);
        ChtStatus::Ok
    })
}

/// Copies the row-major cells into `buf`, which must hold `rows * cols`.
///
/// # Safety
/// `buf` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn cht_tableau_cells(tableau: *const ChtTableau, buf: *mut u32, len: usize) -> ChtStatus {
    guard(|| {
        let t = deref!(tableau);
        let cells = t.0.cells();
        if len < cells.len() {
            return fail(
                ChtStatus::InvalidInput,
                format!("buffer holds {len}, need {}", cells.len()),
            );
        }
        if buf.is_null() {
            return fail(ChtStatus::NullPointer, "buf is null");
        }
        unsafe { std::slice::from_raw_parts_mut(buf, cells.len()) }.copy_from_slice(cells);
        ChtStatus::Ok
    })
}

/// Checks the tableau against the profile. Returns `Ok` when valid and
/// `NoSolution` when some rule is violated.
///
/// # Safety
/// Handles must be live.
#[no_mangle]
pub unsafe extern "C" fn cht_validate(tableau: *const ChtTableau, profile: *const ChtProfile) -> ChtStatus {
    guard(|| {
        let (t, p) = (deref!(tableau), deref!(profile));
        match chaintab::validate(&t.0, &p.0) {
            Ok(r) if r.valid => ChtStatus::Ok,
            Ok(r) => fail(ChtStatus::NoSolution, format!("{} violation(s)", r.violations.len())),
            Err(e) => from_error(e),
        }
    })
}

/// Lexicographically smallest valid tableau of the shape. `node_cap` 0 means
/// unlimited. Returns `NoSolution` (and a null `out`) when none exists.
///
/// # Safety
/// `profile` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cht_find_tableau(
    profile: *const ChtProfile,
    rows: usize,
    cols: usize,
    node_cap: u64,
    out: *mut *mut ChtTableau,
) -> ChtStatus {
    guard(|| {
        let p = deref!(profile);
        let out = out!(out);
        *out = ptr::null_mut();
        match chaintab::find_tableau(rows, cols, &p.0, budget(node_cap)) {
            Ok(Some(t)) => {
                *out = boxed(t);
                ChtStatus::Ok
            }
            Ok(None) => fail(ChtStatus::NoSolution, format!("no tableau on {rows}x{cols}")),
            Err(e) => from_error(e),
        }
    })
}

/// Number of valid tableaux of the shape. `node_cap` 0 means unlimited.
///
/// # Safety
/// `profile` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cht_count_tableaux(
    profile: *const ChtProfile,
    rows: usize,
    cols: usize,
    node_cap: u64,
    out: *mut u64,
) -> ChtStatus {
    guard(|| {
        let p = deref!(profile);
        let out = out!(out);
        match chaintab::count_tableaux(rows, cols, &p.0, budget(node_cap)) {
            Ok(n) => {
                *out = n;
                ChtStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Gonality. `witness` may be null; otherwise it receives a new handle.
///
/// # Safety
/// `profile` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cht_gonality(
    profile: *const ChtProfile,
    out: *mut u32,
    witness: *mut *mut ChtTableau,
) -> ChtStatus {
    guard(|| {
        let p = deref!(profile);
        let out = out!(out);
        match chaintab::gonality(&p.0) {
            Ok(g) => {
                *out = g.value;
                if let Some(w) = unsafe { witness.as_mut() } {
                    *w = boxed(g.witness);
                }
                ChtStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Clifford index. When no class is in range, `out` receives the convention
/// value `gon - 2` and `empty_set` is set to true.
///
/// # Safety
/// `profile` must be live; `out` and `empty_set` writable.
#[no_mangle]
pub unsafe extern "C" fn cht_clifford_index(
    profile: *const ChtProfile,
    out: *mut u32,
    empty_set: *mut bool,
) -> ChtStatus {
    guard(|| {
        let p = deref!(profile);
        let out = out!(out);
        let empty_set = out!(empty_set);
        match chaintab::clifford_index(&p.0) {
            Ok(c) => {
                *out = c.value.effective();
                *empty_set = c.value.is_empty_set();
                ChtStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Reduces a valid tableau with at least two rows and columns to a
/// two-column tableau. `trace` may be null; otherwise it receives the
/// space-separated case labels, released with [`cht_string_free`].
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cht_reduce(
    tableau: *const ChtTableau,
    profile: *const ChtProfile,
    out: *mut *mut ChtTableau,
    trace: *mut *mut c_char,
) -> ChtStatus {
    guard(|| {
        let (t, p) = (deref!(tableau), deref!(profile));
        let out = out!(out);
        *out = ptr::null_mut();
        if let Some(tr) = unsafe { trace.as_mut() } {
            *tr = ptr::null_mut();
        }
        match chaintab::reduce_to_rank_one(&t.0, &p.0) {
            Ok((reduced, steps)) => {
                *out = boxed(reduced);
                if let Some(tr) = unsafe { trace.as_mut() } {
                    *tr = CString::new(steps.labels().join(" ")).unwrap_or_default().into_raw();
                }
                ChtStatus::Ok
            }
            Err(Error::InvalidTableau) => fail(ChtStatus::NoSolution, Error::InvalidTableau.to_string()),
            Err(e) => from_error(e),
        }
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cht_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
