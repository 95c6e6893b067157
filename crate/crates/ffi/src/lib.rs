//! C ABI over `sudoku-symmetry`.
//!
//! Grids and symmetries are opaque heap handles released with their `_free`
//! function. Every fallible call returns an [`SsStatus`]; on failure the
//! thread's last error message is available from [`ss_last_error_message`].
//! Strings returned through out-pointers are released with [`ss_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sudoku_symmetry::{
    are_equivalent, canonicalize, parse_expr, stabilizer, BoxSize, Error, Grid, GridFormat,
    GridSymmetry, Mode,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Grid text or a symmetry expression could not be parsed.
    Parse = 3,
    /// The grid breaks a row, column or box constraint, or is incomplete
    /// where a complete grid is required.
    InvalidGrid = 4,
    /// Operands have different box sizes.
    BoxMismatch = 5,
    /// Any other rejected argument, such as an unsupported box size.
    InvalidArgument = 6,
    /// The library panicked; this is a bug.
    Internal = 7,
}

/// Opaque grid handle.
pub struct SsGrid(Grid);

/// Opaque symmetry handle.
pub struct SsSymmetry(GridSymmetry);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SsStabilizer {
    pub stabilizer_size: u64,
    pub orbit_size: u64,
    pub group_order: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::BadLength { .. }
            | Error::BadCharacter { .. }
            | Error::BadJson(_)
            | Error::Expr { .. }
            | Error::WrongLength { .. }
            | Error::OutOfRange(_)
            | Error::NotABijection(_)
            | Error::NotBandStructured { .. } => SsStatus::Parse,
            Error::InvalidGrid | Error::IncompleteGrid => SsStatus::InvalidGrid,
            Error::BoxMismatch { .. } => SsStatus::BoxMismatch,
            _ => SsStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SsStatus::NullArgument, format!("{what} is null"))
}

fn set_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SsStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SsStatus::Internal
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn box_arg(box_size: u32) -> Result<BoxSize, Failure> {
    Ok(BoxSize::new(box_size as usize)?)
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

fn c_string(text: String) -> *mut c_char {
    CString::new(text).expect("no interior nul").into_raw()
}

fn mode(geometry_only: bool) -> Mode {
    if geometry_only {
        Mode::Geometry
    } else {
        Mode::GeometryAndRelabel
    }
}

/// Message for the most recent failure on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ss_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn ss_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Order of the geometric symmetry group for box size 2 or 3; 0 otherwise.
#[no_mangle]
pub extern "C" fn ss_group_order(box_size: u32) -> u64 {
    BoxSize::new(box_size as usize).map_or(0, |s| s.group_order())
}

/// Parses a grid in line, block or JSON form. `box_size` 0 infers it from
/// the input.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_grid_parse(
    text: *const c_char,
    box_size: u32,
    out: *mut *mut SsGrid,
) -> SsStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        let grid = match box_size {
            0 => Grid::parse(text)?,
            b => Grid::parse_with_box(text, box_arg(b)?)?,
        };
        put(out, boxed(SsGrid(grid)), "out")
    })
}

/// # Safety
/// `grid` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn ss_grid_free(grid: *mut SsGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// Box size of the grid (2 or 3), or 0 for a null handle.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ss_grid_box_size(grid: *const SsGrid) -> u32 {
    grid.as_ref().map_or(0, |g| g.0.size().block() as u32)
}

/// Copies the cells in row-major order, 0 for empty, into `cells`, which
/// must hold `len >= side²` bytes.
///
/// # Safety
/// `grid` must be a live handle and `cells` valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn ss_grid_cells(
    grid: *const SsGrid,
    cells: *mut u8,
    len: usize,
) -> SsStatus {
    guard(|| {
        let grid = &ref_arg(grid, "grid")?.0;
        if cells.is_null() {
            return Err(null("cells"));
        }
        let src = grid.cells();
        if len < src.len() {
            return Err(Failure(
                SsStatus::InvalidArgument,
                format!("buffer holds {len} cells, grid has {}", src.len()),
            ));
        }
        ptr::copy_nonoverlapping(src.as_ptr(), cells, src.len());
        Ok(())
    })
}

/// Renders the grid on one line, `.` for empty cells.
///
/// # Safety
/// `grid` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_grid_to_string(grid: *const SsGrid, out: *mut *mut c_char) -> SsStatus {
    guard(|| {
        let grid = &ref_arg(grid, "grid")?.0;
        put(
            out,
            c_string(grid.to_text(GridFormat::Line).trim_end().to_owned()),
            "out",
        )
    })
}

/// True when no row, column or box repeats a digit. False for null.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ss_grid_is_valid(grid: *const SsGrid) -> bool {
    grid.as_ref().is_some_and(|g| g.0.is_valid())
}

/// True when the grid is valid and has no empty cells. False for null.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ss_grid_is_complete(grid: *const SsGrid) -> bool {
    grid.as_ref().is_some_and(|g| g.0.is_complete())
}

/// Parses a symmetry expression such as `"V^2"` or `"r[213456789] d"`.
///
/// # Safety
/// `expr` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_symmetry_parse(
    expr: *const c_char,
    box_size: u32,
    out: *mut *mut SsSymmetry,
) -> SsStatus {
    guard(|| {
        let expr = str_arg(expr, "expr")?;
        let g = parse_expr(expr, box_arg(box_size)?)?;
        put(out, boxed(SsSymmetry(g)), "out")
    })
}

/// # Safety
/// `symmetry` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn ss_symmetry_free(symmetry: *mut SsSymmetry) {
    if !symmetry.is_null() {
        drop(Box::from_raw(symmetry));
    }
}

/// Renders the symmetry in expression syntax; the result parses back.
///
/// # Safety
/// `symmetry` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_symmetry_to_string(
    symmetry: *const SsSymmetry,
    out: *mut *mut c_char,
) -> SsStatus {
    guard(|| {
        let g = &ref_arg(symmetry, "symmetry")?.0;
        put(out, c_string(g.to_string()), "out")
    })
}

/// `out = left ∘ right`: `right` acts first.
///
/// # Safety
/// `left` and `right` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_symmetry_compose(
    left: *const SsSymmetry,
    right: *const SsSymmetry,
    out: *mut *mut SsSymmetry,
) -> SsStatus {
    guard(|| {
        let a = &ref_arg(left, "left")?.0;
        let b = &ref_arg(right, "right")?.0;
        put(out, boxed(SsSymmetry(a.compose(b)?)), "out")
    })
}

/// # Safety
/// `symmetry` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_symmetry_inverse(
    symmetry: *const SsSymmetry,
    out: *mut *mut SsSymmetry,
) -> SsStatus {
    guard(|| {
        let g = &ref_arg(symmetry, "symmetry")?.0;
        put(out, boxed(SsSymmetry(g.inverse())), "out")
    })
}

/// Class index 1..=8 (A1..A8), or 0 for a null handle.
///
/// # Safety
/// `symmetry` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ss_symmetry_class(symmetry: *const SsSymmetry) -> u8 {
    symmetry.as_ref().map_or(0, |g| g.0.classify().index())
}

/// Position of the symmetry in the group's enumeration order.
///
/// # Safety
/// `symmetry` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_symmetry_rank(symmetry: *const SsSymmetry, out: *mut u64) -> SsStatus {
    guard(|| {
        let g = &ref_arg(symmetry, "symmetry")?.0;
        put(out, g.rank(), "out")
    })
}

/// # Safety
/// Both arguments must be null or live handles.
#[no_mangle]
pub unsafe extern "C" fn ss_symmetry_equal(a: *const SsSymmetry, b: *const SsSymmetry) -> bool {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => a.0 == b.0,
        _ => false,
    }
}

/// Applies `symmetry` to `grid` into a new grid.
///
/// # Safety
/// `grid` and `symmetry` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_grid_apply_symmetry(
    grid: *const SsGrid,
    symmetry: *const SsSymmetry,
    out: *mut *mut SsGrid,
) -> SsStatus {
    guard(|| {
        let grid = &ref_arg(grid, "grid")?.0;
        let g = &ref_arg(symmetry, "symmetry")?.0;
        put(out, boxed(SsGrid(grid.apply_symmetry(g)?)), "out")
    })
}

/// Canonical form of a valid grid. `out_symmetry` may be null; otherwise it
/// receives the symmetry that, followed by a relabeling, maps the input to
/// the canonical grid. `workers` 0 uses the available parallelism.
///
/// # Safety
/// `grid` must be a live handle; `out_grid` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_canonicalize(
    grid: *const SsGrid,
    geometry_only: bool,
    workers: usize,
    out_grid: *mut *mut SsGrid,
    out_symmetry: *mut *mut SsSymmetry,
) -> SsStatus {
    guard(|| {
        let grid = &ref_arg(grid, "grid")?.0;
        if out_grid.is_null() {
            return Err(null("out_grid"));
        }
        let form = canonicalize(grid, mode(geometry_only), worker_count(workers))?;
        out_grid.write(boxed(SsGrid(form.grid)));
        if !out_symmetry.is_null() {
            out_symmetry.write(boxed(SsSymmetry(form.symmetry)));
        }
        Ok(())
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_are_equivalent(
    a: *const SsGrid,
    b: *const SsGrid,
    geometry_only: bool,
    workers: usize,
    out: *mut bool,
) -> SsStatus {
    guard(|| {
        let a = &ref_arg(a, "a")?.0;
        let b = &ref_arg(b, "b")?.0;
        let same = are_equivalent(a, b, mode(geometry_only), worker_count(workers))?;
        put(out, same, "out")
    })
}

/// Stabilizer and orbit sizes of a complete grid.
///
/// # Safety
/// `grid` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ss_stabilizer(
    grid: *const SsGrid,
    workers: usize,
    out: *mut SsStabilizer,
) -> SsStatus {
    guard(|| {
        let grid = &ref_arg(grid, "grid")?.0;
        let r = stabilizer(grid, worker_count(workers))?;
        put(
            out,
            SsStabilizer {
                stabilizer_size: r.stabilizer_size,
                orbit_size: r.orbit_size,
                group_order: r.group_order,
            },
            "out",
        )
    })
}

fn worker_count(workers: usize) -> usize {
    if workers == 0 {
        sudoku_symmetry::default_workers()
    } else {
        workers
    }
}
