//! C ABI over the `delsarte` crate.
//!
//! Every function returns a [`DelsarteStatus`]; results are written through
//! out-pointers. After a non-zero status, [`delsarte_last_error`] copies a
//! message describing the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use delsarte::character::{picard_report, CharacterGroup, CharacterVector, DelsarteMatrix};
use delsarte::formula::{load_table, FormulaTable};
use delsarte::hodge::{build_exceptional_set, census, classify_with_bound, HodgeClassLabel};
use delsarte::{Error, IntMatrix4, RationalMod1};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DelsarteStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    SingularMatrix = 3,
    UnknownCase = 4,
    Unclassifiable = 5,
    TooLarge = 6,
    Internal = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DelsarteLabel {
    InLambda = 0,
    InL0 = 1,
    Decomposable = 2,
    Regular = 3,
    Exceptional = 4,
}

/// Invariants of one surface.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DelsarteReport {
    pub degree: u32,
    pub order_l: u64,
    pub order_l0: u64,
    pub lefschetz: u64,
    pub betti2: i64,
    pub picard: i64,
    pub hodge11: i64,
    pub maximal: bool,
    pub decomposable: u64,
    pub regular: u64,
    pub exceptional: u64,
}

/// Opaque handle to a Delsarte surface of fixed degree.
pub struct DelsarteSurface {
    matrix: DelsarteMatrix,
}

/// Opaque handle to the table of Picard formulas.
pub struct DelsarteTable {
    table: FormulaTable,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(err: &Error) -> DelsarteStatus {
    match err {
        Error::SingularMatrix => DelsarteStatus::SingularMatrix,
        Error::UnknownCase(_) => DelsarteStatus::UnknownCase,
        Error::Unclassifiable(_) => DelsarteStatus::Unclassifiable,
        Error::TooLarge(_) => DelsarteStatus::TooLarge,
        Error::Internal(_) | Error::Io(_) => DelsarteStatus::Internal,
        _ => DelsarteStatus::InvalidArgument,
    }
}

fn guard<F>(f: F) -> DelsarteStatus
where
    F: FnOnce() -> Result<(), DelsarteStatus> + UnwindSafe,
{
    match catch_unwind(f) {
        Ok(Ok(())) => DelsarteStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside delsarte");
            DelsarteStatus::Panic
        }
    }
}

fn fail(err: Error) -> DelsarteStatus {
    let s = status_of(&err);
    set_error(err.to_string());
    s
}

fn null() -> DelsarteStatus {
    set_error("null pointer argument");
    DelsarteStatus::NullPointer
}

/// Version string of the library, static and NUL-terminated.
#[no_mangle]
pub extern "C" fn delsarte_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(s) => s,
        Err(_) => panic!("version string"),
    };
    VERSION.as_ptr()
}

/// Copies the last error message of this thread into `buf`, truncated and
/// NUL-terminated. Returns the full message length in bytes.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn delsarte_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            // SAFETY: the caller guarantees `buf` holds `len` bytes and n < len.
            unsafe {
                ptr::copy_nonoverlapping(msg.as_ptr(), buf.cast::<u8>(), n);
                *buf.add(n) = 0;
            }
        }
        msg.len()
    })
}

/// Creates a surface from 16 row-major exponents and its degree.
///
/// # Safety
/// `entries` must point to 16 readable `int64_t`, `out` to a writable handle.
#[no_mangle]
pub unsafe extern "C" fn delsarte_surface_new(
    entries: *const i64,
    degree: u32,
    out: *mut *mut DelsarteSurface,
) -> DelsarteStatus {
    if entries.is_null() || out.is_null() {
        return null();
    }
    // SAFETY: checked non-null; the caller guarantees 16 entries.
    let e = unsafe { std::slice::from_raw_parts(entries, 16) };
    let mut m = [[0i64; 4]; 4];
    for (i, v) in e.iter().enumerate() {
        m[i / 4][i % 4] = *v;
    }
    guard(move || {
        let matrix = DelsarteMatrix::new(IntMatrix4(m), degree).map_err(fail)?;
        // SAFETY: `out` checked non-null.
        unsafe { *out = Box::into_raw(Box::new(DelsarteSurface { matrix })) };
        Ok(())
    })
}

/// Releases a surface. Null is ignored.
///
/// # Safety
/// `surface` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn delsarte_surface_free(surface: *mut DelsarteSurface) {
    if !surface.is_null() {
        // SAFETY: created by Box::into_raw in this library.
        drop(unsafe { Box::from_raw(surface) });
    }
}

/// Computes the invariants of a surface.
///
/// # Safety
/// `surface` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn delsarte_surface_report(
    surface: *const DelsarteSurface,
    max_order: u64,
    out: *mut DelsarteReport,
) -> DelsarteStatus {
    if surface.is_null() || out.is_null() {
        return null();
    }
    // SAFETY: checked non-null; the caller guarantees a live handle.
    let matrix = unsafe { &(*surface).matrix }.clone();
    guard(move || {
        let r = picard_report(&matrix).map_err(fail)?;
        let group = CharacterGroup::new(&matrix).map_err(fail)?;
        let c = census(&group, max_order).map_err(fail)?;
        let report = DelsarteReport {
            degree: r.degree,
            order_l: r.order_l,
            order_l0: r.order_l0,
            lefschetz: r.lefschetz,
            betti2: r.betti2,
            picard: r.picard,
            hodge11: r.hodge11,
            maximal: r.maximal,
            decomposable: c.decomposable,
            regular: c.regular,
            exceptional: c.exceptional,
        };
        // SAFETY: `out` checked non-null.
        unsafe { *out = report };
        Ok(())
    })
}

/// Loads the shipped formula table.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delsarte_table_load(out: *mut *mut DelsarteTable) -> DelsarteStatus {
    if out.is_null() {
        return null();
    }
    guard(move || {
        let table = load_table().map_err(fail)?;
        // SAFETY: `out` checked non-null.
        unsafe { *out = Box::into_raw(Box::new(DelsarteTable { table })) };
        Ok(())
    })
}

/// Releases a table. Null is ignored.
///
/// # Safety
/// `table` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn delsarte_table_free(table: *mut DelsarteTable) {
    if !table.is_null() {
        // SAFETY: created by Box::into_raw in this library.
        drop(unsafe { Box::from_raw(table) });
    }
}

/// Value of the tabulated Picard formula of a case at degree `n`.
///
/// # Safety
/// `table` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn delsarte_table_evaluate(
    table: *const DelsarteTable,
    case_id: u32,
    n: i64,
    out: *mut i64,
) -> DelsarteStatus {
    if table.is_null() || out.is_null() {
        return null();
    }
    // SAFETY: checked non-null; the caller guarantees a live handle.
    let t = unsafe { &(*table).table };
    match t.case(case_id) {
        Ok(e) => {
            // SAFETY: `out` checked non-null.
            unsafe { *out = e.formula.evaluate(n) };
            DelsarteStatus::Ok
        }
        Err(err) => fail(err),
    }
}

/// Creates the surface of a catalog case at degree `n`.
///
/// # Safety
/// `table` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn delsarte_table_surface(
    table: *const DelsarteTable,
    case_id: u32,
    n: i64,
    out: *mut *mut DelsarteSurface,
) -> DelsarteStatus {
    if table.is_null() || out.is_null() {
        return null();
    }
    // SAFETY: checked non-null; the caller guarantees a live handle.
    let t = unsafe { &(*table).table };
    match t.case(case_id).and_then(|e| e.matrix(n)) {
        Ok(matrix) => {
            // SAFETY: `out` checked non-null.
            unsafe { *out = Box::into_raw(Box::new(DelsarteSurface { matrix })) };
            DelsarteStatus::Ok
        }
        Err(err) => fail(err),
    }
}

/// Labels the vector with coordinates `num[i]/den[i]` mod 1.
///
/// # Safety
/// `num` and `den` must point to 4 readable `int64_t`, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn delsarte_classify(
    num: *const i64,
    den: *const i64,
    max_order: u64,
    out: *mut DelsarteLabel,
) -> DelsarteStatus {
    if num.is_null() || den.is_null() || out.is_null() {
        return null();
    }
    // SAFETY: checked non-null; the caller guarantees 4 entries each.
    let (p, q) = unsafe { (std::slice::from_raw_parts(num, 4), std::slice::from_raw_parts(den, 4)) };
    let (p, q) = (<[i64; 4]>::try_from(p).unwrap(), <[i64; 4]>::try_from(q).unwrap());
    guard(move || {
        let mut c = [RationalMod1::ZERO; 4];
        for i in 0..4 {
            c[i] = RationalMod1::new(p[i], q[i]).map_err(fail)?;
        }
        let x = CharacterVector::new(c).map_err(fail)?;
        let label = match classify_with_bound(&x, max_order).map_err(fail)? {
            HodgeClassLabel::InLambda => DelsarteLabel::InLambda,
            HodgeClassLabel::InL0 => DelsarteLabel::InL0,
            HodgeClassLabel::Decomposable => DelsarteLabel::Decomposable,
            HodgeClassLabel::Regular => DelsarteLabel::Regular,
            HodgeClassLabel::Exceptional => DelsarteLabel::Exceptional,
        };
        // SAFETY: `out` checked non-null.
        unsafe { *out = label };
        Ok(())
    })
}

/// Number of exceptional elements of order at most `max_order`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn delsarte_exceptional_count(max_order: u64, out: *mut u64) -> DelsarteStatus {
    if out.is_null() {
        return null();
    }
    guard(move || {
        let set = build_exceptional_set(max_order).map_err(fail)?;
        // SAFETY: `out` checked non-null.
        unsafe { *out = set.len() as u64 };
        Ok(())
    })
}
