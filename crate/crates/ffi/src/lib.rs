//! C ABI over `tklwb`.
//!
//! Every function returns a [`TklwbStatus`]. On failure the message is
//! available from [`tklwb_last_error`] on the same thread. Strings handed out
//! by the library are NUL-terminated UTF-8 and must be released with
//! [`tklwb_string_free`]. A [`TklwbSystem`] memoizes results and must not be
//! used from two threads at once.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tklwb::dump::dump;
use tklwb::module::{h_sigma, TklTable};
use tklwb::positivity::{p_plus_minus, verify, Bounds, Check};
use tklwb::word::DEFAULT_CAP;
use tklwb::{CoxeterSpec, Error};

/// Result codes. The first five agree with the command line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TklwbStatus {
    Ok = 0,
    /// A verification sweep found violations; its report is still returned.
    Violations = 1,
    InvalidArgument = 2,
    Internal = 3,
    ResourceLimit = 4,
    NullPointer = 5,
    Panic = 6,
}

/// A Coxeter system with its memo tables.
pub struct TklwbSystem {
    table: TklTable,
    cap: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(TklwbStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e.exit_code() {
            3 => TklwbStatus::Internal,
            4 => TklwbStatus::ResourceLimit,
            _ => TklwbStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(TklwbStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<TklwbStatus, Fail>) -> TklwbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            set_error("");
            s
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&msg);
            TklwbStatus::Panic
        }
    }
}

unsafe fn arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(TklwbStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn system<'a>(p: *mut TklwbSystem) -> Result<&'a mut TklwbSystem, Fail> {
    p.as_mut().ok_or_else(|| null("system"))
}

unsafe fn give(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|e| Fail(TklwbStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// The library version as a static string.
#[no_mangle]
pub extern "C" fn tklwb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or an empty string.
/// Valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn tklwb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tklwb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a system on `gens` generators with diagram involution `star`
/// (`"id"` or swaps such as `"(a b)(c d)"`).
///
/// # Safety
/// `star` must be a valid C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tklwb_system_new(
    gens: usize,
    star: *const c_char,
    out: *mut *mut TklwbSystem,
) -> TklwbStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let spec = CoxeterSpec::with_star_literal(gens, arg(star, "star")?)?;
        let sys = TklwbSystem {
            table: TklTable::new(spec),
            cap: DEFAULT_CAP,
        };
        *out = Box::into_raw(Box::new(sys));
        Ok(TklwbStatus::Ok)
    })
}

/// # Safety
/// `sys` must be null or a handle from [`tklwb_system_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tklwb_system_free(sys: *mut TklwbSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Largest enumeration size for sweeps and dumps.
///
/// # Safety
/// `sys` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tklwb_system_set_cap(sys: *mut TklwbSystem, cap: usize) -> TklwbStatus {
    guard(|| {
        system(sys)?.cap = cap;
        Ok(TklwbStatus::Ok)
    })
}

/// `P_{y,w}` as text.
///
/// # Safety
/// `sys` must be a live handle, `y` and `w` valid C strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tklwb_kl(
    sys: *mut TklwbSystem,
    y: *const c_char,
    w: *const c_char,
    out: *mut *mut c_char,
) -> TklwbStatus {
    guard(|| {
        let sys = system(sys)?;
        let spec = sys.table.spec().clone();
        let y = spec.parse_word(arg(y, "y")?)?;
        let w = spec.parse_word(arg(w, "w")?)?;
        let p = sys.table.kl.kl_fast(&y, &w)?;
        give(out, p.to_string())?;
        Ok(TklwbStatus::Ok)
    })
}

/// Twisted `P_{y,w}` as text. Both arguments must be twisted involutions.
///
/// # Safety
/// As for [`tklwb_kl`].
#[no_mangle]
pub unsafe extern "C" fn tklwb_tkl(
    sys: *mut TklwbSystem,
    y: *const c_char,
    w: *const c_char,
    out: *mut *mut c_char,
) -> TklwbStatus {
    guard(|| {
        let sys = system(sys)?;
        let spec = sys.table.spec().clone();
        let y = spec.parse_involution(arg(y, "y")?)?;
        let w = spec.parse_involution(arg(w, "w")?)?;
        let p = sys.table.tkl_fast(&y, &w)?;
        give(out, p.to_string())?;
        Ok(TklwbStatus::Ok)
    })
}

/// Half-sum and half-difference of the untwisted and twisted polynomials.
///
/// # Safety
/// As for [`tklwb_kl`], with two output pointers.
#[no_mangle]
pub unsafe extern "C" fn tklwb_pm(
    sys: *mut TklwbSystem,
    y: *const c_char,
    w: *const c_char,
    plus: *mut *mut c_char,
    minus: *mut *mut c_char,
) -> TklwbStatus {
    guard(|| {
        let sys = system(sys)?;
        let spec = sys.table.spec().clone();
        let y = spec.parse_involution(arg(y, "y")?)?;
        let w = spec.parse_involution(arg(w, "w")?)?;
        if plus.is_null() || minus.is_null() {
            return Err(null("output pointer"));
        }
        let pm = p_plus_minus(&mut sys.table, &y, &w)?;
        give(plus, pm.plus.to_string())?;
        give(minus, pm.minus.to_string())?;
        Ok(TklwbStatus::Ok)
    })
}

/// `C_x A_y` in the A-basis, one `z TAB poly` line per term.
///
/// # Safety
/// As for [`tklwb_kl`].
#[no_mangle]
pub unsafe extern "C" fn tklwb_structure(
    sys: *mut TklwbSystem,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> TklwbStatus {
    guard(|| {
        let sys = system(sys)?;
        let spec = sys.table.spec();
        let x = spec.parse_word(arg(x, "x")?)?;
        let y = spec.parse_involution(arg(y, "y")?)?;
        give(out, h_sigma(spec, &x, &y).to_text())?;
        Ok(TklwbStatus::Ok)
    })
}

/// `C_s A_w` in the A-basis, one `z TAB poly` line per term.
///
/// # Safety
/// As for [`tklwb_kl`].
#[no_mangle]
pub unsafe extern "C" fn tklwb_mult(
    sys: *mut TklwbSystem,
    s: *const c_char,
    w: *const c_char,
    out: *mut *mut c_char,
) -> TklwbStatus {
    guard(|| {
        let sys = system(sys)?;
        let spec = sys.table.spec().clone();
        let s_text = arg(s, "s")?;
        let s = spec.parse_word(s_text)?;
        if s.len() != 1 {
            return Err(Error::InvalidGenerator(s_text.into()).into());
        }
        let w = spec.parse_involution(arg(w, "w")?)?;
        let v = sys.table.cs_times_a(s.letters()[0], &w)?;
        give(out, v.to_text())?;
        Ok(TklwbStatus::Ok)
    })
}

/// Runs the sweep named `check` and writes its JSON report to `out`.
/// Returns `TKLWB_STATUS_VIOLATIONS` if the report is not clean.
///
/// # Safety
/// As for [`tklwb_kl`].
#[no_mangle]
pub unsafe extern "C" fn tklwb_verify(
    sys: *mut TklwbSystem,
    check: *const c_char,
    max_rho: usize,
    max_len: usize,
    out: *mut *mut c_char,
) -> TklwbStatus {
    guard(|| {
        let sys = system(sys)?;
        let check: Check = arg(check, "check")?.parse()?;
        let report = verify(
            sys.table.spec(),
            check,
            Bounds { max_rho, max_len },
            sys.cap,
        )?;
        give(out, report.to_json())?;
        Ok(if report.passed() {
            TklwbStatus::Ok
        } else {
            TklwbStatus::Violations
        })
    })
}

/// Full tables in the cache file format.
///
/// # Safety
/// `sys` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tklwb_dump(
    sys: *mut TklwbSystem,
    max_rho: usize,
    max_len: usize,
    out: *mut *mut c_char,
) -> TklwbStatus {
    guard(|| {
        let sys = system(sys)?;
        let text = dump(sys.table.spec(), Bounds { max_rho, max_len }, sys.cap)?;
        give(out, text)?;
        Ok(TklwbStatus::Ok)
    })
}
