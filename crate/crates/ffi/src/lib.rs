//! C ABI over `vacuum-core`.
//!
//! Algebras are opaque handles created by `vacuum_algebra_new` and released
//! with `vacuum_algebra_free`. Every fallible call returns a `VacuumStatus`;
//! on failure the message is available from `vacuum_last_error` until the next
//! call on the same thread. Reports come back as JSON strings owned by the
//! caller and released with `vacuum_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use vacuum_core::cli::{render, run, CommandKind, Format, RunConfig};
use vacuum_core::rational::parse_rational;
use vacuum_core::rootsys::LieAlgebra;
use vacuum_core::singular::{gorelik_kac_not_simple, is_admissible};
use vacuum_core::slodowy::NilpotentSpec;
use vacuum_core::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VacuumStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidAlgebra = 4,
    CriticalLevel = 5,
    NotCritical = 6,
    NotNilpotent = 7,
    InvalidArgument = 8,
    Internal = 9,
    Panic = 10,
}

/// Opaque algebra handle.
pub struct VacuumAlgebra {
    inner: Arc<LieAlgebra>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> VacuumStatus {
    match e {
        Error::Parse { .. } => VacuumStatus::ParseError,
        Error::InvalidAlgebra(..) => VacuumStatus::InvalidAlgebra,
        Error::CriticalLevel | Error::CriticalRefused => VacuumStatus::CriticalLevel,
        Error::NotCritical(_) => VacuumStatus::NotCritical,
        Error::NotNilpotent | Error::ZeroNilpotent | Error::NoTriple => VacuumStatus::NotNilpotent,
        Error::Inconsistent(_) => VacuumStatus::Internal,
        _ => VacuumStatus::InvalidArgument,
    }
}

struct Failure(VacuumStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `f`, converting errors and panics into a status plus message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> VacuumStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VacuumStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            VacuumStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(
            VacuumStatus::NullPointer,
            format!("{what} is null"),
        ));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(VacuumStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn alg_arg<'a>(p: *const VacuumAlgebra) -> Result<&'a VacuumAlgebra, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(VacuumStatus::NullPointer, "algebra handle is null".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            VacuumStatus::NullPointer,
            "output pointer is null".into(),
        ));
    }
    out.write(value);
    Ok(())
}

fn config(command: CommandKind, alg: Option<&VacuumAlgebra>) -> RunConfig {
    RunConfig {
        command,
        algebra: alg.map(|a| a.inner.clone()),
        level: None,
        delta_max: None,
        nilpotent: NilpotentSpec::Regular,
        seed: vacuum_core::cli::DEFAULT_SEED,
        out: None,
        format: Format::Json,
    }
}

unsafe fn emit(cfg: &RunConfig, out: *mut *mut c_char) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            VacuumStatus::NullPointer,
            "output pointer is null".into(),
        ));
    }
    let report = run(cfg)?;
    let text = CString::new(render(&report, Format::Json)).expect("JSON has no nul");
    out.write(text.into_raw());
    Ok(())
}

fn delta_arg(delta_max: i64) -> Result<Option<i64>, Failure> {
    match delta_max {
        0 => Ok(None),
        d if d > 0 => Ok(Some(d)),
        d => Err(Failure(
            VacuumStatus::InvalidArgument,
            format!("delta_max must be positive or 0 for the default, got {d}"),
        )),
    }
}

/// Builds an algebra from a Cartan type such as `"A2"`.
///
/// # Safety
/// `spec` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vacuum_algebra_new(
    spec: *const c_char,
    out: *mut *mut VacuumAlgebra,
) -> VacuumStatus {
    guard(|| {
        let s = str_arg(spec, "spec")?;
        let inner = Arc::new(LieAlgebra::from_str_spec(s)?);
        write_out(out, Box::into_raw(Box::new(VacuumAlgebra { inner })))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `alg` must come from `vacuum_algebra_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vacuum_algebra_free(alg: *mut VacuumAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Dimension, rank and dual Coxeter number.
///
/// # Safety
/// `alg` must be a live handle; the output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn vacuum_algebra_info(
    alg: *const VacuumAlgebra,
    dim: *mut usize,
    rank: *mut usize,
    dual_coxeter: *mut i64,
) -> VacuumStatus {
    guard(|| {
        let a = &alg_arg(alg)?.inner;
        write_out(dim, a.dim)?;
        write_out(rank, a.rank)?;
        write_out(dual_coxeter, a.dual_coxeter)
    })
}

/// Level classification: whether `V^k(g)` fails to be simple, and whether
/// `k` is admissible.
///
/// # Safety
/// `alg` must be a live handle, `level` a NUL-terminated string such as
/// `"-1/2"`, and the output pointers valid.
#[no_mangle]
pub unsafe extern "C" fn vacuum_classify_level(
    alg: *const VacuumAlgebra,
    level: *const c_char,
    not_simple: *mut bool,
    admissible: *mut bool,
) -> VacuumStatus {
    guard(|| {
        let a = &alg_arg(alg)?.inner;
        let k = parse_rational(str_arg(level, "level")?)?;
        write_out(not_simple, gorelik_kac_not_simple(a, &k))?;
        write_out(admissible, is_admissible(a, &k))
    })
}

/// Singular vectors up to `delta_max` (0 picks a default by rank), as a JSON
/// report.
///
/// # Safety
/// `alg` must be a live handle, `level` NUL-terminated, `out` valid. The
/// returned string must be released with `vacuum_string_free`.
#[no_mangle]
pub unsafe extern "C" fn vacuum_find_singular(
    alg: *const VacuumAlgebra,
    level: *const c_char,
    delta_max: i64,
    out: *mut *mut c_char,
) -> VacuumStatus {
    guard(|| {
        let mut cfg = config(CommandKind::FindSingular, Some(alg_arg(alg)?));
        cfg.level = Some(parse_rational(str_arg(level, "level")?)?);
        cfg.delta_max = delta_arg(delta_max)?;
        emit(&cfg, out)
    })
}

/// Simplicity verdicts plus the singular-vector check, as a JSON report.
///
/// # Safety
/// Same contract as `vacuum_find_singular`.
#[no_mangle]
pub unsafe extern "C" fn vacuum_simple_check(
    alg: *const VacuumAlgebra,
    level: *const c_char,
    delta_max: i64,
    out: *mut *mut c_char,
) -> VacuumStatus {
    guard(|| {
        let mut cfg = config(CommandKind::SimpleCheck, Some(alg_arg(alg)?));
        cfg.level = Some(parse_rational(str_arg(level, "level")?)?);
        cfg.delta_max = delta_arg(delta_max)?;
        emit(&cfg, out)
    })
}

/// Critical-level witnesses up to `graded_max` translations (0 picks 4).
///
/// # Safety
/// `alg` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn vacuum_critical(
    alg: *const VacuumAlgebra,
    graded_max: i64,
    out: *mut *mut c_char,
) -> VacuumStatus {
    guard(|| {
        let mut cfg = config(CommandKind::Critical, Some(alg_arg(alg)?));
        cfg.delta_max = delta_arg(graded_max)?;
        emit(&cfg, out)
    })
}

/// sl₂-triple and slice data for `"regular"`, `"minimal"` or an explicit
/// element.
///
/// # Safety
/// `alg` must be a live handle, `nilpotent` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn vacuum_slodowy(
    alg: *const VacuumAlgebra,
    nilpotent: *const c_char,
    out: *mut *mut c_char,
) -> VacuumStatus {
    guard(|| {
        let a = alg_arg(alg)?;
        let spec = NilpotentSpec::parse(str_arg(nilpotent, "nilpotent")?);
        spec.element(&a.inner)?;
        let mut cfg = config(CommandKind::Slodowy, Some(a));
        cfg.nilpotent = spec;
        emit(&cfg, out)
    })
}

/// Seeded property suites.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn vacuum_selftest(seed: u64, out: *mut *mut c_char) -> VacuumStatus {
    guard(|| {
        let mut cfg = config(CommandKind::Selftest, None);
        cfg.seed = seed;
        emit(&cfg, out)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn vacuum_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library.
#[no_mangle]
pub extern "C" fn vacuum_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, static.
#[no_mangle]
pub extern "C" fn vacuum_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
