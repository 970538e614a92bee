//! C ABI over the `folcoh` engine.
//!
//! Models and reports are opaque handles. Every fallible call returns a `FolStatus`;
//! on failure `fol_last_error` describes the most recent error on the calling
//! thread. Strings handed out by the library must be released with `fol_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use folcoh::cli::{execute, Action, Options, TheoryArg};
use folcoh::model::{bundled, parse_model, Model};
use folcoh::report::{serialize_report, Format, Report};
use folcoh::FolError;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FolStatus {
    Ok = 0,
    /// The command ran and its check failed; the report is still produced.
    CheckFailed = 1,
    Usage = 2,
    Parse = 3,
    Io = 4,
    InvalidModel = 5,
    Unsupported = 6,
    NullPointer = 7,
    InvalidUtf8 = 8,
    Internal = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FolCommand {
    Validate = 0,
    Cohomology = 1,
    Ddbar = 2,
    Froelicher = 3,
    Hodge = 4,
    Duality = 5,
    Kaehler = 6,
    Sweep = 7,
    Orient = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FolFormat {
    Text = 0,
    Json = 1,
    Csv = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FolTheory {
    All = 0,
    DeRham = 1,
    Dolbeault = 2,
    BottChern = 3,
    Aeppli = 4,
}

/// Command options. Null string pointers mean "not given".
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FolOptions {
    /// `s=<rational>`
    pub at: *const c_char,
    /// Comma-separated rational grid.
    pub grid: *const c_char,
    /// Grid value used as the semicontinuity reference.
    pub reference: *const c_char,
    pub trials: u32,
    pub seed: u64,
    pub theory: FolTheory,
}

/// Opaque parsed model.
pub struct FolModel {
    model: Model,
}

/// Opaque command result.
pub struct FolReport {
    report: Report,
    exit_code: i32,
    warnings: String,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &FolError) -> FolStatus {
    match e {
        FolError::Parse(_) => FolStatus::Parse,
        FolError::Io { .. } => FolStatus::Io,
        FolError::Usage(_) => FolStatus::Usage,
        FolError::InvalidModel { .. } | FolError::Integrability { .. } => FolStatus::InvalidModel,
        FolError::NotBigraded(_)
        | FolError::MissingFoliation
        | FolError::MissingMetric
        | FolError::MissingConjugate(_)
        | FolError::ParameterNotEvaluated => FolStatus::Unsupported,
        _ => FolStatus::Internal,
    }
}

fn fail(e: FolError) -> FolStatus {
    set_error(&e.to_string());
    status_of(&e)
}

/// Runs `f`, turning panics into `FolStatus::Panic`.
fn guarded(f: impl FnOnce() -> FolStatus) -> FolStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            FolStatus::Panic
        }
    }
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn opt_str<'a>(p: *const c_char) -> Result<Option<&'a str>, FolStatus> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p).to_str().map(Some).map_err(|_| {
        set_error("argument is not valid UTF-8");
        FolStatus::InvalidUtf8
    })
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn req_str<'a>(p: *const c_char) -> Result<&'a str, FolStatus> {
    opt_str(p)?.ok_or_else(|| {
        set_error("null string argument");
        FolStatus::NullPointer
    })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Default options: no parameter value, no grid, 200 trials, seed 0, all theories.
#[no_mangle]
pub extern "C" fn fol_options_default() -> FolOptions {
    FolOptions {
        at: ptr::null(),
        grid: ptr::null(),
        reference: ptr::null(),
        trials: 200,
        seed: 0,
        theory: FolTheory::All,
    }
}

/// Parses model text.
///
/// # Safety
/// `text` is a NUL-terminated UTF-8 string; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn fol_model_parse(text: *const c_char, out: *mut *mut FolModel) -> FolStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return FolStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = match req_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_model(text) {
            Ok(model) => {
                *out = Box::into_raw(Box::new(FolModel { model }));
                FolStatus::Ok
            }
            Err(e) => fail(e.into()),
        }
    })
}

/// Loads a bundled model by name (`s6`, `hopf-family`, `torus1`, `torus2`, `s6-real`).
///
/// # Safety
/// `name` is a NUL-terminated UTF-8 string; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn fol_model_load_bundled(name: *const c_char, out: *mut *mut FolModel) -> FolStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return FolStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let name = match req_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match bundled::load(name) {
            Some(model) => {
                *out = Box::into_raw(Box::new(FolModel { model }));
                FolStatus::Ok
            }
            None => fail(FolError::Io { path: name.to_string(), message: "no such bundled model".into() }),
        }
    })
}

/// Name of the model; release with `fol_string_free`. Null if `model` is null.
///
/// # Safety
/// `model` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fol_model_name(model: *const FolModel) -> *mut c_char {
    match model.as_ref() {
        Some(m) => into_c_string(m.model.name().to_string()),
        None => ptr::null_mut(),
    }
}

/// Number of generators, or 0 if `model` is null.
///
/// # Safety
/// `model` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fol_model_generator_count(model: *const FolModel) -> usize {
    model.as_ref().map_or(0, |m| m.model.algebra().len())
}

/// # Safety
/// `model` is null or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fol_model_free(model: *mut FolModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Runs a command on a model. Returns `FolStatus::Ok` or `FolStatus::CheckFailed`
/// with a report in `*out`, or an error status with `*out` null.
///
/// # Safety
/// `model` is a live handle; `options` is null or points to valid options whose
/// strings are null or NUL-terminated; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn fol_run(
    model: *const FolModel,
    command: FolCommand,
    options: *const FolOptions,
    out: *mut *mut FolReport,
) -> FolStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return FolStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let Some(m) = model.as_ref() else {
            set_error("null model handle");
            return FolStatus::NullPointer;
        };
        let raw = options.as_ref().copied().unwrap_or_else(|| fol_options_default());
        let opts = match convert_options(&raw) {
            Ok(o) => o,
            Err(s) => return s,
        };
        let mut warnings = String::new();
        match execute(&m.model, action_of(command), &opts, &mut warnings) {
            Ok((exit_code, report)) => {
                *out = Box::into_raw(Box::new(FolReport { report, exit_code, warnings }));
                if exit_code == 0 {
                    FolStatus::Ok
                } else {
                    FolStatus::CheckFailed
                }
            }
            Err(e) => fail(e),
        }
    })
}

fn action_of(c: FolCommand) -> Action {
    match c {
        FolCommand::Validate => Action::Validate,
        FolCommand::Cohomology => Action::Cohomology,
        FolCommand::Ddbar => Action::Ddbar,
        FolCommand::Froelicher => Action::Froelicher,
        FolCommand::Hodge => Action::Hodge,
        FolCommand::Duality => Action::Duality,
        FolCommand::Kaehler => Action::Kaehler,
        FolCommand::Sweep => Action::Sweep,
        FolCommand::Orient => Action::Orient,
    }
}

unsafe fn convert_options(o: &FolOptions) -> Result<Options, FolStatus> {
    Ok(Options {
        at: opt_str(o.at)?.map(str::to_string),
        grid: opt_str(o.grid)?.map(str::to_string),
        reference: opt_str(o.reference)?.map(str::to_string),
        trials: o.trials as usize,
        seed: o.seed,
        theory: match o.theory {
            FolTheory::All => TheoryArg::All,
            FolTheory::DeRham => TheoryArg::Dr,
            FolTheory::Dolbeault => TheoryArg::Dolbeault,
            FolTheory::BottChern => TheoryArg::Bc,
            FolTheory::Aeppli => TheoryArg::Aeppli,
        },
    })
}

/// The CLI exit code the command would have produced (0 or 1), or -1 if `report` is null.
///
/// # Safety
/// `report` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fol_report_exit_code(report: *const FolReport) -> i32 {
    report.as_ref().map_or(-1, |r| r.exit_code)
}

/// Warnings emitted while running the command, one per line; release with
/// `fol_string_free`. Null if `report` is null.
///
/// # Safety
/// `report` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fol_report_warnings(report: *const FolReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => into_c_string(r.warnings.clone()),
        None => ptr::null_mut(),
    }
}

/// Serializes a report. `*out` receives a string to release with `fol_string_free`.
///
/// # Safety
/// `report` is a live handle; `out` points to writable storage.
#[no_mangle]
pub unsafe extern "C" fn fol_report_render(
    report: *const FolReport,
    format: FolFormat,
    out: *mut *mut c_char,
) -> FolStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output pointer");
            return FolStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let Some(r) = report.as_ref() else {
            set_error("null report handle");
            return FolStatus::NullPointer;
        };
        let format = match format {
            FolFormat::Text => Format::Text,
            FolFormat::Json => Format::Json,
            FolFormat::Csv => Format::Csv,
        };
        let bytes = serialize_report(&r.report, format);
        match String::from_utf8(bytes) {
            Ok(s) => {
                *out = into_c_string(s);
                FolStatus::Ok
            }
            Err(_) => {
                set_error("report is not valid UTF-8");
                FolStatus::Internal
            }
        }
    })
}

/// # Safety
/// `report` is null or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fol_report_free(report: *mut FolReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` is null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fol_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the most recent failure on this thread. The pointer stays valid until
/// the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn fol_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&FolError::Usage("x".into())), FolStatus::Usage);
        assert_eq!(status_of(&FolError::MissingMetric), FolStatus::Unsupported);
        assert_eq!(status_of(&FolError::NotASubspace), FolStatus::Internal);
    }

    #[test]
    fn last_error_is_thread_local() {
        set_error("here");
        let other = std::thread::spawn(|| unsafe { CStr::from_ptr(fol_last_error()).to_str().unwrap().to_string() })
            .join()
            .unwrap();
        assert_eq!(other, "");
        assert_eq!(unsafe { CStr::from_ptr(fol_last_error()) }.to_str().unwrap(), "here");
    }
}
