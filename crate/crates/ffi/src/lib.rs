//! C interface to the CKR reasoner.
//!
//! Every function returns a [`CkrStatus`]. On failure the message of the most
//! recent error on the calling thread is available from
//! [`ckr_last_error_message`]. Handles are opaque and owned by the caller,
//! who releases them with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fmt::Display;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::sync::Arc;

use ckr::engine::{compute_closure, instantiate_ruleset, ClosureOptions, ClosureResult, RegimeId};
use ckr::generator::{build_ts2, build_ts3};
use ckr::model::{assemble_repository, parse_assertion, parse_context, CkrRepository, CkrVocabulary};
use ckr::rdf::{load_dataset, load_str, write_string, Dataset, Format};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CkrStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Io = 3,
    Parse = 4,
    InvalidRepository = 5,
    UnknownRegime = 6,
    InvalidArgument = 7,
    TimedOut = 8,
    Panic = 9,
}

/// A parsed dataset together with its repository structure.
pub struct CkrDataset {
    inner: Arc<Loaded>,
}

/// The materialized closure of a dataset under one regime.
pub struct CkrClosure {
    source: Arc<Loaded>,
    result: ClosureResult,
}

struct Loaded {
    dataset: Dataset,
    repo: CkrRepository,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(CkrStatus, String);

impl Failure {
    fn new(status: CkrStatus, e: impl Display) -> Self {
        Failure(status, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Outcome) -> CkrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CkrStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal error: {msg}"));
            CkrStatus::Panic
        }
    }
}

unsafe fn arg<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(CkrStatus::NullArgument, format!("{name} is null")))
}

unsafe fn out_arg<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure::new(CkrStatus::NullArgument, format!("{name} is null")))
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(CkrStatus::NullArgument, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::new(CkrStatus::InvalidUtf8, format!("{name}: {e}")))
}

fn into_dataset(dataset: Dataset) -> Result<*mut CkrDataset, Failure> {
    let repo = assemble_repository(&dataset, &CkrVocabulary::default())
        .map_err(|e| Failure::new(CkrStatus::InvalidRepository, e))?;
    Ok(Box::into_raw(Box::new(CkrDataset {
        inner: Arc::new(Loaded { dataset, repo }),
    })))
}

fn c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| Failure::new(CkrStatus::InvalidArgument, e))
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ckr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn ckr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses `len` bytes of TriG from `text`.
///
/// # Safety
/// `text` must point to `len` readable bytes and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ckr_dataset_from_trig(text: *const u8, len: usize, out: *mut *mut CkrDataset) -> CkrStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        if text.is_null() {
            return Err(Failure::new(CkrStatus::NullArgument, "text is null"));
        }
        let bytes = std::slice::from_raw_parts(text, len);
        let source = std::str::from_utf8(bytes).map_err(|e| Failure::new(CkrStatus::InvalidUtf8, e))?;
        let dataset = load_str(source, Format::TriG).map_err(|e| Failure::new(CkrStatus::Parse, e))?;
        *out = into_dataset(dataset)?;
        Ok(())
    })
}

/// Reads a TriG or Turtle file, chosen by extension.
///
/// # Safety
/// `path` must be a nul-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ckr_dataset_from_path(path: *const c_char, out: *mut *mut CkrDataset) -> CkrStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let path = Path::new(str_arg(path, "path")?);
        let file =
            std::fs::File::open(path).map_err(|e| Failure::new(CkrStatus::Io, format!("{}: {e}", path.display())))?;
        let dataset = load_dataset(std::io::BufReader::new(file), Format::from_path(path))
            .map_err(|e| Failure::new(CkrStatus::Parse, e))?;
        *out = into_dataset(dataset)?;
        Ok(())
    })
}

/// Builds the propagation fixture with `n` contexts, `k` connections per
/// context and `m` individuals. `replicated` selects the variant that copies
/// facts instead of using eval axioms.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ckr_dataset_propagation(
    n: usize,
    k: usize,
    m: usize,
    replicated: bool,
    out: *mut *mut CkrDataset,
) -> CkrStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let built = if replicated {
            build_ts3(n, k, m)
        } else {
            build_ts2(n, k, m)
        };
        let dataset = built.map_err(|e| Failure::new(CkrStatus::InvalidArgument, e))?;
        *out = into_dataset(dataset)?;
        Ok(())
    })
}

/// Number of quads in the dataset, or 0 for null.
///
/// # Safety
/// `dataset` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ckr_dataset_quad_count(dataset: *const CkrDataset) -> usize {
    dataset.as_ref().map_or(0, |d| d.inner.dataset.len())
}

/// Number of knowledge modules in the dataset, or 0 for null.
///
/// # Safety
/// `dataset` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ckr_dataset_module_count(dataset: *const CkrDataset) -> usize {
    dataset.as_ref().map_or(0, |d| d.inner.repo.modules.len())
}

/// # Safety
/// `dataset` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ckr_dataset_free(dataset: *mut CkrDataset) {
    if !dataset.is_null() {
        drop(Box::from_raw(dataset));
    }
}

/// Materializes the closure of `dataset` under `regime` (one of
/// `ckr-rdfs-global`, `ckr-rdfs-local`, `ckr-owl-global`, `ckr-owl-local`)
/// within `timeout_ms`. Returns `TimedOut` without a handle when the budget
/// runs out.
///
/// # Safety
/// `dataset` must be a live handle, `regime` a nul-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ckr_closure_compute(
    dataset: *const CkrDataset,
    regime: *const c_char,
    timeout_ms: u64,
    out: *mut *mut CkrClosure,
) -> CkrStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let dataset = arg(dataset, "dataset")?;
        let id: RegimeId = str_arg(regime, "regime")?
            .parse()
            .map_err(|e| Failure::new(CkrStatus::UnknownRegime, e))?;
        let opts = ClosureOptions {
            budget_ms: timeout_ms,
            parallel: false,
        };
        let result = compute_closure(&dataset.inner.repo, &instantiate_ruleset(id), &opts);
        if result.timed_out {
            return Err(Failure::new(
                CkrStatus::TimedOut,
                format!("closure exceeded {timeout_ms} ms"),
            ));
        }
        *out = Box::into_raw(Box::new(CkrClosure {
            source: Arc::clone(&dataset.inner),
            result,
        }));
        Ok(())
    })
}

/// Facts added by the closure, or 0 for null.
///
/// # Safety
/// `closure` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ckr_closure_inferred_count(closure: *const CkrClosure) -> usize {
    closure.as_ref().map_or(0, |c| c.result.inferred_count)
}

/// Facts obtained from the asserted input, or 0 for null.
///
/// # Safety
/// `closure` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ckr_closure_asserted_count(closure: *const CkrClosure) -> usize {
    closure.as_ref().map_or(0, |c| c.result.asserted_count)
}

/// Quads that the closure adds to the inference graphs, or 0 for null.
///
/// # Safety
/// `closure` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ckr_closure_inferred_quad_count(closure: *const CkrClosure) -> usize {
    closure.as_ref().map_or(0, |c| c.result.inferred_quads().len())
}

/// Wall time of the closure in milliseconds, or 0 for null.
///
/// # Safety
/// `closure` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ckr_closure_millis(closure: *const CkrClosure) -> f64 {
    closure.as_ref().map_or(0.0, |c| c.result.elapsed_millis())
}

/// Number of contexts (including the global one) found inconsistent.
///
/// # Safety
/// `closure` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ckr_closure_inconsistent_count(closure: *const CkrClosure) -> usize {
    closure.as_ref().map_or(0, |c| c.result.inconsistent_contexts.len())
}

/// Writes the input dataset plus its inference graphs as TriG into a new
/// string that the caller releases with [`ckr_string_free`].
///
/// # Safety
/// `closure` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ckr_closure_to_trig(closure: *const CkrClosure, out: *mut *mut c_char) -> CkrStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let closure = arg(closure, "closure")?;
        let closed = closure.result.closed_dataset(&closure.source.dataset);
        let text = write_string(&closed, Format::TriG).map_err(|e| Failure::new(CkrStatus::Io, e))?;
        *out = c_string(text)?;
        Ok(())
    })
}

/// Decides whether `assertion`, one Turtle triple such as `:x a :D1`, holds
/// in `context`, given as `<iri>` or a prefixed name such as `:c0`.
///
/// # Safety
/// `closure` must be a live handle, `context` and `assertion` nul-terminated
/// strings and `holds` writable.
#[no_mangle]
pub unsafe extern "C" fn ckr_closure_entails(
    closure: *const CkrClosure,
    context: *const c_char,
    assertion: *const c_char,
    holds: *mut bool,
) -> CkrStatus {
    guard(|| {
        let holds = out_arg(holds, "holds")?;
        *holds = false;
        let closure = arg(closure, "closure")?;
        let c = parse_context(str_arg(context, "context")?).map_err(|e| Failure::new(CkrStatus::InvalidArgument, e))?;
        let a = parse_assertion(str_arg(assertion, "assertion")?)
            .map_err(|e| Failure::new(CkrStatus::InvalidArgument, e))?;
        *holds = closure
            .result
            .entails(&closure.source.repo, &a, &c)
            .map_err(|e| Failure::new(CkrStatus::InvalidArgument, e))?;
        Ok(())
    })
}

/// # Safety
/// `closure` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ckr_closure_free(closure: *mut CkrClosure) {
    if !closure.is_null() {
        drop(Box::from_raw(closure));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ckr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
