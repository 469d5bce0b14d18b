//! C ABI over the `walksnc` solver.
//!
//! Formulas and solve outcomes cross the boundary as opaque handles that the
//! caller releases with the matching `*_free` function. Every fallible call
//! returns a [`WsncStatus`]; on failure, [`wsnc_last_error`] describes the
//! most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;
use std::time::Duration;

use walksnc::bench::{compute_par10, compute_suc, verify_model, RunRecord};
use walksnc::cnf::{emit_dimacs, generate_uniform_ksat, parse_dimacs, read_dimacs_file, Formula};
use walksnc::pickers::DEFAULT_NOISE;
use walksnc::solver::{solve, SolveOutcome, SolveStatus, SolverConfig};
use walksnc::{Assignment, Error, PickStrategy};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WsncStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    IoError = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WsncStrategy {
    Separated = 0,
    NonCaching = 1,
    Caching = 2,
}

impl From<WsncStrategy> for PickStrategy {
    fn from(s: WsncStrategy) -> Self {
        match s {
            WsncStrategy::Separated => PickStrategy::Separated,
            WsncStrategy::NonCaching => PickStrategy::NonCaching,
            WsncStrategy::Caching => PickStrategy::Caching,
        }
    }
}

/// Solver settings. `timeout_s <= 0` means no wall-clock limit.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct WsncConfig {
    pub strategy: WsncStrategy,
    pub noise: f64,
    pub max_flips: u64,
    pub timeout_s: f64,
    pub seed: u64,
    pub restarts: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct WsncPickStats {
    pub picks: u64,
    pub visited_clauses: u64,
    pub zero_break_hits: u64,
    pub noise_picks: u64,
}

/// Opaque immutable formula. Safe to share between threads for concurrent
/// `wsnc_solve` calls.
pub struct WsncFormula {
    inner: Formula,
}

/// Opaque result of one `wsnc_solve` call.
pub struct WsncOutcome {
    inner: SolveOutcome,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(WsncStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) => WsncStatus::ParseError,
            Error::Io(_) => WsncStatus::IoError,
            Error::Instance { source, .. } => match **source {
                Error::Io(_) => WsncStatus::IoError,
                _ => WsncStatus::ParseError,
            },
            _ => WsncStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(WsncStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(WsncStatus::InvalidArgument, msg.into())
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> WsncStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => WsncStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            WsncStatus::Panic
        }
    }
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(format!("{what} is not valid UTF-8")))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn formula_ref<'a>(f: *const WsncFormula) -> Result<&'a Formula, Failure> {
    f.as_ref().map(|f| &f.inner).ok_or_else(|| null("formula"))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn boxed_formula(f: Formula) -> *mut WsncFormula {
    Box::into_raw(Box::new(WsncFormula { inner: f }))
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn wsnc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wsnc_formula_parse_dimacs(
    text: *const c_char,
    out: *mut *mut WsncFormula,
) -> WsncStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let f = parse_dimacs(c_str(text, "text")?).map_err(Error::from)?;
        *out = boxed_formula(f);
        Ok(())
    })
}

/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wsnc_formula_read_file(
    path: *const c_char,
    out: *mut *mut WsncFormula,
) -> WsncStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let f = read_dimacs_file(Path::new(c_str(path, "path")?))?;
        *out = boxed_formula(f);
        Ok(())
    })
}

/// Uniform random k-SAT with `num_clauses` clauses of `width` distinct
/// variables each.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wsnc_formula_generate(
    num_vars: usize,
    width: usize,
    num_clauses: usize,
    seed: u64,
    out: *mut *mut WsncFormula,
) -> WsncStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = boxed_formula(generate_uniform_ksat(num_vars, width, num_clauses, seed)?);
        Ok(())
    })
}

/// # Safety
/// `f` must be NULL or a live formula handle.
#[no_mangle]
pub unsafe extern "C" fn wsnc_formula_num_vars(f: *const WsncFormula) -> usize {
    f.as_ref().map_or(0, |f| f.inner.num_vars())
}

/// # Safety
/// `f` must be NULL or a live formula handle.
#[no_mangle]
pub unsafe extern "C" fn wsnc_formula_num_clauses(f: *const WsncFormula) -> usize {
    f.as_ref().map_or(0, |f| f.inner.num_clauses())
}

/// Writes a newly allocated DIMACS string to `out`; release it with
/// `wsnc_string_free`.
///
/// # Safety
/// `f` must be a live formula handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wsnc_formula_to_dimacs(f: *const WsncFormula, out: *mut *mut c_char) -> WsncStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let text = emit_dimacs(formula_ref(f)?);
        *out = CString::new(text).map_err(|e| invalid(e.to_string()))?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wsnc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `f` must be NULL or a live formula handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn wsnc_formula_free(f: *mut WsncFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wsnc_config_default(out: *mut WsncConfig) -> WsncStatus {
    guard(|| {
        let d = SolverConfig::default();
        *out_ptr(out, "out")? = WsncConfig {
            strategy: WsncStrategy::Separated,
            noise: DEFAULT_NOISE,
            max_flips: d.max_flips,
            timeout_s: 0.0,
            seed: d.seed,
            restarts: d.restarts,
        };
        Ok(())
    })
}

fn to_config(c: &WsncConfig) -> Result<SolverConfig, Failure> {
    let timeout = if c.timeout_s > 0.0 {
        Some(Duration::try_from_secs_f64(c.timeout_s).map_err(|e| invalid(e.to_string()))?)
    } else {
        None
    };
    let cfg = SolverConfig {
        strategy: c.strategy.into(),
        noise: c.noise,
        max_flips: c.max_flips,
        timeout,
        seed: c.seed,
        restarts: c.restarts,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Runs the solver. The outcome handle is written even when the result is
/// UNKNOWN; release it with `wsnc_outcome_free`.
///
/// # Safety
/// `f` must be a live formula handle, `cfg` readable, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wsnc_solve(
    f: *const WsncFormula,
    cfg: *const WsncConfig,
    out: *mut *mut WsncOutcome,
) -> WsncStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let formula = formula_ref(f)?;
        let cfg = to_config(cfg.as_ref().ok_or_else(|| null("cfg"))?)?;
        let outcome = solve(formula, &cfg)?;
        *out = Box::into_raw(Box::new(WsncOutcome { inner: outcome }));
        Ok(())
    })
}

/// # Safety
/// `o` must be NULL or a live outcome handle.
#[no_mangle]
pub unsafe extern "C" fn wsnc_outcome_is_sat(o: *const WsncOutcome) -> bool {
    o.as_ref().is_some_and(|o| o.inner.status == SolveStatus::Sat)
}

/// # Safety
/// `o` must be NULL or a live outcome handle.
#[no_mangle]
pub unsafe extern "C" fn wsnc_outcome_flips(o: *const WsncOutcome) -> u64 {
    o.as_ref().map_or(0, |o| o.inner.flips)
}

/// # Safety
/// `o` must be NULL or a live outcome handle.
#[no_mangle]
pub unsafe extern "C" fn wsnc_outcome_elapsed_s(o: *const WsncOutcome) -> f64 {
    o.as_ref().map_or(0.0, |o| o.inner.elapsed.as_secs_f64())
}

/// # Safety
/// `o` must be a live outcome handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wsnc_outcome_stats(o: *const WsncOutcome, out: *mut WsncPickStats) -> WsncStatus {
    guard(|| {
        let s = o.as_ref().ok_or_else(|| null("outcome"))?.inner.pick_stats;
        *out_ptr(out, "out")? = WsncPickStats {
            picks: s.picks,
            visited_clauses: s.visited_clauses,
            zero_break_hits: s.zero_break_hits,
            noise_picks: s.noise_picks,
        };
        Ok(())
    })
}

/// Copies the model into `values[0..len]` as 1 (true) / 0 (false) for
/// variables 1..=len. `len` must equal the formula's variable count.
/// Fails with `InvalidArgument` when the outcome is not SAT.
///
/// # Safety
/// `o` must be a live outcome handle; `values` must have room for `len`
/// bytes.
#[no_mangle]
pub unsafe extern "C" fn wsnc_outcome_model(
    o: *const WsncOutcome,
    values: *mut u8,
    len: usize,
) -> WsncStatus {
    guard(|| {
        let o = o.as_ref().ok_or_else(|| null("outcome"))?;
        let model = o.inner.model.as_ref().ok_or_else(|| invalid("outcome has no model"))?;
        if len != model.num_vars() {
            return Err(invalid(format!("buffer length {len}, model has {} variables", model.num_vars())));
        }
        if len == 0 {
            return Ok(());
        }
        if values.is_null() {
            return Err(null("values"));
        }
        let dst = std::slice::from_raw_parts_mut(values, len);
        for (d, &v) in dst.iter_mut().zip(model.values()) {
            *d = v as u8;
        }
        Ok(())
    })
}

/// # Safety
/// `o` must be NULL or a live outcome handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn wsnc_outcome_free(o: *mut WsncOutcome) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

/// Checks `values[0..len]` (nonzero = true, for variables 1..=len) against
/// every clause of `f`.
///
/// # Safety
/// `f` must be a live formula handle, `values` readable for `len` bytes,
/// `out_valid` writable.
#[no_mangle]
pub unsafe extern "C" fn wsnc_verify_model(
    f: *const WsncFormula,
    values: *const u8,
    len: usize,
    out_valid: *mut bool,
) -> WsncStatus {
    guard(|| {
        let out = out_ptr(out_valid, "out_valid")?;
        let formula = formula_ref(f)?;
        let vals = slice(values, len, "values")?;
        let a = Assignment::from_values(vals.iter().map(|&b| b != 0));
        *out = verify_model(formula, &a)?;
        Ok(())
    })
}

fn records(elapsed: &[f64], solved: &[u8]) -> Vec<RunRecord> {
    elapsed
        .iter()
        .zip(solved)
        .map(|(&t, &s)| RunRecord {
            instance: String::new(),
            seed: 0,
            status: if s != 0 { SolveStatus::Sat } else { SolveStatus::Unknown },
            elapsed_s: t,
            flips: 0,
            flips_per_sec: 0.0,
            mean_visited_per_pick: 0.0,
        })
        .collect()
}

/// Percentage of runs with `solved[i] != 0`.
///
/// # Safety
/// `solved` readable for `len` bytes; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wsnc_suc(solved: *const u8, len: usize, out: *mut f64) -> WsncStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let solved = slice(solved, len, "solved")?;
        *out = compute_suc(&records(&vec![0.0; len], solved))?;
        Ok(())
    })
}

/// Penalized average runtime: runs not solved within `cutoff` seconds count
/// as `10 * cutoff`.
///
/// # Safety
/// `elapsed` and `solved` readable for `len` items; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wsnc_par10(
    elapsed: *const f64,
    solved: *const u8,
    len: usize,
    cutoff: f64,
    out: *mut f64,
) -> WsncStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let elapsed = slice(elapsed, len, "elapsed")?;
        let solved = slice(solved, len, "solved")?;
        *out = compute_par10(&records(elapsed, solved), cutoff)?;
        Ok(())
    })
}
