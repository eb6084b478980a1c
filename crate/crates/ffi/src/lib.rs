//! C ABI over `scsort-core`.
//!
//! Conventions:
//! * Every fallible function returns an [`ScStatus`]; results go through
//!   out-pointers. On failure, [`sc_last_error_message`] describes the error.
//! * Patterns are passed as their decimal reading: `123`, `132`, `213`,
//!   `231`, `312` or `321`.
//! * Objects are opaque handles released with their matching `*_free`.
//!   Strings returned as `char *` are released with [`sc_string_free`].
//! * Panics never cross the boundary; they surface as `SC_STATUS_PANIC`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use scsort_core::sc_map as apply_map;
use scsort_core::verify::{parse_selection, render_json, run_claims};
use scsort_core::{
    construct, construct_preimages, cro, fertility_with, preimages, sc_trace, small_witness,
    spectrum, EnumerationOptions, EventKind, MachineTrace, Pattern3, Permutation, SpectrumTable,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    ResourceLimit = 3,
    BufferTooSmall = 4,
    OutOfRange = 5,
    Panic = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScEventKind {
    Push = 0,
    SigmaPop = 1,
    DrainPop = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScEvent {
    pub kind: ScEventKind,
    pub value: u32,
    pub step: usize,
}

/// Opaque permutation handle.
pub struct ScPermutation(Permutation);

/// Opaque sorted list of permutations.
pub struct ScPermutationList(Vec<ScPermutation>);

/// Opaque machine trace.
pub struct ScTrace(MachineTrace);

/// Opaque fertility table over all of `S_n`.
pub struct ScSpectrum(SpectrumTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(ScStatus, String);

impl From<scsort_core::Error> for Failure {
    fn from(e: scsort_core::Error) -> Self {
        let status = match e {
            scsort_core::Error::ResourceLimit { .. } => ScStatus::ResourceLimit,
            scsort_core::Error::InvalidInput(_) => ScStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard<F>(body: F) -> ScStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            ScStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            ScStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(ScStatus::NullPointer, format!("{what} is null"))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(ScStatus::InvalidInput, format!("{what} is not UTF-8")))
}

fn pattern(code: u32) -> Result<Pattern3, Failure> {
    code.to_string().parse::<Pattern3>().map_err(Failure::from)
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

fn list(perms: Vec<Permutation>) -> ScPermutationList {
    ScPermutationList(perms.into_iter().map(ScPermutation).collect())
}

fn options(prune: bool, force: bool) -> EnumerationOptions {
    EnumerationOptions { prune, force }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn sc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the text format: compact digits (`"52413"`) or entries separated
/// by spaces or commas (`"10 3 1 2 4 5 6 7 8 9"`).
#[no_mangle]
pub unsafe extern "C" fn sc_perm_parse(
    text: *const c_char,
    out: *mut *mut ScPermutation,
) -> ScStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let p: Permutation = read_str(text, "text")?.parse()?;
        *out = boxed(ScPermutation(p));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sc_perm_from_entries(
    entries: *const u32,
    len: usize,
    out: *mut *mut ScPermutation,
) -> ScStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        if entries.is_null() {
            return Err(null("entries"));
        }
        let v = std::slice::from_raw_parts(entries, len).to_vec();
        *out = boxed(ScPermutation(Permutation::new(v)?));
        Ok(())
    })
}

/// Length of the permutation, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn sc_perm_len(perm: *const ScPermutation) -> usize {
    perm.as_ref().map_or(0, |p| p.0.len())
}

/// Copies the entries into `buf`, which must hold at least
/// `sc_perm_len(perm)` values.
#[no_mangle]
pub unsafe extern "C" fn sc_perm_entries(
    perm: *const ScPermutation,
    buf: *mut u32,
    capacity: usize,
) -> ScStatus {
    guard(|| {
        let p = &borrow(perm, "perm")?.0;
        if buf.is_null() {
            return Err(null("buf"));
        }
        if capacity < p.len() {
            return Err(Failure(
                ScStatus::BufferTooSmall,
                format!("need {} slots, got {capacity}", p.len()),
            ));
        }
        ptr::copy_nonoverlapping(p.entries().as_ptr(), buf, p.len());
        Ok(())
    })
}

/// Text form of the permutation; free with [`sc_string_free`]. Null on a
/// null handle.
#[no_mangle]
pub unsafe extern "C" fn sc_perm_to_string(perm: *const ScPermutation) -> *mut c_char {
    match perm.as_ref() {
        Some(p) => c_string(p.0.to_string()),
        None => ptr::null_mut(),
    }
}

#[no_mangle]
pub unsafe extern "C" fn sc_perm_free(perm: *mut ScPermutation) {
    if !perm.is_null() {
        drop(Box::from_raw(perm));
    }
}

#[no_mangle]
pub unsafe extern "C" fn sc_map(
    sigma: u32,
    tau: *const ScPermutation,
    out: *mut *mut ScPermutation,
) -> ScStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let sigma = pattern(sigma)?;
        let tau = &borrow(tau, "tau")?.0;
        *out = boxed(ScPermutation(apply_map(sigma, tau)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sc_cro(
    sigma: u32,
    tau: *const ScPermutation,
    out: *mut usize,
) -> ScStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let sigma = pattern(sigma)?;
        *out = cro(sigma, &borrow(tau, "tau")?.0);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sc_trace_new(
    sigma: u32,
    tau: *const ScPermutation,
    out: *mut *mut ScTrace,
) -> ScStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let sigma = pattern(sigma)?;
        *out = boxed(ScTrace(sc_trace(sigma, &borrow(tau, "tau")?.0)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sc_trace_event_count(trace: *const ScTrace) -> usize {
    trace.as_ref().map_or(0, |t| t.0.events.len())
}

#[no_mangle]
pub unsafe extern "C" fn sc_trace_event(
    trace: *const ScTrace,
    index: usize,
    out: *mut ScEvent,
) -> ScStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let t = &borrow(trace, "trace")?.0;
        let e = t.events.get(index).ok_or_else(|| {
            Failure(
                ScStatus::OutOfRange,
                format!("event {index} of {}", t.events.len()),
            )
        })?;
        *out = ScEvent {
            kind: match e.kind {
                EventKind::Push => ScEventKind::Push,
                EventKind::SigmaPop => ScEventKind::SigmaPop,
                EventKind::DrainPop => ScEventKind::DrainPop,
            },
            value: e.value,
            step: e.step,
        };
        Ok(())
    })
}

/// Number of pattern pops in the trace; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn sc_trace_cro(trace: *const ScTrace) -> usize {
    trace.as_ref().map_or(0, |t| t.0.cro())
}

/// `PUSH v` / `POP_SIGMA v` / `POP_DRAIN v` lines, then `OUTPUT` and `CRO`.
#[no_mangle]
pub unsafe extern "C" fn sc_trace_to_string(trace: *const ScTrace) -> *mut c_char {
    match trace.as_ref() {
        Some(t) => c_string(t.0.to_text()),
        None => ptr::null_mut(),
    }
}

#[no_mangle]
pub unsafe extern "C" fn sc_trace_free(trace: *mut ScTrace) {
    if !trace.is_null() {
        drop(Box::from_raw(trace));
    }
}

#[no_mangle]
pub unsafe extern "C" fn sc_fertility(
    sigma: u32,
    pi: *const ScPermutation,
    prune: bool,
    force: bool,
    out: *mut u64,
) -> ScStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let sigma = pattern(sigma)?;
        *out = fertility_with(sigma, &borrow(pi, "pi")?.0, options(prune, force))?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sc_preimages(
    sigma: u32,
    pi: *const ScPermutation,
    prune: bool,
    force: bool,
    out: *mut *mut ScPermutationList,
) -> ScStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let sigma = pattern(sigma)?;
        let report = preimages(sigma, &borrow(pi, "pi")?.0, options(prune, force))?;
        *out = boxed(list(report.preimages.unwrap_or_default()));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sc_list_len(list: *const ScPermutationList) -> usize {
    list.as_ref().map_or(0, |l| l.0.len())
}

/// Borrowed element; valid while the list lives. Null when out of range.
#[no_mangle]
pub unsafe extern "C" fn sc_list_get(
    list: *const ScPermutationList,
    index: usize,
) -> *const ScPermutation {
    match list.as_ref().and_then(|l| l.0.get(index)) {
        Some(p) => p,
        None => ptr::null(),
    }
}

#[no_mangle]
pub unsafe extern "C" fn sc_list_free(list: *mut ScPermutationList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

#[no_mangle]
pub unsafe extern "C" fn sc_construct(
    sigma: u32,
    n: usize,
    out: *mut *mut ScPermutation,
) -> ScStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = boxed(ScPermutation(construct(pattern(sigma)?, n)?));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sc_construct_preimages(
    sigma: u32,
    n: usize,
    out: *mut *mut ScPermutationList,
) -> ScStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = boxed(list(construct_preimages(pattern(sigma)?, n)?));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sc_small_witness(
    sigma: u32,
    fertility: usize,
    out: *mut *mut ScPermutation,
) -> ScStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = boxed(ScPermutation(small_witness(pattern(sigma)?, fertility)?));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sc_spectrum_new(
    sigma: u32,
    n: usize,
    force: bool,
    out: *mut *mut ScSpectrum,
) -> ScStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = boxed(ScSpectrum(spectrum(pattern(sigma)?, n, force)?));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sc_spectrum_fertility_of(
    table: *const ScSpectrum,
    pi: *const ScPermutation,
    out: *mut u64,
) -> ScStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let t = &borrow(table, "table")?.0;
        let pi = &borrow(pi, "pi")?.0;
        *out = t.fertility_of(pi).ok_or_else(|| {
            Failure(
                ScStatus::InvalidInput,
                format!(
                    "permutation of length {} in a table for n = {}",
                    pi.len(),
                    t.n
                ),
            )
        })?;
        Ok(())
    })
}

/// Number of distinct fertility values in the histogram.
#[no_mangle]
pub unsafe extern "C" fn sc_spectrum_histogram_len(table: *const ScSpectrum) -> usize {
    table.as_ref().map_or(0, |t| t.0.histogram().len())
}

/// The `index`-th histogram row in ascending fertility order.
#[no_mangle]
pub unsafe extern "C" fn sc_spectrum_histogram_entry(
    table: *const ScSpectrum,
    index: usize,
    fertility: *mut u64,
    count: *mut u64,
) -> ScStatus {
    guard(|| {
        let fertility = out_ptr(fertility, "fertility")?;
        let count = out_ptr(count, "count")?;
        let t = &borrow(table, "table")?.0;
        let (f, c) = t.histogram().iter().nth(index).ok_or_else(|| {
            Failure(
                ScStatus::OutOfRange,
                format!("row {index} of {}", t.histogram().len()),
            )
        })?;
        *fertility = *f;
        *count = *c;
        Ok(())
    })
}

/// `{sigma, n, counts, histogram}` JSON; free with [`sc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sc_spectrum_to_json(table: *const ScSpectrum) -> *mut c_char {
    match table.as_ref().and_then(|t| t.0.to_json().ok()) {
        Some(s) => c_string(s),
        None => ptr::null_mut(),
    }
}

/// `permutation,fertility` CSV; free with [`sc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sc_spectrum_counts_csv(table: *const ScSpectrum) -> *mut c_char {
    let Some(t) = table.as_ref() else {
        return ptr::null_mut();
    };
    let mut buf = Vec::new();
    match t.0.write_counts_csv(&mut buf) {
        Ok(()) => c_string(String::from_utf8(buf).expect("csv of ASCII")),
        Err(_) => ptr::null_mut(),
    }
}

/// `fertility,count` CSV; free with [`sc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sc_spectrum_histogram_csv(table: *const ScSpectrum) -> *mut c_char {
    let Some(t) = table.as_ref() else {
        return ptr::null_mut();
    };
    let mut buf = Vec::new();
    match t.0.write_histogram_csv(&mut buf) {
        Ok(()) => c_string(String::from_utf8(buf).expect("csv of ASCII")),
        Err(_) => ptr::null_mut(),
    }
}

#[no_mangle]
pub unsafe extern "C" fn sc_spectrum_free(table: *mut ScSpectrum) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Runs the selected claims (`"all"` or comma-separated identifiers).
/// Writes the JSON report to `report_json` (free with [`sc_string_free`])
/// and whether every claim passed to `all_passed`.
#[no_mangle]
pub unsafe extern "C" fn sc_verify(
    max_n: usize,
    claims: *const c_char,
    report_json: *mut *mut c_char,
    all_passed: *mut bool,
) -> ScStatus {
    guard(|| {
        let report_json = out_ptr(report_json, "report_json")?;
        let all_passed = out_ptr(all_passed, "all_passed")?;
        let selection = parse_selection(read_str(claims, "claims")?)?;
        let results = run_claims(max_n, &selection)?;
        *all_passed = results.iter().all(|r| r.passed());
        *report_json = c_string(render_json(&results));
        Ok(())
    })
}
