//! C interface. Hypergraphs are opaque heap handles released with
//! `ht_hypergraph_free`; every call returns an `HtStatus`, and the message
//! of the most recent failure on the calling thread is available from
//! `ht_last_error`. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use hypertight::extremal::emc_max_edges;
use hypertight::io::{emit_hypergraph, parse_hypergraph};
use hypertight::localstruct::fact::FACT_TRIPLES;
use hypertight::localstruct::{check_fact, f_spt};
use hypertight::matchcycle::{has_tight_hamilton, max_matching, SearchLimits, Verdict};
use hypertight::shifting::left_shift_closure;
use hypertight::{Error, Hypergraph};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HtStatus {
    Ok = 0,
    InvalidArgument = 1,
    Parse = 2,
    ContractViolation = 3,
    Overflow = 4,
    Io = 5,
    NullPointer = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Opaque hypergraph handle.
pub struct HtHypergraph {
    inner: Hypergraph,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> HtStatus {
    match e {
        Error::InvalidArgument(_) => HtStatus::InvalidArgument,
        Error::Parse { .. } => HtStatus::Parse,
        Error::ContractViolation(_) => HtStatus::ContractViolation,
        Error::Overflow => HtStatus::Overflow,
        Error::Io(_) => HtStatus::Io,
    }
}

fn fail(status: HtStatus, msg: impl Into<String>) -> HtStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, converting library errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), HtStatus>) -> HtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HtStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(HtStatus::Panic, "internal panic"),
    }
}

fn lib<T>(r: hypertight::Result<T>) -> Result<T, HtStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

fn null() -> HtStatus {
    fail(HtStatus::NullPointer, "null pointer argument")
}

unsafe fn graph<'a>(g: *const HtHypergraph) -> Result<&'a Hypergraph, HtStatus> {
    g.as_ref().map(|h| &h.inner).ok_or_else(null)
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), HtStatus> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

fn limits(seconds: f64) -> SearchLimits {
    if seconds > 0.0 && seconds.is_finite() {
        SearchLimits::with_time_limit(Duration::from_secs_f64(seconds))
    } else {
        SearchLimits::none()
    }
}

fn boxed(g: Hypergraph) -> *mut HtHypergraph {
    Box::into_raw(Box::new(HtHypergraph { inner: g }))
}

/// Copies `s` plus a NUL into `buf`; `needed` receives the full size
/// including the NUL. Returns `BufferTooSmall` if `cap` is insufficient.
unsafe fn copy_out(s: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> Result<(), HtStatus> {
    if !needed.is_null() {
        needed.write(s.len() + 1);
    }
    if cap < s.len() + 1 {
        return Err(fail(HtStatus::BufferTooSmall, "buffer too small"));
    }
    if buf.is_null() {
        return Err(null());
    }
    ptr::copy_nonoverlapping(s.as_ptr().cast::<c_char>(), buf, s.len());
    buf.add(s.len()).write(0);
    Ok(())
}

/// Message of the last failure on this thread (empty if none), copied into
/// `buf` as a NUL-terminated string.
///
/// # Safety
/// `buf` must be writable for `cap` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn ht_last_error(buf: *mut c_char, cap: usize, needed: *mut usize) -> HtStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    guard(|| copy_out(&msg, buf, cap, needed))
}

/// Parses the `.hg` text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_hypergraph_parse(text: *const c_char, out: *mut *mut HtHypergraph) -> HtStatus {
    guard(|| {
        if text.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(text).to_str().map_err(|_| fail(HtStatus::Parse, "text is not UTF-8"))?;
        let g = lib(parse_hypergraph(s))?;
        put(out, boxed(g))
    })
}

/// Builds a `k`-graph on `{1..n}` from `edge_count * k` vertex ids.
///
/// # Safety
/// `vertices` must point to `edge_count * k` readable ids (or be null when
/// `edge_count` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_hypergraph_new(
    k: usize,
    n: usize,
    vertices: *const u32,
    edge_count: usize,
    out: *mut *mut HtHypergraph,
) -> HtStatus {
    guard(|| {
        let flat: &[u32] = if edge_count == 0 {
            &[]
        } else if vertices.is_null() {
            return Err(null());
        } else {
            let len = edge_count.checked_mul(k).ok_or_else(|| fail(HtStatus::InvalidArgument, "size overflow"))?;
            std::slice::from_raw_parts(vertices, len)
        };
        if k == 0 {
            return Err(fail(HtStatus::InvalidArgument, "uniformity must be at least 1"));
        }
        let g = lib(Hypergraph::new(k, n, flat.chunks(k)))?;
        put(out, boxed(g))
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ht_hypergraph_free(g: *mut HtHypergraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Uniformity, vertex count and edge count.
///
/// # Safety
/// `g` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_hypergraph_shape(
    g: *const HtHypergraph,
    k: *mut usize,
    n: *mut usize,
    edges: *mut usize,
) -> HtStatus {
    guard(|| {
        let g = graph(g)?;
        put(k, g.k())?;
        put(n, g.n())?;
        put(edges, g.edge_count())
    })
}

/// Canonical `.hg` text.
///
/// # Safety
/// `g` must be a live handle; `buf` writable for `cap` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn ht_hypergraph_emit(
    g: *const HtHypergraph,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> HtStatus {
    guard(|| copy_out(&emit_hypergraph(graph(g)?), buf, cap, needed))
}

/// Tight component sizes in descending order. `count` receives the number
/// of components; at most `cap` sizes are written.
///
/// # Safety
/// `g` must be a live handle; `sizes` writable for `cap` entries (may be
/// null when `cap` is 0); `count` writable.
#[no_mangle]
pub unsafe extern "C" fn ht_tight_components(
    g: *const HtHypergraph,
    sizes: *mut usize,
    cap: usize,
    count: *mut usize,
) -> HtStatus {
    guard(|| {
        let comps = graph(g)?.tight_component_indices();
        put(count, comps.len())?;
        if comps.len() > cap {
            return Err(fail(HtStatus::BufferTooSmall, "size buffer too small"));
        }
        for (i, c) in comps.iter().enumerate() {
            sizes.add(i).write(c.len());
        }
        Ok(())
    })
}

/// Matching number; `optimal` is 0 when the time limit (seconds, 0 = none)
/// cut the search short.
///
/// # Safety
/// `g` must be a live handle; out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn ht_max_matching(
    g: *const HtHypergraph,
    time_limit: f64,
    size: *mut usize,
    optimal: *mut i32,
) -> HtStatus {
    guard(|| {
        let m = max_matching(graph(g)?, &limits(time_limit));
        put(size, m.matching.len())?;
        put(optimal, i32::from(m.optimal))
    })
}

/// Tight Hamilton cycle: `verdict` is 1 (yes), 0 (no) or -1 (unknown).
/// When found, the cycle is written to `cycle` (capacity `cap`, at least n).
///
/// # Safety
/// `g` must be a live handle; `cycle` writable for `cap` entries or null.
#[no_mangle]
pub unsafe extern "C" fn ht_tight_hamilton(
    g: *const HtHypergraph,
    time_limit: f64,
    verdict: *mut i32,
    cycle: *mut u32,
    cap: usize,
) -> HtStatus {
    guard(|| {
        let h = lib(has_tight_hamilton(graph(g)?, &limits(time_limit)))?;
        put(
            verdict,
            match h.verdict {
                Verdict::Yes => 1,
                Verdict::No => 0,
                Verdict::Unknown => -1,
            },
        )?;
        if let (Some(c), false) = (&h.certificate, cycle.is_null()) {
            if c.len() > cap {
                return Err(fail(HtStatus::BufferTooSmall, "cycle buffer too small"));
            }
            ptr::copy_nonoverlapping(c.as_ptr(), cycle, c.len());
        }
        Ok(())
    })
}

/// Left-shift closure as a new handle.
///
/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ht_left_shift_closure(
    g: *const HtHypergraph,
    out: *mut *mut HtHypergraph,
    sweeps: *mut usize,
) -> HtStatus {
    guard(|| {
        let c = left_shift_closure(graph(g)?);
        if !sweeps.is_null() {
            sweeps.write(c.sweeps);
        }
        put(out, boxed(c.result))
    })
}

/// `σ³(β³ + sβ² + pβ + t)` with `β = 1/σ - 3`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_f_spt(sigma: f64, s: f64, p: f64, t: f64, out: *mut f64) -> HtStatus {
    guard(|| put(out, lib(f_spt(sigma, s, p, t))?))
}

/// Checks the eleven listed `(s, p, t)` triples; `all_pass` receives 0 or 1.
///
/// # Safety
/// `all_pass` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_verify_fact(step: f64, tol: f64, all_pass: *mut i32) -> HtStatus {
    guard(|| {
        let r = lib(check_fact(&FACT_TRIPLES, step, tol))?;
        put(all_pass, i32::from(r.all_pass()))
    })
}

/// Largest 3-graph on `n` vertices with matching number at most `s`, and
/// the closed form it should equal.
///
/// # Safety
/// Out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ht_emc_max_edges(
    n: usize,
    s: usize,
    workers: usize,
    value: *mut usize,
    formula: *mut u64,
) -> HtStatus {
    guard(|| {
        let r = lib(emc_max_edges(n, s, workers))?;
        put(value, r.value)?;
        put(formula, r.formula as u64)
    })
}
