//! C ABI over `gdom`.
//!
//! Graphs are opaque `GdomGraph` handles created by `gdom_graph_parse` and
//! released with `gdom_graph_free`. Every call returns a `GdomStatus`; on
//! failure `gdom_last_error` describes the problem for the calling thread.
//! Strings handed out by the library are freed with `gdom_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gdom::error::Error;
use gdom::format::{parse_graph, Format};
use gdom::graph::Multigraph;
use gdom::harness::{check, CheckParams, InequalityId, Verdict};
use gdom::relations::{check_domination, check_fractional_tiling, Decision};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GdomStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidGraph = 4,
    BoundExceeded = 5,
    UnknownId = 6,
    InvalidParameter = 7,
    Numerical = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GdomVerdict {
    Holds = 0,
    HoldsWithEquality = 1,
    Violated = 2,
    HypothesisFailed = 3,
    Inconclusive = 4,
}

/// Relation decisions. `Unknown` means an enumeration limit was hit.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GdomDecision {
    No = 0,
    Yes = 1,
    Unknown = 2,
}

/// Opaque graph handle.
pub struct GdomGraph(Multigraph);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> GdomStatus {
    match e {
        Error::Syntax { .. } | Error::UnsupportedFormat { .. } => GdomStatus::Parse,
        Error::Disconnected
        | Error::LoopInInput(_)
        | Error::VertexOutOfRange { .. }
        | Error::EmptyGraph
        | Error::InvalidEdge(_) => GdomStatus::InvalidGraph,
        Error::BoundExceeded { .. } | Error::PatternTooLarge { .. } => GdomStatus::BoundExceeded,
        Error::UnknownId(_) => GdomStatus::UnknownId,
        Error::NoConvergence(_) => GdomStatus::Numerical,
        _ => GdomStatus::InvalidParameter,
    }
}

/// Runs `f`, recording errors and turning panics into `Panic`.
fn guard(f: impl FnOnce() -> Result<(), (GdomStatus, String)>) -> GdomStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            GdomStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GdomStatus::Panic
        }
    }
}

fn lift(e: Error) -> (GdomStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn utf8<'a>(p: *const c_char) -> Result<&'a str, (GdomStatus, String)> {
    if p.is_null() {
        return Err((GdomStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (GdomStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn graph<'a>(p: *const GdomGraph) -> Result<&'a Multigraph, (GdomStatus, String)> {
    p.as_ref()
        .map(|g| &g.0)
        .ok_or((GdomStatus::NullPointer, "null graph handle".into()))
}

fn out_ptr<T>(p: *mut T) -> Result<(), (GdomStatus, String)> {
    if p.is_null() {
        Err((GdomStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .unwrap_or_default()
        .into_raw()
}

/// Message for the last failed call on this thread (empty after success).
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn gdom_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn gdom_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses `text` in `format` (`edge_list`, `graph6`, `json`; null means
/// edge list).
///
/// # Safety
/// `text` and `format` must be null or NUL-terminated; `out` must be valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn gdom_graph_parse(
    text: *const c_char,
    format: *const c_char,
    out: *mut *mut GdomGraph,
) -> GdomStatus {
    guard(|| {
        out_ptr(out)?;
        let t = utf8(text)?;
        let fmt = if format.is_null() {
            Format::EdgeList
        } else {
            utf8(format)?.parse().map_err(lift)?
        };
        let g = parse_graph(t, fmt).map_err(lift)?;
        *out = Box::into_raw(Box::new(GdomGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from `gdom_graph_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gdom_graph_free(g: *mut GdomGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gdom_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `g` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gdom_graph_vertex_count(
    g: *const GdomGraph,
    out: *mut usize,
) -> GdomStatus {
    guard(|| {
        out_ptr(out)?;
        *out = graph(g)?.n();
        Ok(())
    })
}

/// Number of edges counted with multiplicity.
///
/// # Safety
/// `g` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gdom_graph_edge_units(g: *const GdomGraph, out: *mut usize) -> GdomStatus {
    guard(|| {
        out_ptr(out)?;
        *out = graph(g)?.edge_units();
        Ok(())
    })
}

/// Spanning-tree count as a decimal string (free with `gdom_string_free`).
///
/// # Safety
/// `g` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gdom_spanning_trees(
    g: *const GdomGraph,
    out: *mut *mut c_char,
) -> GdomStatus {
    guard(|| {
        out_ptr(out)?;
        *out = owned_string(gdom::counting::count_spanning_trees(graph(g)?).to_string());
        Ok(())
    })
}

/// Normalised heat-kernel trace at time `t >= 0`.
///
/// # Safety
/// `g` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gdom_heat_trace(g: *const GdomGraph, t: f64, out: *mut f64) -> GdomStatus {
    guard(|| {
        out_ptr(out)?;
        *out = gdom::spectral::heat_trace(graph(g)?, t).map_err(lift)?;
        Ok(())
    })
}

fn decision<C>(d: &Decision<C>) -> GdomDecision {
    match d {
        Decision::Holds(_) => GdomDecision::Yes,
        Decision::Fails { .. } => GdomDecision::No,
        Decision::Inconclusive { .. } => GdomDecision::Unknown,
    }
}

/// Whether `g` dominates `h`.
///
/// # Safety
/// `g`, `h` must be live handles; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gdom_dominates(
    g: *const GdomGraph,
    h: *const GdomGraph,
    out: *mut GdomDecision,
) -> GdomStatus {
    guard(|| {
        out_ptr(out)?;
        *out = decision(&check_domination(graph(g)?, graph(h)?));
        Ok(())
    })
}

/// Whether `h` fractionally tiles `g`. When it does and `coverage` is not
/// null, the cover multiplicity `m` is written there as a decimal string.
///
/// # Safety
/// `g`, `h` must be live handles; `out` valid for writes; `coverage` null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gdom_fractionally_tiles(
    g: *const GdomGraph,
    h: *const GdomGraph,
    out: *mut GdomDecision,
    coverage: *mut *mut c_char,
) -> GdomStatus {
    guard(|| {
        out_ptr(out)?;
        let d = check_fractional_tiling(graph(g)?, graph(h)?);
        *out = decision(&d);
        if !coverage.is_null() {
            *coverage = match d.certificate() {
                Some(c) => owned_string(c.coverage.to_string()),
                None => ptr::null_mut(),
            };
        }
        Ok(())
    })
}

/// Evaluates inequality `id` on `(g, h)`; `h` may be null for ids that
/// take vertex sets instead. `params_json` is null or a JSON object with
/// keys `t_grid`, `xy_grid`, `functional`, `family`, `sets`, `hypothesis`,
/// `piece_weight_scale`. When `report_json` is not null it receives the full
/// report.
///
/// # Safety
/// Pointers must be null (where allowed) or valid as described above.
#[no_mangle]
pub unsafe extern "C" fn gdom_check(
    id: *const c_char,
    g: *const GdomGraph,
    h: *const GdomGraph,
    params_json: *const c_char,
    verdict: *mut GdomVerdict,
    report_json: *mut *mut c_char,
) -> GdomStatus {
    guard(|| {
        out_ptr(verdict)?;
        let id: InequalityId = utf8(id)?.parse().map_err(lift)?;
        let params = if params_json.is_null() {
            CheckParams::default()
        } else {
            let v: serde_json::Value = serde_json::from_str(utf8(params_json)?)
                .map_err(|e| (GdomStatus::InvalidParameter, format!("parameters: {e}")))?;
            CheckParams::from_json(&v).map_err(lift)?
        };
        let h = if h.is_null() { None } else { Some(graph(h)?) };
        let report = check(id, graph(g)?, h, &params).map_err(lift)?;
        *verdict = match report.verdict {
            Verdict::Holds => GdomVerdict::Holds,
            Verdict::HoldsWithEquality => GdomVerdict::HoldsWithEquality,
            Verdict::Violated => GdomVerdict::Violated,
            Verdict::HypothesisFailed => GdomVerdict::HypothesisFailed,
            Verdict::Inconclusive => GdomVerdict::Inconclusive,
        };
        if !report_json.is_null() {
            *report_json = owned_string(serde_json::to_string(&report).expect("report serializes"));
        }
        Ok(())
    })
}
