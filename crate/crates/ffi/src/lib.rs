//! C ABI over the xnum core: opaque graph and polynomial handles, status
//! codes, and a thread-local error message.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use xnum::frame::{build_frame, gamma, FrameParams};
use xnum::io::{parse_graph, serialize_graph, Document};
use xnum::planarity::is_planar;
use xnum::solver::{anchored_crossing_number_exact, crossing_number_exact, SolveOptions, SolveResult, SolveStatus};
use xnum::{Error, OmegaPoly};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XnumStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    Limit = 5,
    /// The solver stopped without proving optimality.
    Unsolved = 6,
    Panic = 7,
}

/// Graph document: graph, anchors, parts and annotations.
pub struct XnumGraph(Document);

/// Exact polynomial in ω.
pub struct XnumPoly(OmegaPoly);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> XnumStatus {
    match e {
        Error::Parse { .. } | Error::Json(_) => XnumStatus::Parse,
        Error::Limit(_) => XnumStatus::Limit,
        _ => XnumStatus::Invalid,
    }
}

/// Runs `f`, recording the message of any error or panic.
fn guard(f: impl FnOnce() -> Result<(), (XnumStatus, String)>) -> XnumStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => XnumStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            XnumStatus::Panic
        }
    }
}

fn fail(e: Error) -> (XnumStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (XnumStatus, String) {
    (XnumStatus::NullPointer, format!("{what} is null"))
}

fn give<T>(out: *mut *mut T, value: T) {
    // SAFETY: callers check `out` for null before calling.
    unsafe { *out = Box::into_raw(Box::new(value)) };
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn xnum_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a graph document in the JSON format.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xnum_graph_from_json(json: *const c_char, out: *mut *mut XnumGraph) -> XnumStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return Err(null("argument"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|e| (XnumStatus::InvalidUtf8, e.to_string()))?;
        give(out, XnumGraph(parse_graph(text).map_err(fail)?));
        Ok(())
    })
}

/// Builds the frame gadget F_k with symbolic weights.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xnum_frame_new(k: usize, out: *mut *mut XnumGraph) -> XnumStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let f = build_frame(FrameParams::symbolic(k)).map_err(fail)?;
        give(out, XnumGraph(f.document()));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from this library that was not freed.
#[no_mangle]
pub unsafe extern "C" fn xnum_graph_free(g: *mut XnumGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn xnum_graph_vertex_count(g: *const XnumGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.graph.vertex_count())
}

/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn xnum_graph_edge_count(g: *const XnumGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.graph.edge_count())
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xnum_graph_is_planar(g: *const XnumGraph, out: *mut bool) -> XnumStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = is_planar(&g.0.graph).is_some();
        Ok(())
    })
}

/// Serializes the document; free the result with `xnum_string_free`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xnum_graph_to_json(g: *const XnumGraph, out: *mut *mut c_char) -> XnumStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = CString::new(serialize_graph(&g.0)).expect("JSON has no nul bytes").into_raw();
        Ok(())
    })
}

fn options(node_limit: u64) -> SolveOptions {
    SolveOptions { node_limit: (node_limit > 0).then_some(node_limit), ..Default::default() }
}

fn optimal(r: SolveResult) -> Result<OmegaPoly, (XnumStatus, String)> {
    match (r.status, r.value) {
        (SolveStatus::Optimal, Some(v)) => Ok(v),
        (s, _) => Err((XnumStatus::Unsolved, format!("solver stopped with status {s:?}"))),
    }
}

/// Exact weighted crossing number, ignoring anchors. `node_limit` 0 means
/// unlimited.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xnum_solve_exact(g: *const XnumGraph, node_limit: u64, out: *mut *mut XnumPoly) -> XnumStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        give(out, XnumPoly(optimal(crossing_number_exact(&g.0.graph, &options(node_limit)))?));
        Ok(())
    })
}

/// Exact anchored crossing number. `node_limit` 0 means unlimited.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xnum_solve_anchored(g: *const XnumGraph, node_limit: u64, out: *mut *mut XnumPoly) -> XnumStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let a = g.0.anchored().map_err(fail)?;
        give(out, XnumPoly(optimal(anchored_crossing_number_exact(&a, &options(node_limit)).map_err(fail)?)?));
        Ok(())
    })
}

/// The closed form γ(k).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xnum_gamma(k: usize, out: *mut *mut XnumPoly) -> XnumStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if k < 2 {
            return Err((XnumStatus::Invalid, format!("k must be at least 2, got {k}")));
        }
        give(out, XnumPoly(gamma(k)));
        Ok(())
    })
}

/// Text form, e.g. `2*w^90 - w^89`; free with `xnum_string_free`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xnum_poly_to_string(p: *const XnumPoly, out: *mut *mut c_char) -> XnumStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("poly"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = CString::new(p.0.to_string()).expect("no nul bytes").into_raw();
        Ok(())
    })
}

/// Exact value at ω as a decimal fraction string; free with
/// `xnum_string_free`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn xnum_poly_eval(p: *const XnumPoly, omega: u64, out: *mut *mut c_char) -> XnumStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("poly"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = CString::new(p.0.eval_u64(omega).to_string()).expect("no nul bytes").into_raw();
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle from this library that was not freed.
#[no_mangle]
pub unsafe extern "C" fn xnum_poly_free(p: *mut XnumPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library that was not
/// freed.
#[no_mangle]
pub unsafe extern "C" fn xnum_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
