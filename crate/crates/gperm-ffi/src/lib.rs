//! C ABI over the graph permanent library.
//!
//! Graphs are opaque handles created by the parse functions and released
//! with [`gp_graph_free`].  Every fallible call returns a [`GpStatus`];
//! results are written through out-pointers only when the status is
//! [`GpStatus::Ok`].  Strings returned through out-pointers are owned by
//! the caller and must be released with [`gp_string_free`].
//!
//! The committed header lives at `include/gperm.h`; the build script
//! regenerates a copy under `OUT_DIR` when cbindgen is available.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use gperm::canon::canonical_form;
use gperm::error::Error;
use gperm::flows::{alon_tarsi_certificate, find_modulo_orientation};
use gperm::graphs::Multigraph;
use gperm::invariant::graph_permanent;
use gperm::io::{parse_edgelist, parse_graph6};

/// Opaque graph handle.
pub struct GpGraph {
    inner: Multigraph,
}

/// Outcome of an FFI call; mirrors the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GpStatus {
    /// The call succeeded and out-parameters are valid.
    Ok = 0,
    /// The input text could not be parsed.
    Parse = 1,
    /// The graph violates a precondition of the operation.
    Precondition = 2,
    /// The library contradicted itself or panicked.
    Internal = 3,
    /// An exhaustive search proved the requested object absent.
    Absent = 4,
    /// A resource bound was reached before an answer.
    Bound = 5,
    /// A required pointer argument was null.
    NullArgument = 6,
}

fn status_of(e: &Error) -> GpStatus {
    match e {
        Error::Parse { .. } | Error::Io(_) | Error::Fixture { .. } => GpStatus::Parse,
        Error::SideTooLarge { .. } | Error::SearchBound { .. } | Error::Overflow => GpStatus::Bound,
        Error::Internal { .. } => GpStatus::Internal,
        _ => GpStatus::Precondition,
    }
}

/// Run `f`, turning panics into [`GpStatus::Internal`] instead of
/// unwinding across the FFI boundary.
fn guarded(f: impl FnOnce() -> GpStatus) -> GpStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(GpStatus::Internal)
}

/// # Safety
/// `text` must be a valid NUL-terminated string outliving `'a`.
unsafe fn text_arg<'a>(text: *const c_char) -> Result<&'a str, GpStatus> {
    if text.is_null() {
        return Err(GpStatus::NullArgument);
    }
    CStr::from_ptr(text).to_str().map_err(|_| GpStatus::Parse)
}

unsafe fn parse_into(
    text: *const c_char,
    out_graph: *mut *mut GpGraph,
    parse: impl Fn(&str) -> gperm::error::Result<Multigraph>,
) -> GpStatus {
    if out_graph.is_null() {
        return GpStatus::NullArgument;
    }
    let text = match text_arg(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    guarded(|| match parse(text) {
        Ok(inner) => {
            unsafe { *out_graph = Box::into_raw(Box::new(GpGraph { inner })) };
            GpStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Parse an edge-list description ("n m" header, one edge per line).
///
/// # Safety
/// `text` must be NUL-terminated; `out_graph` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gp_graph_parse_edgelist(
    text: *const c_char,
    out_graph: *mut *mut GpGraph,
) -> GpStatus {
    parse_into(text, out_graph, parse_edgelist)
}

/// Parse a graph6 line.
///
/// # Safety
/// `text` must be NUL-terminated; `out_graph` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gp_graph_parse_graph6(
    text: *const c_char,
    out_graph: *mut *mut GpGraph,
) -> GpStatus {
    parse_into(text, out_graph, parse_graph6)
}

/// Release a graph handle.  Null is ignored.
///
/// # Safety
/// `graph` must come from a parse function and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gp_graph_free(graph: *mut GpGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of vertices; 0 for a null handle.
///
/// # Safety
/// `graph` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn gp_graph_vertex_count(graph: *const GpGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.inner.vertex_count())
}

/// Number of edges; 0 for a null handle.
///
/// # Safety
/// `graph` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn gp_graph_edge_count(graph: *const GpGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.inner.edge_count())
}

/// Compute the invariant with the default conventions.
///
/// # Safety
/// `graph` must be a live handle; out-pointers must be valid or null
/// (null out-pointers are skipped).
#[no_mangle]
pub unsafe extern "C" fn gp_graph_permanent(
    graph: *const GpGraph,
    out_k: *mut u64,
    out_modulus: *mut u64,
    out_raw: *mut u64,
    out_canonical: *mut u64,
) -> GpStatus {
    let Some(g) = graph.as_ref() else {
        return GpStatus::NullArgument;
    };
    guarded(|| match graph_permanent(&g.inner) {
        Ok(gp) => {
            if !out_k.is_null() {
                unsafe { *out_k = gp.k as u64 };
            }
            if !out_modulus.is_null() {
                unsafe { *out_modulus = gp.modulus };
            }
            if !out_raw.is_null() {
                unsafe { *out_raw = gp.raw_residue };
            }
            if !out_canonical.is_null() {
                unsafe { *out_canonical = gp.canonical_residue };
            }
            GpStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

fn string_out(s: String, out_string: *mut *mut c_char) -> GpStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out_string = c.into_raw() };
            GpStatus::Ok
        }
        Err(_) => GpStatus::Internal,
    }
}

/// Canonical graph6 form of a simple graph (isomorphism invariant).
///
/// # Safety
/// `graph` must be a live handle; `out_string` must be valid.  The
/// result must be released with [`gp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn gp_canonical_form(
    graph: *const GpGraph,
    out_string: *mut *mut c_char,
) -> GpStatus {
    let Some(g) = graph.as_ref() else {
        return GpStatus::NullArgument;
    };
    if out_string.is_null() {
        return GpStatus::NullArgument;
    }
    guarded(|| match canonical_form(&g.inner) {
        Ok(form) => string_out(form, out_string),
        Err(e) => status_of(&e),
    })
}

/// 1 if an orientation with all vertex boundaries divisible by
/// `modulus` exists, 0 if exhaustion proved there is none.
///
/// # Safety
/// `graph` must be a live handle; `out_exists` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gp_modulo_orientation_exists(
    graph: *const GpGraph,
    modulus: u64,
    out_exists: *mut i32,
) -> GpStatus {
    let Some(g) = graph.as_ref() else {
        return GpStatus::NullArgument;
    };
    if out_exists.is_null() {
        return GpStatus::NullArgument;
    }
    guarded(|| match find_modulo_orientation(&g.inner, modulus) {
        Ok(found) => {
            unsafe { *out_exists = i32::from(found.is_some()) };
            GpStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// JSON description of a spanning-subgraph certificate for orientations
/// mod `modulus`.  Returns `Absent` when exhaustion proves none exists.
///
/// # Safety
/// `graph` must be a live handle; `out_json` must be valid.  The result
/// must be released with [`gp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn gp_certificate_json(
    graph: *const GpGraph,
    modulus: u64,
    out_json: *mut *mut c_char,
) -> GpStatus {
    let Some(g) = graph.as_ref() else {
        return GpStatus::NullArgument;
    };
    if out_json.is_null() {
        return GpStatus::NullArgument;
    }
    guarded(|| match alon_tarsi_certificate(&g.inner, modulus) {
        Ok(Some(cert)) => match serde_json::to_string(&cert) {
            Ok(json) => string_out(json, out_json),
            Err(_) => GpStatus::Internal,
        },
        Ok(None) => GpStatus::Absent,
        Err(e) => status_of(&e),
    })
}

/// Release a string returned by this library.  Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn gp_status_message(status: GpStatus) -> *const c_char {
    let msg: &'static CStr = match status {
        GpStatus::Ok => c"ok",
        GpStatus::Parse => c"input could not be parsed",
        GpStatus::Precondition => c"graph violates a precondition",
        GpStatus::Internal => c"internal error",
        GpStatus::Absent => c"proven absent by exhaustive search",
        GpStatus::Bound => c"resource bound reached before an answer",
        GpStatus::NullArgument => c"required pointer argument was null",
    };
    msg.as_ptr()
}
