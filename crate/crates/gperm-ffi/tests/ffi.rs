//! Exercise the C ABI from Rust: handle lifecycle, out-parameters,
//! status codes, and null handling.

use std::ffi::{CStr, CString};
use std::ptr;

use gperm_ffi::*;

fn parse(text: &str) -> *mut GpGraph {
    let c = CString::new(text).unwrap();
    let mut g: *mut GpGraph = ptr::null_mut();
    let status = unsafe { gp_graph_parse_edgelist(c.as_ptr(), &mut g) };
    assert_eq!(status, GpStatus::Ok);
    assert!(!g.is_null());
    g
}

#[test]
fn parse_compute_free_round_trip() {
    let g = parse("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    unsafe {
        assert_eq!(gp_graph_vertex_count(g), 4);
        assert_eq!(gp_graph_edge_count(g), 6);
        let (mut k, mut modulus, mut raw, mut canonical) = (0u64, 0u64, 9u64, 9u64);
        let status = gp_graph_permanent(g, &mut k, &mut modulus, &mut raw, &mut canonical);
        assert_eq!(status, GpStatus::Ok);
        assert_eq!((k, modulus, raw, canonical), (2, 3, 0, 0));
        // out-pointers may be omitted
        assert_eq!(
            gp_graph_permanent(
                g,
                ptr::null_mut(),
                ptr::null_mut(),
                ptr::null_mut(),
                ptr::null_mut()
            ),
            GpStatus::Ok
        );
        gp_graph_free(g);
    }
}

#[test]
fn graph6_parsing_and_canonical_form() {
    let c = CString::new("D~{").unwrap();
    let mut g: *mut GpGraph = ptr::null_mut();
    unsafe {
        assert_eq!(gp_graph_parse_graph6(c.as_ptr(), &mut g), GpStatus::Ok);
        assert_eq!(gp_graph_vertex_count(g), 5);
        assert_eq!(gp_graph_edge_count(g), 10);

        let mut s: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(gp_canonical_form(g, &mut s), GpStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "D~{");
        gp_string_free(s);
        gp_graph_free(g);
    }
}

#[test]
fn status_codes_for_bad_inputs() {
    unsafe {
        let mut g: *mut GpGraph = ptr::null_mut();
        // null text and null out-pointer
        assert_eq!(
            gp_graph_parse_edgelist(ptr::null(), &mut g),
            GpStatus::NullArgument
        );
        let c = CString::new("2 1\n0 1\n").unwrap();
        assert_eq!(
            gp_graph_parse_edgelist(c.as_ptr(), ptr::null_mut()),
            GpStatus::NullArgument
        );
        // malformed text
        let c = CString::new("not a graph").unwrap();
        assert_eq!(gp_graph_parse_edgelist(c.as_ptr(), &mut g), GpStatus::Parse);

        // a precondition failure after a clean parse: K5 is unbalanced
        let k5 = CString::new("D~{").unwrap();
        assert_eq!(gp_graph_parse_graph6(k5.as_ptr(), &mut g), GpStatus::Ok);
        assert_eq!(
            gp_graph_permanent(
                g,
                ptr::null_mut(),
                ptr::null_mut(),
                ptr::null_mut(),
                ptr::null_mut()
            ),
            GpStatus::Precondition
        );
        gp_graph_free(g);

        // null handles are refused or ignored
        assert_eq!(
            gp_graph_permanent(
                ptr::null(),
                ptr::null_mut(),
                ptr::null_mut(),
                ptr::null_mut(),
                ptr::null_mut()
            ),
            GpStatus::NullArgument
        );
        assert_eq!(gp_graph_vertex_count(ptr::null()), 0);
        gp_graph_free(ptr::null_mut());
        gp_string_free(ptr::null_mut());
    }
}

#[test]
fn orientation_queries_match_the_library() {
    unsafe {
        let k4 = parse("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
        let mut exists = 7i32;
        assert_eq!(
            gp_modulo_orientation_exists(k4, 3, &mut exists),
            GpStatus::Ok
        );
        assert_eq!(exists, 0);

        let mut json: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(gp_certificate_json(k4, 3, &mut json), GpStatus::Absent);
        assert!(json.is_null());
        gp_graph_free(k4);

        let w4 = parse("5 8\n0 1\n0 2\n0 3\n0 4\n1 2\n2 3\n3 4\n4 1\n");
        let mut exists = 0i32;
        assert_eq!(
            gp_modulo_orientation_exists(w4, 3, &mut exists),
            GpStatus::Ok
        );
        assert_eq!(exists, 1);

        assert_eq!(gp_certificate_json(w4, 3, &mut json), GpStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap();
        let value: serde_json::Value = serde_json::from_str(text).unwrap();
        assert_eq!(value["modulus"], 3);
        assert_eq!(value["residue"], 1);
        gp_string_free(json);
        gp_graph_free(w4);
    }
}

#[test]
fn status_messages_are_static_strings() {
    for status in [
        GpStatus::Ok,
        GpStatus::Parse,
        GpStatus::Precondition,
        GpStatus::Internal,
        GpStatus::Absent,
        GpStatus::Bound,
        GpStatus::NullArgument,
    ] {
        let msg = gp_status_message(status);
        assert!(!msg.is_null());
        assert!(!unsafe { CStr::from_ptr(msg) }.to_str().unwrap().is_empty());
    }
}

#[test]
fn reference_header_covers_every_export() {
    let header = include_str!("../include/gperm.h");
    for symbol in [
        "gp_graph_parse_edgelist",
        "gp_graph_parse_graph6",
        "gp_graph_free",
        "gp_graph_vertex_count",
        "gp_graph_edge_count",
        "gp_graph_permanent",
        "gp_canonical_form",
        "gp_modulo_orientation_exists",
        "gp_certificate_json",
        "gp_string_free",
        "gp_status_message",
    ] {
        assert!(header.contains(symbol), "missing {symbol}");
    }
    for constant in [
        "GP_STATUS_OK",
        "GP_STATUS_ABSENT",
        "GP_STATUS_NULL_ARGUMENT",
    ] {
        assert!(header.contains(constant), "missing {constant}");
    }
}
