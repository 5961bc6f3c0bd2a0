use std::ffi::{CStr, CString};
use std::ptr;

use xnum::fixtures::fig1a;
use xnum::io::{serialize_graph, Document};
use xnum_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    xnum_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(xnum_last_error_message()).to_str().unwrap().to_owned()
}

#[test]
fn graph_round_trip_and_solve() {
    let json = CString::new(serialize_graph(&Document::from_anchored(&fig1a()))).unwrap();
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(xnum_graph_from_json(json.as_ptr(), &mut g), XnumStatus::Ok);
        assert!(xnum_graph_vertex_count(g) > 0);
        assert!(xnum_graph_edge_count(g) > 0);
        let mut planar = false;
        assert_eq!(xnum_graph_is_planar(g, &mut planar), XnumStatus::Ok);
        assert!(planar);

        let mut s = ptr::null_mut();
        assert_eq!(xnum_graph_to_json(g, &mut s), XnumStatus::Ok);
        let back = take(s);
        assert_eq!(back, json.to_str().unwrap());

        let mut p = ptr::null_mut();
        assert_eq!(xnum_solve_anchored(g, 0, &mut p), XnumStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(xnum_poly_to_string(p, &mut s), XnumStatus::Ok);
        assert_eq!(take(s), "2");
        xnum_poly_free(p);

        let mut p = ptr::null_mut();
        assert_eq!(xnum_solve_exact(g, 0, &mut p), XnumStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(xnum_poly_to_string(p, &mut s), XnumStatus::Ok);
        assert_eq!(take(s), "0");
        xnum_poly_free(p);
        xnum_graph_free(g);
    }
}

#[test]
fn gamma_and_frames() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(xnum_gamma(2, &mut p), XnumStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(xnum_poly_eval(p, 1000, &mut s), XnumStatus::Ok);
        assert_eq!(take(s), xnum::frame::gamma(2).eval_u64(1000).to_string());
        xnum_poly_free(p);

        assert_eq!(xnum_gamma(1, &mut p), XnumStatus::Invalid);
        assert!(last_error().contains("at least 2"));

        let mut g = ptr::null_mut();
        assert_eq!(xnum_frame_new(2, &mut g), XnumStatus::Ok);
        let expected = xnum::frame::build_frame(xnum::frame::FrameParams::symbolic(2)).unwrap().document();
        assert_eq!(xnum_graph_vertex_count(g), expected.graph.vertex_count());
        assert_eq!(xnum_graph_edge_count(g), expected.graph.edge_count());
        xnum_graph_free(g);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(xnum_graph_from_json(ptr::null(), &mut g), XnumStatus::NullPointer);
        let bad = CString::new("{not json").unwrap();
        assert_eq!(xnum_graph_from_json(bad.as_ptr(), &mut g), XnumStatus::Parse);
        assert!(!last_error().is_empty());
        let invalid = [0xffu8, 0];
        assert_eq!(xnum_graph_from_json(invalid.as_ptr().cast(), &mut g), XnumStatus::InvalidUtf8);
        assert!(g.is_null());

        let mut planar = false;
        assert_eq!(xnum_graph_is_planar(ptr::null(), &mut planar), XnumStatus::NullPointer);
        assert_eq!(xnum_graph_vertex_count(ptr::null()), 0);
        xnum_graph_free(ptr::null_mut());
        xnum_poly_free(ptr::null_mut());
        xnum_string_free(ptr::null_mut());
    }
}

#[test]
fn node_limit_reports_unsolved() {
    let json = CString::new(serialize_graph(&Document::from_anchored(&fig1a()))).unwrap();
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(xnum_graph_from_json(json.as_ptr(), &mut g), XnumStatus::Ok);
        let mut p = ptr::null_mut();
        assert_eq!(xnum_solve_anchored(g, 1, &mut p), XnumStatus::Unsolved);
        assert!(p.is_null());
        xnum_graph_free(g);
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/xnum.h")).unwrap();
    for name in [
        "xnum_last_error_message",
        "xnum_graph_from_json",
        "xnum_graph_free",
        "xnum_graph_vertex_count",
        "xnum_graph_edge_count",
        "xnum_graph_is_planar",
        "xnum_graph_to_json",
        "xnum_frame_new",
        "xnum_solve_exact",
        "xnum_solve_anchored",
        "xnum_gamma",
        "xnum_poly_to_string",
        "xnum_poly_eval",
        "xnum_poly_free",
        "xnum_string_free",
        "XNUM_STATUS_OK = 0",
        "typedef struct XnumGraph XnumGraph",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
