use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use gdom_ffi::*;

fn parse(text: &str) -> *mut GdomGraph {
    let t = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { gdom_graph_parse(t.as_ptr(), ptr::null(), &mut g) },
        GdomStatus::Ok
    );
    g
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(gdom_last_error()) }
        .to_str()
        .unwrap()
        .to_string()
}

#[test]
fn counts_and_relations() {
    let k4 = parse("4; 0 1; 0 2; 0 3; 1 2; 1 3; 2 3");
    let k3 = parse("3; 0 1; 1 2; 0 2");
    unsafe {
        let mut n = 0;
        assert_eq!(gdom_graph_vertex_count(k4, &mut n), GdomStatus::Ok);
        assert_eq!(n, 4);
        assert_eq!(gdom_graph_edge_units(k4, &mut n), GdomStatus::Ok);
        assert_eq!(n, 6);

        let mut s = ptr::null_mut();
        assert_eq!(gdom_spanning_trees(k4, &mut s), GdomStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "16");
        gdom_string_free(s);

        let mut d = GdomDecision::Unknown;
        assert_eq!(gdom_dominates(k4, k3, &mut d), GdomStatus::Ok);
        assert_eq!(d, GdomDecision::Yes);
        assert_eq!(gdom_dominates(k3, k4, &mut d), GdomStatus::Ok);
        assert_eq!(d, GdomDecision::No);

        let mut m = ptr::null_mut();
        assert_eq!(
            gdom_fractionally_tiles(k4, k3, &mut d, &mut m),
            GdomStatus::Ok
        );
        assert_eq!(d, GdomDecision::Yes);
        assert_eq!(CStr::from_ptr(m).to_str().unwrap(), "3");
        gdom_string_free(m);

        let mut x = 0.0;
        assert_eq!(gdom_heat_trace(k4, 1.0, &mut x), GdomStatus::Ok);
        assert!((x - (1.0 + 3.0 * (-4f64).exp()) / 4.0).abs() < 1e-12);

        gdom_graph_free(k4);
        gdom_graph_free(k3);
    }
}

#[test]
fn check_verdicts_and_reports() {
    let star = parse("5; 0 1; 0 2; 0 3; 0 4");
    let edge = parse("2; 0 1");
    let id = CString::new("vertex_counting").unwrap();
    let params = CString::new(r#"{"family": "independent_sets"}"#).unwrap();
    unsafe {
        let mut v = GdomVerdict::Inconclusive;
        let mut report = ptr::null_mut();
        assert_eq!(
            gdom_check(
                id.as_ptr(),
                star,
                edge,
                params.as_ptr(),
                &mut v,
                &mut report
            ),
            GdomStatus::Ok
        );
        assert_eq!(v, GdomVerdict::Violated);
        let json: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(report).to_str().unwrap()).unwrap();
        assert_eq!(json["lhs"]["value"], "17^(1/5)");
        gdom_string_free(report);

        let bad = CString::new("no_such_id").unwrap();
        assert_eq!(
            gdom_check(
                bad.as_ptr(),
                star,
                edge,
                ptr::null(),
                &mut v,
                ptr::null_mut()
            ),
            GdomStatus::UnknownId
        );
        assert!(last_error().contains("no_such_id"));

        let p3 = parse("3; 0 1; 1 2");
        let kot = CString::new("koteljanskii_step").unwrap();
        let sets = CString::new(r#"{"sets": [[0, 1], [1, 2]]}"#).unwrap();
        assert_eq!(
            gdom_check(
                kot.as_ptr(),
                p3,
                ptr::null(),
                sets.as_ptr(),
                &mut v,
                ptr::null_mut()
            ),
            GdomStatus::Ok
        );
        assert_eq!(v, GdomVerdict::HypothesisFailed);
        gdom_graph_free(p3);
        gdom_graph_free(star);
        gdom_graph_free(edge);
    }
}

#[test]
fn errors_are_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        let t = CString::new("3; 0 1").unwrap();
        assert_eq!(
            gdom_graph_parse(t.as_ptr(), ptr::null(), &mut g),
            GdomStatus::InvalidGraph
        );
        assert!(g.is_null());
        assert!(!last_error().is_empty());
        let t = CString::new("3; 0 x").unwrap();
        assert_eq!(
            gdom_graph_parse(t.as_ptr(), ptr::null(), &mut g),
            GdomStatus::Parse
        );
        assert_eq!(
            gdom_graph_parse(ptr::null(), ptr::null(), &mut g),
            GdomStatus::NullPointer
        );
        let f = CString::new("dot").unwrap();
        let t = CString::new("2; 0 1").unwrap();
        assert_eq!(
            gdom_graph_parse(t.as_ptr(), f.as_ptr(), &mut g),
            GdomStatus::InvalidParameter
        );
        let mut n = 0;
        assert_eq!(
            gdom_graph_vertex_count(ptr::null(), &mut n),
            GdomStatus::NullPointer
        );
        gdom_graph_free(ptr::null_mut());
        gdom_string_free(ptr::null_mut());
        assert!(!CStr::from_ptr(gdom_version()).to_str().unwrap().is_empty());
    }
}

/// Compiles and runs a C program against the generated header and the
/// static library, when a C compiler is present.
#[test]
fn c_program_links_against_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let deps = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib_dir = deps.parent().unwrap();
    let lib = lib_dir.join("libgdom_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "gdom.h"
int main(void) {
    GdomGraph *g = NULL, *h = NULL;
    if (gdom_graph_parse("4; 0 1; 0 2; 0 3; 1 2; 1 3; 2 3", NULL, &g) != GDOM_STATUS_OK) return 1;
    if (gdom_graph_parse("3; 0 1; 1 2; 0 2", NULL, &h) != GDOM_STATUS_OK) return 2;
    GdomVerdict v;
    if (gdom_check("spanning_tree", g, h, NULL, &v, NULL) != GDOM_STATUS_OK) return 3;
    if (v != GDOM_VERDICT_HOLDS) return 4;
    char *tau = NULL;
    gdom_spanning_trees(g, &tau);
    int ok = strcmp(tau, "16") == 0;
    gdom_string_free(tau);
    gdom_graph_free(g);
    gdom_graph_free(h);
    printf("ok\n");
    return ok ? 0 : 5;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
