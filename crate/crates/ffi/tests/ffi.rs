use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use cslab_ffi::*;

fn take_string(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { cslab_string_free(s) };
    text
}

fn last_error() -> String {
    let p = cslab_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn corpus_algebra(name: &str) -> *mut CslabAlgebra {
    let name = CString::new(name).unwrap();
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { cslab_algebra_from_corpus(name.as_ptr(), &mut a) }, CslabStatus::Ok);
    a
}

fn quiver_of(a: *const CslabAlgebra) -> *mut CslabQuiver {
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { cslab_quiver_compute(a, 0, &mut q) }, CslabStatus::Ok);
    q
}

#[test]
fn u2_quiver_through_handles() {
    let a = corpus_algebra("u2_f2.json");
    assert_eq!(unsafe { cslab_algebra_dim(a) }, 3);
    assert_eq!(unsafe { cslab_algebra_prime(a) }, 2);
    let q = quiver_of(a);
    assert_eq!(unsafe { cslab_quiver_vertex_count(q) }, 2);
    let mut d = 99usize;
    assert_eq!(unsafe { cslab_quiver_ext_dim(q, 0, 1, &mut d) }, CslabStatus::Ok);
    assert_eq!(d, 1);
    assert_eq!(unsafe { cslab_quiver_ext_dim(q, 1, 0, &mut d) }, CslabStatus::Ok);
    assert_eq!(d, 0);
    assert_eq!(unsafe { cslab_quiver_ext_dim(q, 2, 0, &mut d) }, CslabStatus::OutOfRange);
    assert!(!unsafe { cslab_quiver_is_totally_disconnected(q) });

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cslab_quiver_to_dot(q, &mut s) }, CslabStatus::Ok);
    assert!(take_string(s).contains("S1 -> S2"));
    assert_eq!(unsafe { cslab_quiver_to_json(q, &mut s) }, CslabStatus::Ok);
    let json: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(json["format_version"], 1);

    let mut code = -1;
    assert_eq!(unsafe { cslab_csl_check_json(q, 3, false, &mut s, &mut code) }, CslabStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(code, 0);
    assert_eq!(report["witness"]["verified"], true);

    unsafe {
        cslab_quiver_free(q);
        cslab_algebra_free(a);
    }
}

#[test]
fn structure_and_subcat_reports() {
    let a = corpus_algebra("m2_local.json");
    let q = quiver_of(a);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cslab_structure_json(q, &mut s) }, CslabStatus::Ok);
    let r: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(r["factors"].as_array().unwrap().len(), 1);
    assert_eq!(r["factors"][0]["matrix_size"], 2);
    unsafe {
        cslab_quiver_free(q);
        cslab_algebra_free(a);
    }

    assert_eq!(unsafe { cslab_subcat_json(2, 2, 2, 0, &mut s) }, CslabStatus::Ok);
    let r: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
    assert_eq!(r["quasi_simple_count"], 2);
}

#[test]
fn errors_are_reported() {
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { cslab_algebra_from_json(ptr::null(), &mut a) }, CslabStatus::NullPointer);

    let bad = CString::new("{\"kind\": \"uniserial\", \"p\": 2,").unwrap();
    assert_eq!(unsafe { cslab_algebra_from_json(bad.as_ptr(), &mut a) }, CslabStatus::ParseError);
    assert!(a.is_null());
    assert!(last_error().contains("line"));

    let not_prime = CString::new(r#"{"kind": "uniserial", "p": 4, "n": 2}"#).unwrap();
    assert_eq!(unsafe { cslab_algebra_from_json(not_prime.as_ptr(), &mut a) }, CslabStatus::InvalidInput);

    let broken = CString::new(
        r#"{"kind": "structure_constants", "p": 2, "dim": 3, "unit": [1, 0, 0],
            "mul": [[0,0,0,1],[0,1,1,1],[0,2,2,1],[1,0,1,1],[2,0,2,1],[1,1,2,1],[2,1,0,1]]}"#,
    )
    .unwrap();
    assert_eq!(unsafe { cslab_algebra_from_json(broken.as_ptr(), &mut a) }, CslabStatus::InvalidInput);
    assert!(last_error().contains("associativ"));

    let missing = CString::new("nope.json").unwrap();
    assert_eq!(unsafe { cslab_algebra_from_corpus(missing.as_ptr(), &mut a) }, CslabStatus::InvalidInput);

    let path = CString::new("/nonexistent/algebra.json").unwrap();
    assert_eq!(unsafe { cslab_algebra_load(path.as_ptr(), &mut a) }, CslabStatus::Io);

    let g = corpus_algebra("gf2_s3.json");
    let mut q = ptr::null_mut();
    assert_eq!(unsafe { cslab_quiver_compute(g, 4, &mut q) }, CslabStatus::GuardExceeded);
    assert!(q.is_null());
    unsafe { cslab_algebra_free(g) };

    assert_eq!(unsafe { cslab_algebra_dim(ptr::null()) }, 0);
    assert_eq!(unsafe { cslab_quiver_vertex_count(ptr::null()) }, 0);
    unsafe {
        cslab_algebra_free(ptr::null_mut());
        cslab_quiver_free(ptr::null_mut());
        cslab_string_free(ptr::null_mut());
    }
}

#[test]
fn load_from_file_resolves_relative_references() {
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus/m2_local.json");
    let path = CString::new(corpus.to_str().unwrap()).unwrap();
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { cslab_algebra_load(path.as_ptr(), &mut a) }, CslabStatus::Ok);
    assert_eq!(unsafe { cslab_algebra_dim(a) }, 8);
    unsafe { cslab_algebra_free(a) };
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/cslab.h")
}

#[test]
fn header_declares_every_entry_point() {
    let text = std::fs::read_to_string(header()).unwrap();
    for name in [
        "cslab_last_error_message",
        "cslab_algebra_from_json",
        "cslab_algebra_load",
        "cslab_algebra_from_corpus",
        "cslab_algebra_free",
        "cslab_algebra_dim",
        "cslab_algebra_prime",
        "cslab_quiver_compute",
        "cslab_quiver_free",
        "cslab_quiver_vertex_count",
        "cslab_quiver_ext_dim",
        "cslab_quiver_is_totally_disconnected",
        "cslab_quiver_to_dot",
        "cslab_quiver_to_json",
        "cslab_csl_check_json",
        "cslab_structure_json",
        "cslab_subcat_json",
        "cslab_string_free",
        "typedef struct CslabAlgebra CslabAlgebra",
        "CslabStatus_GuardExceeded = 5",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "cslab.h"

int main(void) {
    CslabAlgebra *a = NULL;
    CslabQuiver *q = NULL;
    size_t d = 0;
    if (cslab_algebra_from_corpus("a2_path.json", &a) != CslabStatus_Ok) return 10;
    if (cslab_quiver_compute(a, 0, &q) != CslabStatus_Ok) return 11;
    if (cslab_quiver_ext_dim(q, 0, 1, &d) != CslabStatus_Ok || d != 1) return 12;
    if (cslab_quiver_ext_dim(q, 1, 0, &d) != CslabStatus_Ok || d != 0) return 13;
    if (cslab_algebra_from_corpus("missing.json", &a) == CslabStatus_Ok) return 14;
    if (cslab_last_error_message() == NULL) return 15;
    cslab_quiver_free(q);
    printf("ok\n");
    return 0;
}
"#;

/// Compiles and runs a C program against the header and static library
/// when a C compiler is available.
#[test]
fn c_program_links_against_static_library() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libcslab_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: static library or C compiler not available");
        return;
    }
    let dir = std::env::temp_dir().join(format!("cslab-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    let bin = dir.join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
    let _ = std::fs::remove_dir_all(&dir);
}
