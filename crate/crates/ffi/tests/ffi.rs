use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use hypertight_ffi::*;

fn parse(text: &str) -> (HtStatus, *mut HtHypergraph) {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    let s = unsafe { ht_hypergraph_parse(c.as_ptr(), &mut g) };
    (s, g)
}

fn last_error() -> String {
    let mut buf = [0 as c_char; 512];
    let mut needed = 0;
    assert_eq!(unsafe { ht_last_error(buf.as_mut_ptr(), buf.len(), &mut needed) }, HtStatus::Ok);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

#[test]
fn parse_query_and_free() {
    let (s, g) = parse("3 4\n1 2 3\n2 3 4\n");
    assert_eq!(s, HtStatus::Ok);
    let (mut k, mut n, mut e) = (0, 0, 0);
    assert_eq!(unsafe { ht_hypergraph_shape(g, &mut k, &mut n, &mut e) }, HtStatus::Ok);
    assert_eq!((k, n, e), (3, 4, 2));
    let mut sizes = [0usize; 2];
    let mut count = 0;
    assert_eq!(unsafe { ht_tight_components(g, sizes.as_mut_ptr(), 2, &mut count) }, HtStatus::Ok);
    assert_eq!((count, sizes[0]), (1, 2));
    let (mut m, mut opt) = (0, 0);
    assert_eq!(unsafe { ht_max_matching(g, 0.0, &mut m, &mut opt) }, HtStatus::Ok);
    assert_eq!((m, opt), (1, 1));
    let mut needed = 0;
    assert_eq!(unsafe { ht_hypergraph_emit(g, ptr::null_mut(), 0, &mut needed) }, HtStatus::BufferTooSmall);
    let mut buf = vec![0 as c_char; needed];
    assert_eq!(unsafe { ht_hypergraph_emit(g, buf.as_mut_ptr(), needed, ptr::null_mut()) }, HtStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap(), "3 4\n1 2 3\n2 3 4\n");
    unsafe { ht_hypergraph_free(g) };
}

#[test]
fn errors_carry_codes_and_messages() {
    let (s, g) = parse("3 4\n1 2 2\n");
    assert_eq!(s, HtStatus::Parse);
    assert!(g.is_null());
    assert!(last_error().contains("line 2"));
    assert_eq!(unsafe { ht_hypergraph_parse(ptr::null(), ptr::null_mut()) }, HtStatus::NullPointer);
    let mut out = 0.0;
    assert_eq!(unsafe { ht_f_spt(0.0, 1.0, 1.0, 1.0, &mut out) }, HtStatus::InvalidArgument);
    let v = [1u32, 2, 9];
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { ht_hypergraph_new(3, 4, v.as_ptr(), 1, &mut g) }, HtStatus::InvalidArgument);
    unsafe { ht_hypergraph_free(ptr::null_mut()) };
}

#[test]
fn numeric_entry_points() {
    let mut v = 0.0;
    assert_eq!(unsafe { ht_f_spt(0.25, 6.0, 10.0, 23.0, &mut v) }, HtStatus::Ok);
    assert!((v - 0.625).abs() < 1e-15);
    let mut ok = 0;
    assert_eq!(unsafe { ht_verify_fact(1e-3, 1e-9, &mut ok) }, HtStatus::Ok);
    assert_eq!(ok, 1);
    let (mut value, mut formula) = (0, 0);
    assert_eq!(unsafe { ht_emc_max_edges(7, 1, 1, &mut value, &mut formula) }, HtStatus::Ok);
    assert_eq!((value, formula), (15, 15));
}

#[test]
fn shifting_and_hamilton() {
    let verts = [2u32, 3, 4, 1, 3, 5];
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { ht_hypergraph_new(3, 5, verts.as_ptr(), 2, &mut g) }, HtStatus::Ok);
    let (mut h, mut sweeps) = (ptr::null_mut(), 0);
    assert_eq!(unsafe { ht_left_shift_closure(g, &mut h, &mut sweeps) }, HtStatus::Ok);
    assert!(sweeps >= 1);
    let (mut k, mut n, mut e) = (0, 0, 0);
    unsafe { ht_hypergraph_shape(h, &mut k, &mut n, &mut e) };
    assert_eq!(e, 2);
    let mut verdict = 7;
    let mut cyc = [0u32; 5];
    assert_eq!(unsafe { ht_tight_hamilton(g, 0.0, &mut verdict, cyc.as_mut_ptr(), 5) }, HtStatus::Ok);
    assert_eq!(verdict, 0);
    unsafe {
        ht_hypergraph_free(g);
        ht_hypergraph_free(h);
    }
}

fn target_dir() -> PathBuf {
    // .../target/<profile>/deps/ffi-<hash>
    std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_is_generated_and_usable_from_c() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(root.join("include/hypertight.h")).unwrap();
    for f in ["ht_hypergraph_parse", "ht_hypergraph_free", "ht_last_error", "ht_tight_hamilton", "HT_STATUS_PANIC"] {
        assert!(header.contains(f), "{f} missing from header");
    }
    let lib = target_dir().join("libhypertight_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let exe = std::env::temp_dir().join(format!("hypertight_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(root.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(out.status.success(), "C smoke test exited with {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok"));
}
