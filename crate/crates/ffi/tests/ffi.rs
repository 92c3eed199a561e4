use std::ffi::{c_char, CStr, CString};
use std::ptr;

use polylog_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { polylog_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(polylog_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn session_and_elements() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(polylog_session_new(1, 1, &mut s), PolylogStatus::Ok);
        assert!(polylog_session_len(s) > 0);

        let mut e = ptr::null_mut();
        let expr = cs("Li[2](x) + Li[2](1-x)");
        assert_eq!(polylog_elem_parse(s, expr.as_ptr(), &mut e), PolylogStatus::Ok);
        assert_eq!(polylog_elem_weight(e), 2);
        assert_eq!(polylog_elem_is_zero(e), 0);
        assert_eq!(polylog_certify(s, e), PolylogStatus::Ok);

        // the reflection relation is in the seed, so e reduces to a constant
        let mut r = ptr::null_mut();
        assert_eq!(polylog_elem_reduce(s, e, &mut r), PolylogStatus::Ok);
        assert_eq!(polylog_elem_is_zero(r), 1);

        let mut out = ptr::null_mut();
        assert_eq!(polylog_elem_cobracket(s, e, 0, &mut out), PolylogStatus::Ok);
        assert_eq!(take(out), "0");
        assert_eq!(polylog_elem_to_string(e, &mut out), PolylogStatus::Ok);
        assert!(take(out).contains("cor(0, 1,"));

        polylog_elem_free(r);
        polylog_elem_free(e);
        polylog_session_free(s);
    }
}

#[test]
fn not_certified_is_not_an_error() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(polylog_session_new(1, 0, &mut s), PolylogStatus::Ok);
        let mut e = ptr::null_mut();
        let expr = cs("cor(0, 1, x, y)");
        assert_eq!(polylog_elem_parse(s, expr.as_ptr(), &mut e), PolylogStatus::Ok);
        assert_eq!(polylog_certify(s, e), PolylogStatus::NotCertified);
        polylog_elem_free(e);
        polylog_session_free(s);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(polylog_session_new(0, 0, &mut s), PolylogStatus::Precondition);
        assert!(s.is_null());
        assert_eq!(polylog_session_new(1, 0, ptr::null_mut()), PolylogStatus::NullPointer);
        assert_eq!(polylog_session_new(1, 0, &mut s), PolylogStatus::Ok);

        let mut e = ptr::null_mut();
        let bad = cs("cor(0)");
        assert_eq!(polylog_elem_parse(s, bad.as_ptr(), &mut e), PolylogStatus::Syntax);
        assert!(e.is_null());
        assert!(last_error().contains("arity"), "{}", last_error());
        let bad = cs("cor(0, 1, ");
        assert_eq!(polylog_elem_parse(s, bad.as_ptr(), &mut e), PolylogStatus::Syntax);
        assert_eq!(polylog_elem_parse(ptr::null(), bad.as_ptr(), &mut e), PolylogStatus::NullPointer);
        let invalid = [0xffu8 as c_char, 0];
        assert_eq!(polylog_elem_parse(s, invalid.as_ptr(), &mut e), PolylogStatus::InvalidUtf8);

        let (one, three) = (cs("1"), cs("3"));
        assert_eq!(polylog_verify_five_term(one.as_ptr(), three.as_ptr()), PolylogStatus::Precondition);
        assert_eq!(last_error(), "precondition violated: a = 1");
        let two = cs("2");
        assert_eq!(polylog_verify_five_term(two.as_ptr(), three.as_ptr()), PolylogStatus::Ok);

        let missing = cs("/nonexistent/polylog.db");
        let mut t = ptr::null_mut();
        assert_eq!(polylog_session_load(missing.as_ptr(), 0, &mut t), PolylogStatus::Io);

        assert_eq!(polylog_elem_weight(ptr::null()), -1);
        polylog_elem_free(ptr::null_mut());
        polylog_string_free(ptr::null_mut());
        polylog_session_free(s);
    }
}

#[test]
fn save_load_replay() {
    let path = std::env::temp_dir().join(format!("polylog-ffi-{}.db", std::process::id()));
    let p = cs(path.to_str().unwrap());
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(polylog_session_new(1, 1, &mut s), PolylogStatus::Ok);
        assert_eq!(polylog_session_save(s, p.as_ptr()), PolylogStatus::Ok);
        let mut t = ptr::null_mut();
        assert_eq!(polylog_session_load(p.as_ptr(), 1, &mut t), PolylogStatus::Ok);
        assert_eq!(polylog_session_len(t), polylog_session_len(s));
        polylog_session_free(s);
        polylog_session_free(t);
    }
    std::fs::remove_file(path).unwrap();
}

#[test]
fn run_command_line() {
    let args: Vec<CString> = ["verify", "five-term", "--a", "2", "--b", "3"].iter().map(|s| cs(s)).collect();
    let ptrs: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let (mut code, mut out) = (-1, ptr::null_mut());
    unsafe {
        assert_eq!(polylog_run(ptrs.len() as i32, ptrs.as_ptr(), &mut code, &mut out), PolylogStatus::Ok);
        assert_eq!(code, 0);
        assert!(take(out).contains("certified"));
        let bad = [cs("normalize"), cs("cor(0)")];
        let ptrs: Vec<*const c_char> = bad.iter().map(|a| a.as_ptr()).collect();
        assert_eq!(polylog_run(2, ptrs.as_ptr(), &mut code, &mut out), PolylogStatus::Ok);
        assert_eq!(code, 1);
        assert!(take(out).starts_with("error:"));
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/polylog.h");
    let src = include_str!("../src/lib.rs");
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|l| l.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 10);
    for f in exports {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct PolylogSession PolylogSession;"));
    assert!(header.contains("POLYLOG_STATUS_NOT_CERTIFIED = 1"));
}

/// Compiles and runs a C program against the header and the static
/// library when a C compiler is available.
#[test]
fn c_program() {
    let exe = std::env::current_exe().unwrap();
    let dir = exe.parent().unwrap().parent().unwrap();
    let lib = dir.join("libpolylog_ffi.a");
    if !lib.exists() || std::process::Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = std::env::temp_dir().join(format!("polylog-smoke-{}", std::process::id()));
    let st = std::process::Command::new("cc")
        .arg(root.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(st.success());
    let run = std::process::Command::new(&out).output().unwrap();
    std::fs::remove_file(&out).ok();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert!(String::from_utf8_lossy(&run.stdout).contains("cor(0, 1,"));
}
