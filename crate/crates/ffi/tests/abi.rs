use std::ffi::{c_char, CStr, CString};
use std::ptr;

use laxcomma_ffi::*;
use serde_json::Value;

const TWO: &str = "\
category one { objects: * }
category two {
  objects: 0 1
  morphisms: u: 0 -> 1
  compose: thin
}
functor d0 : one -> two { objects: * -> 0 }
functor d1 : one -> two { objects: * -> 1 }
command c { op: comma ; args: d0 d1 }
";

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> Value {
    let v = serde_json::from_str(CStr::from_ptr(p).to_str().unwrap()).unwrap();
    laxcomma_string_free(p);
    v
}

unsafe fn last_error() -> String {
    CStr::from_ptr(laxcomma_last_error()).to_string_lossy().into_owned()
}

unsafe fn load(text: &str) -> *mut LaxcommaSpec {
    let mut spec = ptr::null_mut();
    assert_eq!(laxcomma_spec_load(c(text).as_ptr(), &mut spec), LaxcommaStatus::Ok);
    spec
}

#[test]
fn comma_through_the_abi() {
    unsafe {
        let spec = load(TWO);
        assert_eq!(laxcomma_spec_block_count(spec), 5);
        let mut out = ptr::null_mut();
        let st = laxcomma_comma(spec, c("d0").as_ptr(), c("d1").as_ptr(), ptr::null(), &mut out);
        assert_eq!(st, LaxcommaStatus::Ok);
        let v = take(out);
        assert_eq!(v["category"]["objects"].as_array().unwrap().len(), 1);
        assert_eq!(last_error(), "");

        let st = laxcomma_run_commands(spec, &mut out);
        assert_eq!(st, LaxcommaStatus::Ok);
        assert_eq!(take(out).as_array().unwrap().len(), 1);
        laxcomma_spec_free(spec);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut spec = ptr::null_mut();
        let st = laxcomma_spec_load(c("category c {\n objects: a\n morphisms: f: a -> b\n}").as_ptr(), &mut spec);
        assert_eq!(st, LaxcommaStatus::InvalidSpec);
        assert!(spec.is_null());
        assert!(last_error().contains("line 1"), "{}", last_error());

        assert_eq!(laxcomma_spec_load(ptr::null(), &mut spec), LaxcommaStatus::NullArgument);

        let spec = load(TWO);
        let mut out = ptr::null_mut();
        let st = laxcomma_comma(spec, c("d0").as_ptr(), c("nope").as_ptr(), ptr::null(), &mut out);
        assert_eq!(st, LaxcommaStatus::Construction);
        assert!(out.is_null());
        assert!(last_error().contains("nope"));
        laxcomma_spec_free(spec);

        assert_eq!(laxcomma_suite(c("nope").as_ptr(), 0, &mut out), LaxcommaStatus::UnknownSuite);
        assert_eq!(laxcomma_suite(c("coequalizer").as_ptr(), 9, &mut out), LaxcommaStatus::BoundsTooLarge);
        laxcomma_spec_free(ptr::null_mut());
        laxcomma_string_free(ptr::null_mut());
    }
}

#[test]
fn suite_report_json() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(laxcomma_suite(c("cancellation").as_ptr(), 0, &mut out), LaxcommaStatus::Ok);
        let v = take(out);
        assert_eq!(v["suite"], "cancellation");
        assert_eq!(v["totals"]["fail"], 0);
        assert!(v["totals"]["all"].as_u64().unwrap() > 0);
    }
}

#[test]
fn header_is_valid_c() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let header = std::fs::read_to_string(format!("{dir}/include/laxcomma.h")).unwrap();
    for f in ["laxcomma_spec_load", "laxcomma_spec_free", "laxcomma_string_free", "laxcomma_last_error"] {
        assert!(header.contains(f), "{f} missing from header");
    }
    let src = std::env::temp_dir().join("laxcomma_header_check.c");
    std::fs::write(&src, "#include \"laxcomma.h\"\nint main(void) { return LAXCOMMA_STATUS_OK; }\n").unwrap();
    let st = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(format!("{dir}/include"))
        .arg(&src)
        .status()
        .expect("a C compiler on PATH");
    assert!(st.success());
}
