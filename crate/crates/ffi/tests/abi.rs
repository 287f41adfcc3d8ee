use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use relatives_ffi::*;

fn parse(text: &str) -> *mut RelSpaceForm {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { rel_space_form_parse(c.as_ptr(), &mut out) },
        RelStatus::Ok
    );
    out
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let owned = CStr::from_ptr(s).to_str().unwrap().to_string();
    rel_string_free(s);
    owned
}

#[test]
fn decide_through_handles() {
    let f1 = parse("FS(3, 1)");
    let f2 = parse("FS(8, 2)");
    let mut v = ptr::null_mut();
    unsafe {
        assert_eq!(rel_decide(f1, f2, &mut v), RelStatus::Ok);
        assert_eq!(rel_verdict_status(v), RelVerdictStatus::Relatives);
        assert_eq!(CStr::from_ptr(rel_verdict_rule(v)).to_str().unwrap(), "R5");
        let json: serde_json::Value = serde_json::from_str(&take(rel_verdict_to_json(v))).unwrap();
        assert_eq!(json["certificate"]["check"]["lhs"], 12);
        let mut ok = 0;
        assert_eq!(rel_verdict_recheck(v, &mut ok), RelStatus::Ok);
        assert_eq!(ok, 1);
        assert_eq!(take(rel_space_form_render(f1)), "FS(3, 1)");
        rel_verdict_free(v);
        rel_space_form_free(f1);
        rel_space_form_free(f2);
    }
}

#[test]
fn parse_error_sets_message() {
    let c = CString::new("CP(3, 4, 1)").unwrap();
    let mut out = ptr::null_mut();
    let code = unsafe { rel_space_form_parse(c.as_ptr(), &mut out) };
    assert_eq!(code, RelStatus::Parse);
    assert!(out.is_null());
    let msg = unsafe { CStr::from_ptr(rel_last_error()) }
        .to_str()
        .unwrap();
    assert!(msg.contains('4'), "{msg}");
}

#[test]
fn null_arguments_are_rejected() {
    let mut v = ptr::null_mut();
    unsafe {
        assert_eq!(
            rel_decide(ptr::null(), ptr::null(), &mut v),
            RelStatus::NullPointer
        );
        assert_eq!(
            rel_space_form_parse(ptr::null(), &mut ptr::null_mut()),
            RelStatus::NullPointer
        );
        assert!(rel_verdict_to_json(ptr::null()).is_null());
        rel_string_free(ptr::null_mut());
        rel_verdict_free(ptr::null_mut());
    }
}

#[test]
fn expand_json() {
    let b = CString::new("1").unwrap();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(rel_expand_json(2, b.as_ptr(), 2, &mut out), RelStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        let cs: Vec<&str> = v["terms"]
            .as_array()
            .unwrap()
            .iter()
            .map(|t| t["c"].as_str().unwrap())
            .collect();
        assert_eq!(cs, ["2/1", "2/1", "1/1", "2/1", "1/1"]);
        assert_eq!(
            rel_expand_json(0, b.as_ptr(), 2, &mut out),
            RelStatus::Domain
        );
    }
}

#[test]
fn cli_run_exit_codes() {
    let args: Vec<CString> = ["decide", "--form1", "CE(4, 1)", "--form2", "CP(5, 1, 2)"]
        .iter()
        .map(|s| CString::new(*s).unwrap())
        .collect();
    let ptrs: Vec<_> = args.iter().map(|a| a.as_ptr()).collect();
    let (mut out, mut err) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        let code = rel_cli_run(ptrs.len(), ptrs.as_ptr(), &mut out, &mut err);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["rule"], "R0");
        rel_string_free(err);

        let bad = [CString::new("frobnicate").unwrap()];
        let ptrs: Vec<_> = bad.iter().map(|a| a.as_ptr()).collect();
        let code = rel_cli_run(1, ptrs.as_ptr(), ptr::null_mut(), &mut err);
        assert_eq!(code, 2);
        assert!(take(err).contains("error"));
    }
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/relatives.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "rel_decide",
        "rel_space_form_parse",
        "rel_string_free",
        "REL_STATUS_OK",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        format!(
            "#include \"{}\"\nint main(void) {{ RelSpaceForm *f = 0; return rel_space_form_parse(\"FS(1, 1)\", &f) == REL_STATUS_OK ? 0 : 1; }}\n",
            header.display()
        ),
    )
    .unwrap();
    let Ok(status) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"])
        .arg(&src)
        .status()
    else {
        eprintln!("no C compiler; skipped");
        return;
    };
    assert!(status.success());
}
