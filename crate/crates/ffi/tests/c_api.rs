use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use k2norm_ffi::*;

const QI: &str = r#"{"base":{"name":"Q","var":"x","min_poly":["0","1"]},"var":"y","min_poly_over_base":[["1"],["0"],["1"]]}"#;
const S2_I: &str = r#"{"base":{"name":"Q(sqrt2)","var":"x","min_poly":["-2","0","1"]},"var":"y","min_poly_over_base":[["1","0"],["0","0"],["1","0"]]}"#;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = k2_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

struct Loaded {
    ext: *mut K2Extension,
    field: *mut K2Field,
}

impl Loaded {
    fn new(json: &str) -> Loaded {
        let mut ext = ptr::null_mut();
        let mut field = ptr::null_mut();
        unsafe {
            assert_eq!(
                k2_extension_from_json(c(json).as_ptr(), &mut ext),
                K2Status::Ok
            );
            assert_eq!(k2_extension_base(ext, &mut field), K2Status::Ok);
        }
        Loaded { ext, field }
    }

    fn symbols(&self, json: &str) -> *mut K2Symbols {
        let mut x = ptr::null_mut();
        let st = unsafe { k2_symbols_from_json(self.field, c(json).as_ptr(), &mut x) };
        assert_eq!(st, K2Status::Ok, "{}", last_error());
        x
    }
}

impl Drop for Loaded {
    fn drop(&mut self) {
        unsafe {
            k2_field_free(self.field);
            k2_extension_free(self.ext);
        }
    }
}

#[test]
fn decides_norms_over_gaussian_extension() {
    let l = Loaded::new(QI);
    let yes = l.symbols(r#"[{"f":["3"],"g":["-1"],"e":1}]"#);
    let no = l.symbols(r#"[{"f":["-1"],"g":["-1"],"e":1}]"#);
    let mut out = false;
    unsafe {
        assert_eq!(k2_is_norm(l.ext, yes, 1, &mut out), K2Status::Ok);
        assert!(out);
        assert_eq!(k2_is_norm(l.ext, no, 1, &mut out), K2Status::Ok);
        assert!(!out);
        assert_eq!(k2_is_norm(l.ext, no, 2, &mut out), K2Status::Ok);
        assert!(out);

        let mut json = ptr::null_mut();
        assert_eq!(k2_verdict_json(l.ext, no, 1, &mut json), K2Status::Ok);
        let v: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        k2_string_free(json);
        assert_eq!(v["is_norm"], false);
        assert_eq!(v["failing_places"], serde_json::json!([0]));
        assert_eq!(v["reason"], "parity_nonzero");

        k2_symbols_free(yes);
        k2_symbols_free(no);
    }
}

#[test]
fn places_and_obstruction() {
    let l = Loaded::new(S2_I);
    let mut n = 0usize;
    unsafe {
        assert_eq!(k2_field_degree(l.field, &mut n), K2Status::Ok);
        assert_eq!(n, 2);
        assert_eq!(k2_field_real_place_count(l.field, &mut n), K2Status::Ok);
        assert_eq!(n, 2);

        let mut buf = [usize::MAX; 4];
        assert_eq!(
            k2_extension_ramified_places(l.ext, buf.as_mut_ptr(), buf.len(), &mut n),
            K2Status::Ok
        );
        assert_eq!(&buf[..n], &[0, 1]);
        assert_eq!(
            k2_extension_ramified_places(l.ext, ptr::null_mut(), 0, &mut n),
            K2Status::Ok
        );
        assert_eq!(n, 2);

        assert_eq!(k2_obstruction_rank(l.ext, 1, &mut n), K2Status::Ok);
        assert_eq!(n, 2);
        assert_eq!(k2_obstruction_rank(l.ext, 5, &mut n), K2Status::Ok);
        assert_eq!(n, 2);
        assert_eq!(k2_obstruction_rank(l.ext, 3, &mut n), K2Status::Ok);
        assert_eq!(n, 0);

        // x = ±√2 in place order.
        let mut s = 0i8;
        for (place, want) in [(0, -1), (1, 1)] {
            let st = k2_field_sign_at_place(l.field, c("0,1").as_ptr(), place, &mut s);
            assert_eq!(st, K2Status::Ok);
            assert_eq!(s, want);
        }
        assert_eq!(
            k2_field_sign_at_place(l.field, c("[\"0\",\"1\"]").as_ptr(), 2, &mut s),
            K2Status::Precondition
        );
    }
}

#[test]
fn witnesses_fail_only_at_their_place() {
    let l = Loaded::new(S2_I);
    for place in 0..2usize {
        let mut json = ptr::null_mut();
        unsafe {
            assert_eq!(k2_witness_json(l.ext, place, &mut json), K2Status::Ok);
            let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
            k2_string_free(json);
            let x = l.symbols(&text);
            let mut out = ptr::null_mut();
            assert_eq!(k2_verdict_json(l.ext, x, 1, &mut out), K2Status::Ok);
            let v: serde_json::Value =
                serde_json::from_str(CStr::from_ptr(out).to_str().unwrap()).unwrap();
            k2_string_free(out);
            k2_symbols_free(x);
            assert_eq!(v["failing_places"], serde_json::json!([place]));
        }
    }
}

#[test]
fn error_codes() {
    let mut f = ptr::null_mut();
    unsafe {
        let st = k2_field_from_json(
            c(r#"{"name":"F","var":"x","min_poly":["3/0","1"]}"#).as_ptr(),
            &mut f,
        );
        assert_eq!(st, K2Status::Malformed);
        assert!(f.is_null());
        assert!(last_error().contains("min_poly[0]"));

        let st = k2_field_from_json(
            c(r#"{"name":"F","var":"x","min_poly":["-1","0","1"]}"#).as_ptr(),
            &mut f,
        );
        assert_eq!(st, K2Status::Precondition);
        assert!(f.is_null());

        let st = k2_field_from_json(ptr::null(), &mut f);
        assert_eq!(st, K2Status::NullPointer);
        let st = k2_field_from_json(
            c(r#"{"name":"Q","var":"x","min_poly":["0","1"]}"#).as_ptr(),
            ptr::null_mut(),
        );
        assert_eq!(st, K2Status::NullPointer);

        let bad = [0xffu8, 0];
        let st = k2_field_from_json(bad.as_ptr().cast(), &mut f);
        assert_eq!(st, K2Status::InvalidUtf8);

        let l = Loaded::new(QI);
        let mut json = ptr::null_mut();
        let st = k2_witness_json(l.ext, 1, &mut json);
        assert_eq!(st, K2Status::Precondition);
        assert!(json.is_null());

        let mut x = ptr::null_mut();
        let st = k2_symbols_from_json(
            l.field,
            c(r#"[{"f":["0"],"g":["1"],"e":1}]"#).as_ptr(),
            &mut x,
        );
        assert_eq!(st, K2Status::Precondition);

        k2_field_free(ptr::null_mut());
        k2_string_free(ptr::null_mut());
    }
}

#[test]
fn symbols_over_another_field_are_rejected() {
    let qi = Loaded::new(QI);
    let s2 = Loaded::new(S2_I);
    let x = s2.symbols(r#"[{"f":["-1","0"],"g":["-1","0"],"e":1}]"#);
    let mut out = false;
    unsafe {
        assert_eq!(k2_is_norm(qi.ext, x, 1, &mut out), K2Status::Precondition);
        k2_symbols_free(x);
    }
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/k2norm.h");
    assert!(header.exists(), "header missing");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use_header.c");
    std::fs::write(
        &src,
        format!(
            "#include \"{}\"\nint main(void) {{ K2Field *f = 0; size_t d; return (int)k2_field_degree(f, &d); }}\n",
            header.display()
        ),
    )
    .unwrap();
    let Ok(status) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"])
        .arg(&src)
        .status()
    else {
        eprintln!("no C compiler; header syntax not checked");
        return;
    };
    assert!(status.success());
}
