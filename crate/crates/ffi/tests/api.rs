use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use tklwb_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    tklwb_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(tklwb_last_error())
        .to_str()
        .unwrap()
        .to_string()
}

struct Sys(*mut TklwbSystem);

impl Sys {
    fn new(gens: usize, star: &str) -> Sys {
        let mut p = ptr::null_mut();
        let st = unsafe { tklwb_system_new(gens, c(star).as_ptr(), &mut p) };
        assert_eq!(st, TklwbStatus::Ok);
        Sys(p)
    }

    fn query(
        &self,
        f: unsafe extern "C" fn(
            *mut TklwbSystem,
            *const c_char,
            *const c_char,
            *mut *mut c_char,
        ) -> TklwbStatus,
        a: &str,
        b: &str,
    ) -> Result<String, (TklwbStatus, String)> {
        let mut out = ptr::null_mut();
        unsafe {
            match f(self.0, c(a).as_ptr(), c(b).as_ptr(), &mut out) {
                TklwbStatus::Ok => Ok(take(out)),
                s => Err((s, last_error())),
            }
        }
    }
}

impl Drop for Sys {
    fn drop(&mut self) {
        unsafe { tklwb_system_free(self.0) }
    }
}

#[test]
fn queries() {
    let s = Sys::new(3, "id");
    assert_eq!(s.query(tklwb_kl, "b", "aba").unwrap(), "1");
    assert_eq!(s.query(tklwb_tkl, "e", "abcba").unwrap(), "1+q");
    assert_eq!(s.query(tklwb_structure, "a", "e").unwrap(), "a\tv^-1+v\n");
    assert_eq!(s.query(tklwb_mult, "a", "b").unwrap(), "aba\t1\na\t1\n");
    let t = Sys::new(2, "(a b)");
    assert_eq!(t.query(tklwb_tkl, "e", "ab").unwrap(), "1");
}

#[test]
fn plus_minus() {
    let s = Sys::new(3, "id");
    let (mut p, mut m) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        let st = tklwb_pm(s.0, c("e").as_ptr(), c("a").as_ptr(), &mut p, &mut m);
        assert_eq!(st, TklwbStatus::Ok);
        assert_eq!((take(p), take(m)), ("1".to_string(), "0".to_string()));
    }
}

#[test]
fn errors() {
    let s = Sys::new(3, "id");
    let (st, msg) = s.query(tklwb_tkl, "e", "ab").unwrap_err();
    assert_eq!(st, TklwbStatus::InvalidArgument);
    assert!(msg.contains("twisted involution"), "{msg}");
    assert_eq!(
        s.query(tklwb_kl, "e", "z").unwrap_err().0,
        TklwbStatus::InvalidArgument
    );
    assert_eq!(
        s.query(tklwb_mult, "ab", "e").unwrap_err().0,
        TklwbStatus::InvalidArgument
    );
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(
            tklwb_kl(ptr::null_mut(), c("e").as_ptr(), c("a").as_ptr(), &mut out),
            TklwbStatus::NullPointer
        );
        assert_eq!(
            tklwb_kl(s.0, ptr::null(), c("a").as_ptr(), &mut out),
            TklwbStatus::NullPointer
        );
        assert_eq!(
            tklwb_kl(s.0, c("e").as_ptr(), c("a").as_ptr(), ptr::null_mut()),
            TklwbStatus::NullPointer
        );
        let mut sys = ptr::null_mut();
        assert_eq!(
            tklwb_system_new(3, c("(a q)").as_ptr(), &mut sys),
            TklwbStatus::InvalidArgument
        );
        assert!(sys.is_null());
        // success clears the message
        assert_eq!(
            tklwb_kl(s.0, c("e").as_ptr(), c("a").as_ptr(), &mut out),
            TklwbStatus::Ok
        );
        tklwb_string_free(out);
        assert_eq!(last_error(), "");
    }
}

#[test]
fn verify_and_dump() {
    let s = Sys::new(3, "(a b)");
    unsafe {
        let mut out = ptr::null_mut();
        let st = tklwb_verify(s.0, c("a-prime").as_ptr(), 3, 0, &mut out);
        assert_eq!(st, TklwbStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(report["violations"], serde_json::json!([]));

        assert_eq!(tklwb_dump(s.0, 2, 2, &mut out), TklwbStatus::Ok);
        assert!(take(out).starts_with("tklwb-cache v1 gens=3 star=(a b)\n"));

        assert_eq!(tklwb_system_set_cap(s.0, 5), TklwbStatus::Ok);
        assert_eq!(tklwb_dump(s.0, 4, 4, &mut out), TklwbStatus::ResourceLimit);
        assert_eq!(
            tklwb_verify(s.0, c("nope").as_ptr(), 1, 1, &mut out),
            TklwbStatus::InvalidArgument
        );
    }
}

#[test]
fn version() {
    let v = unsafe { CStr::from_ptr(tklwb_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// Compiles the C smoke test against the generated header and static library.
#[test]
fn c_smoke_test() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // integration test binaries live in <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libtklwb_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let bin = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("tklwb_smoke");
    let status = Command::new("cc")
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
