use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use lietilt_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(lt_last_error()) }
        .to_str()
        .unwrap()
        .to_owned()
}

fn entries(h: *const LtDecomposition) -> Vec<(u32, i64)> {
    let n = unsafe { lt_decomposition_len(h) };
    (0..n)
        .map(|i| {
            let (mut w, mut m) = (0u32, 0i64);
            assert_eq!(
                unsafe { lt_decomposition_get(h, i, &mut w, &mut m) },
                LtStatus::Ok
            );
            (w, m)
        })
        .collect()
}

#[test]
fn tensor_power_handle() {
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { lt_tensor_power_decomp(6, 2, &mut h) },
        LtStatus::Ok
    );
    assert_eq!(entries(h), [(6, 1), (4, 4), (2, 4)]);
    let json = unsafe { lt_decomposition_to_json(h) };
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    unsafe { lt_string_free(json) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["basis"], "tilting");
    assert_eq!(v["p"], 2);
    let (mut w, mut m) = (0, 0);
    assert_eq!(
        unsafe { lt_decomposition_get(h, 3, &mut w, &mut m) },
        LtStatus::OutOfRange
    );
    assert_eq!(
        unsafe { lt_decomposition_get(h, 0, ptr::null_mut(), &mut m) },
        LtStatus::NullPointer
    );
    unsafe { lt_decomposition_free(h) };
}

#[test]
fn lie_power_verdicts() {
    for (r, want) in [
        (7, LtVerdict::Tilting),
        (8, LtVerdict::NotTiltingCertified),
        (10, LtVerdict::Inconclusive),
    ] {
        let mut h = ptr::null_mut();
        let mut v = LtVerdict::Tilting;
        assert_eq!(
            unsafe { lt_lie_power_decomp(r, 2, &mut h, &mut v) },
            LtStatus::Ok
        );
        assert_eq!(v, want, "r = {r}");
        unsafe { lt_decomposition_free(h) };
    }
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { lt_lie_power_decomp(6, 2, &mut h, ptr::null_mut()) },
        LtStatus::Ok
    );
    assert_eq!(entries(h), [(4, 1), (0, 1)]);
    unsafe { lt_decomposition_free(h) };
}

#[test]
fn wide_multiplicities_overflow_int64() {
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { lt_tensor_power_decomp(101, 101, &mut h) },
        LtStatus::Ok
    );
    let n = unsafe { lt_decomposition_len(h) };
    let mut saw_overflow = false;
    for i in 0..n {
        let (mut w, mut m) = (0, 0);
        match unsafe { lt_decomposition_get(h, i, &mut w, &mut m) } {
            LtStatus::Ok => {}
            LtStatus::Overflow => {
                saw_overflow = true;
                let s = unsafe { lt_decomposition_mult_string(h, i) };
                let digits = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
                unsafe { lt_string_free(s) };
                assert!(digits.parse::<i128>().unwrap() > i64::MAX as i128);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
    assert!(saw_overflow);
    unsafe { lt_decomposition_free(h) };
}

#[test]
fn errors_set_codes_and_messages() {
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { lt_tensor_power_decomp(3, 9, &mut h) },
        LtStatus::NotPrime
    );
    assert!(h.is_null());
    assert!(last_error().contains('9'));
    assert_eq!(
        unsafe { lt_tensor_power_decomp(500, 2, &mut h) },
        LtStatus::OutOfRange
    );
    assert_eq!(
        unsafe { lt_tensor_power_decomp(0, 2, &mut h) },
        LtStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { lt_tensor_power_decomp(3, 2, ptr::null_mut()) },
        LtStatus::NullPointer
    );
    let mut d = 0;
    assert_eq!(unsafe { lt_gzeta_dim(9, 3, &mut d) }, LtStatus::Ok);
    assert_eq!(d, 6);
    assert_eq!(last_error(), "");
    assert_eq!(
        unsafe { lt_gzeta_dim(10, 3, &mut d) },
        LtStatus::InvalidArgument
    );
    unsafe {
        lt_decomposition_free(ptr::null_mut());
        lt_string_free(ptr::null_mut());
        assert_eq!(lt_decomposition_len(ptr::null()), 0);
        assert!(lt_decomposition_to_json(ptr::null()).is_null());
    }
}

#[test]
fn scalar_functions() {
    let mut b = false;
    assert_eq!(
        unsafe { lt_theorem_b_predicate(9, 3, &mut b) },
        LtStatus::Ok
    );
    assert!(!b);
    assert_eq!(
        unsafe { lt_theorem_b_predicate(12, 2, &mut b) },
        LtStatus::Ok
    );
    assert!(b);
    let mut c = 0;
    assert_eq!(unsafe { lt_binom_mod(10, 3, 7, &mut c) }, LtStatus::Ok);
    assert_eq!(c, 120 % 7);
    assert_eq!(
        unsafe { lt_binom_mod(10, 3, 1, &mut c) },
        LtStatus::NotPrime
    );
}

#[test]
fn header_declares_every_export() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/lietilt.h")).unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let mut n = 0;
    for line in src.lines().filter(|l| l.contains("extern \"C\" fn ")) {
        let name = line.split("fn ").nth(1).unwrap().split('(').next().unwrap();
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
        n += 1;
    }
    assert_eq!(n, 12);
}

/// Compiles a C program against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = exe_dir.join("liblietilt_ffi.a");
    if !lib.exists() {
        let status = Command::new(env!("CARGO"))
            .args(["build", "-p", "lietilt-ffi", "--lib"])
            .current_dir(&manifest)
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert!(lib.exists(), "{} not built", lib.display());
    let out = tempfile::tempdir().unwrap();
    let exe = out.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(run.stdout, b"ok\n");
}
