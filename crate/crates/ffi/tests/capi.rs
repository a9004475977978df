use std::ffi::{CStr, CString};
use std::ptr;

use boolcube_ffi::*;

fn zoo(name: &str, a: u32, b: u32) -> *mut BcFunction {
    let name = CString::new(name).unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { bc_function_zoo(name.as_ptr(), a, b, &mut f) }, BcStatus::Ok);
    f
}

fn last_error() -> String {
    let p = bc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn build_evaluate_and_serialize() {
    let bits = CString::new("0001").unwrap();
    let mut f = ptr::null_mut();
    unsafe {
        assert_eq!(bc_function_from_bits(2, bits.as_ptr(), &mut f), BcStatus::Ok);
        assert_eq!(bc_function_arity(f), 2);
        let mut v = 0i8;
        assert_eq!(bc_function_evaluate(f, 0, &mut v), BcStatus::Ok);
        assert_eq!(v, 1);
        assert_eq!(bc_function_evaluate(f, 3, &mut v), BcStatus::Ok);
        assert_eq!(v, -1);
        assert_eq!(bc_function_evaluate(f, 4, &mut v), BcStatus::InvalidArgument);

        let mut s = ptr::null_mut();
        assert_eq!(bc_function_to_bfn(f, &mut s), BcStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "n 2\n0001\n");
        let mut g = ptr::null_mut();
        assert_eq!(bc_function_from_bfn(s, &mut g), BcStatus::Ok);
        bc_string_free(s);
        let mut h = 0.0;
        assert_eq!(bc_efi_ratio(g, &mut h), BcStatus::Ok);
        assert_eq!(h, 2.0);
        bc_function_free(g);
        bc_function_free(f);
    }
}

#[test]
fn spectrum_of_or2() {
    let f = zoo("or", 2, 0);
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(bc_function_spectrum(f, &mut s), BcStatus::Ok);
        assert_eq!(bc_spectrum_arity(s), 2);
        let mut buf = [0.0; 4];
        assert_eq!(bc_spectrum_copy(s, buf.as_mut_ptr(), 3), BcStatus::BufferTooSmall);
        assert_eq!(bc_spectrum_copy(s, buf.as_mut_ptr(), 4), BcStatus::Ok);
        assert_eq!(buf, [0.5, 0.5, 0.5, -0.5]);
        let mut c = 0.0;
        assert_eq!(bc_spectrum_get(s, 3, &mut c), BcStatus::Ok);
        assert_eq!(c, -0.5);
        assert_eq!(bc_spectrum_get(s, 4, &mut c), BcStatus::InvalidArgument);
        bc_spectrum_free(s);
        bc_function_free(f);
    }
}

#[test]
fn influences_and_social_choice() {
    let maj = zoo("maj", 3, 0);
    unsafe {
        let mut v = 0.0;
        assert_eq!(bc_influence(maj, 2, &mut v), BcStatus::Ok);
        assert_eq!(v, 0.5);
        assert_eq!(bc_total_influence(maj, &mut v), BcStatus::Ok);
        assert_eq!(v, 1.5);
        assert_eq!(bc_influence(maj, 4, &mut v), BcStatus::InvalidArgument);
        let (mut h, mut hinf) = (0.0, 0.0);
        assert_eq!(bc_entropy(maj, &mut h, &mut hinf), BcStatus::Ok);
        assert_eq!((h, hinf), (2.0, 2.0));
        let mut fkn = BcFkn::default();
        assert_eq!(bc_fkn(maj, &mut fkn), BcStatus::Ok);
        assert_eq!((fkn.w1, fkn.best_i, fkn.distance), (0.75, 1, 0.75));
        assert_eq!(bc_kkl_ratio(maj, &mut v), BcStatus::Ok);
        assert!((v - 1.5 / 3f64.ln()).abs() < 1e-12);

        let mut buf = [0u32; 3];
        let mut len = 0usize;
        let mut fin = 0.0;
        let st = bc_greedy_coalition(maj, 0.99, 1, buf.as_mut_ptr(), 1, &mut len, &mut fin);
        assert_eq!(st, BcStatus::BufferTooSmall);
        assert_eq!(len, 2);
        let st = bc_greedy_coalition(maj, 0.99, 1, buf.as_mut_ptr(), 3, &mut len, &mut fin);
        assert_eq!(st, BcStatus::Ok);
        assert_eq!((&buf[..len], fin), (&[1u32, 2][..], 1.0));
        bc_function_free(maj);
    }
}

#[test]
fn error_codes_and_messages() {
    let xor = zoo("parity", 2, 0b11);
    unsafe {
        let mut len = 0usize;
        let st = bc_greedy_coalition(xor, 0.99, 1, ptr::null_mut(), 0, &mut len, ptr::null_mut());
        assert_eq!(st, BcStatus::NotMonotone);
        assert!(last_error().contains("monotone"));
        let mut v = 0.0;
        assert_eq!(bc_kkl_ratio(ptr::null(), &mut v), BcStatus::NullPointer);
        bc_function_free(xor);

        let name = CString::new("maj").unwrap();
        let mut f = ptr::null_mut();
        assert_eq!(bc_function_zoo(name.as_ptr(), 4, 0, &mut f), BcStatus::InvalidArgument);
        assert!(f.is_null());
        let bad = CString::new("n 2\n012").unwrap();
        assert_eq!(bc_function_from_bfn(bad.as_ptr(), &mut f), BcStatus::Parse);
        assert!(last_error().contains("line 2"));
        assert_eq!(bc_function_zoo(CString::new("or").unwrap().as_ptr(), 31, 0, &mut f), BcStatus::ArityTooLarge);
        let c = zoo("and", 1, 0);
        let mut fin = 0.0;
        let st = bc_greedy_coalition(c, 0.99, 1, ptr::null_mut(), 0, &mut len, &mut fin);
        assert_eq!(st, BcStatus::BufferTooSmall);
        assert_eq!(len, 1);
        bc_function_free(c);
        assert_eq!(bc_set_max_arity(31), BcStatus::ArityTooLarge);
        // a successful call clears the message
        assert_eq!(bc_function_arity(ptr::null()), 0);
        let f = zoo("or", 2, 0);
        assert!(bc_last_error_message().is_null());
        bc_function_free(f);
    }
}

#[test]
fn verify_report() {
    let f = zoo("tribes", 2, 2);
    unsafe {
        let check = CString::new("bonami").unwrap();
        let mut passed = false;
        let mut json = ptr::null_mut();
        assert_eq!(bc_verify_json(f, check.as_ptr(), 1e-9, &mut passed, &mut json), BcStatus::Ok);
        assert!(passed);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["command"], "bonami");
        assert_eq!(v["schema"], 1);
        bc_string_free(json);
        let check = CString::new("nonsense").unwrap();
        assert_eq!(bc_verify_json(f, check.as_ptr(), 1e-9, &mut passed, &mut json), BcStatus::InvalidArgument);
        bc_function_free(f);
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/boolcube.h")).unwrap();
    for name in [
        "typedef struct BcFunction BcFunction",
        "typedef struct BcSpectrum BcSpectrum",
        "BC_STATUS_OK = 0",
        "BC_STATUS_BUFFER_TOO_SMALL",
        "bc_function_zoo",
        "bc_greedy_coalition",
        "bc_verify_json",
        "bc_last_error_message",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/boolcube.h");
    let status = std::process::Command::new(cc)
        .args(["-fsyntax-only", "-x", "c", "-std=c99", "-Wall", "-Werror", header])
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| std::process::Command::new(c).arg("--version").output().is_ok())
        .ok_or(())
}
