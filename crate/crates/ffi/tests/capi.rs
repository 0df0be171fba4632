use std::ffi::{c_char, CStr, CString};
use std::process::Command;
use std::ptr;

use abundancy_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    ab_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = ab_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

unsafe fn parse(text: &str) -> *mut AbFactorization {
    let mut f = ptr::null_mut();
    assert_eq!(
        ab_factorization_parse(c(text).as_ptr(), &mut f),
        AbStatus::Ok
    );
    f
}

#[test]
fn factorization_round_trip() {
    unsafe {
        let f = parse("45");
        let mut s = ptr::null_mut();
        assert_eq!(ab_factorization_to_string(f, &mut s), AbStatus::Ok);
        assert_eq!(take(s), "3^2*5");
        assert_eq!(ab_factorization_value(f, &mut s), AbStatus::Ok);
        assert_eq!(take(s), "45");
        assert_eq!(ab_sigma(f, &mut s), AbStatus::Ok);
        assert_eq!(take(s), "78");
        assert_eq!(ab_abundancy_index(f, &mut s), AbStatus::Ok);
        assert_eq!(take(s), "26/15");
        let mut perfect = true;
        assert_eq!(ab_is_perfect(f, &mut perfect), AbStatus::Ok);
        assert!(!perfect);
        ab_factorization_free(f);

        let f = parse("2^4*31");
        assert_eq!(ab_is_perfect(f, &mut perfect), AbStatus::Ok);
        assert!(perfect);
        ab_factorization_free(f);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(
            ab_factorization_parse(c("3^x").as_ptr(), &mut f),
            AbStatus::Parse
        );
        assert!(f.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(
            ab_factorization_parse(ptr::null(), &mut f),
            AbStatus::NullPointer
        );
        assert!(last_error().contains("text"));

        assert_eq!(
            ab_factorization_parse(c("0").as_ptr(), &mut f),
            AbStatus::Zero
        );

        let mut ok = false;
        assert_eq!(ab_lucas_lehmer(1, &mut ok), AbStatus::Domain);
        assert_eq!(
            ab_sigma(ptr::null(), ptr::null_mut()),
            AbStatus::NullPointer
        );

        let bad = [0xffu8, 0];
        assert_eq!(
            ab_factorization_parse(bad.as_ptr().cast(), &mut f),
            AbStatus::InvalidUtf8
        );

        // freeing NULL is a no-op
        ab_factorization_free(ptr::null_mut());
        ab_string_free(ptr::null_mut());
        ab_candidate_free(ptr::null_mut());
        ab_report_free(ptr::null_mut());
    }
}

#[test]
fn exponent_and_sandwich() {
    unsafe {
        let three = parse("3");
        let five = parse("5");
        let nine = parse("9");
        let mut b = AbBounds::default();
        let mut certified = false;
        assert_eq!(
            ab_exponent(three, 256, 4096, &mut b, &mut certified),
            AbStatus::Ok
        );
        assert!(certified);
        assert!(b.lo <= 1.2782332141567583 && 1.2782332141567583 <= b.hi);
        assert!(b.hi - b.lo < 1e-12);
        assert_eq!(b.bits, 256);

        let mut s = AbSandwich::Undecided;
        assert_eq!(ab_sandwich(three, five, 256, 4096, &mut s), AbStatus::Ok);
        assert_eq!(s, AbSandwich::Holds);
        assert_eq!(
            ab_sandwich(three, nine, 256, 4096, &mut s),
            AbStatus::NotCoprime
        );
        assert_eq!(
            ab_exponent(three, 0, 4096, &mut b, &mut certified),
            AbStatus::Domain
        );
        for f in [three, five, nine] {
            ab_factorization_free(f);
        }
    }
}

#[test]
fn candidate_report() {
    unsafe {
        let mut cand = ptr::null_mut();
        assert_eq!(
            ab_candidate_parse(c("q=5 k=1 n=3").as_ptr(), &mut cand),
            AbStatus::Ok
        );
        let mut report = ptr::null_mut();
        assert_eq!(
            ab_candidate_validate(cand, 256, 4096, &mut report),
            AbStatus::Ok
        );
        assert_eq!(ab_report_len(report), 11);
        let mut st = AbCheckStatus::Undecided;
        assert_eq!(
            ab_report_status(report, c("q_mod_4").as_ptr(), &mut st),
            AbStatus::Ok
        );
        assert_eq!(st, AbCheckStatus::Pass);
        assert_eq!(
            ab_report_status(report, c("perfection").as_ptr(), &mut st),
            AbStatus::Ok
        );
        assert_eq!(st, AbCheckStatus::Fail);
        assert_eq!(
            ab_report_status(report, c("no_such_check").as_ptr(), &mut st),
            AbStatus::Domain
        );
        let mut json = ptr::null_mut();
        assert_eq!(ab_report_to_json(report, &mut json), AbStatus::Ok);
        let json = take(json);
        assert!(json.contains("\"size_above_10_1500\""));
        assert!(json.contains("26/15"));
        ab_report_free(report);
        ab_candidate_free(cand);

        assert_eq!(
            ab_candidate_parse(c("q=5 n=3").as_ptr(), &mut cand),
            AbStatus::Parse
        );
        assert!(last_error().contains("k"));
    }
}

#[test]
fn opn_predicates() {
    unsafe {
        let mut holds = false;
        assert_eq!(
            ab_acquaah_konyagin_holds(c("13").as_ptr(), c("8").as_ptr(), &mut holds),
            AbStatus::Ok
        );
        assert!(holds);
        assert_eq!(
            ab_acquaah_konyagin_holds(c("13").as_ptr(), c("7").as_ptr(), &mut holds),
            AbStatus::Ok
        );
        assert!(!holds);

        let mut b = AbBounds::default();
        let mut rel = AbVerdict::Undecided;
        assert_eq!(
            ab_theorem2_lower_bound(5, 5, 256, 4096, &mut b, &mut rel),
            AbStatus::Ok
        );
        assert_eq!(rel, AbVerdict::Greater);
        assert!(b.lo <= 2.7418138305372914 && 2.7418138305372914 <= b.hi);
        assert_eq!(
            ab_theorem2_lower_bound(5, 3, 256, 4096, &mut b, &mut rel),
            AbStatus::Ok
        );
        assert_eq!(rel, AbVerdict::Less);
        assert_eq!(
            ab_theorem2_lower_bound(7, 5, 256, 4096, &mut b, &mut rel),
            AbStatus::Domain
        );

        let mut case = AbResidualCase::OneMod12;
        assert_eq!(ab_classify(5, &mut case), AbStatus::Ok);
        assert_eq!(case, AbResidualCase::Q5);
        assert_eq!(ab_classify(17, &mut case), AbStatus::Ok);
        assert_eq!(case, AbResidualCase::FiveMod12);
        assert_eq!(ab_classify(13, &mut case), AbStatus::Ok);
        assert_eq!(case, AbResidualCase::OneMod12);
        assert_eq!(ab_classify(21, &mut case), AbStatus::NotPrime);
    }
}

#[test]
fn mersenne() {
    unsafe {
        let mut ok = false;
        assert_eq!(ab_lucas_lehmer(13, &mut ok), AbStatus::Ok);
        assert!(ok);
        assert_eq!(ab_lucas_lehmer(11, &mut ok), AbStatus::Ok);
        assert!(!ok);

        let mut buf = [0u64; 16];
        let mut len = 0;
        assert_eq!(
            ab_mersenne_scan(20, false, buf.as_mut_ptr(), buf.len(), &mut len),
            AbStatus::Ok
        );
        assert_eq!(&buf[..len], &[2, 3, 5, 7, 13, 17, 19]);

        assert_eq!(
            ab_mersenne_scan(130, false, buf.as_mut_ptr(), 4, &mut len),
            AbStatus::BufferTooSmall
        );
        assert_eq!(len, 12);
        assert_eq!(
            ab_mersenne_scan(3000, false, buf.as_mut_ptr(), buf.len(), &mut len),
            AbStatus::Cap
        );
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(ab_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/abundancy.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in [
        "ab_factorization_parse",
        "ab_last_error",
        "AB_STATUS_NOT_COPRIME",
        "AbBounds",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header])
        .status()
    else {
        eprintln!("no C compiler; skipped syntax check");
        return;
    };
    assert!(status.success());
}
