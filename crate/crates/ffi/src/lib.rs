//! C ABI over the `abundancy` crate.
//!
//! Every fallible call returns an [`AbStatus`]; on failure the message is kept
//! per thread and read back with [`ab_last_error`]. Values cross the boundary
//! as opaque handles or as NUL-terminated strings owned by the caller, which
//! must release them with the matching `*_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use abundancy::abundancy::{abundancy_index, sandwich_check, x_exponent, SandwichStatus};
use abundancy::arith::{is_perfect, sigma, Factorization, Natural};
use abundancy::even_perfect::{lucas_lehmer, mersenne_scan_with};
use abundancy::interval::{Comparison, IntervalReal, PrecisionConfig};
use abundancy::opn::{
    acquaah_konyagin_holds, residual_case_classify, theorem2_lower_bound, validate_eulerian,
    CheckStatus, ConstraintReport, EulerianCandidate, ResidualCase,
};
use abundancy::ratio::render;
use abundancy::report::run_report;
use abundancy::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    NotPrime = 5,
    NotCoprime = 6,
    Premise = 7,
    ResourceLimit = 8,
    Cap = 9,
    Zero = 10,
    BufferTooSmall = 11,
    Panic = 12,
}

/// Outcome of an enclosure comparison or a three-way check.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbVerdict {
    Less = -1,
    Undecided = 0,
    Greater = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbSandwich {
    Holds = 0,
    Violated = 1,
    Undecided = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbCheckStatus {
    Pass = 0,
    Fail = 1,
    Undecided = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbResidualCase {
    /// `q = 5`
    Q5 = 0,
    /// `q = 5 (mod 12)`, `q != 5`
    FiveMod12 = 1,
    /// `q = 1 (mod 12)`
    OneMod12 = 2,
}

/// Closed interval of doubles enclosing a real value, with the working precision
/// in bits that produced it.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AbBounds {
    pub lo: f64,
    pub hi: f64,
    pub bits: u32,
}

/// A factored positive integer.
pub struct AbFactorization(Factorization);

/// A candidate `q^k n^2`.
pub struct AbCandidate(EulerianCandidate);

/// The named checks produced by validating a candidate.
pub struct AbReport(ConstraintReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> AbStatus {
    match e {
        Error::Zero => AbStatus::Zero,
        Error::ResourceLimit(_) => AbStatus::ResourceLimit,
        Error::OracleCap { .. } | Error::ScanCap { .. } => AbStatus::Cap,
        Error::NotPrime(_) => AbStatus::NotPrime,
        Error::Factorization(_) | Error::Parse(_) => AbStatus::Parse,
        Error::Domain(_) => AbStatus::Domain,
        Error::NotCoprime(_) => AbStatus::NotCoprime,
        Error::Premise(_) => AbStatus::Premise,
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard<F>(f: F) -> AbStatus
where
    F: FnOnce() -> Result<(), (AbStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AbStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            AbStatus::Panic
        }
    }
}

fn lib<T>(r: abundancy::Result<T>) -> Result<T, (AbStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (AbStatus, String) {
    (AbStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (AbStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (AbStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (AbStatus, String)> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, (AbStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior NULs removed")
        .into_raw()
}

fn config(initial_bits: u32, max_bits: u32) -> Result<PrecisionConfig, (AbStatus, String)> {
    lib(PrecisionConfig::new(initial_bits, max_bits))
}

fn bounds(x: &IntervalReal) -> AbBounds {
    let (lo, hi) = x.to_f64_bounds();
    AbBounds {
        lo,
        hi,
        bits: x.bits(),
    }
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `3^2*5` or a bare decimal integer.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_factorization_parse(
    text: *const c_char,
    out: *mut *mut AbFactorization,
) -> AbStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let f: Factorization = lib(read_str(text, "text")?.parse())?;
        *out = Box::into_raw(Box::new(AbFactorization(f)));
        Ok(())
    })
}

/// # Safety
/// `f` must be NULL or a handle from [`ab_factorization_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ab_factorization_free(f: *mut AbFactorization) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Canonical text form, e.g. `3^2*5`.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_factorization_to_string(
    f: *const AbFactorization,
    out: *mut *mut c_char,
) -> AbStatus {
    guard(|| {
        let f = handle(f, "factorization")?;
        *out_ref(out, "out")? = to_c(f.0.to_string());
        Ok(())
    })
}

/// Decimal value of the factored integer.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_factorization_value(
    f: *const AbFactorization,
    out: *mut *mut c_char,
) -> AbStatus {
    guard(|| {
        let f = handle(f, "factorization")?;
        *out_ref(out, "out")? = to_c(f.0.value().to_string());
        Ok(())
    })
}

/// `sigma(n)` in decimal.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_sigma(f: *const AbFactorization, out: *mut *mut c_char) -> AbStatus {
    guard(|| {
        let f = handle(f, "factorization")?;
        *out_ref(out, "out")? = to_c(sigma(&f.0).to_string());
        Ok(())
    })
}

/// `I(n)` as `num/den` in lowest terms.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_abundancy_index(
    f: *const AbFactorization,
    out: *mut *mut c_char,
) -> AbStatus {
    guard(|| {
        let f = handle(f, "factorization")?;
        *out_ref(out, "out")? = to_c(render(&abundancy_index(&f.0)));
        Ok(())
    })
}

/// Whether `sigma(n) = 2n`.
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_is_perfect(f: *const AbFactorization, out: *mut bool) -> AbStatus {
    guard(|| {
        let f = handle(f, "factorization")?;
        *out_ref(out, "out")? = lib(is_perfect(&f.0.value()))?;
        Ok(())
    })
}

/// Enclosure of `x(n)`; `range_certified` reports whether `1 < x(n) < 2` was
/// certified.
///
/// # Safety
/// `f` must be a live handle; `out` and `range_certified` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ab_exponent(
    f: *const AbFactorization,
    initial_bits: u32,
    max_bits: u32,
    out: *mut AbBounds,
    range_certified: *mut bool,
) -> AbStatus {
    guard(|| {
        let f = handle(f, "factorization")?;
        let x = lib(x_exponent(&f.0, &config(initial_bits, max_bits)?))?;
        *out_ref(out, "out")? = bounds(&x.value);
        *out_ref(range_certified, "range_certified")? = x.range_certified;
        Ok(())
    })
}

/// `min(x(a), x(b)) < x(ab) < max(x(a), x(b))` for coprime `a, b > 1`.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_sandwich(
    a: *const AbFactorization,
    b: *const AbFactorization,
    initial_bits: u32,
    max_bits: u32,
    out: *mut AbSandwich,
) -> AbStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        let o = lib(sandwich_check(&a.0, &b.0, &config(initial_bits, max_bits)?))?;
        *out_ref(out, "out")? = match o.status {
            SandwichStatus::Holds => AbSandwich::Holds,
            SandwichStatus::Violated => AbSandwich::Violated,
            SandwichStatus::Undecided => AbSandwich::Undecided,
        };
        Ok(())
    })
}

/// Parses `q=<int> k=<int> n=<factored>`.
///
/// # Safety
/// `line` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_candidate_parse(
    line: *const c_char,
    out: *mut *mut AbCandidate,
) -> AbStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let c: EulerianCandidate = lib(read_str(line, "line")?.parse())?;
        *out = Box::into_raw(Box::new(AbCandidate(c)));
        Ok(())
    })
}

/// # Safety
/// `c` must be NULL or a handle from [`ab_candidate_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ab_candidate_free(c: *mut AbCandidate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Runs every named check on the candidate.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_candidate_validate(
    c: *const AbCandidate,
    initial_bits: u32,
    max_bits: u32,
    out: *mut *mut AbReport,
) -> AbStatus {
    guard(|| {
        let c = handle(c, "candidate")?;
        let out = out_ref(out, "out")?;
        let report = lib(validate_eulerian(&c.0, &config(initial_bits, max_bits)?))?;
        *out = Box::into_raw(Box::new(AbReport(report)));
        Ok(())
    })
}

/// # Safety
/// `r` must be NULL or a handle from [`ab_candidate_validate`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ab_report_free(r: *mut AbReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of checks, or 0 for NULL.
///
/// # Safety
/// `r` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ab_report_len(r: *const AbReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.checks.len())
}

/// Status of the check named `name`.
///
/// # Safety
/// `r` must be a live handle, `name` a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn ab_report_status(
    r: *const AbReport,
    name: *const c_char,
    out: *mut AbCheckStatus,
) -> AbStatus {
    guard(|| {
        let r = handle(r, "report")?;
        let name = read_str(name, "name")?;
        let check =
            r.0.get(name)
                .ok_or_else(|| (AbStatus::Domain, format!("no check named {name:?}")))?;
        *out_ref(out, "out")? = match check.status {
            CheckStatus::Pass => AbCheckStatus::Pass,
            CheckStatus::Fail => AbCheckStatus::Fail,
            CheckStatus::Undecided => AbCheckStatus::Undecided,
        };
        Ok(())
    })
}

/// The whole report as JSON.
///
/// # Safety
/// `r` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_report_to_json(r: *const AbReport, out: *mut *mut c_char) -> AbStatus {
    guard(|| {
        let r = handle(r, "report")?;
        *out_ref(out, "out")? = to_c(r.0.to_json());
        Ok(())
    })
}

/// `q^2 < 3 n^2`, i.e. `q < n sqrt 3`, for decimal `q` and `n`.
///
/// # Safety
/// `q`, `n` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_acquaah_konyagin_holds(
    q: *const c_char,
    n: *const c_char,
    out: *mut bool,
) -> AbStatus {
    guard(|| {
        let parse = |s: &str, what: &str| {
            s.parse::<Natural>().map_err(|_| {
                (
                    AbStatus::Parse,
                    format!("{what} is not a non-negative integer"),
                )
            })
        };
        let q = parse(read_str(q, "q")?, "q")?;
        let n = parse(read_str(n, "n")?, "n")?;
        *out_ref(out, "out")? = acquaah_konyagin_holds(&q, &n);
        Ok(())
    })
}

/// Enclosure of `f(q, u)` and its relation to `1 + sqrt 3`.
///
/// # Safety
/// `out` and `relation` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ab_theorem2_lower_bound(
    q: u64,
    u: u64,
    initial_bits: u32,
    max_bits: u32,
    out: *mut AbBounds,
    relation: *mut AbVerdict,
) -> AbStatus {
    guard(|| {
        let cfg = config(initial_bits, max_bits)?;
        let f = lib(theorem2_lower_bound(
            &Natural::from(q),
            &Natural::from(u),
            &cfg,
        ))?;
        let ceiling = abundancy::interval::one_plus_sqrt3(cfg.initial_bits);
        *out_ref(out, "out")? = bounds(&f);
        *out_ref(relation, "relation")? = match f.compare(&ceiling) {
            Comparison::Less => AbVerdict::Less,
            Comparison::Greater => AbVerdict::Greater,
            Comparison::Undecided => AbVerdict::Undecided,
        };
        Ok(())
    })
}

/// Residue class of an Euler prime `q`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_classify(q: u64, out: *mut AbResidualCase) -> AbStatus {
    guard(|| {
        let c = lib(residual_case_classify(&Natural::from(q)))?;
        *out_ref(out, "out")? = match c.case {
            ResidualCase::CaseQ5 => AbResidualCase::Q5,
            ResidualCase::Case5Mod12 => AbResidualCase::FiveMod12,
            ResidualCase::Case1Mod12 => AbResidualCase::OneMod12,
        };
        Ok(())
    })
}

/// Whether `2^p - 1` is prime.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_lucas_lehmer(p: u64, out: *mut bool) -> AbStatus {
    guard(|| {
        *out_ref(out, "out")? = lib(lucas_lehmer(p))?;
        Ok(())
    })
}

/// Writes the exponents `p <= limit` with `2^p - 1` prime into `buf`. `len`
/// receives the count even when `cap` is too small, in which case the call
/// returns `BufferTooSmall` and writes nothing.
///
/// # Safety
/// `buf` must hold `cap` values (or be NULL with `cap = 0`); `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ab_mersenne_scan(
    limit: u64,
    allow_beyond_cap: bool,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> AbStatus {
    guard(|| {
        let len = out_ref(len, "len")?;
        let ps = lib(mersenne_scan_with(limit, allow_beyond_cap))?;
        *len = ps.len();
        if ps.len() > cap {
            return Err((
                AbStatus::BufferTooSmall,
                format!("{} exponents do not fit in {cap}", ps.len()),
            ));
        }
        if !ps.is_empty() {
            if buf.is_null() {
                return Err(null("buf"));
            }
            ptr::copy_nonoverlapping(ps.as_ptr(), buf, ps.len());
        }
        Ok(())
    })
}

/// Full reproduction report as JSON. `clean` is set when no suite has failures
/// or undecided cases and every constant matches.
///
/// # Safety
/// `out` and `clean` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ab_run_report(
    seed: u64,
    initial_bits: u32,
    max_bits: u32,
    out: *mut *mut c_char,
    clean: *mut bool,
) -> AbStatus {
    guard(|| {
        let report = lib(run_report(seed, &config(initial_bits, max_bits)?))?;
        *out_ref(clean, "clean")? = report.all_clean();
        *out_ref(out, "out")? = to_c(report.to_json());
        Ok(())
    })
}
