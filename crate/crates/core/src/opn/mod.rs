//! Odd-perfect-number candidates in Eulerian form `N = q^k n^2` and the
//! predicates a genuine one would have to satisfy.

mod report;
mod theorem2;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::abundancy::{abundancy_index, index_lower_bound_at};
use crate::arith::{factorize, gcd, is_prime, sigma, Factorization, Natural};
use crate::error::{Error, Result};
use crate::interval::{self, certify_against, Comparison, PrecisionConfig};
use crate::ratio::{from_natural, ratio, render, Ratio};

pub use report::{Check, CheckStatus, ConstraintReport};
pub use theorem2::{
    limit_lower_bound, theorem2_ceiling, theorem2_contradiction_scan, theorem2_lower_bound,
    theorem2_lower_bound_at, ScanEntry, Theorem2Scan, THEOREM2_MARGIN,
};

/// Lower bound on `N` from the literature: `N > 10^1500`.
pub const SIZE_EXPONENT: u32 = 1500;
/// Lower bound on the number of distinct primes of `N`.
pub const MIN_OMEGA: usize = 10;

/// Hypothetical odd perfect number `q^k n^2`. Construction only checks syntax;
/// the structural conditions are reported by [`validate_eulerian`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EulerianCandidate {
    pub q: Natural,
    pub k: u32,
    pub n: Factorization,
}

impl EulerianCandidate {
    pub fn new(q: Natural, k: u32, n: Factorization) -> Result<Self> {
        if q < Natural::from(2u32) {
            return Err(Error::Parse(format!("q must be at least 2, got {q}")));
        }
        if k == 0 {
            return Err(Error::Parse("k must be at least 1".into()));
        }
        Ok(Self { q, k, n })
    }

    pub fn n_value(&self) -> Natural {
        self.n.value()
    }

    pub fn euler_part(&self) -> Natural {
        num_traits::pow(self.q.clone(), self.k as usize)
    }

    pub fn euler_part_factorization(&self) -> Result<Factorization> {
        Ok(factorize(&self.q)?.pow(self.k))
    }

    pub fn value_factorization(&self) -> Result<Factorization> {
        Ok(self.euler_part_factorization()?.mul(&self.n.squared()))
    }
}

impl fmt::Display for EulerianCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={} k={} n={}", self.q, self.k, self.n)
    }
}

/// Parses `q=<int> k=<int> n=<factored-integer>`; fields may come in any order.
impl FromStr for EulerianCandidate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (mut q, mut k, mut n) = (None, None, None);
        for token in s.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {token:?}")))?;
            let slot = match key {
                "q" => &mut q,
                "k" => &mut k,
                "n" => &mut n,
                _ => return Err(Error::Parse(format!("unknown field {key:?}"))),
            };
            if slot.replace(value).is_some() {
                return Err(Error::Parse(format!("field {key:?} given twice")));
            }
        }
        let missing = |f: &str| Error::Parse(format!("missing field {f:?}"));
        let q: Natural = q
            .ok_or_else(|| missing("q"))?
            .parse()
            .map_err(|_| Error::Parse("q is not a non-negative integer".into()))?;
        let k: u32 = k
            .ok_or_else(|| missing("k"))?
            .parse()
            .map_err(|_| Error::Parse("k is not a small positive integer".into()))?;
        let n: Factorization = n.ok_or_else(|| missing("n"))?.parse()?;
        Self::new(q, k, n)
    }
}

fn status(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

fn decimal_digits(n: &Natural) -> usize {
    n.to_string().len()
}

/// Runs every named check on the candidate. Failed constraints are report
/// entries; only a factorization that cannot be computed is an error.
pub fn validate_eulerian(c: &EulerianCandidate, cfg: &PrecisionConfig) -> Result<ConstraintReport> {
    let mut report = ConstraintReport::new(c.to_string());
    let n_val = c.n_value();
    let euler = c.euler_part();
    let euler_fact = c.euler_part_factorization()?;
    let full = c.value_factorization()?;
    let big_n = full.value();

    let q_prime = is_prime(&c.q);
    report.push(Check::exact(
        "q_prime",
        status(q_prime),
        format!("q = {} is {}prime", c.q, if q_prime { "" } else { "not " }),
    ));
    let q_mod = (&c.q % 4u32).to_u32().unwrap_or(0);
    report.push(Check::exact(
        "q_mod_4",
        status(q_mod == 1),
        format!("q mod 4 = {q_mod}"),
    ));
    report.push(Check::exact(
        "k_mod_4",
        status(c.k % 4 == 1),
        format!("k mod 4 = {}", c.k % 4),
    ));
    let g = gcd(&c.q, &n_val);
    report.push(Check::exact(
        "gcd_q_n",
        status(g.is_one()),
        format!("gcd(q, n) = {g}"),
    ));
    report.push(Check::exact(
        "n_odd",
        status(n_val.is_odd()),
        format!("n = {n_val}"),
    ));

    let bound = num_traits::pow(Natural::from(10u32), SIZE_EXPONENT as usize);
    report.push(Check::exact(
        "size_above_10_1500",
        status(big_n > bound),
        format!("N has {} decimal digits", decimal_digits(&big_n)),
    ));
    report.push(Check::exact(
        "omega_at_least_10",
        status(full.omega() >= MIN_OMEGA),
        format!("omega(N) = {}", full.omega()),
    ));

    let euler_index = abundancy_index(&euler_fact);
    report.push(Check::exact(
        "euler_index_below_5_4",
        status(euler_index < ratio(5, 4)),
        format!("I(q^k) = {} vs 5/4", render(&euler_index)),
    ));

    let shortcut = if c.k > 1 {
        Check::exact(
            "k_above_1_forces_q_below_n",
            status(c.q < n_val),
            format!("k = {}, q = {} vs n = {}", c.k, c.q, n_val),
        )
    } else {
        Check::exact(
            "k_above_1_forces_q_below_n",
            CheckStatus::Pass,
            "k = 1, not applicable".to_string(),
        )
    };
    report.push(shortcut);

    report.push(theorem1_check(c, &full, cfg)?);

    let i_n = abundancy_index(&full);
    report.push(Check::exact(
        "perfection",
        status(i_n == ratio(2, 1)),
        format!(
            "sigma(N) = {}, N = {}, I(N) = {}",
            abbreviate(&sigma(&full)),
            abbreviate(&big_n),
            render(&i_n)
        ),
    ));
    debug_assert_eq!(euler, euler_fact.value());
    Ok(report)
}

fn abbreviate(n: &Natural) -> String {
    let s = n.to_string();
    if s.len() <= 40 {
        s
    } else {
        format!("{}...{} ({} digits)", &s[..12], &s[s.len() - 12..], s.len())
    }
}

/// `I(n) > (8/5)^(1/x(u))` with `u` the smallest prime of `N`.
fn theorem1_check(
    c: &EulerianCandidate,
    full: &Factorization,
    cfg: &PrecisionConfig,
) -> Result<Check> {
    const NAME: &str = "index_above_theorem1_bound";
    let u = match full.smallest_prime() {
        Some(u) => u.clone(),
        None => {
            return Ok(Check::exact(NAME, CheckStatus::Fail, "N = 1".to_string()));
        }
    };
    if u == Natural::from(2u32) {
        return Ok(Check::exact(
            NAME,
            CheckStatus::Fail,
            "N is even, bound requires an odd smallest prime".to_string(),
        ));
    }
    let i_n = abundancy_index(&c.n);
    let certified = certify_against(cfg, &i_n, |bits| {
        index_lower_bound_at(&ratio(8, 5), &u, bits)
    })?;
    let st = match certified.outcome {
        Comparison::Less => CheckStatus::Pass,
        Comparison::Greater => CheckStatus::Fail,
        Comparison::Undecided => CheckStatus::Undecided,
    };
    Ok(Check {
        name: NAME.into(),
        status: st,
        witness: format!(
            "I(n) = {} vs (8/5)^(1/x({u})) = {}",
            render(&i_n),
            certified.enclosure
        ),
        bits: Some(certified.bits),
    })
}

/// `q < n sqrt(3)`, decided exactly as `q^2 < 3 n^2`.
pub fn acquaah_konyagin_holds(q: &Natural, n: &Natural) -> bool {
    q * q < n * n * 3u32
}

/// The same comparison through enclosures of `n sqrt(3) - q`.
pub fn acquaah_konyagin_enclosure(
    q: &Natural,
    n: &Natural,
    cfg: &PrecisionConfig,
) -> Result<Comparison> {
    let n = from_natural(n);
    let q = from_natural(q);
    let c = certify_against(cfg, &Ratio::from_integer(0.into()), |bits| {
        let root = interval::sqrt_ratio(&ratio(3, 1), bits)?;
        let scaled = &root * &interval::IntervalReal::from_ratio(&n, bits);
        Ok(&scaled - &interval::IntervalReal::from_ratio(&q, bits))
    })?;
    Ok(c.outcome)
}

/// Truth values of the three comparisons in the biconditional chain
/// `q^k < n <=> sigma(q^k)/n < sigma(n)/q^k <=> sigma(q^k) < sigma(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma4Outcome {
    /// `q^k < n`
    pub p1: bool,
    /// `sigma(q^k) q^k < sigma(n) n`
    pub p2: bool,
    /// `sigma(q^k) < sigma(n)`
    pub p3: bool,
}

impl Lemma4Outcome {
    pub fn p1_implies_p3(&self) -> bool {
        !self.p1 || self.p3
    }

    pub fn p1_implies_p2(&self) -> bool {
        !self.p1 || self.p2
    }

    pub fn p2_implies_p3(&self) -> bool {
        !self.p2 || self.p3
    }

    /// The implications that follow from `I(q^k) < 2^(1/3) < I(n)` alone.
    pub fn provable_implications_hold(&self) -> bool {
        self.p1_implies_p3() && self.p1_implies_p2() && self.p2_implies_p3()
    }

    /// Observed only; not a consequence of the premise for arbitrary candidates.
    pub fn p3_implies_p1(&self) -> bool {
        !self.p3 || self.p1
    }
}

/// Checks the premise `I(q^k)^3 < 2 < I(n)^3` exactly.
pub fn lemma4_premise(c: &EulerianCandidate) -> Result<()> {
    let iq = abundancy_index(&c.euler_part_factorization()?);
    let inn = abundancy_index(&c.n);
    let two = ratio(2, 1);
    let iq3 = &iq * &iq * &iq;
    let in3 = &inn * &inn * &inn;
    if iq3 >= two {
        return Err(Error::Premise(format!(
            "I(q^k)^3 = {} is not below 2",
            render(&iq3)
        )));
    }
    if in3 <= two {
        return Err(Error::Premise(format!(
            "I(n)^3 = {} is not above 2",
            render(&in3)
        )));
    }
    Ok(())
}

pub fn lemma4_predicates(c: &EulerianCandidate) -> Result<Lemma4Outcome> {
    lemma4_premise(c)?;
    let qk = c.euler_part();
    let n = c.n_value();
    let sigma_qk = sigma(&c.euler_part_factorization()?);
    let sigma_n = sigma(&c.n);
    Ok(Lemma4Outcome {
        p1: qk < n,
        p2: &sigma_qk * &qk < &sigma_n * &n,
        p3: sigma_qk < sigma_n,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ResidualCase {
    /// `q = 5`
    CaseQ5,
    /// `q = 5 (mod 12)`, `q != 5`
    #[serde(rename = "CASE_5_MOD_12")]
    Case5Mod12,
    /// `q = 1 (mod 12)`
    #[serde(rename = "CASE_1_MOD_12")]
    Case1Mod12,
}

impl fmt::Display for ResidualCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResidualCase::CaseQ5 => "CASE_Q5",
            ResidualCase::Case5Mod12 => "CASE_5_MOD_12",
            ResidualCase::Case1Mod12 => "CASE_1_MOD_12",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub q: String,
    pub case: ResidualCase,
    pub notes: Vec<String>,
}

/// Splits Euler primes by their residue mod 12, i.e. by whether `3 | (q+1)/2`.
pub fn residual_case_classify(q: &Natural) -> Result<Classification> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q.to_string()));
    }
    if (q % 4u32) != BigUint::one() {
        return Err(Error::Domain(format!("{q} is not 1 mod 4")));
    }
    let half = (q + 1u32) / 2u32;
    let three_divides = (&half % 3u32) == Natural::from(0u32);
    let mut notes = Vec::new();
    let case = if *q == Natural::from(5u32) {
        notes.push("k = 1 is a known necessary condition for q = 5, hence 5 = q < n".to_string());
        notes.push(format!("(q+1)/2 = {half} and 3 | (q+1)/2 | n^2"));
        ResidualCase::CaseQ5
    } else if three_divides {
        notes.push(format!(
            "q = 2 (mod 3): (q+1)/2 = {half} is divisible by 3, so 3 | n^2 when k = 1"
        ));
        notes.push("this is the residual case 5 != q = 5 (mod 12)".to_string());
        ResidualCase::Case5Mod12
    } else {
        notes.push(format!(
            "(q+1)/2 = {half} is not divisible by 3; no divisibility by 3 is forced"
        ));
        ResidualCase::Case1Mod12
    };
    debug_assert_eq!(
        three_divides,
        matches!(case, ResidualCase::CaseQ5 | ResidualCase::Case5Mod12)
    );
    Ok(Classification {
        q: q.to_string(),
        case,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_below;

    fn cand(s: &str) -> EulerianCandidate {
        s.parse().unwrap()
    }

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn st(r: &ConstraintReport, name: &str) -> CheckStatus {
        r.get(name)
            .unwrap_or_else(|| panic!("missing {name}"))
            .status
    }

    #[test]
    fn parse_candidate() {
        let c = cand("q=13 k=1 n=3^2");
        assert_eq!(c.q, nat(13));
        assert_eq!(c.n_value(), nat(9));
        assert_eq!(cand("n=9 k=1 q=13"), c);
        assert_eq!(c.to_string(), "q=13 k=1 n=3^2");
        for bad in [
            "q=13 k=1",
            "q=13 k=0 n=9",
            "q=1 k=1 n=9",
            "q=13 k=1 n=4^2",
            "q=13 k=1 n=9 x=2",
            "q=13 q=5 k=1 n=9",
            "q13 k=1 n=9",
        ] {
            assert!(bad.parse::<EulerianCandidate>().is_err(), "{bad}");
        }
    }

    #[test]
    fn validate_tiny_candidate() {
        let r = validate_eulerian(&cand("q=5 k=1 n=3"), &PrecisionConfig::default()).unwrap();
        assert_eq!(st(&r, "size_above_10_1500"), CheckStatus::Fail);
        assert_eq!(st(&r, "omega_at_least_10"), CheckStatus::Fail);
        assert_eq!(st(&r, "perfection"), CheckStatus::Fail);
        assert!(r
            .get("perfection")
            .unwrap()
            .witness
            .contains("sigma(N) = 78, N = 45"));
        assert_eq!(st(&r, "q_prime"), CheckStatus::Pass);
        assert_eq!(st(&r, "euler_index_below_5_4"), CheckStatus::Pass);
        // I(3) = 4/3 < 1.4444...
        assert_eq!(st(&r, "index_above_theorem1_bound"), CheckStatus::Fail);
        assert_eq!(r.checks.len(), 11);
    }

    #[test]
    fn validate_form_checks() {
        let r = validate_eulerian(&cand("q=13 k=1 n=9"), &PrecisionConfig::default()).unwrap();
        for name in ["q_prime", "q_mod_4", "k_mod_4", "gcd_q_n", "n_odd"] {
            assert_eq!(st(&r, name), CheckStatus::Pass, "{name}");
        }
        assert_eq!(st(&r, "size_above_10_1500"), CheckStatus::Fail);
        assert_eq!(st(&r, "omega_at_least_10"), CheckStatus::Fail);
        // I(9) = 13/9 = 1.4444... just above the u = 3 bound 1.44440557
        assert_eq!(st(&r, "index_above_theorem1_bound"), CheckStatus::Pass);

        let r = validate_eulerian(&cand("q=5 k=2 n=3"), &PrecisionConfig::default()).unwrap();
        assert_eq!(st(&r, "k_mod_4"), CheckStatus::Fail);
        // k > 1 with q >= n contradicts q < n
        assert_eq!(st(&r, "k_above_1_forces_q_below_n"), CheckStatus::Fail);

        let r = validate_eulerian(&cand("q=7 k=1 n=2*7"), &PrecisionConfig::default()).unwrap();
        assert_eq!(st(&r, "q_mod_4"), CheckStatus::Fail);
        assert_eq!(st(&r, "gcd_q_n"), CheckStatus::Fail);
        assert_eq!(st(&r, "n_odd"), CheckStatus::Fail);
        assert_eq!(st(&r, "index_above_theorem1_bound"), CheckStatus::Fail);

        let r = validate_eulerian(&cand("q=15 k=1 n=7"), &PrecisionConfig::default()).unwrap();
        assert_eq!(st(&r, "q_prime"), CheckStatus::Fail);
    }

    #[test]
    fn acquaah_konyagin_examples() {
        assert!(acquaah_konyagin_holds(&nat(5), &nat(3)));
        assert!(!acquaah_konyagin_holds(&nat(13), &nat(7)));
        assert!(acquaah_konyagin_holds(&nat(13), &nat(8)));
        let cfg = PrecisionConfig::default();
        assert_eq!(
            acquaah_konyagin_enclosure(&nat(5), &nat(3), &cfg).unwrap(),
            Comparison::Greater
        );
        assert_eq!(
            acquaah_konyagin_enclosure(&nat(13), &nat(7), &cfg).unwrap(),
            Comparison::Less
        );
    }

    #[test]
    fn lemma4_examples() {
        let a = lemma4_predicates(&cand("q=5 k=1 n=9")).unwrap();
        assert_eq!((a.p1, a.p2, a.p3), (true, true, true));
        let b = lemma4_predicates(&cand("q=13 k=1 n=9")).unwrap();
        assert_eq!((b.p1, b.p2, b.p3), (false, false, false));
        let c = lemma4_predicates(&cand("q=5 k=1 n=3")).unwrap();
        assert_eq!((c.p1, c.p2, c.p3), (false, false, false));
        for o in [a, b, c] {
            assert!(o.provable_implications_hold());
        }
        // I(5) = 6/5 and (6/5)^3 < 2 but I(25)^3 = (31/25)^3 < 2
        assert!(matches!(
            lemma4_predicates(&cand("q=13 k=1 n=5^2")),
            Err(Error::Premise(_))
        ));
        // I(3) = 4/3 as the Euler part: (4/3)^3 > 2
        assert!(matches!(
            lemma4_predicates(&cand("q=3 k=1 n=9")),
            Err(Error::Premise(_))
        ));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            residual_case_classify(&nat(5)).unwrap().case,
            ResidualCase::CaseQ5
        );
        assert_eq!(
            residual_case_classify(&nat(17)).unwrap().case,
            ResidualCase::Case5Mod12
        );
        assert_eq!(
            residual_case_classify(&nat(13)).unwrap().case,
            ResidualCase::Case1Mod12
        );
        assert!(residual_case_classify(&nat(7)).is_err());
        assert!(residual_case_classify(&nat(21)).is_err());
        assert!(residual_case_classify(&nat(17)).unwrap().notes[0].contains("(q+1)/2 = 9"));
    }

    #[test]
    fn classifier_partition() {
        for q in primes_below(100_000).into_iter().filter(|q| q % 4 == 1) {
            let c = residual_case_classify(&nat(q as u64)).unwrap();
            let three_divides = (q + 1) % 6 == 0;
            let in_first_two = matches!(c.case, ResidualCase::CaseQ5 | ResidualCase::Case5Mod12);
            assert_eq!(three_divides, in_first_two, "q = {q}");
            assert_eq!(c.case == ResidualCase::CaseQ5, q == 5);
        }
    }

    #[test]
    fn case_names_match_serialized_form() {
        for case in [
            ResidualCase::CaseQ5,
            ResidualCase::Case5Mod12,
            ResidualCase::Case1Mod12,
        ] {
            let json = serde_json::to_string(&case).unwrap();
            assert_eq!(json, format!("\"{case}\""));
        }
    }
}
