//! The reproduction report: every printed constant re-derived as a certified
//! enclosure, and every property suite re-run on a seeded corpus.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abundancy::{
    bound_excess_over_sqrt, index_lower_bound_at, prime_power_exponent_enclosure, sandwich_check,
    square_index_sandwich, SandwichStatus,
};
use crate::arith::{
    factorize, is_prime, primes_below, sigma, sigma_oracle, Factorization, Natural,
};
use crate::corpus;
use crate::error::Result;
use crate::even_perfect::{even_perfect_from_exponent, lucas_lehmer};
use crate::interval::{certify_against, format_radius, Comparison, IntervalReal, PrecisionConfig};
use crate::opn::{
    acquaah_konyagin_enclosure, acquaah_konyagin_holds, lemma4_predicates, limit_lower_bound,
    residual_case_classify, theorem2_ceiling, theorem2_contradiction_scan, ResidualCase,
};
use crate::ratio::{parse_ratio, ratio, Ratio};

/// Widest enclosure accepted for a reproduced constant.
pub const CONSTANT_WIDTH_EXPONENT: u32 = 10;

/// Corpus and grid sizes for the suites.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSizes {
    pub sigma_limit: u64,
    pub sandwich_pairs: usize,
    pub s_grid_prime_limit: u32,
    pub s_grid_max_exponent: u32,
    pub r_grid_prime_limit: u32,
    pub lemma4_candidates: usize,
    pub theorem2_q_limit: u64,
    pub mersenne_limit: u64,
    pub ak_pairs: usize,
    pub classifier_limit: u32,
}

impl Default for ReportSizes {
    fn default() -> Self {
        Self {
            sigma_limit: 100_000,
            sandwich_pairs: 10_000,
            s_grid_prime_limit: 1000,
            s_grid_max_exponent: 20,
            r_grid_prime_limit: 10_000,
            lemma4_candidates: 10_000,
            theorem2_q_limit: 10_000,
            mersenne_limit: 2500,
            ak_pairs: 1000,
            classifier_limit: 100_000,
        }
    }
}

impl ReportSizes {
    /// A small configuration for smoke tests.
    pub fn quick() -> Self {
        Self {
            sigma_limit: 2000,
            sandwich_pairs: 100,
            s_grid_prime_limit: 30,
            s_grid_max_exponent: 6,
            r_grid_prime_limit: 200,
            lemma4_candidates: 200,
            theorem2_q_limit: 100,
            mersenne_limit: 130,
            ak_pairs: 100,
            classifier_limit: 1000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantEntry {
    pub label: String,
    pub expression: String,
    pub enclosure: String,
    pub printed_value: String,
    /// The printed decimal, widened by one unit in its last digit, meets the enclosure.
    pub matches: bool,
    pub width: String,
    /// Width below `10^-10`.
    pub width_ok: bool,
    pub bits: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub undecided: u64,
    pub notes: Vec<String>,
}

impl SuiteSummary {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            ..Self::default()
        }
    }

    pub fn clean(&self) -> bool {
        self.failures == 0 && self.undecided == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Environment {
    pub seed: u64,
    pub initial_bits: u32,
    pub max_bits: u32,
    pub sizes: ReportSizes,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproductionReport {
    pub constants: Vec<ConstantEntry>,
    pub suites: Vec<SuiteSummary>,
    pub environment: Environment,
}

impl ReproductionReport {
    pub fn suite(&self, name: &str) -> Option<&SuiteSummary> {
        self.suites.iter().find(|s| s.name == name)
    }

    pub fn constant(&self, label: &str) -> Option<&ConstantEntry> {
        self.constants.iter().find(|c| c.label == label)
    }

    /// Every constant matches and is narrow, and no suite has failures or
    /// undecided cases.
    pub fn all_clean(&self) -> bool {
        self.constants.iter().all(|c| c.matches && c.width_ok)
            && self.suites.iter().all(SuiteSummary::clean)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for ReproductionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let env = &self.environment;
        writeln!(f, "reproduction report")?;
        writeln!(
            f,
            "seed {}, precision {}..{} bits",
            env.seed, env.initial_bits, env.max_bits
        )?;
        writeln!(f)?;
        writeln!(f, "constants")?;
        for c in &self.constants {
            writeln!(
                f,
                "  {:<18} {:<28} {}  printed {:<10} {}  width {}",
                c.label,
                c.expression,
                c.enclosure,
                c.printed_value,
                if c.matches { "MATCH" } else { "MISMATCH" },
                c.width
            )?;
        }
        writeln!(f)?;
        writeln!(f, "suites")?;
        let w = self.suites.iter().map(|s| s.name.len()).max().unwrap_or(0);
        for s in &self.suites {
            writeln!(
                f,
                "  {:<w$}  cases {:>7}  failures {:>3}  undecided {:>3}  {}",
                s.name,
                s.cases,
                s.failures,
                s.undecided,
                if s.clean() { "OK" } else { "NOT OK" }
            )?;
            for note in &s.notes {
                writeln!(f, "  {:<w$}    {note}", "")?;
            }
        }
        writeln!(f)?;
        write!(
            f,
            "result: {}",
            if self.all_clean() {
                "CLEAN"
            } else {
                "NOT CLEAN"
            }
        )
    }
}

/// The printed decimal as the interval `v ± 10^-d`, `d` its number of places.
fn printed_interval(printed: &str) -> Result<(Ratio, Ratio)> {
    let v = parse_ratio(printed)?;
    let places = printed.split_once('.').map_or(0, |(_, frac)| frac.len());
    let ulp = Ratio::new(BigInt::one(), num_traits::pow(BigInt::from(10), places));
    Ok((&v - &ulp, &v + &ulp))
}

fn constant_entry(
    label: &str,
    expression: &str,
    printed_value: &str,
    enclosure: IntervalReal,
) -> Result<ConstantEntry> {
    let (lo, hi) = printed_interval(printed_value)?;
    let matches = enclosure.hi() >= lo && enclosure.lo() <= hi;
    let limit = Ratio::new(
        BigInt::one(),
        num_traits::pow(BigInt::from(10), CONSTANT_WIDTH_EXPONENT as usize),
    );
    let width = enclosure.width();
    Ok(ConstantEntry {
        label: label.to_string(),
        expression: expression.to_string(),
        enclosure: enclosure.render(12),
        printed_value: printed_value.to_string(),
        matches,
        width: format_radius(&width),
        width_ok: width < limit,
        bits: enclosure.bits(),
    })
}

/// The five reference constants, each against its printed decimal.
pub fn reproduce_constants(cfg: &PrecisionConfig) -> Result<Vec<ConstantEntry>> {
    let bits = cfg.initial_bits;
    let three = Natural::from(3u32);
    let five = Natural::from(5u32);
    Ok(vec![
        constant_entry(
            "theorem1_bound",
            "(8/5)^(ln(4/3)/ln(13/9))",
            "1.44440557",
            index_lower_bound_at(&ratio(8, 5), &three, bits)?,
        )?,
        constant_entry(
            "x(3)",
            "ln(13/9)/ln(4/3)",
            "1.27823",
            prime_power_exponent_enclosure(&three, 1, bits)?,
        )?,
        constant_entry(
            "theorem2_limit_u5",
            "1+2^(ln(6/5)/ln(31/25))",
            "2.799",
            limit_lower_bound(&five, cfg)?,
        )?,
        constant_entry("ceiling", "1+sqrt(3)", "2.732", theorem2_ceiling(cfg))?,
        constant_entry(
            "theorem2_limit_u3",
            "1+2^(ln(4/3)/ln(13/9))",
            "2.7199",
            limit_lower_bound(&three, cfg)?,
        )?,
    ])
}

fn count(it: impl Iterator<Item = bool>) -> u64 {
    it.filter(|&b| b).count() as u64
}

pub fn sigma_oracle_suite(limit: u64) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new("sigma_oracle");
    let mismatches = (1..=limit)
        .into_par_iter()
        .map(|n| {
            let n = Natural::from(n);
            Ok(sigma(&factorize(&n)?) != sigma_oracle(&n)?)
        })
        .collect::<Result<Vec<bool>>>()?;
    s.cases = limit;
    s.failures = count(mismatches.into_iter());
    s.notes.push(format!(
        "sigma(factorize(n)) = sigma_oracle(n) for 1 <= n <= {limit}"
    ));
    Ok(s)
}

/// Sandwich, exponent range and square-index suites over one pair corpus.
pub fn sandwich_suites(
    pairs: &[(Factorization, Factorization)],
    cfg: &PrecisionConfig,
) -> Result<[SuiteSummary; 3]> {
    let outcomes = pairs
        .par_iter()
        .map(|(a, b)| sandwich_check(a, b, cfg))
        .collect::<Result<Vec<_>>>()?;

    let mut sandwich = SuiteSummary::new("sandwich");
    sandwich.cases = outcomes.len() as u64;
    sandwich.failures = count(
        outcomes
            .iter()
            .map(|o| o.status == SandwichStatus::Violated),
    );
    sandwich.undecided = count(
        outcomes
            .iter()
            .map(|o| o.status == SandwichStatus::Undecided),
    );
    let holds = count(outcomes.iter().map(|o| o.status == SandwichStatus::Holds));
    sandwich.notes.push(format!(
        "min(x(a), x(b)) < x(ab) < max(x(a), x(b)) holds for {holds} of {} coprime odd pairs",
        outcomes.len()
    ));
    if let Some(max_bits) = outcomes.iter().map(|o| o.bits).max() {
        sandwich
            .notes
            .push(format!("highest precision used: {max_bits} bits"));
    }

    let (one, two) = (ratio(1, 1), ratio(2, 1));
    let mut range = SuiteSummary::new("exponent_range");
    for o in &outcomes {
        for x in [&o.x_a, &o.x_b, &o.x_ab] {
            range.cases += 1;
            match (x.compare_ratio(&one), x.compare_ratio(&two)) {
                (Comparison::Greater, Comparison::Less) => {}
                (Comparison::Undecided, _) | (_, Comparison::Undecided) => range.undecided += 1,
                _ => range.failures += 1,
            }
        }
    }
    range
        .notes
        .push("1 < x(n) < 2 for a, b and ab of every sandwich pair".into());

    let mut square = SuiteSummary::new("square_index");
    let values: Vec<Factorization> = pairs
        .iter()
        .flat_map(|(a, b)| [a.clone(), b.clone(), a.mul(b)])
        .collect();
    square.cases = values.len() as u64;
    square.failures = count(
        values
            .par_iter()
            .map(|f| !square_index_sandwich(f))
            .collect::<Vec<_>>()
            .into_iter(),
    );
    square
        .notes
        .push("I(n) < I(n^2) < I(n)^2 as exact rationals".into());

    Ok([sandwich, range, square])
}

/// `x(r^s) > x(r^t)` for odd primes `r < prime_limit` and `1 <= s < t <= max_exponent`.
pub fn s_monotonicity_suite(
    prime_limit: u32,
    max_exponent: u32,
    cfg: &PrecisionConfig,
) -> Result<SuiteSummary> {
    let rs: Vec<u32> = primes_below(prime_limit + 1).into_iter().skip(1).collect();
    let per_r = rs
        .par_iter()
        .map(|&r| -> Result<(u64, u64, u64)> {
            let r = Natural::from(r);
            let mut last = (0, 0, 0);
            for bits in cfg.schedule() {
                let xs = (1..=max_exponent)
                    .map(|s| prime_power_exponent_enclosure(&r, s, bits))
                    .collect::<Result<Vec<_>>>()?;
                let (mut cases, mut fail, mut und) = (0, 0, 0);
                for s in 0..xs.len() {
                    for t in s + 1..xs.len() {
                        cases += 1;
                        match xs[s].compare(&xs[t]) {
                            Comparison::Greater => {}
                            Comparison::Less => fail += 1,
                            Comparison::Undecided => und += 1,
                        }
                    }
                }
                last = (cases, fail, und);
                if und == 0 {
                    break;
                }
            }
            Ok(last)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut s = SuiteSummary::new("monotonicity_s");
    for (c, f, u) in per_r {
        s.cases += c;
        s.failures += f;
        s.undecided += u;
    }
    s.notes.push(format!(
        "x(r^s) > x(r^t) for {} odd primes r <= {prime_limit}, 1 <= s < t <= {max_exponent}",
        rs.len()
    ));
    Ok(s)
}

/// `x(r) > x(r')` for consecutive odd primes `r < r' <= prime_limit`.
pub fn r_monotonicity_suite(prime_limit: u32, cfg: &PrecisionConfig) -> Result<SuiteSummary> {
    let rs: Vec<Natural> = primes_below(prime_limit + 1)
        .into_iter()
        .skip(1)
        .map(Natural::from)
        .collect();
    let zero = Ratio::zero();
    let relations = rs
        .par_windows(2)
        .map(|w| {
            certify_against(cfg, &zero, |bits| {
                let a = prime_power_exponent_enclosure(&w[0], 1, bits)?;
                let b = prime_power_exponent_enclosure(&w[1], 1, bits)?;
                Ok(&a - &b)
            })
            .map(|c| c.outcome)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut s = SuiteSummary::new("monotonicity_r");
    s.cases = relations.len() as u64;
    s.failures = count(relations.iter().map(|&c| c == Comparison::Less));
    s.undecided = count(relations.iter().map(|&c| c == Comparison::Undecided));
    s.notes.push(format!(
        "x(r) strictly decreasing over {} odd primes r <= {prime_limit}; maximum at r = 3",
        rs.len()
    ));
    Ok(s)
}

/// `L^(1/x(u)) > sqrt(L)` for `L = 1 + j/16`, `1 <= j <= 16`, and odd primes `u < 100`.
pub fn trivial_bound_suite(cfg: &PrecisionConfig) -> Result<SuiteSummary> {
    let us: Vec<Natural> = primes_below(100)
        .into_iter()
        .skip(1)
        .map(Natural::from)
        .collect();
    let grid: Vec<(Ratio, &Natural)> = (1..=16u64)
        .flat_map(|j| us.iter().map(move |u| (ratio(16 + j, 16), u)))
        .collect();
    let zero = Ratio::zero();
    let relations = grid
        .par_iter()
        .map(|(l, u)| {
            certify_against(cfg, &zero, |bits| bound_excess_over_sqrt(l, u, bits))
                .map(|c| c.outcome)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut s = SuiteSummary::new("trivial_bound");
    s.cases = relations.len() as u64;
    s.failures = count(relations.iter().map(|&c| c == Comparison::Less));
    s.undecided = count(relations.iter().map(|&c| c == Comparison::Undecided));
    s.notes
        .push("L^(1/x(u)) > sqrt(L) for L in (1, 2], odd primes u < 100".into());
    Ok(s)
}

pub fn lemma4_suite(seed: u64, count_wanted: usize) -> Result<SuiteSummary> {
    let corpus = corpus::lemma4_surrogates(seed, count_wanted);
    let outcomes = corpus
        .candidates
        .par_iter()
        .map(lemma4_predicates)
        .collect::<Result<Vec<_>>>()?;
    let mut s = SuiteSummary::new("lemma4");
    s.cases = outcomes.len() as u64;
    s.failures = count(outcomes.iter().map(|o| !o.provable_implications_hold()));
    let p1 = count(outcomes.iter().map(|o| o.p1));
    let converse = count(outcomes.iter().map(|o| o.p3_implies_p1()));
    s.notes.push(format!(
        "P1 => P3, P1 => P2, P2 => P3 checked on {} surrogates ({} draws rejected by the premise)",
        outcomes.len(),
        corpus.premise_rejections
    ));
    s.notes
        .push(format!("P1 (q^k < n) true for {p1} candidates"));
    s.notes.push(format!(
        "observed, not asserted: P3 => P1 true for {converse} of {}, false for {}",
        outcomes.len(),
        outcomes.len() as u64 - converse
    ));
    Ok(s)
}

pub fn theorem2_suites(q_limit: u64, cfg: &PrecisionConfig) -> Result<[SuiteSummary; 2]> {
    let scan5 = theorem2_contradiction_scan(q_limit, 5, cfg)?;
    let mut u5 = SuiteSummary::new("theorem2_u5");
    u5.cases = scan5.entries.len() as u64;
    u5.undecided = scan5.undecided() as u64;
    u5.failures = count(scan5.entries.iter().map(|e| {
        e.relation != Comparison::Undecided
            && !(e.relation == Comparison::Greater && e.margin_certified)
    })) + u64::from(!scan5.increasing);
    u5.notes.push(format!(
        "f(q, 5) > 1+sqrt(3) + 10^-3 certified for {} of {} primes q = 1 (mod 4), 5 <= q <= {q_limit}",
        scan5.margin_certified(),
        scan5.entries.len()
    ));
    if let (Some(min), Some(margin)) = (scan5.minimum(), scan5.minimum_margin()) {
        u5.notes
            .push(format!("minimum at q = {}: f = {}", min.q, min.f));
        u5.notes
            .push(format!("minimum margin over 1+sqrt(3): {margin}"));
    }
    u5.notes
        .push(format!("limit q -> infinity: {}", scan5.limit));
    u5.notes
        .push(format!("f increasing in q: {}", scan5.increasing));

    let scan3 = theorem2_contradiction_scan(q_limit, 3, cfg)?;
    let mut u3 = SuiteSummary::new("theorem2_u3");
    u3.cases = scan3.entries.len() as u64;
    u3.undecided = scan3.undecided() as u64;
    u3.failures = scan3.contradictions() as u64 + u64::from(!scan3.increasing);
    u3.notes.push(format!(
        "f(q, 3) < 1+sqrt(3) certified for {} of {}; contradictions found: {}",
        scan3.count(Comparison::Less),
        scan3.entries.len(),
        scan3.contradictions()
    ));
    if let Some(max) = scan3.maximum() {
        u3.notes
            .push(format!("maximum at q = {}: f = {}", max.q, max.f));
    }
    u3.notes
        .push(format!("limit q -> infinity: {}", scan3.limit));
    u3.notes
        .push(format!("f increasing in q: {}", scan3.increasing));
    Ok([u5, u3])
}

/// Lucas-Lehmer over every prime `p <= limit`, cross-checked against
/// Miller-Rabin on `2^p - 1`, with each constructed perfect number verified.
pub fn mersenne_suite(limit: u64) -> Result<SuiteSummary> {
    let ps: Vec<u64> = primes_below(limit as u32 + 1)
        .into_iter()
        .map(u64::from)
        .collect();
    let rows = ps
        .par_iter()
        .map(|&p| -> Result<(u64, bool, bool)> {
            let ll = lucas_lehmer(p)?;
            let m = (Natural::one() << p as usize) - 1u32;
            let agree = ll == is_prime(&m);
            let perfect = if ll {
                let form = even_perfect_from_exponent(p)?;
                form.verify()? && form.verify_closed_form()
            } else {
                true
            };
            Ok((p, ll, agree && perfect))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut s = SuiteSummary::new("mersenne");
    s.cases = rows.len() as u64;
    s.failures = count(rows.iter().map(|r| !r.2));
    let found: Vec<String> = rows
        .iter()
        .filter(|r| r.1)
        .map(|r| r.0.to_string())
        .collect();
    s.notes
        .push(format!("2^p - 1 prime for p in {{{}}}", found.join(", ")));
    s.notes
        .push("each agrees with Miller-Rabin; each (2^p - 1) 2^(p-1) is perfect".into());
    Ok(s)
}

pub fn acquaah_konyagin_suite(seed: u64, n: usize, cfg: &PrecisionConfig) -> Result<SuiteSummary> {
    let pairs = corpus::acquaah_konyagin_pairs(seed, n);
    let rows = pairs
        .par_iter()
        .map(|(q, n)| {
            let exact = acquaah_konyagin_holds(q, n);
            acquaah_konyagin_enclosure(q, n, cfg).map(|c| (exact, c))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut s = SuiteSummary::new("acquaah_konyagin");
    s.cases = rows.len() as u64;
    s.undecided = count(rows.iter().map(|r| r.1 == Comparison::Undecided));
    s.failures = count(
        rows.iter()
            .map(|&(exact, c)| c != Comparison::Undecided && exact != (c == Comparison::Greater)),
    );
    let holds = count(rows.iter().map(|r| r.0));
    s.notes.push(format!(
        "q^2 < 3n^2 agrees with the enclosure of n sqrt(3) - q; holds for {holds}"
    ));
    Ok(s)
}

pub fn classifier_suite(limit: u32) -> Result<SuiteSummary> {
    let qs: Vec<u32> = primes_below(limit)
        .into_iter()
        .filter(|q| q % 4 == 1)
        .collect();
    let rows = qs
        .par_iter()
        .map(|&q| residual_case_classify(&Natural::from(q)).map(|c| (q, c.case)))
        .collect::<Result<Vec<_>>>()?;
    let mut s = SuiteSummary::new("classifier");
    s.cases = rows.len() as u64;
    s.failures = count(rows.iter().map(|&(q, case)| {
        let three_divides = (q + 1) % 6 == 0;
        three_divides != matches!(case, ResidualCase::CaseQ5 | ResidualCase::Case5Mod12)
    }));
    let tally = |c: ResidualCase| rows.iter().filter(|r| r.1 == c).count();
    s.notes.push(format!(
        "CASE_Q5 {}, CASE_5_MOD_12 {}, CASE_1_MOD_12 {}",
        tally(ResidualCase::CaseQ5),
        tally(ResidualCase::Case5Mod12),
        tally(ResidualCase::Case1Mod12)
    ));
    Ok(s)
}

pub fn run_report(seed: u64, cfg: &PrecisionConfig) -> Result<ReproductionReport> {
    run_report_with(seed, cfg, &ReportSizes::default())
}

/// Deterministic in `(seed, cfg, sizes)`; suites appear in a fixed order.
pub fn run_report_with(
    seed: u64,
    cfg: &PrecisionConfig,
    sizes: &ReportSizes,
) -> Result<ReproductionReport> {
    let constants = reproduce_constants(cfg)?;
    let pairs = corpus::coprime_odd_pairs(seed, sizes.sandwich_pairs);
    let [sandwich, range, square] = sandwich_suites(&pairs, cfg)?;
    let [u5, u3] = theorem2_suites(sizes.theorem2_q_limit, cfg)?;
    let suites = vec![
        sigma_oracle_suite(sizes.sigma_limit)?,
        sandwich,
        range,
        square,
        s_monotonicity_suite(sizes.s_grid_prime_limit, sizes.s_grid_max_exponent, cfg)?,
        r_monotonicity_suite(sizes.r_grid_prime_limit, cfg)?,
        trivial_bound_suite(cfg)?,
        lemma4_suite(seed, sizes.lemma4_candidates)?,
        u5,
        u3,
        mersenne_suite(sizes.mersenne_limit)?,
        acquaah_konyagin_suite(seed, sizes.ak_pairs, cfg)?,
        classifier_suite(sizes.classifier_limit)?,
    ];
    Ok(ReproductionReport {
        constants,
        suites,
        environment: Environment {
            seed,
            initial_bits: cfg.initial_bits,
            max_bits: cfg.max_bits,
            sizes: sizes.clone(),
        },
    })
}
