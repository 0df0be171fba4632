//! The lower bound `f(q, u) = (q+1)/q + (2q/(q+1))^(1/x(u))` on
//! `I(q) + I(n)` against the ceiling `1 + sqrt 3`, for `k = 1` and every prime
//! of `N` at least `u`.

use rayon::prelude::*;
use serde::Serialize;

use super::{Check, CheckStatus, ConstraintReport};
use crate::abundancy::index_lower_bound_at;
use crate::arith::{is_prime, primes_below, Natural};
use crate::error::{Error, Result};
use crate::interval::{certify_against, one_plus_sqrt3, Comparison, IntervalReal, PrecisionConfig};
use crate::ratio::{from_naturals, ratio, Ratio};

/// Required gap between `f(q, u)` and `1 + sqrt 3` for a certified contradiction.
pub const THEOREM2_MARGIN: (u64, u64) = (1, 1000);

fn margin() -> Ratio {
    ratio(THEOREM2_MARGIN.0, THEOREM2_MARGIN.1)
}

fn check_euler_prime(q: &Natural) -> Result<()> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q.to_string()));
    }
    if q % 4u32 != Natural::from(1u32) {
        return Err(Error::Domain(format!("{q} is not 1 mod 4")));
    }
    Ok(())
}

/// `f(q, u)` at a fixed precision.
pub fn theorem2_lower_bound_at(q: &Natural, u: &Natural, bits: u32) -> Result<IntervalReal> {
    check_euler_prime(q)?;
    let q1 = q + 1u32;
    let first = IntervalReal::from_ratio(&from_naturals(&q1, q), bits);
    let second = index_lower_bound_at(&from_naturals(&(q * 2u32), &q1), u, bits)?;
    Ok(&first + &second)
}

pub fn theorem2_lower_bound(
    q: &Natural,
    u: &Natural,
    cfg: &PrecisionConfig,
) -> Result<IntervalReal> {
    theorem2_lower_bound_at(q, u, cfg.initial_bits)
}

/// `lim f(q, u) = 1 + 2^(1/x(u))` as `q` grows.
pub fn limit_lower_bound(u: &Natural, cfg: &PrecisionConfig) -> Result<IntervalReal> {
    let bits = cfg.initial_bits;
    let power = index_lower_bound_at(&ratio(2, 1), u, bits)?;
    Ok(&power + &IntervalReal::from_integer(1, bits))
}

/// The ceiling `1 + sqrt 3` on `sigma(q)/n + sigma(n)/q`.
pub fn theorem2_ceiling(cfg: &PrecisionConfig) -> IntervalReal {
    one_plus_sqrt3(cfg.initial_bits)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanEntry {
    pub q: u64,
    pub f: IntervalReal,
    /// `f(q, u)` against `1 + sqrt 3`.
    pub relation: Comparison,
    /// `f(q, u) - (1 + sqrt 3) > 10^-3` certified.
    pub margin_certified: bool,
    pub bits: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem2Scan {
    pub q_limit: u64,
    pub u: u64,
    pub entries: Vec<ScanEntry>,
    pub ceiling: IntervalReal,
    pub limit: IntervalReal,
    /// `f(q_i, u) < f(q_(i+1), u)` certified for every consecutive pair.
    pub increasing: bool,
}

#[derive(Serialize)]
struct ScanSummary {
    q_limit: u64,
    u: u64,
    scanned: usize,
    contradictions: usize,
    no_contradiction: usize,
    undecided: usize,
    margin_certified: usize,
    minimum_q: Option<u64>,
    minimum_f: Option<String>,
    minimum_margin: Option<String>,
    limit: String,
    ceiling: String,
    increasing: bool,
}

impl Theorem2Scan {
    pub fn count(&self, relation: Comparison) -> usize {
        self.entries
            .iter()
            .filter(|e| e.relation == relation)
            .count()
    }

    /// Entries where `f(q, u) > 1 + sqrt 3` is certified.
    pub fn contradictions(&self) -> usize {
        self.count(Comparison::Greater)
    }

    pub fn undecided(&self) -> usize {
        self.count(Comparison::Undecided)
    }

    pub fn margin_certified(&self) -> usize {
        self.entries.iter().filter(|e| e.margin_certified).count()
    }

    /// Entry with the smallest `f` (by enclosure midpoint).
    pub fn minimum(&self) -> Option<&ScanEntry> {
        self.entries
            .iter()
            .min_by(|a, b| a.f.midpoint().cmp(&b.f.midpoint()))
    }

    /// Entry with the largest `f` (by enclosure midpoint).
    pub fn maximum(&self) -> Option<&ScanEntry> {
        self.entries
            .iter()
            .max_by(|a, b| a.f.midpoint().cmp(&b.f.midpoint()))
    }

    /// Enclosure of `min f - (1 + sqrt 3)`.
    pub fn minimum_margin(&self) -> Option<IntervalReal> {
        self.minimum().map(|m| &m.f - &self.ceiling)
    }

    /// One check per scanned `q`: PASS when the contradiction
    /// `f(q, u) > 1 + sqrt 3 + 10^-3` is certified, FAIL when `f(q, u) < 1 + sqrt 3`
    /// is certified (no contradiction), UNDECIDED otherwise.
    pub fn to_report(&self) -> ConstraintReport {
        let mut report = ConstraintReport::new(format!(
            "f(q, u={}) vs 1+sqrt(3) for primes q = 1 (mod 4), 5 <= q <= {}",
            self.u, self.q_limit
        ));
        for e in &self.entries {
            let status = match (e.relation, e.margin_certified) {
                (Comparison::Greater, true) => CheckStatus::Pass,
                (Comparison::Less, _) => CheckStatus::Fail,
                _ => CheckStatus::Undecided,
            };
            let verdict = match status {
                CheckStatus::Pass => "contradiction",
                CheckStatus::Fail => "no contradiction",
                CheckStatus::Undecided => "undecided",
            };
            report.push(Check {
                name: format!("q={}", e.q),
                status,
                witness: format!("f = {} {} ceiling: {verdict}", e.f, e.relation),
                bits: Some(e.bits),
            });
        }
        report
    }

    pub fn summary_json(&self) -> String {
        let min = self.minimum();
        let summary = ScanSummary {
            q_limit: self.q_limit,
            u: self.u,
            scanned: self.entries.len(),
            contradictions: self.contradictions(),
            no_contradiction: self.count(Comparison::Less),
            undecided: self.undecided(),
            margin_certified: self.margin_certified(),
            minimum_q: min.map(|m| m.q),
            minimum_f: min.map(|m| m.f.to_string()),
            minimum_margin: self.minimum_margin().map(|m| m.to_string()),
            limit: self.limit.to_string(),
            ceiling: self.ceiling.to_string(),
            increasing: self.increasing,
        };
        serde_json::to_string_pretty(&summary).expect("summary serializes")
    }
}

/// Evaluates `f(q, u)` for every prime `q = 1 (mod 4)` with `5 <= q <= q_limit`
/// and certifies each against `1 + sqrt 3`, escalating precision on overlap.
pub fn theorem2_contradiction_scan(
    q_limit: u64,
    u: u64,
    cfg: &PrecisionConfig,
) -> Result<Theorem2Scan> {
    let u_nat = Natural::from(u);
    if u == 2 || !is_prime(&u_nat) {
        return Err(Error::Domain(format!("u = {u} must be an odd prime")));
    }
    let bound = u32::try_from(q_limit.saturating_add(1))
        .map_err(|_| Error::Domain(format!("q limit {q_limit} is beyond the scan range")))?;
    let qs: Vec<u64> = primes_below(bound)
        .into_iter()
        .filter(|&q| q >= 5 && q % 4 == 1)
        .map(u64::from)
        .collect();

    let entries = qs
        .par_iter()
        .map(|&q| scan_one(q, &u_nat, cfg))
        .collect::<Result<Vec<_>>>()?;

    let increasing = entries.windows(2).all(|w| {
        let (a, b) = (w[0].q, w[1].q);
        certify_against(cfg, &Ratio::from_integer(0.into()), |bits| {
            let fa = theorem2_lower_bound_at(&Natural::from(a), &u_nat, bits)?;
            let fb = theorem2_lower_bound_at(&Natural::from(b), &u_nat, bits)?;
            Ok(&fb - &fa)
        })
        .map(|c| c.outcome == Comparison::Greater)
        .unwrap_or(false)
    });

    Ok(Theorem2Scan {
        q_limit,
        u,
        entries,
        ceiling: theorem2_ceiling(cfg),
        limit: limit_lower_bound(&u_nat, cfg)?,
        increasing,
    })
}

fn scan_one(q: u64, u: &Natural, cfg: &PrecisionConfig) -> Result<ScanEntry> {
    let qn = Natural::from(q);
    let gap = |bits: u32| -> Result<IntervalReal> {
        let f = theorem2_lower_bound_at(&qn, u, bits)?;
        Ok(&f - &one_plus_sqrt3(bits))
    };
    let relation = certify_against(cfg, &Ratio::from_integer(0.into()), gap)?;
    let margin_certified = relation.outcome == Comparison::Greater
        && certify_against(cfg, &margin(), gap)?.outcome == Comparison::Greater;
    let f = theorem2_lower_bound_at(&qn, u, relation.bits)?;
    Ok(ScanEntry {
        q,
        f,
        relation: relation.outcome,
        margin_certified,
        bits: relation.bits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::parse_ratio;
    use num_bigint::BigInt;
    use num_traits::One;

    fn near(x: &IntervalReal, v: &str, k: u32) -> bool {
        let eps = Ratio::new(BigInt::one(), BigInt::from(10).pow(k));
        let v = parse_ratio(v).unwrap();
        x.compare_ratio(&(&v - &eps)) == Comparison::Greater
            && x.compare_ratio(&(&v + &eps)) == Comparison::Less
    }

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn bound_examples() {
        let cfg = PrecisionConfig::default();
        let f55 = theorem2_lower_bound(&nat(5), &nat(5), &cfg).unwrap();
        assert!(near(&f55, "2.7418138305372914", 15));
        assert!(near(&limit_lower_bound(&nat(5), &cfg).unwrap(), "2.799", 3));
        assert!(near(
            &limit_lower_bound(&nat(3), &cfg).unwrap(),
            "2.7199",
            4
        ));
        assert!(near(&theorem2_ceiling(&cfg), "2.732", 3));
        assert!(theorem2_lower_bound(&nat(7), &nat(5), &cfg).is_err());
        assert!(theorem2_lower_bound(&nat(21), &nat(5), &cfg).is_err());
        assert!(theorem2_lower_bound(&nat(5), &nat(2), &cfg).is_err());
    }

    #[test]
    fn small_scans() {
        let cfg = PrecisionConfig::default();
        let s5 = theorem2_contradiction_scan(200, 5, &cfg).unwrap();
        assert_eq!(s5.entries.first().map(|e| e.q), Some(5));
        assert_eq!(s5.contradictions(), s5.entries.len());
        assert_eq!(s5.margin_certified(), s5.entries.len());
        assert_eq!(s5.minimum().unwrap().q, 5);
        assert!(s5.increasing);
        assert!(s5.to_report().all_pass());

        let s3 = theorem2_contradiction_scan(200, 3, &cfg).unwrap();
        assert_eq!(s3.count(Comparison::Less), s3.entries.len());
        assert!(s3.increasing);
        assert_eq!(s3.to_report().count(CheckStatus::Fail), s3.entries.len());

        let empty = theorem2_contradiction_scan(4, 5, &cfg).unwrap();
        assert!(empty.entries.is_empty());
        assert!(empty.minimum().is_none());
        assert!(theorem2_contradiction_scan(100, 9, &cfg).is_err());
    }
}
