//! Abundancy index `I(n) = sigma(n)/n` and the abundancy exponent
//! `x(n) = ln I(n^2) / ln I(n)`, the exponent for which `I(n^2) = I(n)^x(n)`.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, sigma, Factorization, Natural};
use crate::error::{Error, Result};
use crate::interval::{self, escalate, Comparison, IntervalReal, PrecisionConfig};
use crate::ratio::{from_natural, from_naturals, ratio, Ratio};

/// Exact `sigma(n)/n` in lowest terms.
pub fn abundancy_index(f: &Factorization) -> Ratio {
    from_naturals(&sigma(f), &f.value())
}

/// An abundancy index together with the factorization it was computed from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbundancyValue {
    pub value: Ratio,
    pub of: Factorization,
}

impl AbundancyValue {
    pub fn new(of: Factorization) -> Self {
        Self {
            value: abundancy_index(&of),
            of,
        }
    }

    /// The product of `p/(p-1)` over the primes of `n`, a strict upper bound.
    pub fn prime_product_bound(&self) -> Ratio {
        self.of
            .primes()
            .map(|p| from_naturals(p, &(p - 1u32)))
            .fold(Ratio::one(), |acc, t| acc * t)
    }
}

fn require_prime(r: &Natural) -> Result<()> {
    if is_prime(r) {
        Ok(())
    } else {
        Err(Error::NotPrime(r.to_string()))
    }
}

fn pow_nat(r: &Natural, e: u32) -> Natural {
    num_traits::pow(r.clone(), e as usize)
}

/// The two closed forms of `I(r^s)`: `(r^(s+1) - 1) / (r^s (r - 1))` and
/// `1 + 1/(r - 1) - 1/(r^s (r - 1))`.
pub fn prime_power_index_forms(r: &Natural, s: u32) -> Result<(Ratio, Ratio)> {
    require_prime(r)?;
    if s == 0 {
        return Err(Error::Domain(
            "prime power exponent must be at least 1".into(),
        ));
    }
    let rs = pow_nat(r, s);
    let rm1 = r - 1u32;
    let quotient = from_naturals(&(&rs * r - 1u32), &(&rs * &rm1));
    let expanded = Ratio::one() + from_naturals(&Natural::one(), &rm1)
        - from_naturals(&Natural::one(), &(&rs * &rm1));
    Ok((quotient, expanded))
}

pub fn prime_power_index(r: &Natural, s: u32) -> Result<Ratio> {
    let (quotient, expanded) = prime_power_index_forms(r, s)?;
    debug_assert_eq!(quotient, expanded);
    Ok(quotient)
}

/// `I(r^(2s))` directly and as `I(r^s) * (1 + (1 - r^-s)/(r^(s+1) - 1))`.
pub fn square_index_relation(r: &Natural, s: u32) -> Result<(Ratio, Ratio)> {
    let direct = prime_power_index(r, 2 * s)?;
    let rs = from_natural(&pow_nat(r, s));
    let correction = (Ratio::one() - rs.recip()) / (from_natural(&(pow_nat(r, s + 1) - 1u32)));
    let via_product = prime_power_index(r, s)? * (Ratio::one() + correction);
    Ok((direct, via_product))
}

/// `I(n) < I(n^2) < I(n)^2`, checked exactly.
pub fn square_index_sandwich(f: &Factorization) -> bool {
    let i = abundancy_index(f);
    let i2 = abundancy_index(&f.squared());
    i < i2 && i2 < &i * &i
}

/// An enclosure of `x(n)`. `range_certified` records whether `1 < x(n) < 2`
/// was separated by the enclosure within the precision schedule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentValue {
    pub value: IntervalReal,
    pub of: Factorization,
    pub range_certified: bool,
}

fn ratio_of_logs(num: &Ratio, den: &Ratio, bits: u32) -> Result<IntervalReal> {
    let top = interval::ln_ratio(num, bits)?;
    let bottom = interval::ln_ratio(den, bits)?;
    top.div(&bottom)
}

/// One evaluation of `x(n)` at `bits`; `n^2` is formed by doubling exponents.
pub fn exponent_enclosure(f: &Factorization, bits: u32) -> Result<IntervalReal> {
    if f.is_one() {
        return Err(Error::Domain("x(1) is undefined since ln I(1) = 0".into()));
    }
    ratio_of_logs(&abundancy_index(&f.squared()), &abundancy_index(f), bits)
}

/// One evaluation of `x(r^s)` through
/// `1 + ln(1 + (1 - r^-s)/(r^(s+1) - 1)) / ln(1 + 1/(r-1) - 1/(r^s (r-1)))`.
pub fn prime_power_exponent_enclosure(r: &Natural, s: u32, bits: u32) -> Result<IntervalReal> {
    let (_, expanded) = prime_power_index_forms(r, s)?;
    let rs = from_natural(&pow_nat(r, s));
    let delta = (Ratio::one() - rs.recip()) / from_natural(&(pow_nat(r, s + 1) - 1u32));
    let tail = ratio_of_logs(&(Ratio::one() + delta), &expanded, bits)?;
    Ok(&IntervalReal::from_integer(1, bits) + &tail)
}

fn certify_unit_range(
    cfg: &PrecisionConfig,
    of: Factorization,
    mut eval: impl FnMut(u32) -> Result<IntervalReal>,
) -> Result<ExponentValue> {
    let mut last = None;
    let found = escalate(cfg, |bits| {
        let x = eval(bits)?;
        let ok = x.compare_ratio(&ratio(1, 1)) == Comparison::Greater
            && x.compare_ratio(&ratio(2, 1)) == Comparison::Less;
        if ok {
            Ok(Some(x))
        } else {
            last = Some(x);
            Ok(None)
        }
    })?;
    Ok(match found {
        Some((value, _)) => ExponentValue {
            value,
            of,
            range_certified: true,
        },
        None => ExponentValue {
            value: last.expect("schedule is never empty"),
            of,
            range_certified: false,
        },
    })
}

pub fn x_exponent(f: &Factorization, cfg: &PrecisionConfig) -> Result<ExponentValue> {
    if f.is_one() {
        return Err(Error::Domain("x(1) is undefined since ln I(1) = 0".into()));
    }
    certify_unit_range(cfg, f.clone(), |bits| exponent_enclosure(f, bits))
}

pub fn x_prime_power(r: &Natural, s: u32, cfg: &PrecisionConfig) -> Result<ExponentValue> {
    let of = Factorization::prime_power(r.clone(), s)?;
    if s == 0 {
        return Err(Error::Domain(
            "prime power exponent must be at least 1".into(),
        ));
    }
    certify_unit_range(cfg, of, |bits| prime_power_exponent_enclosure(r, s, bits))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SandwichStatus {
    Holds,
    Violated,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichOutcome {
    pub status: SandwichStatus,
    pub x_a: IntervalReal,
    pub x_b: IntervalReal,
    pub x_ab: IntervalReal,
    pub bits: u32,
}

/// Certifies `min(x(a), x(b)) < x(ab) < max(x(a), x(b))` for coprime `a, b > 1`
/// by disjoint enclosures. Equal or overlapping `x(a)`, `x(b)` stay undecided.
pub fn sandwich_check(
    fa: &Factorization,
    fb: &Factorization,
    cfg: &PrecisionConfig,
) -> Result<SandwichOutcome> {
    if fa.is_one() || fb.is_one() {
        return Err(Error::Domain("sandwich needs both values above 1".into()));
    }
    if !fa.is_coprime_to(fb) {
        let shared = crate::arith::gcd(&fa.value(), &fb.value());
        return Err(Error::NotCoprime(shared.to_string()));
    }
    let fab = fa.mul(fb);
    let mut last = None;
    for bits in cfg.schedule() {
        let x_a = exponent_enclosure(fa, bits)?;
        let x_b = exponent_enclosure(fb, bits)?;
        let x_ab = exponent_enclosure(&fab, bits)?;
        let status = match x_a.compare(&x_b) {
            Comparison::Undecided => SandwichStatus::Undecided,
            order => {
                let (low, high) = if order == Comparison::Less {
                    (&x_a, &x_b)
                } else {
                    (&x_b, &x_a)
                };
                let left = low.compare(&x_ab);
                let right = x_ab.compare(high);
                if left == Comparison::Less && right == Comparison::Less {
                    SandwichStatus::Holds
                } else if left == Comparison::Greater || right == Comparison::Greater {
                    SandwichStatus::Violated
                } else {
                    SandwichStatus::Undecided
                }
            }
        };
        let outcome = SandwichOutcome {
            status,
            x_a,
            x_b,
            x_ab,
            bits,
        };
        if status != SandwichStatus::Undecided {
            return Ok(outcome);
        }
        last = Some(outcome);
    }
    Ok(last.expect("schedule is never empty"))
}

fn require_odd_prime(u: &Natural) -> Result<()> {
    require_prime(u)?;
    if *u == Natural::from(2u32) {
        return Err(Error::Domain("u must be an odd prime".into()));
    }
    Ok(())
}

/// `1/x(u) = ln I(u) / ln I(u^2)` for a prime `u`.
pub fn inverse_exponent(u: &Natural, bits: u32) -> Result<IntervalReal> {
    let iu = prime_power_index(u, 1)?;
    let iu2 = prime_power_index(u, 2)?;
    ratio_of_logs(&iu, &iu2, bits)
}

/// `L^(1/x(u))` at a fixed precision.
pub fn index_lower_bound_at(l: &Ratio, u: &Natural, bits: u32) -> Result<IntervalReal> {
    if *l <= Ratio::one() {
        return Err(Error::Domain(format!("bound needs L > 1, got {l}")));
    }
    require_odd_prime(u)?;
    let base = IntervalReal::from_ratio(l, bits);
    interval::pow(&base, &inverse_exponent(u, bits)?)
}

/// Lower bound on `I(n)` from `I(n^2) > L` when every prime of `n` is at least
/// `u`: `I(n) > L^(1/x(u))`.
pub fn index_lower_bound_from_square(
    l: &Ratio,
    u: &Natural,
    cfg: &PrecisionConfig,
) -> Result<IntervalReal> {
    index_lower_bound_at(l, u, cfg.initial_bits)
}

/// Enclosure of `L^(1/x(u)) - sqrt(L)`, positive whenever `x(u) < 2`.
pub fn bound_excess_over_sqrt(l: &Ratio, u: &Natural, bits: u32) -> Result<IntervalReal> {
    let bound = index_lower_bound_at(l, u, bits)?;
    Ok(&bound - &interval::sqrt_ratio(l, bits)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }
    use crate::arith::{factorize, primes_below};
    use crate::ratio::parse_ratio;
    use num_bigint::BigInt;

    fn fact(s: &str) -> Factorization {
        s.parse().unwrap()
    }

    fn dec(s: &str) -> Ratio {
        parse_ratio(s).unwrap()
    }

    /// `x` lies strictly inside `(v - 10^-k, v + 10^-k)`.
    fn near(x: &IntervalReal, v: &str, k: u32) -> bool {
        let eps = Ratio::new(BigInt::one(), BigInt::from(10).pow(k));
        x.compare_ratio(&(dec(v) - &eps)) == Comparison::Greater
            && x.compare_ratio(&(dec(v) + &eps)) == Comparison::Less
    }

    #[test]
    fn index_examples() {
        assert_eq!(abundancy_index(&fact("3")), ratio(4, 3));
        assert_eq!(abundancy_index(&Factorization::one()), ratio(1, 1));
        assert_eq!(abundancy_index(&fact("5^2")), ratio(31, 25));
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(prime_power_index(&nat(3), 2).unwrap(), ratio(13, 9));
        assert_eq!(prime_power_index(&nat(5), 1).unwrap(), ratio(6, 5));
        assert_eq!(prime_power_index(&nat(3), 1).unwrap(), ratio(4, 3));
        assert!(matches!(
            prime_power_index(&nat(9), 1),
            Err(Error::NotPrime(_))
        ));
    }

    #[test]
    fn square_relation_examples() {
        for (r, s, want) in [
            (3, 1, ratio(13, 9)),
            (5, 1, ratio(31, 25)),
            (3, 2, ratio(121, 81)),
        ] {
            let (lhs, rhs) = square_index_relation(&nat(r), s).unwrap();
            assert_eq!(lhs, want);
            assert_eq!(rhs, want);
        }
        assert!(square_index_relation(&nat(15), 1).is_err());
    }

    #[test]
    fn closed_forms_agree_with_sigma() {
        for r in primes_below(1000).into_iter().skip(1) {
            for s in 1..=10 {
                let (q, e) = prime_power_index_forms(&nat(r as u64), s).unwrap();
                let via_sigma =
                    abundancy_index(&Factorization::prime_power(nat(r as u64), s).unwrap());
                assert_eq!(q, via_sigma);
                assert_eq!(e, via_sigma);
            }
        }
    }

    #[test]
    fn abundancy_value_bounds() {
        for n in 2..3000u64 {
            let v = AbundancyValue::new(factorize(&nat(n)).unwrap());
            assert!(v.value > Ratio::one());
            assert!(v.value < v.prime_product_bound());
        }
        assert_eq!(
            AbundancyValue::new(Factorization::one()).value,
            Ratio::one()
        );
    }

    #[test]
    fn exponent_examples() {
        let cfg = PrecisionConfig::default();
        let x3 = x_exponent(&fact("3"), &cfg).unwrap();
        assert!(x3.range_certified);
        assert!(near(&x3.value, "1.27823", 5));
        assert!(near(&x3.value, "1.2782332141567583", 15));
        let x5 = x_exponent(&fact("5"), &cfg).unwrap();
        assert!(near(&x5.value, "1.1798461103535186", 15));
        assert!(x_exponent(&Factorization::one(), &cfg).is_err());
    }

    #[test]
    fn prime_power_exponent_examples() {
        let cfg = PrecisionConfig::default();
        let a = x_prime_power(&nat(3), 1, &cfg).unwrap();
        assert!(near(&a.value, "1.27823", 5));
        let b = x_prime_power(&nat(3), 2, &cfg).unwrap();
        assert!(near(&b.value, "1.0914178554611651", 15));
        let c = x_prime_power(&nat(5), 1, &cfg).unwrap();
        assert!(near(&c.value, "1.1798461103535186", 15));
        assert!(x_prime_power(&nat(4), 1, &cfg).is_err());
        for (r, s) in [(3u64, 1u32), (3, 2), (5, 1), (997, 20)] {
            let direct =
                exponent_enclosure(&Factorization::prime_power(nat(r), s).unwrap(), 256).unwrap();
            let closed = prime_power_exponent_enclosure(&nat(r), s, 256).unwrap();
            assert!(direct.intersects(&closed), "{r}^{s}");
        }
    }

    #[test]
    fn sandwich_examples() {
        let cfg = PrecisionConfig::default();
        let o = sandwich_check(&fact("3"), &fact("5"), &cfg).unwrap();
        assert_eq!(o.status, SandwichStatus::Holds);
        assert!(near(&o.x_ab, "1.2400673600703926", 15));
        let o = sandwich_check(&fact("3^2"), &fact("5"), &cfg).unwrap();
        assert_eq!(o.status, SandwichStatus::Holds);
        assert!(near(&o.x_ab, "1.1207287989479367", 15));
        assert!(near(&o.x_a, "1.0914178554611651", 15));
        assert!(matches!(
            sandwich_check(&fact("3"), &fact("3^2"), &cfg),
            Err(Error::NotCoprime(_))
        ));
        assert!(sandwich_check(&Factorization::one(), &fact("5"), &cfg).is_err());
    }

    #[test]
    fn lower_bound_examples() {
        let cfg = PrecisionConfig::default();
        let t1 = index_lower_bound_from_square(&ratio(8, 5), &nat(3), &cfg).unwrap();
        assert!(near(&t1, "1.44440557", 8));
        assert!(near(&t1, "1.4444055736982820718", 18));
        let b5 = index_lower_bound_from_square(&ratio(8, 5), &nat(5), &cfg).unwrap();
        assert!(near(&b5, "1.4893802777926719", 15));
        assert!(index_lower_bound_from_square(&ratio(1, 1), &nat(3), &cfg).is_err());
        assert!(index_lower_bound_from_square(&ratio(8, 5), &nat(2), &cfg).is_err());
        assert!(index_lower_bound_from_square(&ratio(8, 5), &nat(9), &cfg).is_err());
    }

    #[test]
    fn square_sandwich_small_range() {
        for n in 2..2000u64 {
            assert!(
                square_index_sandwich(&factorize(&nat(n)).unwrap()),
                "n = {n}"
            );
        }
    }
}
