//! Even perfect numbers `(2^p - 1) 2^(p-1)` and the Lucas-Lehmer test.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{
    is_perfect, is_perfect_factored, is_prime_u64, primes_below, Factorization, Natural,
};
use crate::error::{Error, Result};

/// Scans past this exponent need an explicit override.
pub const MERSENNE_SCAN_CAP: u64 = 2500;

fn mersenne_number(p: u64) -> Natural {
    (Natural::one() << p as usize) - 1u32
}

/// `x mod 2^p - 1` by folding high bits onto low bits.
fn reduce_mersenne(mut x: Natural, p: u64, m: &Natural) -> Natural {
    while x.bits() > p {
        x = (&x & m) + (&x >> p as usize);
    }
    if &x == m {
        Natural::zero()
    } else {
        x
    }
}

/// True iff `2^p - 1` is prime. `p = 2` is special-cased and composite `p`
/// returns false without running the recurrence.
pub fn lucas_lehmer(p: u64) -> Result<bool> {
    if p < 2 {
        return Err(Error::Domain(format!("Lucas-Lehmer needs p >= 2, got {p}")));
    }
    if p == 2 {
        return Ok(true);
    }
    if !is_prime_u64(p) {
        return Ok(false);
    }
    let m = mersenne_number(p);
    let mut s = Natural::from(4u32);
    for _ in 0..p - 2 {
        // s^2 - 2 kept non-negative by adding m
        s = reduce_mersenne(&s * &s + &m - 2u32, p, &m);
    }
    Ok(s.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EuclideanForm {
    pub p: u64,
    pub mersenne: Natural,
    pub perfect: Natural,
}

impl EuclideanForm {
    /// `2^(p-1) (2^p - 1)` with the Mersenne factor taken as certified prime.
    pub fn factorization(&self) -> Factorization {
        Factorization::from_certified(vec![
            (Natural::from(2u32), (self.p - 1) as u32),
            (self.mersenne.clone(), 1),
        ])
    }

    /// `sigma(M) = 2M` from the closed form on the certified factorization.
    pub fn verify_closed_form(&self) -> bool {
        is_perfect_factored(&self.factorization())
    }

    /// `sigma(M) = 2M` after factoring `M` from scratch.
    pub fn verify(&self) -> Result<bool> {
        is_perfect(&self.perfect)
    }
}

pub fn even_perfect_from_exponent(p: u64) -> Result<EuclideanForm> {
    if !lucas_lehmer(p)? {
        return Err(Error::NotPrime(format!("2^{p} - 1")));
    }
    let mersenne = mersenne_number(p);
    let perfect = &mersenne << (p - 1) as usize;
    Ok(EuclideanForm {
        p,
        mersenne,
        perfect,
    })
}

/// All `p <= limit` with `2^p - 1` prime, ascending.
pub fn mersenne_scan(limit: u64) -> Result<Vec<u64>> {
    mersenne_scan_with(limit, false)
}

pub fn mersenne_scan_with(limit: u64, allow_beyond_cap: bool) -> Result<Vec<u64>> {
    if limit > MERSENNE_SCAN_CAP && !allow_beyond_cap {
        return Err(Error::ScanCap {
            limit,
            cap: MERSENNE_SCAN_CAP,
        });
    }
    if limit < 2 {
        return Ok(Vec::new());
    }
    let bound = u32::try_from(limit + 1)
        .map_err(|_| Error::Domain(format!("limit {limit} is beyond the scan range")))?;
    let hits = primes_below(bound)
        .into_par_iter()
        .map(|p| lucas_lehmer(p as u64).map(|ok| ok.then_some(p as u64)))
        .collect::<Result<Vec<_>>>()?;
    Ok(hits.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime_trial;
    use num_traits::ToPrimitive;

    #[test]
    fn lucas_lehmer_examples() {
        assert!(lucas_lehmer(3).unwrap());
        assert!(!lucas_lehmer(11).unwrap());
        assert!(lucas_lehmer(13).unwrap());
        assert!(lucas_lehmer(2).unwrap());
        assert!(!lucas_lehmer(4).unwrap());
        assert!(lucas_lehmer(1).is_err());
        assert!(lucas_lehmer(0).is_err());
    }

    #[test]
    fn agrees_with_trial_division_for_small_exponents() {
        for p in 2..=31u64 {
            let m = (1u64 << p) - 1;
            assert_eq!(lucas_lehmer(p).unwrap(), is_prime_trial(m), "p = {p}");
        }
    }

    #[test]
    fn perfect_examples() {
        let expected = [(2, 6u64), (3, 28), (5, 496), (7, 8128)];
        for (p, v) in expected {
            let form = even_perfect_from_exponent(p).unwrap();
            assert_eq!(form.perfect.to_u64(), Some(v));
            assert!(form.verify().unwrap());
            assert!(form.verify_closed_form());
        }
        assert!(even_perfect_from_exponent(11).is_err());
    }

    #[test]
    fn scan_prefixes() {
        assert_eq!(mersenne_scan(20).unwrap(), vec![2, 3, 5, 7, 13, 17, 19]);
        assert_eq!(mersenne_scan(2).unwrap(), vec![2]);
        assert_eq!(
            mersenne_scan(130).unwrap(),
            vec![2, 3, 5, 7, 13, 17, 19, 31, 61, 89, 107, 127]
        );
        assert!(matches!(mersenne_scan(2501), Err(Error::ScanCap { .. })));
        assert!(mersenne_scan(1).unwrap().is_empty());
    }
}
