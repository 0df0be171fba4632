//! Exact integer arithmetic and multiplicative number theory.

mod factor;
mod prime;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub use factor::{factorize, factorize_with, FactorBudget, Factorization};
pub use prime::{is_prime, is_prime_trial, is_prime_u64, primes_below};

use crate::error::{Error, Result};

/// Arbitrary-precision non-negative integer.
pub type Natural = BigUint;

/// Default cap for [`sigma_oracle`].
pub const ORACLE_CAP: u64 = 10_000_000;

pub fn gcd(a: &Natural, b: &Natural) -> Natural {
    a.gcd(b)
}

pub fn omega(f: &Factorization) -> usize {
    f.omega()
}

pub fn valuation(p: &Natural, f: &Factorization) -> u32 {
    f.valuation(p)
}

/// Sum of divisors from the closed form: the product of (p^(e+1) - 1) / (p - 1).
pub fn sigma(f: &Factorization) -> Natural {
    f.factors()
        .iter()
        .map(|(p, e)| {
            let top = num_traits::pow(p.clone(), *e as usize + 1) - 1u32;
            top / (p - 1u32)
        })
        .fold(Natural::one(), |acc, term| acc * term)
}

/// Sum of divisors by direct enumeration up to the square root.
pub fn sigma_oracle(n: &Natural) -> Result<Natural> {
    sigma_oracle_capped(n, ORACLE_CAP)
}

pub fn sigma_oracle_capped(n: &Natural, cap: u64) -> Result<Natural> {
    let v = n
        .to_u64()
        .filter(|v| *v <= cap)
        .ok_or_else(|| Error::OracleCap {
            value: n.to_string(),
            cap,
        })?;
    if v == 0 {
        return Err(Error::Zero);
    }
    let mut total: u128 = 0;
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            total += d as u128;
            let other = v / d;
            if other != d {
                total += other as u128;
            }
        }
        d += 1;
    }
    Ok(Natural::from(total))
}

pub fn is_perfect(n: &Natural) -> Result<bool> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    Ok(is_perfect_factored(&factorize(n)?))
}

pub fn is_perfect_factored(f: &Factorization) -> bool {
    sigma(f) == f.value() * 2u32
}
