use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::prime::{is_prime, is_prime_u64, mul_mod, small_primes, SMALL_PRIME_BOUND};
use super::Natural;
use crate::error::{Error, Result};

/// Canonical prime factorization: primes strictly increasing, exponents at least 1.
/// The empty list is the factorization of 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    factors: Vec<(Natural, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a factorization from arbitrary (prime, exponent) pairs. Pairs are
    /// sorted and repeated primes merged; zero exponents are dropped.
    pub fn new<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Natural, u32)>,
    {
        let mut factors: Vec<(Natural, u32)> = Vec::new();
        for (p, e) in pairs {
            if !is_prime(&p) {
                return Err(Error::NotPrime(p.to_string()));
            }
            if e > 0 {
                factors.push((p, e));
            }
        }
        Ok(Self::from_unsorted(factors))
    }

    pub fn prime_power(p: Natural, e: u32) -> Result<Self> {
        Self::new([(p, e)])
    }

    /// Caller guarantees every base is prime (e.g. certified by Lucas-Lehmer).
    pub(crate) fn from_certified(pairs: Vec<(Natural, u32)>) -> Self {
        Self::from_unsorted(pairs.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    fn from_unsorted(mut factors: Vec<(Natural, u32)>) -> Self {
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Natural, u32)> = Vec::with_capacity(factors.len());
        for (p, e) in factors {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        Self { factors: merged }
    }

    pub fn factors(&self) -> &[(Natural, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &Natural> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn value(&self) -> Natural {
        self.factors.iter().fold(Natural::one(), |acc, (p, e)| {
            acc * num_traits::pow(p.clone(), *e as usize)
        })
    }

    pub fn smallest_prime(&self) -> Option<&Natural> {
        self.factors.first().map(|(p, _)| p)
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    /// Exponent of `p`, zero when absent.
    pub fn valuation(&self, p: &Natural) -> u32 {
        self.factors
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// Factorization of the `k`-th power; exponents are scaled, nothing is refactored.
    pub fn pow(&self, k: u32) -> Self {
        if k == 0 {
            return Self::one();
        }
        Self {
            factors: self
                .factors
                .iter()
                .map(|(p, e)| (p.clone(), e * k))
                .collect(),
        }
    }

    pub fn squared(&self) -> Self {
        self.pow(2)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut all = self.factors.clone();
        all.extend(other.factors.iter().cloned());
        Self::from_unsorted(all)
    }

    /// True when the two share no prime.
    pub fn is_coprime_to(&self, other: &Self) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            match self.factors[i].0.cmp(&other.factors[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Parses `p1^e1*p2^e2*...` or a bare integer (factored on the spot).
impl FromStr for Factorization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty factorization".into()));
        }
        if !s.contains(['^', '*']) {
            let n: Natural = s
                .parse()
                .map_err(|_| Error::Parse(format!("not a non-negative integer: {s:?}")))?;
            return factorize(&n);
        }
        let mut pairs = Vec::new();
        for term in s.split('*') {
            let term = term.trim();
            let (base, exp) = match term.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim()),
                None => (term, "1"),
            };
            let p: Natural = base
                .parse()
                .map_err(|_| Error::Factorization(format!("bad base in {term:?}")))?;
            let e: u32 = exp
                .parse()
                .map_err(|_| Error::Factorization(format!("bad exponent in {term:?}")))?;
            if e == 0 {
                return Err(Error::Factorization(format!("zero exponent in {term:?}")));
            }
            if !is_prime(&p) {
                return Err(Error::Factorization(format!("{p} is not prime")));
            }
            pairs.push((p, e));
        }
        Ok(Factorization::from_unsorted(pairs))
    }
}

/// Effort budget for the rho splitter, counted in polynomial iterations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorBudget {
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        Self {
            rho_iterations: 1 << 22,
        }
    }
}

pub fn factorize(n: &Natural) -> Result<Factorization> {
    factorize_with(n, FactorBudget::default())
}

pub fn factorize_with(n: &Natural, budget: FactorBudget) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let mut pairs = Vec::new();
    let mut rest = n.clone();
    for &p in small_primes() {
        if let Some(v) = rest.to_u64() {
            let (pairs_small, left) = trial_divide_u64(v, p);
            pairs.extend(pairs_small);
            rest = Natural::from(left);
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&Natural::from(p));
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            pairs.push((Natural::from(p), e));
        }
    }
    if !rest.is_one() {
        let mut remaining = budget.rho_iterations;
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            let bound = SMALL_PRIME_BOUND as u64;
            if m.to_u64().is_some_and(|v| v < bound * bound) || is_prime(&m) {
                pairs.push((m, 1));
                continue;
            }
            let d = split(&m, &mut remaining).ok_or_else(|| Error::ResourceLimit(m.to_string()))?;
            let other = &m / &d;
            stack.push(d);
            stack.push(other);
        }
    }
    Ok(Factorization::from_unsorted(pairs))
}

/// Trial division of `v` by the small primes from `start` on. Returns the
/// prime powers found and the cofactor, which is 1 or has no small factor.
fn trial_divide_u64(mut v: u64, start: u32) -> (Vec<(Natural, u32)>, u64) {
    let mut out = Vec::new();
    for &p in small_primes().iter().skip_while(|&&p| p < start) {
        let p = p as u64;
        if p * p > v {
            break;
        }
        let mut e = 0;
        while v.is_multiple_of(p) {
            v /= p;
            e += 1;
        }
        if e > 0 {
            out.push((Natural::from(p), e));
        }
    }
    (out, v)
}

/// Finds a nontrivial divisor of the odd composite `m`.
fn split(m: &Natural, remaining: &mut u64) -> Option<Natural> {
    if let Some(small) = m.to_u64() {
        return (1..).take(64).find_map(|c| {
            if *remaining == 0 {
                return None;
            }
            brent_u64(small, c, remaining).map(Natural::from)
        });
    }
    (1u32..).take(64).find_map(|c| {
        if *remaining == 0 {
            return None;
        }
        brent_big(m, c, remaining)
    })
}

fn brent_u64(n: u64, c: u64, remaining: &mut u64) -> Option<u64> {
    debug_assert!(!is_prime_u64(n));
    let f = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
    let mut y = 2u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut x = y;
    let mut ys = y;
    const BLOCK: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let steps = BLOCK.min(r - k);
            for _ in 0..steps {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += steps;
            *remaining = remaining.checked_sub(steps)?;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            *remaining = remaining.checked_sub(1)?;
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn brent_big(n: &BigUint, c: u32, remaining: &mut u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    const BLOCK: u64 = 128;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let steps = BLOCK.min(r - k);
            for _ in 0..steps {
                y = f(&y);
                q = (q * diff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += steps;
            *remaining = remaining.checked_sub(steps)?;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = diff(&x, &ys).gcd(n);
            *remaining = remaining.checked_sub(1)?;
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}
