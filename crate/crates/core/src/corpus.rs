//! Seeded random corpora for the property suites.
//!
//! Every generator is a pure function of its seed, so a suite run can be
//! reproduced exactly from the seed printed in the report.

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{primes_below, Factorization, Natural};
use crate::opn::{lemma4_premise, EulerianCandidate};

/// Odd primes below this bound feed the random factorizations.
pub const CORPUS_PRIME_BOUND: u32 = 100;
/// Largest value of either member of a coprime pair.
pub const PAIR_VALUE_CAP: u64 = 1_000_000;
/// Most primes used across both members of a pair.
pub const MAX_PRIMES: usize = 5;
pub const MAX_EXPONENT: u32 = 4;

fn odd_primes(bound: u32) -> Vec<u64> {
    primes_below(bound)
        .into_iter()
        .skip(1)
        .map(u64::from)
        .collect()
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Builds a value `<= cap` from the given primes, each with a random exponent in
/// `1..=MAX_EXPONENT`, lowering the exponent (or dropping the prime) to stay
/// under the cap.
fn build(rng: &mut ChaCha8Rng, primes: &[u64], cap: u64) -> Vec<(Natural, u32)> {
    let mut value = 1u64;
    let mut pairs = Vec::new();
    for &p in primes {
        let mut e = rng.gen_range(1..=MAX_EXPONENT);
        while e > 0 {
            match p.checked_pow(e).and_then(|pe| pe.checked_mul(value)) {
                Some(v) if v <= cap => {
                    value = v;
                    pairs.push((Natural::from(p), e));
                    break;
                }
                _ => e -= 1,
            }
        }
    }
    pairs
}

fn certified(mut pairs: Vec<(Natural, u32)>) -> Factorization {
    pairs.sort();
    Factorization::from_certified(pairs)
}

/// `count` pairs of coprime odd integers `1 < a, b <= 10^6`, drawn from disjoint
/// sets of odd primes below 100 (at most five primes in total).
pub fn coprime_odd_pairs(seed: u64, count: usize) -> Vec<(Factorization, Factorization)> {
    let primes = odd_primes(CORPUS_PRIME_BOUND);
    let mut rng = rng_for(seed, 1);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let total = rng.gen_range(2..=MAX_PRIMES);
        let split = rng.gen_range(1..total);
        let chosen: Vec<u64> = primes.choose_multiple(&mut rng, total).copied().collect();
        let a = build(&mut rng, &chosen[..split], PAIR_VALUE_CAP);
        let b = build(&mut rng, &chosen[split..], PAIR_VALUE_CAP);
        if a.is_empty() || b.is_empty() {
            continue;
        }
        out.push((certified(a), certified(b)));
    }
    out
}

#[derive(Clone, Debug)]
pub struct SurrogateCorpus {
    pub candidates: Vec<EulerianCandidate>,
    /// Draws discarded because `I(q^k)^3 < 2 < I(n)^3` failed.
    pub premise_rejections: usize,
}

/// Euler primes used for surrogates: `q = 1 (mod 4)`, `5 <= q < 2000`.
fn euler_primes() -> Vec<u64> {
    primes_below(2000)
        .into_iter()
        .filter(|&q| q % 4 == 1)
        .map(u64::from)
        .collect()
}

/// `count` surrogate candidates `(q, k, n)` with `k` in `{1, 5}`, `n` odd and
/// coprime to `q`, all satisfying the premise `I(q^k) < 2^(1/3) < I(n)`.
pub fn lemma4_surrogates(seed: u64, count: usize) -> SurrogateCorpus {
    let qs = euler_primes();
    let primes = odd_primes(CORPUS_PRIME_BOUND);
    let mut rng = rng_for(seed, 2);
    let mut candidates = Vec::with_capacity(count);
    let mut premise_rejections = 0;
    while candidates.len() < count {
        let q = *qs.choose(&mut rng).expect("nonempty");
        let k = if rng.gen_bool(0.5) { 1 } else { 5 };
        let pool: Vec<u64> = primes.iter().copied().filter(|&p| p != q).collect();
        let m = rng.gen_range(1..=MAX_PRIMES);
        let chosen: Vec<u64> = pool.choose_multiple(&mut rng, m).copied().collect();
        // span both sides of q^k so that every truth pattern of the predicates occurs
        let cap = 10u64.pow(rng.gen_range(2..=12));
        let n = build(&mut rng, &chosen, cap);
        if n.is_empty() {
            continue;
        }
        let c =
            EulerianCandidate::new(Natural::from(q), k, certified(n)).expect("q >= 5 and k >= 1");
        if lemma4_premise(&c).is_err() {
            premise_rejections += 1;
            continue;
        }
        candidates.push(c);
    }
    SurrogateCorpus {
        candidates,
        premise_rejections,
    }
}

/// `count` pairs `(q, n)` for the exact test `q^2 < 3 n^2`. Half are drawn close
/// to the boundary `q = n sqrt 3`.
pub fn acquaah_konyagin_pairs(seed: u64, count: usize) -> Vec<(Natural, Natural)> {
    let mut rng = rng_for(seed, 3);
    (0..count)
        .map(|i| {
            let n: u64 = rng.gen_range(1..=1_000_000);
            let q = if i % 2 == 0 {
                rng.gen_range(1..=2 * n)
            } else {
                let root = ((3 * n * n) as f64).sqrt().to_u64().unwrap_or(0);
                root.saturating_add_signed(rng.gen_range(-2..=2)).max(1)
            };
            (Natural::from(q), Natural::from(n))
        })
        .collect()
}
