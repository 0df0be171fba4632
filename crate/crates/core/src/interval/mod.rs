//! Rigorous real enclosures.
//!
//! An [`IntervalReal`] stores two fixed-point endpoints `lo / 2^bits` and
//! `hi / 2^bits` with arbitrary-precision mantissas. Every operation rounds the
//! lower endpoint toward negative infinity and the upper endpoint toward
//! positive infinity, so the exact image of the inputs is always contained in
//! the result.

mod elementary;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratio::Ratio;

pub use elementary::{exp, ln, ln2, ln_ratio, one_plus_sqrt3, pow, sqrt, sqrt_ratio};

/// Outcome of a rigorous comparison. `Undecided` means the enclosures overlap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Comparison {
    Less,
    Greater,
    Undecided,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Less => "LESS",
            Comparison::Greater => "GREATER",
            Comparison::Undecided => "UNDECIDED",
        })
    }
}

/// Working precision schedule: start at `initial_bits`, double up to `max_bits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    pub initial_bits: u32,
    pub max_bits: u32,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        Self {
            initial_bits: 256,
            max_bits: 4096,
        }
    }
}

impl PrecisionConfig {
    pub fn new(initial_bits: u32, max_bits: u32) -> Result<Self> {
        if initial_bits == 0 || initial_bits > max_bits {
            return Err(Error::Domain(format!(
                "precision schedule needs 0 < initial ({initial_bits}) <= max ({max_bits})"
            )));
        }
        Ok(Self {
            initial_bits,
            max_bits,
        })
    }

    /// Config whose schedule starts at `initial_bits`, keeping the default ceiling
    /// unless the start is already above it.
    pub fn starting_at(initial_bits: u32) -> Result<Self> {
        let max_bits = Self::default().max_bits.max(initial_bits);
        Self::new(initial_bits, max_bits)
    }

    /// `initial_bits, 2*initial_bits, ...`, never exceeding `max_bits`, and always
    /// ending at `max_bits`.
    pub fn schedule(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut b = self.initial_bits;
        while b < self.max_bits {
            out.push(b);
            b = b.saturating_mul(2);
        }
        out.push(self.max_bits);
        out
    }
}

/// Runs `attempt` at each precision of the schedule until it yields a value.
/// Returns the value and the precision that produced it, or `None` at the ceiling.
pub fn escalate<T, F>(cfg: &PrecisionConfig, mut attempt: F) -> Result<Option<(T, u32)>>
where
    F: FnMut(u32) -> Result<Option<T>>,
{
    for bits in cfg.schedule() {
        if let Some(v) = attempt(bits)? {
            return Ok(Some((v, bits)));
        }
    }
    Ok(None)
}

/// A comparison together with the enclosure and precision that decided it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certified {
    pub outcome: Comparison,
    pub enclosure: IntervalReal,
    pub bits: u32,
}

/// Compares the quantity produced by `eval` against `r`, doubling the precision
/// while the enclosure still straddles `r`.
pub fn certify_against<F>(cfg: &PrecisionConfig, r: &Ratio, mut eval: F) -> Result<Certified>
where
    F: FnMut(u32) -> Result<IntervalReal>,
{
    let mut last = None;
    for bits in cfg.schedule() {
        let x = eval(bits)?;
        let outcome = x.compare_ratio(r);
        if outcome != Comparison::Undecided {
            return Ok(Certified {
                outcome,
                enclosure: x,
                bits,
            });
        }
        last = Some((x, bits));
    }
    let (enclosure, bits) = last.expect("schedule is never empty");
    Ok(Certified {
        outcome: Comparison::Undecided,
        enclosure,
        bits,
    })
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn shr_floor(a: &BigInt, n: u32) -> BigInt {
    a >> n as usize
}

fn shr_ceil(a: &BigInt, n: u32) -> BigInt {
    -((-a) >> n as usize)
}

/// Closed interval `[lo, hi] / 2^bits` enclosing a real number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalReal {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

impl IntervalReal {
    /// Builds from raw mantissas. Panics if `lo > hi`.
    pub fn from_mantissas(lo: BigInt, hi: BigInt, bits: u32) -> Self {
        assert!(lo <= hi, "inverted interval");
        Self { lo, hi, bits }
    }

    pub fn from_ratio(r: &Ratio, bits: u32) -> Self {
        let scaled = r.numer() << bits as usize;
        Self {
            lo: floor_div(&scaled, r.denom()),
            hi: ceil_div(&scaled, r.denom()),
            bits,
        }
    }

    pub fn from_integer(v: i64, bits: u32) -> Self {
        let m = BigInt::from(v) << bits as usize;
        Self {
            lo: m.clone(),
            hi: m,
            bits,
        }
    }

    pub fn zero(bits: u32) -> Self {
        Self::from_integer(0, bits)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn lo_mantissa(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi_mantissa(&self) -> &BigInt {
        &self.hi
    }

    fn scale(&self) -> BigInt {
        BigInt::one() << self.bits as usize
    }

    pub fn lo(&self) -> Ratio {
        Ratio::new(self.lo.clone(), self.scale())
    }

    pub fn hi(&self) -> Ratio {
        Ratio::new(self.hi.clone(), self.scale())
    }

    pub fn midpoint(&self) -> Ratio {
        Ratio::new(&self.lo + &self.hi, self.scale() * 2)
    }

    pub fn width(&self) -> Ratio {
        Ratio::new(&self.hi - &self.lo, self.scale())
    }

    pub fn radius(&self) -> Ratio {
        Ratio::new(&self.hi - &self.lo, self.scale() * 2)
    }

    /// True when `width < 2^-k`.
    pub fn width_below_pow2(&self, k: u32) -> bool {
        let w = &self.hi - &self.lo;
        if self.bits >= k {
            w < (BigInt::one() << (self.bits - k) as usize)
        } else {
            w.is_zero()
        }
    }

    pub fn to_f64_bounds(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let lo = self.lo().to_f64().unwrap_or(f64::NEG_INFINITY);
        let hi = self.hi().to_f64().unwrap_or(f64::INFINITY);
        // widen by one ulp each side so the float pair still encloses
        (lo.next_down(), hi.next_up())
    }

    /// Re-expresses the interval at `bits` fractional bits, rounding outward.
    pub fn with_bits(&self, bits: u32) -> Self {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let d = (bits - self.bits) as usize;
                Self {
                    lo: &self.lo << d,
                    hi: &self.hi << d,
                    bits,
                }
            }
            Ordering::Less => {
                let d = self.bits - bits;
                Self {
                    lo: shr_floor(&self.lo, d),
                    hi: shr_ceil(&self.hi, d),
                    bits,
                }
            }
        }
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let bits = a.bits.max(b.bits);
        (a.with_bits(bits), b.with_bits(bits))
    }

    pub fn contains(&self, r: &Ratio) -> bool {
        self.compare_ratio(r) == Comparison::Undecided
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        let (a, b) = Self::aligned(self, other);
        a.lo <= b.lo && b.hi <= a.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        let (a, b) = Self::aligned(self, other);
        a.lo <= b.hi && b.lo <= a.hi
    }

    /// `Less` iff `hi < r`, `Greater` iff `lo > r`; touching is undecided.
    pub fn compare_ratio(&self, r: &Ratio) -> Comparison {
        let target = r.numer() << self.bits as usize;
        let den = r.denom();
        if &self.hi * den < target {
            Comparison::Less
        } else if &self.lo * den > target {
            Comparison::Greater
        } else {
            Comparison::Undecided
        }
    }

    pub fn compare(&self, other: &Self) -> Comparison {
        let (a, b) = Self::aligned(self, other);
        if a.hi < b.lo {
            Comparison::Less
        } else if a.lo > b.hi {
            Comparison::Greater
        } else {
            Comparison::Undecided
        }
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Multiplies by `2^k` exactly (or with outward rounding for negative `k`).
    pub fn mul_pow2(&self, k: i64) -> Self {
        if k >= 0 {
            Self {
                lo: &self.lo << k as usize,
                hi: &self.hi << k as usize,
                bits: self.bits,
            }
        } else {
            let d = (-k) as u32;
            Self {
                lo: shr_floor(&self.lo, d),
                hi: shr_ceil(&self.hi, d),
                bits: self.bits,
            }
        }
    }

    pub fn div_integer(&self, d: u64) -> Self {
        assert!(d > 0, "division by zero");
        let d = BigInt::from(d);
        Self {
            lo: floor_div(&self.lo, &d),
            hi: ceil_div(&self.hi, &d),
            bits: self.bits,
        }
    }

    pub fn mul_integer(&self, m: i64) -> Self {
        let m = BigInt::from(m);
        let (a, b) = (&self.lo * &m, &self.hi * &m);
        if a <= b {
            Self {
                lo: a,
                hi: b,
                bits: self.bits,
            }
        } else {
            Self {
                lo: b,
                hi: a,
                bits: self.bits,
            }
        }
    }

    /// Largest absolute value of any point, as a mantissa at `self.bits`.
    pub(crate) fn magnitude_mantissa(&self) -> BigInt {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn square(&self) -> Self {
        if self.lo.is_negative() && self.hi.is_positive() {
            let m = self.magnitude_mantissa();
            let sq = &m * &m;
            return Self {
                lo: BigInt::zero(),
                hi: shr_ceil(&sq, self.bits),
                bits: self.bits,
            };
        }
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        let (small, large) = if a <= b { (a, b) } else { (b, a) };
        Self {
            lo: shr_floor(&small, self.bits),
            hi: shr_ceil(&large, self.bits),
            bits: self.bits,
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::Domain(
                "reciprocal of an interval containing 0".into(),
            ));
        }
        let num = BigInt::one() << (2 * self.bits) as usize;
        // 1/x is decreasing on either side of zero
        Ok(Self {
            lo: floor_div(&num, &self.hi),
            hi: ceil_div(&num, &self.lo),
            bits: self.bits,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let (a, b) = Self::aligned(self, other);
        if b.contains_zero() {
            return Err(Error::Domain("division by an interval containing 0".into()));
        }
        let bits = a.bits;
        let scale = |m: &BigInt| m << bits as usize;
        let cands_lo = [
            floor_div(&scale(&a.lo), &b.lo),
            floor_div(&scale(&a.lo), &b.hi),
            floor_div(&scale(&a.hi), &b.lo),
            floor_div(&scale(&a.hi), &b.hi),
        ];
        let cands_hi = [
            ceil_div(&scale(&a.lo), &b.lo),
            ceil_div(&scale(&a.lo), &b.hi),
            ceil_div(&scale(&a.hi), &b.lo),
            ceil_div(&scale(&a.hi), &b.hi),
        ];
        Ok(Self {
            lo: cands_lo.into_iter().min().unwrap(),
            hi: cands_hi.into_iter().max().unwrap(),
            bits,
        })
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let (a, b) = Self::aligned(self, other);
        let lo = a.lo.max(b.lo);
        let hi = a.hi.min(b.hi);
        (lo <= hi).then_some(Self {
            lo,
            hi,
            bits: a.bits,
        })
    }

    /// Decimal rendering with `digits` places after the point. The printed radius
    /// covers both the enclosure half-width and the rounding of the midpoint.
    pub fn render(&self, digits: usize) -> String {
        let mid = self.midpoint();
        let ten_pow = num_traits::pow(BigInt::from(10), digits);
        let scaled = &mid * Ratio::from_integer(ten_pow.clone());
        let shown_int = scaled.round().to_integer();
        let shown = Ratio::new(shown_int.clone(), ten_pow);
        let radius = self.radius() + (mid - shown).abs();
        format!(
            "{} ± {} @{}b",
            format_fixed(&shown_int, digits),
            format_radius(&radius),
            self.bits
        )
    }
}

fn format_fixed(scaled: &BigInt, digits: usize) -> String {
    let negative = scaled.is_negative();
    let mut s = scaled.abs().to_string();
    if digits > 0 {
        if s.len() <= digits {
            s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
        }
        s.insert(s.len() - digits, '.');
    }
    if negative {
        s.insert(0, '-');
    }
    s
}

/// One significant digit, rounded up, e.g. `3e-12`.
pub(crate) fn format_radius(r: &Ratio) -> String {
    if r.is_zero() {
        return "0".into();
    }
    use num_traits::ToPrimitive;
    let approx = r.to_f64().unwrap_or(0.0);
    let mut e: i64 = if approx > 0.0 && approx.is_finite() {
        approx.log10().floor() as i64
    } else {
        // far below f64 range: count decimal digits of the denominator
        -(r.denom().to_string().len() as i64) + r.numer().to_string().len() as i64 - 1
    };
    let pow10 = |e: i64| -> Ratio {
        let p = num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize);
        if e >= 0 {
            Ratio::from_integer(p)
        } else {
            Ratio::new(BigInt::one(), p)
        }
    };
    loop {
        let c = (r / pow10(e)).ceil().to_integer();
        if c <= BigInt::from(9) {
            return format!("{c}e{e}");
        }
        e += 1;
    }
}

impl fmt::Display for IntervalReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(f.precision().unwrap_or(10)))
    }
}

impl Neg for &IntervalReal {
    type Output = IntervalReal;
    fn neg(self) -> IntervalReal {
        IntervalReal {
            lo: -&self.hi,
            hi: -&self.lo,
            bits: self.bits,
        }
    }
}

impl Add for &IntervalReal {
    type Output = IntervalReal;
    fn add(self, rhs: &IntervalReal) -> IntervalReal {
        let (a, b) = IntervalReal::aligned(self, rhs);
        IntervalReal {
            lo: a.lo + b.lo,
            hi: a.hi + b.hi,
            bits: a.bits,
        }
    }
}

impl Sub for &IntervalReal {
    type Output = IntervalReal;
    fn sub(self, rhs: &IntervalReal) -> IntervalReal {
        self + &(-rhs)
    }
}

impl Mul for &IntervalReal {
    type Output = IntervalReal;
    fn mul(self, rhs: &IntervalReal) -> IntervalReal {
        let (a, b) = IntervalReal::aligned(self, rhs);
        let products = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let min = products.iter().min().unwrap();
        let max = products.iter().max().unwrap();
        IntervalReal {
            lo: shr_floor(min, a.bits),
            hi: shr_ceil(max, a.bits),
            bits: a.bits,
        }
    }
}

impl Add for IntervalReal {
    type Output = IntervalReal;
    fn add(self, rhs: IntervalReal) -> IntervalReal {
        &self + &rhs
    }
}

impl Sub for IntervalReal {
    type Output = IntervalReal;
    fn sub(self, rhs: IntervalReal) -> IntervalReal {
        &self - &rhs
    }
}

impl Mul for IntervalReal {
    type Output = IntervalReal;
    fn mul(self, rhs: IntervalReal) -> IntervalReal {
        &self * &rhs
    }
}
