//! Enclosures of ln, exp, real powers and square roots.
//!
//! ln uses the atanh series `ln m = 2 atanh((m - 1)/(m + 1))` after reducing the
//! argument by a power of two; exp reduces by a multiple of ln 2, halves the
//! remainder a fixed number of times and squares back. Series truncation is
//! bounded explicitly and added to the outward bound.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntervalReal;
use crate::error::{Error, Result};
use crate::ratio::{ratio, Ratio};

/// Extra fractional bits carried through intermediate steps.
const GUARD: u32 = 64;

/// exp halves its reduced argument this many times before the Taylor series.
const EXP_HALVINGS: u32 = 8;

/// Enclosure of `atanh(z)` for `0 <= z <= 1/2` at `bits` fractional bits.
fn atanh_series(z: &Ratio, bits: u32) -> IntervalReal {
    debug_assert!(!z.is_negative() && *z <= ratio(1, 2));
    let z2 = IntervalReal::from_ratio(&(z * z), bits);
    let mut power = IntervalReal::from_ratio(z, bits);
    let mut sum = IntervalReal::zero(bits);
    let mut k = 0u64;
    loop {
        let mag = power.magnitude_mantissa();
        if mag <= BigInt::from(2) {
            // remaining tail <= z^(2k+1) / (1 - z^2) <= 2 * z^(2k+1)
            let tail = IntervalReal::from_mantissas(BigInt::zero(), mag * 2, bits);
            return &sum + &tail;
        }
        sum = &sum + &power.div_integer(2 * k + 1);
        power = &power * &z2;
        k += 1;
    }
}

/// ln 2 = 18 atanh(1/26) - 2 atanh(1/4801) + 8 atanh(1/8749).
pub fn ln2(bits: u32) -> IntervalReal {
    let w = bits + GUARD;
    let a = atanh_series(&ratio(1, 26), w).mul_integer(18);
    let b = atanh_series(&ratio(1, 4801), w).mul_integer(2);
    let c = atanh_series(&ratio(1, 8749), w).mul_integer(8);
    (&(&a - &b) + &c).with_bits(bits)
}

/// Enclosure of `ln r` for rational `r > 0`. `ln 1` is exactly zero.
pub fn ln_ratio(r: &Ratio, bits: u32) -> Result<IntervalReal> {
    if !r.is_positive() {
        return Err(Error::Domain(format!("ln of non-positive {r}")));
    }
    if r.is_one() {
        return Ok(IntervalReal::zero(bits));
    }
    // r = m * 2^k with m in [2/3, 4/3)
    let mut k = r.numer().bits() as i64 - r.denom().bits() as i64;
    let two_pow = |e: i64| -> Ratio {
        let p = BigInt::one() << e.unsigned_abs() as usize;
        if e >= 0 {
            Ratio::from_integer(p)
        } else {
            Ratio::new(BigInt::one(), p)
        }
    };
    let mut m = r / two_pow(k);
    while m >= ratio(4, 3) {
        m /= ratio(2, 1);
        k += 1;
    }
    while m < ratio(2, 3) {
        m *= ratio(2, 1);
        k -= 1;
    }
    let one = Ratio::one();
    let z = (&m - &one) / (&m + &one);
    let w = bits + GUARD + 64 - (k.unsigned_abs().leading_zeros());
    let mut acc = atanh_series(&z.abs(), w).mul_integer(2);
    if z.is_negative() {
        acc = -&acc;
    }
    if k != 0 {
        acc = &acc + &ln2(w).mul_integer(k);
    }
    Ok(acc.with_bits(bits))
}

/// Enclosure of `ln x` over a strictly positive interval.
pub fn ln(x: &IntervalReal) -> Result<IntervalReal> {
    if !x.is_positive() {
        return Err(Error::Domain(
            "ln of an interval that is not strictly positive".into(),
        ));
    }
    let bits = x.bits();
    let lo = ln_ratio(&x.lo(), bits)?;
    let hi = ln_ratio(&x.hi(), bits)?;
    Ok(IntervalReal::from_mantissas(
        lo.lo_mantissa().clone(),
        hi.hi_mantissa().clone(),
        bits,
    ))
}

/// Enclosure of `exp t` for a dyadic point `t = mantissa / 2^bits`.
fn exp_point(mantissa: &BigInt, bits: u32) -> Result<IntervalReal> {
    let t = Ratio::new(mantissa.clone(), BigInt::one() << bits as usize);
    let approx = t.to_f64().unwrap_or(f64::INFINITY);
    if !approx.is_finite() || approx.abs() > (1u64 << 30) as f64 {
        return Err(Error::Domain(format!(
            "exp argument {approx:e} out of range"
        )));
    }
    let k = (approx / std::f64::consts::LN_2).round() as i64;
    let w = bits + GUARD + EXP_HALVINGS + k.max(0) as u32;
    let reduced = &IntervalReal::from_ratio(&t, w) - &ln2(w).mul_integer(k);
    let y = reduced.mul_pow2(-(EXP_HALVINGS as i64));

    // Taylor series; |y| < 1/2 so the tail after the term y^N/N! is at most twice it
    let mut sum = IntervalReal::from_integer(1, w);
    let mut term = IntervalReal::from_integer(1, w);
    let mut i = 1u64;
    loop {
        term = (&term * &y).div_integer(i);
        let mag = term.magnitude_mantissa();
        if mag <= BigInt::from(2) {
            let tail =
                IntervalReal::from_mantissas(-(&mag * BigInt::from(2)), &mag * BigInt::from(2), w);
            sum = &sum + &tail;
            break;
        }
        sum = &sum + &term;
        i += 1;
    }
    for _ in 0..EXP_HALVINGS {
        sum = sum.square();
    }
    Ok(sum.mul_pow2(k).with_bits(bits))
}

/// Enclosure of `exp x`.
pub fn exp(x: &IntervalReal) -> Result<IntervalReal> {
    let lo = exp_point(x.lo_mantissa(), x.bits())?;
    let hi = exp_point(x.hi_mantissa(), x.bits())?;
    let lower = lo.lo_mantissa().max(&BigInt::zero()).clone();
    Ok(IntervalReal::from_mantissas(
        lower,
        hi.hi_mantissa().clone(),
        x.bits(),
    ))
}

/// Enclosure of `base^exponent` as `exp(exponent * ln(base))`; the base must be
/// strictly positive.
pub fn pow(base: &IntervalReal, exponent: &IntervalReal) -> Result<IntervalReal> {
    if !base.is_positive() {
        return Err(Error::Domain(
            "power of an interval that touches or crosses 0".into(),
        ));
    }
    let bits = base.bits().max(exponent.bits());
    let w = bits + GUARD;
    let l = ln(&base.with_bits(w))?;
    let product = &exponent.with_bits(w) * &l;
    Ok(exp(&product)?.with_bits(bits))
}

fn isqrt_floor(v: &BigInt) -> BigInt {
    BigInt::from_biguint(Sign::Plus, v.magnitude().sqrt())
}

fn isqrt_ceil(v: &BigInt) -> BigInt {
    let s = isqrt_floor(v);
    if &(&s * &s) == v {
        s
    } else {
        s + 1
    }
}

/// Enclosure of the square root of a non-negative rational, from integer square roots.
pub fn sqrt_ratio(r: &Ratio, bits: u32) -> Result<IntervalReal> {
    if r.is_negative() {
        return Err(Error::Domain(format!("square root of negative {r}")));
    }
    let scaled = r * Ratio::from_integer(BigInt::one() << (2 * bits) as usize);
    Ok(IntervalReal::from_mantissas(
        isqrt_floor(&scaled.floor().to_integer()),
        isqrt_ceil(&scaled.ceil().to_integer()),
        bits,
    ))
}

/// Enclosure of the square root of an interval; negative parts below 0 are
/// rejected only if the whole interval is negative.
pub fn sqrt(x: &IntervalReal) -> Result<IntervalReal> {
    if x.hi_mantissa().is_negative() {
        return Err(Error::Domain("square root of a negative interval".into()));
    }
    let bits = x.bits();
    let lo = if x.lo_mantissa().is_negative() {
        BigInt::zero()
    } else {
        sqrt_ratio(&x.lo(), bits)?.lo_mantissa().clone()
    };
    let hi = sqrt_ratio(&x.hi(), bits)?.hi_mantissa().clone();
    Ok(IntervalReal::from_mantissas(lo, hi, bits))
}

/// Enclosure of `1 + sqrt 3`.
pub fn one_plus_sqrt3(bits: u32) -> IntervalReal {
    let root = sqrt_ratio(&ratio(3, 1), bits).expect("3 is non-negative");
    &root + &IntervalReal::from_integer(1, bits)
}
