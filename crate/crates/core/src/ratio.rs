//! Exact rationals in lowest terms.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::arith::Natural;
use crate::error::{Error, Result};

pub type Ratio = num_rational::BigRational;

pub fn ratio(num: u64, den: u64) -> Ratio {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_naturals(num: &Natural, den: &Natural) -> Ratio {
    Ratio::new(
        BigInt::from_biguint(Sign::Plus, num.clone()),
        BigInt::from_biguint(Sign::Plus, den.clone()),
    )
}

pub fn from_natural(n: &Natural) -> Ratio {
    Ratio::from_integer(BigInt::from_biguint(Sign::Plus, n.clone()))
}

/// Parses `a/b`, an integer, or a terminating decimal such as `1.25`.
pub fn parse_ratio(s: &str) -> Result<Ratio> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        return Ok(Ratio::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.trim_start().starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let mag = int.abs() * &scale + frac;
        let num = if negative { -mag } else { mag };
        return Ok(Ratio::new(num, scale));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Ratio::from_integer(n))
}

pub fn render(r: &Ratio) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
