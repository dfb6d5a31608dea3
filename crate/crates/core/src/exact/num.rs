//! Exact integer and rational scalars.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;

/// Reduced rational with positive denominator; zero is `0/1`.
pub type ExactRat = BigRational;

pub fn int(v: i64) -> ExactInt {
    ExactInt::from(v)
}

pub fn rat(v: i64) -> ExactRat {
    ExactRat::from_integer(ExactInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> ExactRat {
    ExactRat::new(ExactInt::from(num), ExactInt::from(den))
}

pub fn int_to_rat(v: &ExactInt) -> ExactRat {
    ExactRat::from_integer(v.clone())
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rat(s: &str) -> Result<ExactRat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: ExactInt = n.trim().parse().map_err(|_| bad())?;
            let d: ExactInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(ExactRat::new(n, d))
        }
        None => s.parse::<ExactInt>().map(ExactRat::from_integer).map_err(|_| bad()),
    }
}

/// `base^exp` for a possibly negative exponent; `base` must be nonzero when `exp < 0`.
pub fn pow_signed(base: &ExactRat, exp: &ExactInt) -> ExactRat {
    let e: i64 = exp.try_into().expect("exponent out of range");
    let p = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

pub(crate) fn gcd_all<'a>(vals: impl IntoIterator<Item = &'a ExactInt>) -> ExactInt {
    vals.into_iter().fold(ExactInt::zero(), |g, v| g.gcd(v))
}

pub(crate) fn lcm_all<'a>(vals: impl IntoIterator<Item = &'a ExactInt>) -> ExactInt {
    vals.into_iter().fold(ExactInt::one(), |l, v| l.lcm(v))
}
