//! Exact rationals. Everything geometric in this crate is computed over `Q`.

use alloc::format;
use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Parses `p/q` or `p`. Floats are rejected.
pub fn parse_q(s: &str) -> Result<Q, Error> {
    let s = s.trim();
    let parsed = Q::from_str(s).map_err(|_| Error::Parse(format!("not a rational: `{s}`")))?;
    Ok(parsed)
}

/// Formats as `p/q`, always with an explicit denominator.
pub fn format_q(v: &Q) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

pub fn is_positive(v: &Q) -> bool {
    v.is_positive()
}

pub fn to_string_short(v: &Q) -> String {
    v.to_string()
}
