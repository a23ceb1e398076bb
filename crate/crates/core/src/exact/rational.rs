//! Exact rationals.
//!
//! Scalars are [`num_rational::BigRational`] values, which are always stored
//! reduced with a positive denominator. Their `Display` form is `p/q`, or `p`
//! when the denominator is one, and that is also the wire format.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("`{s}` is not a rational number")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("`{s}` is not a rational number")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("`{s}` has a zero denominator")));
    }
    Ok(Rational::new(num, den))
}

/// Smallest positive integer multiplier that clears all denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| {
        num_integer::lcm(acc, v.denom().clone())
    })
}

/// Scales a rational vector to a primitive integer vector with a positive
/// leading entry. The zero vector stays zero.
pub fn primitive_integer_vector(values: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(values);
    let mut ints: Vec<BigInt> = values
        .iter()
        .map(|v| (v * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints
        .iter()
        .fold(BigInt::zero(), |g, v| num_integer::gcd(g, v.clone()));
    if g.is_zero() {
        return ints;
    }
    let lead_negative = ints.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative());
    for v in &mut ints {
        *v /= &g;
        if lead_negative {
            *v = -v.clone();
        }
    }
    ints
}
