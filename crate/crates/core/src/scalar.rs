//! The scalar abstraction shared by the geometric layer.
//!
//! Every geometric predicate in this crate is a sign test, so the scalar
//! type has to be an exact ordered field. [`BigRational`] is the default;
//! [`Rational64`] works for small inputs where overflow cannot occur.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio, Rational64};
use num_traits::{FromPrimitive, Num, One, Signed};

use crate::error::{Error, Result};

/// Sign of an exact quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Signed>(value: &T) -> Sign {
        if value.is_zero() {
            Sign::Zero
        } else if value.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn from_i8(value: i8) -> Option<Sign> {
        match value {
            -1 => Some(Sign::Negative),
            0 => Some(Sign::Zero),
            1 => Some(Sign::Positive),
            _ => None,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_i8(self.as_i8() * rhs.as_i8()).expect("product of signs is a sign")
    }
}

/// An exact ordered field.
pub trait Scalar:
    Clone + Debug + Display + Ord + Hash + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// Smallest positive integer multiple of `row` with integral entries.
    ///
    /// Scaling a row by a positive factor leaves the sign of any determinant
    /// containing it unchanged.
    fn clear_denominators(row: &[Self]) -> Vec<BigInt>;

    /// Parses `"p"` or `"p/q"` with an optional sign on `p`.
    fn parse_exact(text: &str) -> Result<Self>;

    /// `"p"` when the denominator is one, `"p/q"` otherwise.
    fn to_exact_string(&self) -> String {
        self.to_string()
    }
}

fn split_fraction(text: &str) -> Result<(&str, Option<&str>)> {
    let trimmed = text.trim();
    let err = || Error::Parse(text.to_string());
    if trimmed.is_empty() {
        return Err(err());
    }
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (trimmed, None),
    };
    let digits = num.strip_prefix(['+', '-']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    if let Some(den) = den {
        if den.is_empty() || !den.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
    }
    Ok((num.strip_prefix('+').unwrap_or(num), den))
}

fn parse_ratio<I>(text: &str) -> Result<Ratio<I>>
where
    I: Integer + Clone + std::str::FromStr,
{
    let err = || Error::Parse(text.to_string());
    let (num, den) = split_fraction(text)?;
    let numer: I = num.parse().map_err(|_| err())?;
    let denom: I = match den {
        Some(d) => d.parse().map_err(|_| err())?,
        None => I::one(),
    };
    if denom.is_zero() {
        return Err(err());
    }
    Ok(Ratio::new(numer, denom))
}

fn clear_row(row: impl Iterator<Item = (BigInt, BigInt)> + Clone) -> Vec<BigInt> {
    let lcm = row
        .clone()
        .fold(BigInt::one(), |acc, (_, den)| acc.lcm(&den));
    row.map(|(num, den)| num * (&lcm / den)).collect()
}

impl Scalar for BigRational {
    fn clear_denominators(row: &[Self]) -> Vec<BigInt> {
        clear_row(row.iter().map(|x| (x.numer().clone(), x.denom().clone())))
    }

    fn parse_exact(text: &str) -> Result<Self> {
        parse_ratio(text)
    }
}

impl Scalar for Rational64 {
    fn clear_denominators(row: &[Self]) -> Vec<BigInt> {
        clear_row(
            row.iter()
                .map(|x| (BigInt::from(*x.numer()), BigInt::from(*x.denom()))),
        )
    }

    fn parse_exact(text: &str) -> Result<Self> {
        parse_ratio(text)
    }
}

/// Converts a small integer into any scalar.
pub fn int<T: Scalar>(value: i64) -> T {
    T::from_i64(value).expect("scalar types represent all i64 values")
}

/// `value / 2`, exactly.
pub fn half<T: Scalar>(value: T) -> T {
    value / int::<T>(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn parses_integers_and_fractions() {
        let x = BigRational::parse_exact("-6/4").unwrap();
        assert_eq!(x, BigRational::new((-3).into(), 2.into()));
        assert_eq!(x.to_exact_string(), "-3/2");
        let y = BigRational::parse_exact("+7").unwrap();
        assert_eq!(y.to_exact_string(), "7");
        assert_eq!(Rational64::parse_exact(" 2/6 ").unwrap(), Rational64::new(1, 3));
    }

    #[test]
    fn rejects_zero_denominator_and_garbage() {
        for bad in ["1/0", "", "a", "1/", "/2", "1/-2", "--1", "1.5", "1/2/3"] {
            assert!(BigRational::parse_exact(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn clearing_denominators_keeps_direction() {
        let row: Vec<BigRational> = ["1/2", "-2/3", "5"]
            .iter()
            .map(|s| BigRational::parse_exact(s).unwrap())
            .collect();
        let cleared = BigRational::clear_denominators(&row);
        assert_eq!(
            cleared,
            vec![BigInt::from(3), BigInt::from(-4), BigInt::from(30)]
        );
    }

    #[test]
    fn sign_arithmetic() {
        assert_eq!(Sign::Negative * Sign::Negative, Sign::Positive);
        assert_eq!(-Sign::Positive, Sign::Negative);
        assert_eq!(Sign::of(&BigRational::zero()), Sign::Zero);
    }
}
