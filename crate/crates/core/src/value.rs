//! Exact non-negative rational values.
//!
//! Table entries, radii, and self-distances are [`Value`]s (always >= 0).
//! Derived quantities that may legitimately go negative on unvalidated
//! inputs (gaps, inequality sides) use the signed [`Rational`] alias.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Signed exact rational for derived quantities.
pub type Rational = BigRational;

/// Errors from parsing or constructing a [`Value`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValueError {
    /// The literal is not an unsigned integer, decimal, or fraction.
    #[error("invalid value literal `{0}`")]
    InvalidLiteral(String),
    /// A fraction literal with denominator zero.
    #[error("zero denominator in value literal `{0}`")]
    ZeroDenominator(String),
    /// A negative rational was handed to [`Value::new`].
    #[error("negative value `{0}` is not allowed")]
    Negative(String),
}

/// An exact non-negative rational.
///
/// Values are stored reduced; equality and ordering are exact. `3.5`,
/// `7/2`, and `14/4` all denote the same value.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value(BigRational);

impl Value {
    pub fn zero() -> Self {
        Value(BigRational::zero())
    }

    pub fn one() -> Self {
        Value(BigRational::one())
    }

    pub fn from_integer(n: u64) -> Self {
        Value(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as a value. Panics if `den` is zero; meant for literal
    /// grids and tests where both parts are in hand.
    pub fn from_ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "denominator must be nonzero");
        Value(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Wraps a signed rational, rejecting negatives.
    pub fn new(r: BigRational) -> Result<Self, ValueError> {
        if r.is_negative() {
            Err(ValueError::Negative(format_rational(&r)))
        } else {
            Ok(Value(r))
        }
    }

    pub fn ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn into_ratio(self) -> BigRational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Value({})", self)
    }
}

/// Canonical text for a rational: the numerator alone when the
/// denominator is 1, otherwise `p/q`. Negatives print a leading `-`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn all_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

impl FromStr for Value {
    type Err = ValueError;

    /// Accepts `7`, `3.5`, or `7/2`. No signs, no exponents, digits only
    /// around the separator. Results are reduced, so `parse(print(v)) == v`.
    fn from_str(s: &str) -> Result<Self, ValueError> {
        let invalid = || ValueError::InvalidLiteral(s.to_string());
        if let Some((num, den)) = s.split_once('/') {
            if !all_digits(num) || !all_digits(den) {
                return Err(invalid());
            }
            let num = BigInt::from_str(num).map_err(|_| invalid())?;
            let den = BigInt::from_str(den).map_err(|_| invalid())?;
            if den.is_zero() {
                return Err(ValueError::ZeroDenominator(s.to_string()));
            }
            Ok(Value(BigRational::new(num, den)))
        } else if let Some((int, frac)) = s.split_once('.') {
            if !all_digits(int) || !all_digits(frac) {
                return Err(invalid());
            }
            let numer = BigInt::from_str(&format!("{int}{frac}")).map_err(|_| invalid())?;
            let denom = BigInt::from(10u32).pow(frac.len() as u32);
            Ok(Value(BigRational::new(numer, denom)))
        } else {
            if !all_digits(s) {
                return Err(invalid());
            }
            let numer = BigInt::from_str(s).map_err(|_| invalid())?;
            Ok(Value(BigRational::from_integer(numer)))
        }
    }
}
