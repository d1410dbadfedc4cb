//! Comparison functions for the weak-contraction condition.
//!
//! A [`PhiFunction`] is a function `φ` used on the right-hand side of the
//! weak-contraction inequality `m(Tx,Ty,Tz) <= m(x,y,z) - φ(m(x,y,z))`.
//! Two parametric families are supported, both exact rational functions
//! so the inequality can be decided without rounding:
//!
//! * `linear`: `φ(t) = c·t` with `0 < c < 1`;
//! * `saturating`: `φ(t) = c·t/(1+t)` with `0 < c <= 1`.
//!
//! Every member of either family is continuous and non-decreasing, with
//! `φ(0) = 0` and `φ(t) > 0` for `t > 0`, and never exceeds its argument,
//! so `t - φ(t)` stays non-negative.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use thiserror::Error;

use crate::value::{format_rational, Rational, Value};

/// Errors from constructing or parsing a comparison function.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PhiError {
    #[error("unknown comparison family `{0}`: expected `linear` or `saturating`")]
    UnknownFamily(String),
    #[error("invalid parameter literal `{0}`")]
    InvalidParameter(String),
    #[error("parameter {got} out of range: {family} requires {range}")]
    ParameterOutOfRange {
        family: PhiFamily,
        range: &'static str,
        got: String,
    },
    #[error("malformed comparison spec `{0}`: expected `family:parameter`")]
    MalformedSpec(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhiFamily {
    Linear,
    Saturating,
}

impl fmt::Display for PhiFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhiFamily::Linear => "linear",
            PhiFamily::Saturating => "saturating",
        })
    }
}

/// A validated member of one of the two comparison families.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhiFunction {
    family: PhiFamily,
    c: Rational,
}

impl PhiFunction {
    /// `φ(t) = c·t`, requiring `0 < c < 1`.
    pub fn linear(c: Rational) -> Result<Self, PhiError> {
        if c > Rational::from_integer(0.into()) && c < Rational::one() {
            Ok(PhiFunction {
                family: PhiFamily::Linear,
                c,
            })
        } else {
            Err(PhiError::ParameterOutOfRange {
                family: PhiFamily::Linear,
                range: "0 < c < 1",
                got: format_rational(&c),
            })
        }
    }

    /// `φ(t) = c·t/(1+t)`, requiring `0 < c <= 1`.
    pub fn saturating(c: Rational) -> Result<Self, PhiError> {
        if c > Rational::from_integer(0.into()) && c <= Rational::one() {
            Ok(PhiFunction {
                family: PhiFamily::Saturating,
                c,
            })
        } else {
            Err(PhiError::ParameterOutOfRange {
                family: PhiFamily::Saturating,
                range: "0 < c <= 1",
                got: format_rational(&c),
            })
        }
    }

    pub fn family(&self) -> PhiFamily {
        self.family
    }

    pub fn parameter(&self) -> &Rational {
        &self.c
    }

    /// Exact evaluation. The result is non-negative for non-negative
    /// input, so it stays a [`Value`].
    pub fn eval(&self, t: &Value) -> Value {
        let t = t.ratio();
        let r = match self.family {
            PhiFamily::Linear => &self.c * t,
            PhiFamily::Saturating => &self.c * t / (Rational::one() + t),
        };
        Value::new(r).expect("phi of a non-negative input is non-negative")
    }
}

impl fmt::Display for PhiFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.family, format_rational(&self.c))
    }
}

/// Parses `family:parameter` specs such as `linear:1/2` or
/// `saturating:1`. The parameter uses the same literal grammar as value
/// table entries.
impl FromStr for PhiFunction {
    type Err = PhiError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (family, param) = s
            .split_once(':')
            .ok_or_else(|| PhiError::MalformedSpec(s.to_string()))?;
        let c = param
            .parse::<Value>()
            .map_err(|_| PhiError::InvalidParameter(param.to_string()))?
            .into_ratio();
        match family {
            "linear" => PhiFunction::linear(c),
            "saturating" => PhiFunction::saturating(c),
            other => Err(PhiError::UnknownFamily(other.to_string())),
        }
    }
}
