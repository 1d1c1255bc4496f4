//! The contraction constant `θ` of a Tsirelson-type norm.

use alloc::format;
use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Error;

/// Specification of `θ ∈ (0, 1)`.
///
/// Rational values drive the engine in exact arithmetic; `RootForm { n, q }`
/// denotes the irrational `θ = n^(-1/q)` and drives it in `f64`.
#[derive(Debug, Clone, PartialEq)]
pub enum ThetaSpec {
    Rational { num: u32, den: u32 },
    RootForm { n: u32, q: f64 },
}

impl ThetaSpec {
    pub fn rational(num: u32, den: u32) -> Result<Self, Error> {
        if den == 0 || num == 0 || num >= den {
            return Err(Error::InvalidTheta(format!(
                "{num}/{den} is not in the open interval (0,1)"
            )));
        }
        Ok(ThetaSpec::Rational { num, den })
    }

    pub fn root_form(n: u32, q: f64) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidTheta(String::from("root form needs n >= 2")));
        }
        if !q.is_finite() || q <= 1.0 {
            return Err(Error::InvalidTheta(String::from("root form needs q > 1")));
        }
        Ok(ThetaSpec::RootForm { n, q })
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, ThetaSpec::Rational { .. })
    }

    pub fn value_f64(&self) -> f64 {
        match self {
            ThetaSpec::Rational { num, den } => *num as f64 / *den as f64,
            ThetaSpec::RootForm { n, q } => libm::pow(*n as f64, -1.0 / *q),
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            ThetaSpec::Rational { num, den } => {
                Some(BigRational::new(BigInt::from(*num), BigInt::from(*den)))
            }
            ThetaSpec::RootForm { .. } => None,
        }
    }
}

impl fmt::Display for ThetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaSpec::Rational { num, den } => write!(f, "{num}/{den}"),
            ThetaSpec::RootForm { n, q } => {
                if *q == libm::trunc(*q) {
                    write!(f, "root:n={n},q={}", *q as i64)
                } else {
                    write!(f, "root:n={n},q={q}")
                }
            }
        }
    }
}
