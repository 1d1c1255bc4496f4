//! Scalar abstraction over exact rational and binary floating arithmetic.
//!
//! The norm engine runs with exact `BigRational` arithmetic when `θ` is
//! rational and with `f64` when `θ` is an irrational root `n^(-1/q)`. Both
//! instantiations share all engine code through this trait.

use core::cmp::Ordering;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Field operations the norm engine needs from its coefficients.
///
/// Values are always finite and totally ordered in practice; `cmp` panics on
/// incomparable values (a NaN reaching the engine is a bug in the caller).
pub trait Scalar: Clone + PartialEq + PartialOrd + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    /// The exact value `num / den`. `den` must be positive.
    fn from_ratio(num: i64, den: u64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn abs(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;

    fn from_int(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }

    fn cmp(&self, rhs: &Self) -> Ordering {
        self.partial_cmp(rhs).expect("scalar values must be comparable")
    }

    fn max_of(&self, rhs: &Self) -> Self {
        if self.cmp(rhs) == Ordering::Less {
            rhs.clone()
        } else {
            self.clone()
        }
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_ratio(num: i64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn abs(&self) -> Self {
        libm::fabs(*self)
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }

    fn one() -> Self {
        <BigRational as One>::one()
    }

    fn from_ratio(num: i64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn to_f64(&self) -> f64 {
        let num = self.numer();
        let den = self.denom();
        // Exact for the small values produced at desk scale; falls back to a
        // string round trip for giants rather than silently overflowing i64.
        match (i64::try_from(num.clone()).ok(), i64::try_from(den.clone()).ok()) {
            (Some(n), Some(d)) => n as f64 / d as f64,
            _ => num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN),
        }
    }
}
