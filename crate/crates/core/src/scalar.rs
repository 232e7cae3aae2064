//! Scalar backends shared by every polynomial computation.
//!
//! Two fields are supported: exact rationals ([`BigRational`]) and binary64
//! floats. Certification code runs on the exact backend; exploratory root
//! finding runs on floats.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Complex value used for non-real zeros and the t-roots of the cubic.
pub type ComplexValue = Complex64;

/// Backend tag carried by every [`Scalar`] implementation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Exact,
    Float,
}

/// Relative tolerance applied by the float backend whenever it has to decide
/// whether a computed quantity is zero.
pub const FLOAT_ZERO_TOLERANCE: f64 = 64.0 * f64::EPSILON;

/// A field element usable as a polynomial coefficient.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    const BACKEND: Backend;

    fn from_i64(v: i64) -> Self;

    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Exact rational value, if finite.
    fn to_exact(&self) -> Option<BigRational>;

    fn abs(&self) -> Self;

    /// Sign as -1, 0 or 1.
    fn sign(&self) -> i8;

    /// Zero test under the backend's tolerance policy. `scale` is the
    /// magnitude of the quantities this value was computed from.
    fn is_negligible(&self, scale: &Self) -> bool;
}

impl Scalar for BigRational {
    const BACKEND: Backend = Backend::Exact;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }

    fn to_exact(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    fn is_negligible(&self, _scale: &Self) -> bool {
        self.is_zero()
    }
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_exact(&self) -> Option<BigRational> {
        f64_to_ratio(*self)
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sign(&self) -> i8 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }

    fn is_negligible(&self, scale: &Self) -> bool {
        f64::abs(*self) <= FLOAT_ZERO_TOLERANCE * f64::abs(*scale).max(f64::MIN_POSITIVE)
    }
}

/// Converts a rational to the nearest-ish f64, surviving numerators and
/// denominators far outside the f64 range.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = ToPrimitive::to_f64(r) {
        if v.is_finite() && (v != 0.0 || r.is_zero()) {
            return v;
        }
    }
    let num = r.numer();
    let den = r.denom();
    let shift = num.bits() as i64 - den.bits() as i64;
    // Bring the quotient into [2^-60, 2^60] before dividing.
    let (n, d) = if shift > 0 {
        (num.clone(), den << shift as usize)
    } else {
        (num << (-shift) as usize, den.clone())
    };
    let q = ToPrimitive::to_f64(&BigRational::new(n, d)).unwrap_or(f64::NAN);
    q * 2f64.powi(shift.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
}

/// Exact rational value of a finite f64.
pub fn f64_to_ratio(x: f64) -> Option<BigRational> {
    BigRational::from_f64(x)
}
