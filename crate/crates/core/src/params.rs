//! Reduction of `(a, b, c)` to the single parameter `alpha = c/(ab)` and the
//! closed-form bound `lambda(alpha)` on the zeros.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::recurrence::RecurrenceParams;
use crate::scalar::{f64_to_ratio, Scalar};

/// Working precision, in bits, of the closed-form bound.
pub const LAMBDA_PRECISION: usize = 128;

/// `alpha = c/(ab)` together with whether the reduction is real (`b > 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedParams<S> {
    pub alpha: S,
    pub valid: bool,
}

/// `z' = factor * z` carries zeros of the original member to zeros of the
/// normalized one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingMap {
    pub factor: f64,
}

impl ScalingMap {
    pub fn to_normalized(&self, z: f64) -> f64 {
        self.factor * z
    }

    pub fn to_original(&self, z: f64) -> f64 {
        z / self.factor
    }
}

/// `alpha` and the validity flag, without rejecting `b <= 0`.
pub fn normalized_alpha<S: Scalar>(params: &RecurrenceParams<S>) -> NormalizedParams<S> {
    let (a, b, c) = (params.a(), params.b(), params.c());
    NormalizedParams {
        alpha: c.clone() / (a.clone() * b.clone()),
        valid: b.sign() > 0,
    }
}

pub fn normalize<S: Scalar>(
    params: &RecurrenceParams<S>,
) -> Result<(NormalizedParams<S>, ScalingMap)> {
    if params.b().sign() <= 0 {
        return Err(Error::NonPositiveB);
    }
    let norm = normalized_alpha(params);
    let factor = params.a().to_f64() / params.b().to_f64().sqrt();
    Ok((norm, ScalingMap { factor }))
}

/// Exact test of `b > 0` and `c/(ab) <= 1/9`.
pub fn predict_hyperbolic(params: &RecurrenceParams<BigRational>) -> bool {
    let norm = normalized_alpha(params);
    norm.valid && norm.alpha <= BigRational::new(1.into(), 9.into())
}

fn big_from_rational(r: &BigRational, cc: &mut Consts) -> BigFloat {
    let rm = RoundingMode::ToEven;
    let p = LAMBDA_PRECISION;
    let n = BigFloat::parse(&r.numer().to_string(), Radix::Dec, p, rm, cc);
    let d = BigFloat::parse(&r.denom().to_string(), Radix::Dec, p, rm, cc);
    n.div(&d, p, rm)
}

fn big_to_f64(x: &BigFloat, cc: &mut Consts) -> f64 {
    x.format(Radix::Dec, RoundingMode::ToEven, cc)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(f64::NAN)
}

/// `lambda(alpha) = 4 / (R^{3/2} D)` with `s = sqrt(9a^2 - 10a + 1)`,
/// `N = 3a + 1 + s`, `D = -5a + 1 + s`, `R = N / D`.
///
/// Evaluated at [`LAMBDA_PRECISION`] bits and rounded once. Valid for
/// `alpha <= 1/9`, `alpha != 0`.
pub fn lambda_bound(alpha: &BigRational) -> Result<f64> {
    if alpha.is_zero() {
        return Err(Error::AlphaOutOfRange(0.0));
    }
    if *alpha > BigRational::new(1.into(), 9.into()) {
        return Err(Error::AlphaOutOfRange(alpha.to_f64()));
    }
    let p = LAMBDA_PRECISION;
    let rm = RoundingMode::ToEven;
    let mut cc = Consts::new().map_err(|e| Error::Consistency(format!("{e:?}")))?;
    let nine = BigRational::from_integer(9.into());
    let ten = BigRational::from_integer(10.into());
    // The radicand is rational, so it is formed exactly.
    let radicand = &nine * alpha * alpha - &ten * alpha + BigRational::one();
    let s = big_from_rational(&radicand, &mut cc).sqrt(p, rm);
    let a = big_from_rational(alpha, &mut cc);
    let one = BigFloat::from_i64(1, p);
    let num = a
        .mul(&BigFloat::from_i64(3, p), p, rm)
        .add(&one, p, rm)
        .add(&s, p, rm);
    let den = a
        .mul(&BigFloat::from_i64(-5, p), p, rm)
        .add(&one, p, rm)
        .add(&s, p, rm);
    let ratio = num.div(&den, p, rm);
    let ratio_32 = ratio.mul(&ratio.sqrt(p, rm), p, rm);
    let lambda = BigFloat::from_i64(4, p).div(&ratio_32.mul(&den, p, rm), p, rm);
    let out = big_to_f64(&lambda, &mut cc);
    if !out.is_finite() || out <= 0.0 {
        return Err(Error::Consistency(format!("lambda({alpha}) = {out}")));
    }
    Ok(out)
}

/// [`lambda_bound`] of the exact binary value of `alpha`.
pub fn lambda_bound_f64(alpha: f64) -> Result<f64> {
    let exact = f64_to_ratio(alpha).ok_or(Error::AlphaOutOfRange(alpha))?;
    lambda_bound(&exact)
}

/// The bound in the coordinates of the original triple: zeros of the
/// original member lie in `(-lambda / |factor|, lambda / |factor|)`.
pub fn lambda_original(params: &RecurrenceParams<BigRational>) -> Result<f64> {
    let (norm, map) = normalize(params)?;
    Ok(lambda_bound(&norm.alpha)? / map.factor.abs())
}
