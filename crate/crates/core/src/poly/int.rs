//! Primitive integer polynomials.
//!
//! Every rational polynomial has a positive rational multiple with coprime
//! integer coefficients. Sign questions (Sturm variations, sign at a point)
//! are invariant under that rescaling, and integer arithmetic avoids the
//! per-operation gcd of `BigRational`.

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

use super::roots::NewtonRatio;
use super::ExactPoly;
use crate::scalar::ratio_to_f64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Positive multiple of `p` with integer coefficients, made primitive.
    pub fn from_rational(p: &ExactPoly) -> Self {
        let lcm = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut out = Self::new(coeffs);
        out.make_primitive();
        out
    }

    pub fn to_rational(&self) -> ExactPoly {
        ExactPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_sign(&self) -> Sign {
        self.coeffs.last().map_or(Sign::NoSign, |c| c.sign())
    }

    /// Sign of the polynomial as `z -> -infinity`.
    pub fn sign_at_neg_infinity(&self) -> Sign {
        match self.degree() {
            None => Sign::NoSign,
            Some(d) if d % 2 == 1 => -self.leading_sign(),
            Some(_) => self.leading_sign(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Divides out the (positive) content.
    pub fn make_primitive(&mut self) {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                return;
            }
        }
        if !g.is_zero() {
            for c in &mut self.coeffs {
                *c /= &g;
            }
        }
    }

    /// Sign of `p(x)` for rational `x`, computed exactly.
    ///
    /// Evaluates the homogenized form `sum c_k m^k d^(n-k)` for `x = m/d`,
    /// `d > 0`, which has the sign of `p(x)`.
    pub fn sign_at(&self, x: &BigRational) -> Sign {
        let Some(n) = self.degree() else {
            return Sign::NoSign;
        };
        let m = x.numer();
        let d = x.denom();
        if d.is_one() {
            let acc = self
                .coeffs
                .iter()
                .rev()
                .fold(BigInt::zero(), |acc, c| acc * m + c);
            return acc.sign();
        }
        let mut acc = self.coeffs[n].clone();
        let mut dpow = BigInt::one();
        for c in self.coeffs[..n].iter().rev() {
            dpow *= d;
            acc = acc * m + c * &dpow;
        }
        acc.sign()
    }

    /// Pseudo-remainder `lc(b)^(da - db + 1) * a mod b` and the exponent used.
    pub fn pseudo_rem(&self, b: &IntPoly) -> (IntPoly, usize) {
        let db = b.degree().expect("pseudo-division by zero polynomial");
        let Some(da) = self.degree() else {
            return (IntPoly::new(Vec::new()), 0);
        };
        if da < db {
            return (self.clone(), 0);
        }
        let lc = &b.coeffs[db];
        let mut r = self.coeffs.clone();
        let steps = da - db + 1;
        for k in (0..steps).rev() {
            let top = std::mem::take(&mut r[k + db]);
            if top.is_zero() {
                for c in r[..k + db].iter_mut() {
                    *c *= lc;
                }
                continue;
            }
            for c in r[..k + db].iter_mut() {
                *c *= lc;
            }
            for j in 0..db {
                r[k + j] -= &top * &b.coeffs[j];
            }
        }
        r.truncate(db);
        (IntPoly::new(r), steps)
    }

    /// Exact division by a polynomial known to divide `self`.
    pub fn exact_div(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("division by zero polynomial");
        let Some(da) = self.degree() else {
            return IntPoly::new(Vec::new());
        };
        assert!(da >= db, "divisor degree exceeds dividend degree");
        let lc = &b.coeffs[db];
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let (qk, rem) = r[k + db].div_rem(lc);
            debug_assert!(rem.is_zero(), "inexact integer polynomial division");
            for j in 0..=db {
                r[k + j] -= &qk * &b.coeffs[j];
            }
            q[k] = qk;
        }
        debug_assert!(r.iter().all(Zero::is_zero));
        IntPoly::new(q)
    }

    pub fn negate(&mut self) {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
    }

    pub fn max_bits(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|c| c.abs().bits())
            .max()
            .unwrap_or(0)
    }

    /// `2^(shift * deg) p((x + iy) / 2^shift)` as a Gaussian integer.
    pub fn eval_gaussian(&self, x: &BigInt, y: &BigInt, shift: usize) -> (BigInt, BigInt) {
        let deg = self.coeffs.len().saturating_sub(1);
        let (mut vr, mut vi) = (BigInt::zero(), BigInt::zero());
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            let nr = &vr * x - &vi * y + (c << (shift * (deg - j)));
            vi = &vr * y + &vi * x;
            vr = nr;
        }
        (vr, vi)
    }
}

/// Newton ratio evaluated exactly at a dyadic point next to the argument,
/// rounded once.
#[derive(Clone, Debug)]
pub struct ExactNewton {
    p: IntPoly,
    dp: IntPoly,
    radius: f64,
}

impl ExactNewton {
    pub fn new(p: IntPoly, radius: f64) -> Self {
        let dp = p.derivative();
        Self { p, dp, radius }
    }
}

impl NewtonRatio for ExactNewton {
    fn degree(&self) -> usize {
        self.p.degree().unwrap_or(0)
    }

    fn newton_ratio(&self, z: Complex64) -> Complex64 {
        let mag = z.norm();
        let shift = if mag > 0.0 && mag.is_finite() {
            (60 - mag.log2().floor() as i64).clamp(0, 2000) as usize
        } else {
            60
        };
        let scale = 2f64.powi(shift as i32);
        let to_int = |v: f64| BigInt::from_f64((v * scale).round());
        let (Some(x), Some(y)) = (to_int(z.re), to_int(z.im)) else {
            return Complex64::new(f64::NAN, f64::NAN);
        };
        let (vr, vi) = self.p.eval_gaussian(&x, &y, shift);
        let (wr, wi) = self.dp.eval_gaussian(&x, &y, shift);
        if vr.is_zero() && vi.is_zero() {
            return Complex64::zero();
        }
        // v / (2^shift w) = v conj(w) / (2^shift |w|^2)
        let den = (&wr * &wr + &wi * &wi) << shift;
        if den.is_zero() {
            return Complex64::new(f64::INFINITY, 0.0);
        }
        let re = &vr * &wr + &vi * &wi;
        let im = &vi * &wr - &vr * &wi;
        Complex64::new(
            ratio_to_f64(&BigRational::new_raw(re, den.clone())),
            ratio_to_f64(&BigRational::new_raw(im, den)),
        )
    }

    fn root_radius(&self) -> f64 {
        self.radius
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn clears_denominators_positively() {
        let p = ExactPoly::new(vec![
            BigRational::from_ratio(1, 2),
            BigRational::from_ratio(-1, 3),
            BigRational::from_ratio(-2, 9),
        ]);
        let ip = IntPoly::from_rational(&p);
        assert_eq!(
            ip.coeffs(),
            &[BigInt::from(9), BigInt::from(-6), BigInt::from(-4)]
        );
    }

    #[test]
    fn sign_matches_rational_eval() {
        let p = ExactPoly::from_i64s(&[-3, 1, 4, -1, 5]);
        let ip = IntPoly::from_rational(&p);
        for (n, d) in [(1, 3), (-7, 2), (0, 1), (5, 1), (-1, 1000)] {
            let x = BigRational::from_ratio(n, d);
            assert_eq!(ip.sign_at(&x), p.eval(&x).numer().sign());
        }
    }

    #[test]
    fn pseudo_remainder_matches_rational_remainder() {
        let a = ExactPoly::from_i64s(&[1, 0, -3, 2, 5]);
        let b = ExactPoly::from_i64s(&[2, -1, 3]);
        let (r, e) = IntPoly::from_rational(&a).pseudo_rem(&IntPoly::from_rational(&b));
        let (_, rr) = a.div_rem(&b).unwrap();
        let scale = BigRational::from_integer(BigInt::from(3).pow(e as u32));
        assert_eq!(r.to_rational(), rr.scale(&scale));
    }

    #[test]
    fn exact_division() {
        let a = IntPoly::from_rational(&ExactPoly::from_i64s(&[-6, 1, 1])); // (z+3)(z-2)
        let b = IntPoly::from_rational(&ExactPoly::from_i64s(&[-2, 1]));
        assert_eq!(
            a.exact_div(&b).coeffs(),
            &[BigInt::from(3), BigInt::from(1)]
        );
    }
}
