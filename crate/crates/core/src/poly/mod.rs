//! Dense univariate polynomials over a [`Scalar`] backend, exact Sturm
//! counting and simultaneous complex root extraction.

mod int;
pub mod roots;
pub mod sturm;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{ComplexValue, Scalar};

pub use int::{ExactNewton, IntPoly};
pub use roots::{aberth, all_roots, ComplexHorner, NewtonRatio, RootOptions};
pub use sturm::{cauchy_bound, count_real_roots, SturmChain};

/// Dense polynomial with coefficients in ascending degree order.
///
/// The highest stored coefficient is never zero; the zero polynomial stores
/// no coefficients and has degree `None`.
#[derive(Clone, PartialEq)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

pub type ExactPoly = Polynomial<BigRational>;
pub type FloatPoly = Polynomial<f64>;

impl<S: Scalar> Polynomial<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c z^k`.
    pub fn monomial(c: S, k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Horner evaluation at a complex point (coefficients taken as f64).
    pub fn eval_complex(&self, z: ComplexValue) -> ComplexValue {
        self.coeffs
            .iter()
            .rev()
            .fold(ComplexValue::zero(), |acc, c| acc * z + c.to_f64())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * S::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// `p(k z)`.
    pub fn compose_scale(&self, k: &S) -> Self {
        let mut pow = S::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.clone() * pow.clone());
            pow = pow * k.clone();
        }
        Self::new(out)
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = S::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    ///
    /// On the float backend remainder coefficients below the tolerance
    /// policy (relative to the dividend's largest coefficient) are dropped.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lc = divisor.coeffs[dd].clone();
        let scale = self.max_abs();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![S::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd].clone() / lc.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * d.clone();
            }
            rem[k + dd] = S::zero();
            quot[k] = q;
        }
        rem.truncate(dd);
        for r in rem.iter_mut() {
            if r.is_negligible(&scale) {
                *r = S::zero();
            }
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("divisor checked nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        let (q, _) = self.div_rem(&g)?;
        Ok(q.monic())
    }

    fn max_abs(&self) -> S {
        let mut best = S::zero();
        for c in &self.coeffs {
            let a = c.abs();
            if a.to_f64() > best.to_f64() {
                best = a;
            }
        }
        best
    }

    pub fn to_float(&self) -> FloatPoly {
        Polynomial::new(self.coeffs.iter().map(Scalar::to_f64).collect())
    }
}

impl<S: Scalar> Add for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn add(self, rhs: Self) -> Polynomial<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Sub for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn sub(self, rhs: Self) -> Polynomial<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Mul for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn mul(self, rhs: Self) -> Polynomial<S> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn neg(self) -> Polynomial<S> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        Ok(())
    }
}

impl<S: fmt::Debug> fmt::Debug for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<S: Scalar> One for Polynomial<S> {
    fn one() -> Self {
        Self::constant(S::one())
    }
}

impl<S: Scalar> Mul for Polynomial<S> {
    type Output = Polynomial<S>;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    fn ep(c: &[i64]) -> ExactPoly {
        ExactPoly::from_i64s(c)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(ep(&[-1, 0, 1]).eval(&q(1, 1)), q(0, 1));
        assert_eq!(ep(&[-1, 0, 1]).eval(&q(3, 1)), q(8, 1));
        let alpha = q(1, 9);
        let p = ExactPoly::new(vec![q(0, 1), q(2, 1) - alpha, q(0, 1), q(-1, 1)]);
        assert_eq!(p.eval(&q(0, 1)), q(0, 1));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(ep(&[-1, 0, 1]).derivative(), ep(&[0, 2]));
        assert!(ep(&[5]).derivative().is_zero());
        assert_eq!(ep(&[0, 2, 0, -1]).derivative(), ep(&[2, 0, -3]));
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        assert_eq!(ExactPoly::zero().degree(), None);
        assert_eq!(ep(&[0, 0, 0]).degree(), None);
        assert_eq!(ep(&[7]).degree(), Some(0));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(ep(&[1, -2, 1]).squarefree_part().unwrap(), ep(&[-1, 1]));
        assert_eq!(ep(&[-1, 0, 1]).squarefree_part().unwrap(), ep(&[-1, 0, 1]));
        assert_eq!(
            ep(&[0, 0, -1, 1]).squarefree_part().unwrap(),
            ep(&[0, -1, 1])
        );
        assert_eq!(
            ExactPoly::zero().squarefree_part(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn float_squarefree_drops_repeated_factor() {
        // (z - 1/2)^2 (z + 3)
        let p = FloatPoly::new(vec![0.75, -2.75, 2.0, 1.0]);
        let s = p.squarefree_part().unwrap();
        assert_eq!(s.degree(), Some(2));
        assert!(s.eval(&0.5).abs() < 1e-12);
        assert!(s.eval(&-3.0).abs() < 1e-12);
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = ep(&[3, -1, 4, 1, -5]);
        let b = ep(&[2, 0, 7]);
        let (qq, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&qq * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn compose_scale_scales_roots() {
        // roots of p(2z) are half those of p
        let p = ep(&[-4, 0, 1]);
        let s = p.compose_scale(&q(2, 1));
        assert_eq!(s.eval(&q(1, 1)), q(0, 1));
    }

    fn small_poly() -> impl Strategy<Value = ExactPoly> {
        proptest::collection::vec((-20i64..20, 1i64..6), 0..8)
            .prop_map(|v| ExactPoly::new(v.into_iter().map(|(n, d)| q(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn derivative_is_linear(p in small_poly(), r in small_poly()) {
            prop_assert_eq!((&p + &r).derivative(), &p.derivative() + &r.derivative());
        }
    }
}
