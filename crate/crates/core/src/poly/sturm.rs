//! Exact real-root counting by Sturm sequences.
//!
//! The chain is built as a primitive pseudo-remainder sequence over the
//! integers with signs corrected so that each element is a positive multiple
//! of the classical `-rem(p_{i-1}, p_i)`.

use num_bigint::Sign;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ExactPoly, IntPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    /// Builds the chain of `p, p', ...`. Fails on the zero polynomial.
    pub fn new(p: &ExactPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self::from_int(IntPoly::from_rational(p)))
    }

    pub fn from_int(p0: IntPoly) -> Self {
        let mut chain = vec![p0];
        let mut p1 = chain[0].derivative();
        p1.make_primitive();
        if p1.is_zero() {
            return Self { chain };
        }
        chain.push(p1);
        loop {
            let n = chain.len();
            let (mut r, e) = chain[n - 2].pseudo_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            // lc^e * a = q b + r, so -rem has the sign of -r * sign(lc)^e.
            let flip = chain[n - 1].leading_sign() == Sign::Plus || e % 2 == 0;
            if flip {
                r.negate();
            }
            r.make_primitive();
            chain.push(r);
        }
        Self { chain }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn elements(&self) -> &[IntPoly] {
        &self.chain
    }

    /// Last chain element: `gcd(p, p')` up to a constant.
    pub fn gcd(&self) -> &IntPoly {
        self.chain.last().expect("chain is never empty")
    }

    /// Degree of the squarefree part of `p`.
    pub fn squarefree_degree(&self) -> usize {
        let d = self.chain[0].degree().unwrap_or(0);
        d - self.gcd().degree().unwrap_or(0)
    }

    fn variations(signs: impl Iterator<Item = Sign>) -> usize {
        let mut last = Sign::NoSign;
        let mut count = 0;
        for s in signs {
            if s == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Sign variations at `x`, zeros skipped.
    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_neg_infinity(&self) -> usize {
        Self::variations(self.chain.iter().map(IntPoly::sign_at_neg_infinity))
    }

    pub fn variations_at_pos_infinity(&self) -> usize {
        Self::variations(self.chain.iter().map(IntPoly::leading_sign))
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_neg_infinity() - self.variations_at_pos_infinity()
    }
}

/// Distinct real roots of `p` in the open interval `(lo, hi)`, exactly.
///
/// When an endpoint is itself a root the count switches to the chain of the
/// squarefree part, where a skipped zero at `x` gives `V(x) = V(x+)`; the
/// variation difference then counts `(lo, hi]` and a root at `hi` is
/// subtracted.
pub fn count_real_roots(p: &ExactPoly, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    if lo >= hi {
        return Err(Error::EmptyInterval);
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let chain = SturmChain::new(p)?;
    let p0 = &chain.elements()[0];
    let lo_root = p0.sign_at(lo) == Sign::NoSign;
    let hi_root = p0.sign_at(hi) == Sign::NoSign;
    if !lo_root && !hi_root {
        return Ok(chain.variations_at(lo) - chain.variations_at(hi));
    }
    let sqfree = if chain.gcd().degree() == Some(0) {
        chain
    } else {
        SturmChain::from_int(p0.exact_div(chain.gcd()))
    };
    let half_open = sqfree.variations_at(lo) - sqfree.variations_at(hi);
    Ok(half_open - usize::from(hi_root))
}

/// `1 + max |c_k / c_n|`: every complex root has modulus below it.
pub fn cauchy_bound(p: &ExactPoly) -> Result<BigRational> {
    let lc = p.leading().ok_or(Error::ZeroPolynomial)?;
    let n = p.coeffs().len() - 1;
    let max = p.coeffs()[..n]
        .iter()
        .map(|c| (c / lc).abs())
        .fold(BigRational::zero(), |m, v| if v > m { v } else { m });
    Ok(max + BigRational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn counts_examples() {
        let p = ExactPoly::from_i64s(&[-1, 0, 1]);
        assert_eq!(count_real_roots(&p, &q(-2, 1), &q(2, 1)).unwrap(), 2);
        let p = ExactPoly::from_i64s(&[1, 0, 1]);
        assert_eq!(count_real_roots(&p, &q(-10, 1), &q(10, 1)).unwrap(), 0);
    }

    #[test]
    fn endpoint_roots_are_excluded() {
        let p = ExactPoly::from_i64s(&[0, -1, 0, 1]); // roots -1, 0, 1
        assert_eq!(count_real_roots(&p, &q(-1, 1), &q(1, 1)).unwrap(), 1);
        assert_eq!(count_real_roots(&p, &q(0, 1), &q(2, 1)).unwrap(), 1);
        assert_eq!(count_real_roots(&p, &q(-2, 1), &q(0, 1)).unwrap(), 1);
        assert_eq!(count_real_roots(&p, &q(-1, 1), &q(0, 1)).unwrap(), 0);
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (z - 1)^3 (z + 2)^2
        let a = ExactPoly::from_i64s(&[-1, 1]);
        let b = ExactPoly::from_i64s(&[2, 1]);
        let p = &(&(&a * &a) * &a) * &(&b * &b);
        let chain = SturmChain::new(&p).unwrap();
        assert_eq!(chain.count_all(), 2);
        assert_eq!(chain.squarefree_degree(), 2);
        assert_eq!(count_real_roots(&p, &q(-3, 1), &q(3, 1)).unwrap(), 2);
        assert_eq!(count_real_roots(&p, &q(1, 1), &q(3, 1)).unwrap(), 0);
        assert_eq!(count_real_roots(&p, &q(-2, 1), &q(3, 1)).unwrap(), 1);
    }

    #[test]
    fn error_paths() {
        let p = ExactPoly::from_i64s(&[-1, 0, 1]);
        assert_eq!(
            count_real_roots(&p, &q(2, 1), &q(2, 1)),
            Err(Error::EmptyInterval)
        );
        assert_eq!(
            count_real_roots(&ExactPoly::zero(), &q(0, 1), &q(1, 1)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn constant_has_no_roots() {
        let p = ExactPoly::from_i64s(&[-4]);
        assert_eq!(count_real_roots(&p, &q(-1, 1), &q(1, 1)).unwrap(), 0);
    }

    #[test]
    fn cauchy_bound_contains_roots() {
        let p = ExactPoly::from_i64s(&[-6, 1, 1]); // roots -3, 2
        assert_eq!(cauchy_bound(&p).unwrap(), q(7, 1));
    }
}
