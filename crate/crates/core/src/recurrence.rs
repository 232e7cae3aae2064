//! Generation of the family `P_n` two independent ways: the four-term
//! recurrence and Newton inversion of the generating-function denominator
//! `1 + a z t + b t^2 + c z t^3` as a power series in `t`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{aberth, NewtonRatio, Polynomial, RootOptions};
use crate::scalar::Scalar;

/// Whether a parameter triple is in the main regime (all of `a, b, c`
/// nonzero) or is a `c = 0` boundary study.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Main,
    BoundaryStudy,
}

/// Coefficients `(a, b, c)` of `P_n + a z P_{n-1} + b P_{n-2} + c z P_{n-3} = 0`.
///
/// The scalar type selects the arithmetic backend.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceParams<S> {
    a: S,
    b: S,
    c: S,
}

pub type ExactParams = RecurrenceParams<BigRational>;
pub type FloatParams = RecurrenceParams<f64>;

impl<S: Scalar> RecurrenceParams<S> {
    /// Requires `a != 0` and `b != 0`; `c = 0` is accepted as a boundary study.
    pub fn new(a: S, b: S, c: S) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidParams("a must be nonzero".into()));
        }
        if b.is_zero() {
            return Err(Error::InvalidParams("b must be nonzero".into()));
        }
        Ok(Self { a, b, c })
    }

    /// The normalized family `(1, 1, alpha)`.
    pub fn from_alpha(alpha: S) -> Self {
        Self {
            a: S::one(),
            b: S::one(),
            c: alpha,
        }
    }

    pub fn a(&self) -> &S {
        &self.a
    }

    pub fn b(&self) -> &S {
        &self.b
    }

    pub fn c(&self) -> &S {
        &self.c
    }

    pub fn regime(&self) -> Regime {
        if self.c.is_zero() {
            Regime::BoundaryStudy
        } else {
            Regime::Main
        }
    }

    pub fn to_float(&self) -> FloatParams {
        RecurrenceParams {
            a: self.a.to_f64(),
            b: self.b.to_f64(),
            c: self.c.to_f64(),
        }
    }
}

/// `P_0 ..= P_N` for one parameter triple.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySequence<S> {
    pub params: RecurrenceParams<S>,
    pub polys: Vec<Polynomial<S>>,
}

impl<S: Scalar> PolySequence<S> {
    pub fn get(&self, n: usize) -> Option<&Polynomial<S>> {
        self.polys.get(n)
    }

    pub fn max_index(&self) -> usize {
        self.polys.len() - 1
    }
}

fn step<S: Scalar>(
    params: &RecurrenceParams<S>,
    p1: &Polynomial<S>,
    p2: &Polynomial<S>,
    p3: &Polynomial<S>,
    len: usize,
) -> Polynomial<S> {
    let coeffs = (0..len)
        .map(|k| {
            let mut acc = params.b.clone() * p2.coeff(k);
            if k >= 1 {
                acc = acc + params.a.clone() * p1.coeff(k - 1) + params.c.clone() * p3.coeff(k - 1);
            }
            -acc
        })
        .collect();
    Polynomial::new(coeffs)
}

/// Unrolls the recurrence from `P_0 = 1`, `P_{-k} = 0`.
pub fn generate<S: Scalar>(params: &RecurrenceParams<S>, max_n: usize) -> PolySequence<S> {
    PolySequence {
        params: params.clone(),
        polys: members(params).take(max_n + 1).collect(),
    }
}

/// `P_0, P_1, ...` without a fixed upper index.
pub fn members<S: Scalar>(params: &RecurrenceParams<S>) -> Members<S> {
    Members {
        params: params.clone(),
        window: [Polynomial::zero(), Polynomial::zero(), Polynomial::zero()],
        next: 0,
    }
}

/// Iterator returned by [`members`].
#[derive(Debug, Clone)]
pub struct Members<S> {
    params: RecurrenceParams<S>,
    /// `P_{n-1}, P_{n-2}, P_{n-3}`
    window: [Polynomial<S>; 3],
    next: usize,
}

impl<S: Scalar> Iterator for Members<S> {
    type Item = Polynomial<S>;

    fn next(&mut self) -> Option<Self::Item> {
        let p = if self.next == 0 {
            Polynomial::one()
        } else {
            let [p1, p2, p3] = &self.window;
            step(&self.params, p1, p2, p3, self.next + 1)
        };
        self.next += 1;
        self.window.rotate_right(1);
        self.window[0] = p.clone();
        Some(p)
    }
}

/// Power series in `t` truncated at a fixed length, with polynomial-in-`z`
/// coefficients.
#[derive(Debug, Clone)]
struct TruncatedSeries<S> {
    terms: Vec<Polynomial<S>>,
}

impl<S: Scalar> TruncatedSeries<S> {
    fn truncate(mut self, len: usize) -> Self {
        self.terms.truncate(len);
        self
    }

    fn term(&self, k: usize) -> Polynomial<S> {
        self.terms.get(k).cloned().unwrap_or_else(Polynomial::zero)
    }

    fn mul(&self, other: &Self, len: usize) -> Self {
        let mut terms = vec![Polynomial::zero(); len];
        for (i, a) in self.terms.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.terms.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    terms[i + j] = &terms[i + j] + &(a * b);
                }
            }
        }
        Self { terms }
    }

    fn sub_from_two(&self, len: usize) -> Self {
        let mut terms: Vec<Polynomial<S>> = (0..len).map(|k| -&self.term(k)).collect();
        terms[0] = &terms[0] + &Polynomial::constant(S::from_i64(2));
        Self { terms }
    }
}

/// Coefficients of `t^n` in `1 / (1 + a z t + b t^2 + c z t^3)`, by Newton
/// iteration `g <- g (2 - f g)` on truncated series.
pub fn series_oracle<S: Scalar>(params: &RecurrenceParams<S>, max_n: usize) -> PolySequence<S> {
    let len = max_n + 1;
    let denominator = TruncatedSeries {
        terms: vec![
            Polynomial::one(),
            Polynomial::monomial(params.a.clone(), 1),
            Polynomial::constant(params.b.clone()),
            Polynomial::monomial(params.c.clone(), 1),
        ],
    }
    .truncate(len);
    let mut inverse = TruncatedSeries {
        terms: vec![Polynomial::one()],
    };
    let mut precision = 1;
    while precision < len {
        precision = (2 * precision).min(len);
        let fg = denominator.mul(&inverse, precision);
        inverse = inverse.mul(&fg.sub_from_two(precision), precision);
    }
    PolySequence {
        params: params.clone(),
        polys: (0..len).map(|k| inverse.term(k)).collect(),
    }
}

/// `P_n(0)`: the coefficient of `t^n` in `1/(1 + t^2)`, for every parameter triple.
pub fn value_at_zero(n: usize) -> BigRational {
    match n % 4 {
        0 => BigRational::one(),
        2 => -BigRational::one(),
        _ => BigRational::zero(),
    }
}

/// Float evaluation of a single member `P_n` by running the recurrence at
/// the point, with its derivative carried alongside.
///
/// Evaluation in the monomial basis is useless at moderate degree because
/// the coefficients grow exponentially while the values on the zero interval
/// stay small; the recurrence itself is stable there.
#[derive(Debug, Clone)]
pub struct MemberEvaluator {
    a: f64,
    b: f64,
    c: f64,
    n: usize,
    radius: f64,
}

impl MemberEvaluator {
    pub fn new(params: &FloatParams, n: usize) -> Self {
        let mut eval = Self {
            a: params.a,
            b: params.b,
            c: params.c,
            n,
            radius: 0.0,
        };
        eval.radius = eval.fujiwara_radius();
        eval
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(P_n(z), P_n'(z))` scaled by a common positive factor, plus the
    /// base-2 logarithm of the factor removed.
    fn scaled_eval(&self, z: Complex64) -> (Complex64, Complex64, i64) {
        let zero = Complex64::zero();
        // (P_{k}, P_{k-1}, P_{k-2}) and derivatives
        let mut p = [Complex64::new(1.0, 0.0), zero, zero];
        let mut d = [zero, zero, zero];
        let mut log2_scale = 0i64;
        for _ in 0..self.n {
            let pn = -(self.a * z * p[0] + self.b * p[1] + self.c * z * p[2]);
            let dn = -(self.a * p[0]
                + self.a * z * d[0]
                + self.b * d[1]
                + self.c * p[2]
                + self.c * z * d[2]);
            p = [pn, p[0], p[1]];
            d = [dn, d[0], d[1]];
            let mag = pn.norm().max(dn.norm());
            if mag > 1e150 || (mag < 1e-150 && mag > 0.0) {
                let e = mag.log2().round() as i32;
                let f = 2f64.powi(-e);
                for v in p.iter_mut().chain(d.iter_mut()) {
                    *v *= f;
                }
                log2_scale += e as i64;
            }
        }
        (p[0], d[0], log2_scale)
    }

    /// `P_n(z)`; may overflow far outside the zero region.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let (p, _, e) = self.scaled_eval(z);
        p * 2f64.powf(e as f64)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.eval(Complex64::new(x, 0.0)).re
    }

    fn fujiwara_radius(&self) -> f64 {
        let params = RecurrenceParams {
            a: self.a,
            b: self.b,
            c: self.c,
        };
        let p = generate(&params, self.n).polys.pop().expect("nonempty");
        let Some(deg) = p.degree().filter(|&d| d > 0) else {
            return 0.0;
        };
        let lead = p.coeffs()[deg].abs();
        (1..=deg)
            .map(|k| {
                let r = p.coeffs()[deg - k].abs() / lead;
                if k == deg {
                    (r / 2.0).powf(1.0 / k as f64)
                } else {
                    r.powf(1.0 / k as f64)
                }
            })
            .fold(0.0, f64::max)
            * 2.0
    }
}

impl NewtonRatio for MemberEvaluator {
    fn degree(&self) -> usize {
        self.n
    }

    fn newton_ratio(&self, z: Complex64) -> Complex64 {
        let (p, d, _) = self.scaled_eval(z);
        if p.is_zero() {
            Complex64::zero()
        } else {
            p / d
        }
    }

    fn root_radius(&self) -> f64 {
        self.radius
    }
}

/// Float roots of `P_n`, optionally seeded.
pub fn member_roots(
    params: &FloatParams,
    n: usize,
    seeds: Option<&[Complex64]>,
) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    aberth(
        &MemberEvaluator::new(params, n),
        seeds,
        RootOptions::default(),
    )
}
