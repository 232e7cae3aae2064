//! Exact real-rootedness certificates for members of the family.
//!
//! Float roots only suggest where to look. A member of degree `n` is
//! certified real-rooted when its exact sign alternates `n` times across
//! rational points placed between the float roots. Failing that, exact
//! Newton inclusion disks around the non-real float roots may pin the count;
//! otherwise a Sturm chain decides.

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::gn::GnProblem;
use crate::params::{lambda_bound, normalize, normalized_alpha, predict_hyperbolic};
use crate::poly::{cauchy_bound, count_real_roots, ExactPoly, IntPoly, SturmChain};
use crate::recurrence::{generate, member_roots, members, ExactParams, FloatParams};
use crate::scalar::{f64_to_ratio, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateMethod {
    SignChanges,
    Inclusion,
    Sturm,
}

/// Exact count of distinct real roots, with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealRootCount {
    pub distinct_real: usize,
    pub squarefree_degree: usize,
    pub method: CertificateMethod,
}

impl RealRootCount {
    pub fn all_real(&self) -> bool {
        self.distinct_real == self.squarefree_degree
    }
}

/// A rational with few binary digits strictly inside `(lo, hi)`, preferring
/// the middle half.
pub fn short_dyadic_between(lo: f64, hi: f64) -> Option<BigRational> {
    let mid = 0.5 * (lo + hi);
    let margin = 0.25 * (hi - lo);
    if margin.is_nan() || margin <= 0.0 || !mid.is_finite() {
        return None;
    }
    for bits in 0..=60 {
        let scale = 2f64.powi(bits);
        let q = (mid * scale).round() / scale;
        if q > lo + margin && q < hi - margin {
            return f64_to_ratio(q);
        }
    }
    f64_to_ratio(mid)
}

fn sign_changes(signs: &[Sign]) -> Option<usize> {
    if signs.contains(&Sign::NoSign) {
        return None;
    }
    Some(signs.windows(2).filter(|w| w[0] != w[1]).count())
}

/// Sign changes of `p` across separators of the sorted `re`, on
/// `(-bound, bound)` or the whole line. A lower bound on the real roots.
fn alternation(p: &IntPoly, re: &[f64], bound: Option<&BigRational>) -> Option<usize> {
    let mut re = re.to_vec();
    re.sort_by(f64::total_cmp);
    let mut signs = Vec::with_capacity(re.len() + 1);
    match bound {
        Some(b) => signs.push(p.sign_at(&-b)),
        None => signs.push(p.sign_at_neg_infinity()),
    }
    for w in re.windows(2) {
        let q = short_dyadic_between(w[0], w[1])?;
        if let Some(b) = bound {
            if Signed::abs(&q) >= *b {
                return None;
            }
        }
        signs.push(p.sign_at(&q));
    }
    match bound {
        Some(b) => signs.push(p.sign_at(b)),
        None => signs.push(p.leading_sign()),
    }
    sign_changes(&signs)
}

/// Closed disk known to contain a root.
struct Disk {
    re: BigRational,
    im: BigRational,
    radius: BigRational,
}

impl Disk {
    fn clear_of_axis(&self) -> bool {
        self.im > self.radius
    }

    fn disjoint(&self, other: &Disk) -> bool {
        let dx = &self.re - &other.re;
        let dy = &self.im - &other.im;
        let r = &self.radius + &other.radius;
        &dx * &dx + &dy * &dy > &r * &r
    }
}

const DISK_SHIFT: usize = 64;

/// Float approximation of `num / den` for positive integers of any size.
fn quotient_f64(num: &BigInt, den: &BigInt) -> f64 {
    let sn = num.bits().saturating_sub(64);
    let sd = den.bits().saturating_sub(64);
    let top = |v: &BigInt, s: u64| {
        num_traits::ToPrimitive::to_f64(&(v >> s as usize)).unwrap_or(f64::NAN)
    };
    let e = (sn as i64 - sd as i64).clamp(-4000, 4000) as i32;
    top(num, sn) / top(den, sd) * 2f64.powi(e)
}

/// Dyadic upper bound on `sqrt(num / den)`, checked in integers.
fn sqrt_upper(num: &BigInt, den: &BigInt) -> Option<BigRational> {
    let guess = quotient_f64(num, den).sqrt() * (1.0 + 1e-6);
    if !guess.is_finite() {
        return None;
    }
    let mut s = f64_to_ratio(guess.max(f64::MIN_POSITIVE))?;
    loop {
        let (sn, sd) = (s.numer(), s.denom());
        if sn * sn * den >= num * sd * sd {
            return Some(s);
        }
        s *= BigRational::from_integer(2.into());
    }
}

/// Some root lies within `deg * |p(z)/p'(z)|` of `z`; evaluated exactly at
/// a dyadic point next to `z`.
fn inclusion_disk(p: &IntPoly, dp: &IntPoly, z: Complex64) -> Option<Disk> {
    let scale = 2f64.powi(DISK_SHIFT as i32);
    let x = BigInt::from_f64((z.re * scale).round())?;
    let y = BigInt::from_f64((z.im * scale).round())?;
    let (vr, vi) = p.eval_gaussian(&x, &y, DISK_SHIFT);
    let (wr, wi) = dp.eval_gaussian(&x, &y, DISK_SHIFT);
    let w2 = &wr * &wr + &wi * &wi;
    if w2.is_zero() {
        return None;
    }
    let deg = BigInt::from(p.degree()?);
    let d = BigInt::one() << DISK_SHIFT;
    let radius = sqrt_upper(&(&deg * &deg * (&vr * &vr + &vi * &vi)), &(&d * &d * w2))?;
    Some(Disk {
        re: BigRational::new(x, d.clone()),
        im: BigRational::new(y, d),
        radius,
    })
}

fn looks_real(z: &Complex64) -> bool {
    z.im.abs() <= 1e-9 * (1.0 + z.norm())
}

/// Exact real-root count from the float picture: sign changes give at least
/// `L` real roots and `m` pairwise disjoint disks in the upper half plane give
/// at least `2m` non-real ones. When `L + 2m` is the degree both are exact and
/// every root is simple.
fn inclusion_count(p: &IntPoly, roots: &[Complex64], bound: Option<&BigRational>) -> Option<usize> {
    let n = p.degree()?;
    let real: Vec<f64> = roots
        .iter()
        .filter(|z| looks_real(z))
        .map(|z| z.re)
        .collect();
    let upper: Vec<Complex64> = roots
        .iter()
        .filter(|z| !looks_real(z) && z.im > 0.0)
        .copied()
        .collect();
    if real.len() + 2 * upper.len() != n {
        return None;
    }
    if alternation(p, &real, bound)? != real.len() {
        return None;
    }
    let dp = p.derivative();
    let mut disks: Vec<Disk> = Vec::with_capacity(upper.len());
    for z in upper {
        let disk = inclusion_disk(p, &dp, z)?;
        if !disk.clear_of_axis() || disks.iter().any(|d| !d.disjoint(&disk)) {
            return None;
        }
        disks.push(disk);
    }
    Some(real.len())
}

/// Distinct real roots of `p` in `(-bound, bound)`, or on the whole line
/// when `bound` is `None`. `roots` are float approximations of all roots.
pub fn count_distinct_real(
    p: &ExactPoly,
    roots: &[Complex64],
    bound: Option<&BigRational>,
) -> Result<RealRootCount> {
    let int = IntPoly::from_rational(p);
    let degree = int.degree().unwrap_or(0);
    let re: Vec<f64> = roots.iter().map(|z| z.re).collect();
    if degree > 0 && alternation(&int, &re, bound) == Some(degree) {
        return Ok(RealRootCount {
            distinct_real: degree,
            squarefree_degree: degree,
            method: CertificateMethod::SignChanges,
        });
    }
    if degree > 0 && roots.len() == degree {
        if let Some(distinct_real) = inclusion_count(&int, roots, bound) {
            return Ok(RealRootCount {
                distinct_real,
                squarefree_degree: degree,
                method: CertificateMethod::Inclusion,
            });
        }
    }
    let chain = SturmChain::from_int(int);
    let distinct_real = match bound {
        None => chain.count_all(),
        Some(b) => {
            let lo = -b;
            let p0 = &chain.elements()[0];
            if p0.sign_at(&lo) == Sign::NoSign || p0.sign_at(b) == Sign::NoSign {
                count_real_roots(p, &lo, b)?
            } else {
                chain.variations_at(&lo) - chain.variations_at(b)
            }
        }
    };
    Ok(RealRootCount {
        distinct_real,
        squarefree_degree: chain.squarefree_degree(),
        method: CertificateMethod::Sturm,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HyperbolicityReport {
    pub n: usize,
    pub degree: usize,
    pub squarefree_degree: usize,
    /// Distinct real roots in `(-B, B)`.
    pub sturm_count: usize,
    pub hyperbolic: bool,
    pub max_abs_root: f64,
    /// Bound on the zeros in original coordinates, when the triple is in the
    /// real-rooted class.
    pub lambda: Option<f64>,
    pub contained: Option<bool>,
    pub method: CertificateMethod,
}

/// Limit of the bound as `alpha -> 0`, the interval of the `c = 0` family.
const LAMBDA_AT_ZERO: f64 = 2.0;

/// Roots of `P_n` seeded with those of `P_{n-1}` and one point beyond them.
fn next_roots(float: &FloatParams, n: usize, prev: &[Complex64]) -> Vec<Complex64> {
    let far = prev
        .iter()
        .copied()
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .unwrap_or(Complex64::new(1.0, 0.0));
    let mut seeds = prev.to_vec();
    seeds.push(far * 1.02 + Complex64::new(0.0, 1e-3 * (1.0 + far.norm())));
    member_roots(float, n, Some(&seeds))
        .or_else(|_| member_roots(float, n, None))
        .unwrap_or_default()
}

fn ceil_dyadic(x: f64) -> BigRational {
    f64_to_ratio((x * 1024.0).ceil() / 1024.0).expect("finite bound")
}

/// Per-member certificates for `1 <= n <= n_max`.
///
/// For triples with `b > 0` and `c/(ab) <= 1/9` the count is taken on
/// `(-B, B)` with `B` just above `lambda + 1`; otherwise `B` is the Cauchy
/// bound of each member.
pub fn certify(params: &ExactParams, n_max: usize) -> Result<Vec<HyperbolicityReport>> {
    let seq = generate(params, n_max);
    let float = params.to_float();
    let predicted = predict_hyperbolic(params);
    let mut lambda = None;
    let mut seed_problem = None;
    let mut factor = 1.0;
    if predicted {
        let (norm, map) = normalize(params)?;
        factor = map.factor;
        lambda = Some(if norm.alpha.is_zero() {
            LAMBDA_AT_ZERO / factor.abs()
        } else {
            lambda_bound(&norm.alpha)? / factor.abs()
        });
        if !norm.alpha.is_zero() {
            seed_problem = Some(norm.alpha.to_f64());
        }
    }
    let fixed_bound = lambda.map(|l| ceil_dyadic(l + 1.0));

    let root_sets: Vec<Vec<Complex64>> = match seed_problem {
        Some(alpha) => (1..=n_max)
            .into_par_iter()
            .map(|n| {
                let seeds = GnProblem::new(n, alpha)
                    .and_then(|g| g.predicted_roots(1e-15))
                    .ok()
                    .map(|z| {
                        z.into_iter()
                            .map(|v| Complex64::new(v / factor, 0.0))
                            .collect::<Vec<_>>()
                    });
                member_roots(&float, n, seeds.as_deref()).or_else(|_| member_roots(&float, n, None))
            })
            .collect::<Result<_>>()?,
        None => {
            let mut sets: Vec<Vec<Complex64>> = Vec::with_capacity(n_max);
            for n in 1..=n_max {
                let prev = sets.last().map(Vec::as_slice).unwrap_or(&[]);
                let next = next_roots(&float, n, prev);
                sets.push(next);
            }
            sets
        }
    };

    (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let p = &seq.polys[n];
            let roots = &root_sets[n - 1];
            let bound = match &fixed_bound {
                Some(b) => b.clone(),
                None => cauchy_bound(p)?,
            };
            let count = count_distinct_real(p, roots, Some(&bound))?;
            let max_abs_root = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
            Ok(HyperbolicityReport {
                n,
                degree: p.degree().unwrap_or(0),
                squarefree_degree: count.squarefree_degree,
                sturm_count: count.distinct_real,
                hyperbolic: count.all_real(),
                max_abs_root,
                lambda,
                contained: lambda.map(|l| max_abs_root < l),
                method: count.method,
            })
        })
        .collect()
}

/// Outcome of scanning for the first member with a non-real root.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleRecord {
    pub params: ExactParams,
    pub n_max: usize,
    pub first_nonreal_n: Option<usize>,
    /// Float root with the largest imaginary part at that `n`.
    pub witness_root: Option<Complex64>,
    pub sturm_count: Option<usize>,
    pub squarefree_degree: Option<usize>,
    pub predicted_hyperbolic: bool,
    pub alpha: f64,
}

/// Smallest `n <= n_max` whose member has a non-real root, decided exactly.
pub fn first_nonreal(params: &ExactParams, n_max: usize) -> Result<CounterexampleRecord> {
    let float = params.to_float();
    let mut record = CounterexampleRecord {
        params: params.clone(),
        n_max,
        first_nonreal_n: None,
        witness_root: None,
        sturm_count: None,
        squarefree_degree: None,
        predicted_hyperbolic: predict_hyperbolic(params),
        alpha: normalized_alpha(params).alpha.to_f64(),
    };
    let mut roots = Vec::new();
    for (n, p) in members(params).enumerate().skip(1).take(n_max) {
        roots = next_roots(&float, n, &roots);
        let count = count_distinct_real(&p, &roots, None)?;
        if !count.all_real() {
            record.first_nonreal_n = Some(n);
            record.witness_root = roots
                .iter()
                .copied()
                .max_by(|a, b| a.im.abs().total_cmp(&b.im.abs()));
            record.sturm_count = Some(count.distinct_real);
            record.squarefree_degree = Some(count.squarefree_degree);
            break;
        }
    }
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    fn triple(a: BigRational, b: BigRational, c: BigRational) -> ExactParams {
        ExactParams::new(a, b, c).unwrap()
    }

    #[test]
    fn dyadic_separator() {
        let q = short_dyadic_between(0.3, 0.9).unwrap();
        assert_eq!(q, BigRational::from_ratio(1, 2));
        let q = short_dyadic_between(1e-9, 2e-9).unwrap();
        let v = q.to_f64();
        assert!(v > 1e-9 && v < 2e-9);
        assert!(short_dyadic_between(1.0, 1.0).is_none());
    }

    #[test]
    fn alternation_fails_over() {
        // (z^2 + 1)(z - 2): the float roots give no alternation of length 3.
        let p = ExactPoly::from_i64s(&[-2, 1, -2, 1]);
        let roots = crate::poly::all_roots(&p).unwrap();
        let c = count_distinct_real(&p, &roots, None).unwrap();
        assert_eq!(c.method, CertificateMethod::Inclusion);
        assert_eq!((c.distinct_real, c.squarefree_degree), (1, 3));
        // (z - 1)^2 (z + 1) needs the chain.
        let p = ExactPoly::from_i64s(&[1, -1, -1, 1]);
        let roots = crate::poly::all_roots(&p).unwrap();
        let c = count_distinct_real(&p, &roots, None).unwrap();
        assert_eq!(c.method, CertificateMethod::Sturm);
        assert_eq!((c.distinct_real, c.squarefree_degree), (2, 2));
        let p = ExactPoly::from_i64s(&[0, -1, 0, 1]);
        let roots = crate::poly::all_roots(&p).unwrap();
        let c = count_distinct_real(&p, &roots, Some(&q(2, 1))).unwrap();
        assert_eq!(c.method, CertificateMethod::SignChanges);
        assert!(c.all_real());
    }

    #[test]
    fn inclusion_agrees_with_sturm() {
        for c in [q(1, 8), q(1, 5), q(2, 1)] {
            let params = triple(q(1, 1), q(1, 1), c);
            let float = params.to_float();
            for (n, p) in members(&params).enumerate().skip(10).take(25) {
                let roots = member_roots(&float, n, None).unwrap();
                let fast = count_distinct_real(&p, &roots, None).unwrap();
                let chain = SturmChain::new(&p).unwrap();
                assert_eq!(fast.distinct_real, chain.count_all(), "n = {n}");
                assert_eq!(fast.squarefree_degree, chain.squarefree_degree());
            }
        }
    }

    #[test]
    fn boundary_triple_certified() {
        let r = certify(&triple(q(1, 1), q(1, 1), q(1, 9)), 40).unwrap();
        assert_eq!(r.len(), 40);
        for rep in &r {
            assert!(rep.hyperbolic, "n = {}", rep.n);
            assert_eq!(rep.contained, Some(true));
        }
    }

    #[test]
    fn negative_alpha_original_coordinates() {
        let r = certify(&triple(q(2, 1), q(4, 1), q(-72, 1)), 30).unwrap();
        let lambda = r[0].lambda.unwrap();
        assert!((lambda - lambda_bound(&q(-9, 1)).unwrap()).abs() < 1e-12);
        assert!(r
            .iter()
            .all(|rep| rep.hyperbolic && rep.contained == Some(true)));
    }

    #[test]
    fn outside_class_fails() {
        let r = certify(&triple(q(1, 1), q(1, 1), q(1, 8)), 20).unwrap();
        assert!(r.iter().any(|rep| !rep.hyperbolic));
        assert!(r.iter().all(|rep| rep.lambda.is_none()));
    }

    #[test]
    fn first_nonreal_examples() {
        let rec = first_nonreal(&triple(q(1, 1), q(1, 1), q(1, 9)), 60).unwrap();
        assert_eq!(rec.first_nonreal_n, None);
        let rec = first_nonreal(&triple(q(1, 1), q(1, 1), q(1, 1)), 100).unwrap();
        let n = rec.first_nonreal_n.unwrap();
        assert!(n > 3);
        assert!(rec.witness_root.unwrap().im.abs() > 1e-6);
    }
}
