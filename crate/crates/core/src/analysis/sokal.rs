//! Dominance of the roots of the denominator cubic at probe points.
//!
//! With `1 / (1 + z t + t^2 + alpha z t^3) = sum_k beta_k(z) / (1 - t / t_k)`
//! the dominant indices are those with the smallest `|t_k|`. Two of them at a
//! point put that point in the limit set of the zeros.

use num_complex::Complex64;
use num_traits::{FromPrimitive, Num};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{aberth, ComplexHorner, RootOptions};
use crate::recurrence::{member_roots, FloatParams};
use crate::theta::{negative_delta_angle, ComplexSample};

/// Relative tolerance for equal moduli.
pub const MODULUS_TOLERANCE: f64 = 1e-10;

/// `18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2` for `a x^3 + b x^2 + c x + d`.
pub fn cubic_discriminant<T>(a: T, b: T, c: T, d: T) -> T
where
    T: Num + Clone + FromPrimitive,
{
    let k = |v: i64| T::from_i64(v).expect("small integer");
    let sq = |x: &T| x.clone() * x.clone();
    let cube = |x: &T| x.clone() * x.clone() * x.clone();
    k(18) * a.clone() * b.clone() * c.clone() * d.clone() - k(4) * cube(&b) * d.clone()
        + sq(&b) * sq(&c)
        - k(4) * a.clone() * cube(&c)
        - k(27) * sq(&a) * sq(&d)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceReport {
    pub z_probe: [f64; 2],
    /// Roots in `t`, ordered by modulus.
    pub t_roots: Vec<[f64; 2]>,
    /// Ascending.
    pub t_moduli: [f64; 3],
    pub two_dominant: bool,
    pub distinct_nonzero: bool,
    pub discriminant: [f64; 2],
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= MODULUS_TOLERANCE * a.abs().max(b.abs())
}

/// Roots of `c0 + c1 t + c2 t^2 + c3 t^3`, sorted by modulus, with the
/// discriminant and a distinctness flag.
fn cubic_roots(c: [Complex64; 4]) -> Result<(Vec<Complex64>, Complex64, bool)> {
    let scale = c.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if c[3].norm() <= 1e-14 * scale {
        return Err(Error::DegenerateCubic);
    }
    let mut roots = aberth(
        &ComplexHorner::new(c.to_vec()),
        None,
        RootOptions::default(),
    )?;
    roots.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
    let disc = cubic_discriminant(c[3], c[2], c[1], c[0]);
    let disc_scale = scale.powi(4);
    let distinct = disc.norm() > 1e-12 * disc_scale && c[0].norm() > 0.0;
    Ok((roots, disc, distinct))
}

/// Roots of `1 + z t + t^2 + alpha z t^3` at `z_probe`.
pub fn dominance_at(z_probe: Complex64, alpha: f64) -> Result<DominanceReport> {
    let one = Complex64::new(1.0, 0.0);
    let (roots, disc, distinct_nonzero) = cubic_roots([one, z_probe, one, alpha * z_probe])?;
    let m = [roots[0].norm(), roots[1].norm(), roots[2].norm()];
    Ok(DominanceReport {
        z_probe: pair(z_probe),
        t_roots: roots.iter().copied().map(pair).collect(),
        t_moduli: m,
        two_dominant: close(m[0], m[1]) && m[1] <= m[2] * (1.0 + MODULUS_TOLERANCE),
        distinct_nonzero,
        discriminant: pair(disc),
    })
}

/// Dominance for the `b < 0` family through `D*(t) = t^3 + z t^2 - t + c z`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReciprocalReport {
    pub z_probe: [f64; 2],
    pub star_roots: Vec<[f64; 2]>,
    /// Descending.
    pub star_moduli: [f64; 3],
    /// Largest two moduli of the `D*` roots agree.
    pub star_two_dominant: bool,
    /// The same data for `D(t) = 1 + z t - t^2 + c z t^3`, whose roots are
    /// the reciprocals.
    pub translated: DominanceReport,
}

pub fn reciprocal_dominance(z_probe: Complex64, c: f64) -> Result<ReciprocalReport> {
    if c == 0.0 {
        return Err(Error::DegenerateCubic);
    }
    let (mut star, disc, distinct) = cubic_roots([
        c * z_probe,
        Complex64::new(-1.0, 0.0),
        z_probe,
        Complex64::new(1.0, 0.0),
    ])?;
    star.reverse();
    let sm = [star[0].norm(), star[1].norm(), star[2].norm()];
    let star_two_dominant = close(sm[0], sm[1]) && sm[1] >= sm[2] * (1.0 - MODULUS_TOLERANCE);
    let t: Vec<Complex64> = star.iter().map(|s| s.inv()).collect();
    let m = [t[0].norm(), t[1].norm(), t[2].norm()];
    // Reversing the coefficients leaves the discriminant unchanged.
    let translated = DominanceReport {
        z_probe: pair(z_probe),
        t_roots: t.iter().copied().map(pair).collect(),
        t_moduli: m,
        two_dominant: close(m[0], m[1]) && m[1] <= m[2] * (1.0 + MODULUS_TOLERANCE),
        distinct_nonzero: distinct && star.iter().all(|s| s.norm() > 0.0),
        discriminant: pair(disc),
    };
    Ok(ReciprocalReport {
        z_probe: pair(z_probe),
        star_roots: star.iter().copied().map(pair).collect(),
        star_moduli: sm,
        star_two_dominant,
        translated,
    })
}

/// Real root of `1 + y - y^2 - alpha y^3` for `alpha > 1`, by bisection on
/// `[alpha^{-1/3}, 2]` where the cubic changes sign.
pub fn real_root_by_bisection(alpha: f64) -> Result<f64> {
    let p = |y: f64| 1.0 + y - y * y - alpha * y * y * y;
    let (mut lo, mut hi) = (alpha.cbrt().recip(), 2.0);
    if !(p(lo) > 0.0 && p(hi) < 0.0) {
        return Err(Error::Consistency(format!(
            "no sign change of the y-cubic at alpha = {alpha}"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if p(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The probe the necessity argument uses for `alpha`: `z = i` for
/// `alpha > 1` and `z(theta*)` with `Delta(theta*) < 0` for
/// `1/9 < alpha <= 1`.
pub fn necessity_probe(alpha: f64) -> Option<Complex64> {
    if alpha > 1.0 {
        return Some(Complex64::new(0.0, 1.0));
    }
    let theta = negative_delta_angle(alpha)?;
    ComplexSample::new(theta, alpha).ok().map(|s| s.z)
}

/// Distance from `z_star` to the nearest float root of `P_n`, per `n`.
pub fn zero_approach(
    z_star: Complex64,
    params: &FloatParams,
    n_list: &[usize],
) -> Result<Vec<f64>> {
    n_list
        .iter()
        .map(|&n| {
            let roots = member_roots(params, n, None)?;
            Ok(roots
                .iter()
                .map(|r| (r - z_star).norm())
                .fold(f64::INFINITY, f64::min))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn discriminant_examples() {
        for k in -5i64..=5 {
            let alpha = BigRational::from_integer(k.into()) / BigRational::from_integer(3.into());
            let one = BigRational::from_integer(1.into());
            let d = cubic_discriminant(-alpha.clone(), -one.clone(), one.clone(), one.clone());
            let expect = BigRational::from_integer(5.into())
                + BigRational::from_integer(22.into()) * &alpha
                - BigRational::from_integer(27.into()) * &alpha * &alpha;
            assert_eq!(d, expect);
        }
        assert_eq!(cubic_discriminant(-1i64, -1, 1, 1), 0);
        assert_eq!(cubic_discriminant(1i64, 0, 0, -1), -27);
    }

    #[test]
    fn probe_at_i_alpha_two() {
        let r = dominance_at(Complex64::new(0.0, 1.0), 2.0).unwrap();
        let y3 = real_root_by_bisection(2.0).unwrap();
        let tau = (2.0 * y3).sqrt().recip();
        assert!((r.t_moduli[0] - tau).abs() < 1e-3 && (r.t_moduli[1] - tau).abs() < 1e-3);
        assert!((r.t_moduli[2] - y3).abs() < 1e-3);
        assert!((y3 - 0.8293).abs() < 1e-3 && (tau - 0.7765).abs() < 1e-3);
        assert!(r.two_dominant && r.distinct_nonzero);
    }

    #[test]
    fn repeated_roots_flagged() {
        let r = dominance_at(Complex64::new(0.0, 1.0), 1.0).unwrap();
        assert!(!r.distinct_nonzero);
        for m in r.t_moduli {
            assert!((m - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn real_probes() {
        // Inside (-lambda, lambda) the two small roots are a conjugate pair.
        let r = dominance_at(Complex64::new(0.7, 0.0), 0.05).unwrap();
        assert!(r.two_dominant);
        let r = dominance_at(Complex64::new(3.0, 0.0), 0.05).unwrap();
        assert!(!r.two_dominant && r.distinct_nonzero);
    }

    #[test]
    fn imaginary_probe_symmetry() {
        for (eps, alpha) in [(0.3, 2.0), (1.0, 5.0), (0.01, -3.0)] {
            let r = dominance_at(Complex64::new(0.0, eps), alpha).unwrap();
            for t in &r.t_roots {
                let image = Complex64::new(-t[0], t[1]);
                let hit = r
                    .t_roots
                    .iter()
                    .any(|s| (Complex64::new(s[0], s[1]) - image).norm() < 1e-10);
                assert!(hit);
            }
        }
    }

    #[test]
    fn discriminant_sign_and_real_root_beyond_one() {
        for k in 1..50 {
            let alpha = 1.0 + k as f64 * 0.37;
            assert!(cubic_discriminant(-alpha, -1.0, 1.0, 1.0) < 0.0);
            let y3 = real_root_by_bisection(alpha).unwrap();
            assert!(y3 > alpha.cbrt().recip());
        }
    }

    #[test]
    fn reciprocal_examples() {
        let r = reciprocal_dominance(Complex64::new(0.0, 1e-6), 0.1).unwrap();
        let mut re: Vec<f64> = r.star_roots.iter().map(|s| s[0]).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] + 1.0).abs() < 1e-5 && re[1].abs() < 1e-5 && (re[2] - 1.0).abs() < 1e-5);
        let r = reciprocal_dominance(Complex64::new(0.0, 0.01), 0.1).unwrap();
        assert!(r.star_two_dominant);
        assert!((r.star_moduli[0] - r.star_moduli[1]).abs() < 1e-10);
        assert!(r.translated.two_dominant);
        assert!(r.translated.t_moduli[1] <= r.translated.t_moduli[2]);
    }

    #[test]
    fn complex_frame_probe_all_equal() {
        for alpha in [0.125, 0.2, 0.5, 1.0] {
            let z = necessity_probe(alpha).unwrap();
            assert!(z.im.abs() > 0.0);
            let r = dominance_at(z, alpha).unwrap();
            assert!(r.two_dominant, "{alpha}: {:?}", r.t_moduli);
        }
    }
}
