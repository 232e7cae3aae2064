//! Independent oracles for the exact sequence and the frame quantities.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fourterm::analysis::{density_profile, zero_approach};
use fourterm::params::{lambda_bound, lambda_bound_f64};
use fourterm::poly::{all_roots, count_real_roots, ExactPoly};
use fourterm::recurrence::{generate, value_at_zero, ExactParams, FloatParams};
use fourterm::theta::{delta_exact, tau, z_of_theta, zeta_pair};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn pow(x: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * x)
}

/// Coefficient of `t^n` in `1 / (1 + a z t + b t^2 + c z t^3)` by the
/// multinomial expansion of the geometric series.
fn multinomial_member(a: &BigRational, b: &BigRational, c: &BigRational, n: usize) -> ExactPoly {
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for k in 0..=n / 3 {
        for j in 0..=(n - 3 * k) / 2 {
            let i = n - 3 * k - 2 * j;
            let total = i + j + k;
            let count = factorial(total) / (factorial(i) * factorial(j) * factorial(k));
            let sign = if total.is_multiple_of(2) { 1 } else { -1 };
            let term = BigRational::from_integer(count * sign) * pow(a, i) * pow(b, j) * pow(c, k);
            coeffs[i + k] += term;
        }
    }
    ExactPoly::new(coeffs)
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let n: i64 = rng.gen_range(-9..=9);
        if n != 0 {
            return q(n, rng.gen_range(1..=5));
        }
    }
}

#[test]
fn recurrence_matches_multinomial_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let (a, b, c) = (
            random_rational(&mut rng),
            random_rational(&mut rng),
            random_rational(&mut rng),
        );
        let seq = generate(
            &ExactParams::new(a.clone(), b.clone(), c.clone()).unwrap(),
            25,
        );
        for n in 0..=25 {
            assert_eq!(seq.polys[n], multinomial_member(&a, &b, &c, n), "n = {n}");
        }
    }
}

#[test]
fn scaling_to_normalized_family() {
    // With b = s^2: P_n(z; a, b, c) = s^n P_n(a z / s; 1, 1, c / (a b)).
    for (a, s, c) in [(q(2, 1), q(3, 1), q(5, 7)), (q(-1, 3), q(1, 2), q(-4, 1))] {
        let b = &s * &s;
        let alpha = &c / (&a * &b);
        let orig = generate(&ExactParams::new(a.clone(), b, c).unwrap(), 20);
        let norm = generate(&ExactParams::from_alpha(alpha), 20);
        let k = &a / &s;
        for n in 0..=20 {
            let expect = norm.polys[n].compose_scale(&k).scale(&pow(&s, n));
            assert_eq!(orig.polys[n], expect, "n = {n}");
        }
    }
}

#[test]
fn parity_and_value_at_zero() {
    let seq = generate(&ExactParams::from_alpha(q(-7, 3)), 30);
    for (n, p) in seq.polys.iter().enumerate() {
        for (k, coeff) in p.coeffs().iter().enumerate() {
            if (n + k) % 2 == 1 {
                assert!(coeff.is_zero(), "n = {n}, k = {k}");
            }
        }
        assert_eq!(p.coeff(0), value_at_zero(n), "n = {n}");
    }
    assert_eq!(value_at_zero(1), q(0, 1));
    assert_eq!(value_at_zero(2), q(-1, 1));
    assert_eq!(value_at_zero(4), q(1, 1));
}

#[test]
fn small_members_by_hand() {
    let alpha = q(1, 9);
    let seq = generate(&ExactParams::from_alpha(alpha.clone()), 5);
    assert_eq!(seq.polys[2], ExactPoly::from_i64s(&[-1, 0, 1]));
    let p3 = ExactPoly::new(vec![q(0, 1), q(2, 1) - &alpha, q(0, 1), q(-1, 1)]);
    assert_eq!(seq.polys[3], p3);
    assert_eq!(
        count_real_roots(&seq.polys[5], &q(-2, 1), &q(2, 1)).unwrap(),
        5
    );
}

#[test]
fn y_cubic_roots() {
    // 1 + y - y^2 - 2 y^3
    let roots = all_roots(&ExactPoly::from_i64s(&[1, 1, -1, -2])).unwrap();
    let real: Vec<_> = roots.iter().filter(|z| z.im.abs() < 1e-12).collect();
    assert_eq!(real.len(), 1);
    assert!((real[0].re - 0.8295).abs() < 1e-3);
    let pair: Vec<_> = roots.iter().filter(|z| z.im.abs() >= 1e-12).collect();
    for z in pair {
        assert!((z.norm() - 0.7765).abs() < 1e-3);
    }
}

#[test]
fn frame_values_at_third_of_pi() {
    let th = std::f64::consts::FRAC_PI_3;
    let alpha = 1.0 / 9.0;
    let s5 = 5f64.sqrt();
    let zp = (7.0 + 3.0 * s5) / 2.0;
    let (plus, minus) = zeta_pair::<f64>(th, alpha).unwrap();
    assert!((plus - zp).abs() < 1e-12);
    assert!((minus - (7.0 - 3.0 * s5) / 2.0).abs() < 1e-12);
    let t = ((1.0 + zp) / zp).sqrt();
    assert!((tau(th, alpha).unwrap() - t).abs() < 1e-12);
    assert!((t - 1.07046).abs() < 1e-5);
    let z = -1.0 / (alpha * t.powi(3) * zp);
    assert!((z_of_theta(th, alpha).unwrap() - z).abs() < 1e-12);
    assert!((z + 1.0705).abs() < 1e-4);
    assert_eq!(delta_exact(&q(1, 4), &q(1, 9)), q(5, 9));
}

#[test]
fn lambda_closed_forms() {
    let s5 = 5f64.sqrt();
    let expect = 4.0 / ((s5 - 2.0).powf(1.5) * (6.0 + 2.0 * s5));
    assert!((lambda_bound(&q(-1, 1)).unwrap() - expect).abs() < 1e-13);
    assert!((lambda_bound(&q(1, 9)).unwrap() - 3f64.sqrt()).abs() < 1e-15);
}

#[test]
fn zero_approach_simple_cases() {
    let params = FloatParams::from_alpha(0.05);
    let d = zero_approach(Complex64::zero(), &params, &[3, 7, 21]).unwrap();
    assert!(d.iter().all(|&v| v < 1e-12));
    let lambda = lambda_bound_f64(0.05).unwrap();
    let far = Complex64::new(5.0, 0.0);
    let d = zero_approach(far, &params, &[10, 40, 80]).unwrap();
    assert!(d.iter().all(|&v| v >= 5.0 - lambda));
}

#[test]
fn density_at_boundary_alpha() {
    let prof = density_profile(1.0 / 9.0, 200).unwrap();
    assert!(prof.contained);
    assert!((prof.lambda - 3f64.sqrt()).abs() < 1e-15);
    let single = density_profile(-1.0, 1).unwrap();
    assert_eq!(single.union_roots, vec![0.0]);
}
