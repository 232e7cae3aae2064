//! The angular parametrization of the zero set.
//!
//! For `theta` in `(0, pi)` the quadratic
//! `f(zeta) = 2 alpha cos(theta) zeta^2 + (4 alpha cos^2 + alpha - 1) zeta + 2 alpha cos(theta)`
//! has roots `zeta_+ zeta_- = 1`. With `tau^2 = (2 cos theta + zeta) / zeta` and
//! `z = -1 / (alpha tau^3 zeta)` the numbers `tau e^{-i theta}`, `tau e^{i theta}`
//! and `tau zeta` are the three roots in `t` of `1 + z t + t^2 + alpha z t^3`.
//!
//! Everything is written once over [`FrameScalar`]: the real kind is used when
//! `Delta(theta) >= 0`, the complex kind when it is negative.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::{Complex64, ComplexFloat};
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

/// Scalars the frame formulas can run over.
pub trait FrameScalar: ComplexFloat<Real = f64> + std::fmt::Debug {
    fn real(x: f64) -> Self;

    /// `sqrt(delta)` if it exists in this kind.
    fn sqrt_of(delta: f64) -> Option<Self>;

    fn to_complex(self) -> Complex64;
}

impl FrameScalar for f64 {
    fn real(x: f64) -> Self {
        x
    }

    fn sqrt_of(delta: f64) -> Option<Self> {
        (delta >= 0.0).then(|| delta.sqrt())
    }

    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
}

impl FrameScalar for Complex64 {
    fn real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }

    fn sqrt_of(delta: f64) -> Option<Self> {
        Some(Complex64::new(delta, 0.0).sqrt())
    }

    fn to_complex(self) -> Complex64 {
        self
    }
}

/// `16 a^2 c^4 - 8 a^2 c^2 - 8 a c^2 + a^2 - 2a + 1` with `c = cos(theta)`.
pub fn delta(theta: f64, alpha: f64) -> f64 {
    delta_from_cos(theta.cos(), alpha)
}

fn delta_from_cos(c: f64, alpha: f64) -> f64 {
    let c2 = c * c;
    let a2 = alpha * alpha;
    16.0 * a2 * c2 * c2 - 8.0 * a2 * c2 - 8.0 * alpha * c2 + a2 - 2.0 * alpha + 1.0
}

/// `Delta` as a polynomial in `cos^2(theta)`, exactly.
pub fn delta_exact(cos_sq: &BigRational, alpha: &BigRational) -> BigRational {
    let a2 = alpha * alpha;
    let k = |v: i64| BigRational::from_integer(v.into());
    k(16) * &a2 * cos_sq * cos_sq - k(8) * &a2 * cos_sq - k(8) * alpha * cos_sq + &a2 - k(2) * alpha
        + BigRational::one()
}

/// Coefficients `[f0, f1, f2]` of `f(zeta) = f0 + f1 zeta + f2 zeta^2`.
pub fn f_coefficients(theta: f64, alpha: f64) -> [f64; 3] {
    let c = theta.cos();
    [
        2.0 * alpha * c,
        4.0 * alpha * c * c + alpha - 1.0,
        2.0 * alpha * c,
    ]
}

pub fn f_value(theta: f64, alpha: f64, zeta: f64) -> f64 {
    let [f0, f1, f2] = f_coefficients(theta, alpha);
    f0 + zeta * (f1 + zeta * f2)
}

fn check_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::ThetaOutOfRange(theta));
    }
    Ok(())
}

fn check_cos(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    let c = theta.cos();
    if theta == FRAC_PI_2 || c == 0.0 {
        return Err(Error::ThetaAtAsymptote(theta));
    }
    Ok(c)
}

/// `(zeta_+, zeta_-)`; `zeta_+` takes `+sqrt(Delta)`. `None` if the kind
/// cannot hold `sqrt(Delta)`.
pub fn zeta_pair<T: FrameScalar>(theta: f64, alpha: f64) -> Result<(T, T)> {
    let c = check_cos(theta)?;
    if alpha == 0.0 {
        return Err(Error::InvalidParams("alpha must be nonzero".into()));
    }
    let d = delta_from_cos(c, alpha);
    let root = T::sqrt_of(d)
        .ok_or_else(|| Error::Consistency(format!("Delta({theta}) = {d} < 0 in the real frame")))?;
    let b = T::real(1.0 - alpha - 4.0 * alpha * c * c);
    let den = T::real(4.0 * alpha * c);
    let plus = (b + root) / den;
    // The product of the roots is 1; dividing avoids cancellation in `b - root`.
    let minus = plus.recip();
    Ok((plus, minus))
}

/// Radicand `(2 cos theta + zeta) / zeta`, written as `1 + 2 cos theta / zeta`.
fn tau_radicand<T: FrameScalar>(c: f64, zeta: T) -> T {
    T::real(1.0) + T::real(2.0 * c) / zeta
}

pub fn tau(theta: f64, alpha: f64) -> Result<f64> {
    let c = check_cos(theta)?;
    let (zeta, _) = zeta_pair::<f64>(theta, alpha)?;
    let r = tau_radicand(c, zeta);
    if r <= 0.0 || !r.is_finite() {
        return Err(Error::Consistency(format!(
            "tau radicand {r} at theta={theta}, alpha={alpha}"
        )));
    }
    Ok(r.sqrt())
}

/// `z(theta)`, with the removable value `z(pi/2) = 0`.
pub fn z_of_theta(theta: f64, alpha: f64) -> Result<f64> {
    check_theta(theta)?;
    if theta == FRAC_PI_2 {
        return Ok(0.0);
    }
    Ok(ThetaSample::<f64>::new(theta, alpha)?.z)
}

/// `(tau e^{-i theta}, tau e^{i theta}, tau zeta)`.
pub fn t_roots(theta: f64, alpha: f64) -> Result<[Complex64; 3]> {
    Ok(ThetaSample::<f64>::new(theta, alpha)?.t)
}

/// All frame quantities at one angle.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaSample<T> {
    pub theta: f64,
    pub alpha: f64,
    pub delta: f64,
    pub zeta_plus: T,
    pub zeta_minus: T,
    pub tau: T,
    pub z: T,
    pub t: [Complex64; 3],
}

pub type ComplexSample = ThetaSample<Complex64>;

impl<T: FrameScalar> ThetaSample<T> {
    pub fn new(theta: f64, alpha: f64) -> Result<Self> {
        let c = check_cos(theta)?;
        let (zeta_plus, zeta_minus) = zeta_pair::<T>(theta, alpha)?;
        let radicand = tau_radicand(c, zeta_plus);
        if radicand.im() == 0.0 && radicand.re() <= 0.0 {
            return Err(Error::Consistency(format!(
                "tau radicand {radicand:?} at theta={theta}, alpha={alpha}"
            )));
        }
        let tau = radicand.sqrt();
        let z = -(T::real(alpha) * tau.powi(3) * zeta_plus).recip();
        let mut sample = Self {
            theta,
            alpha,
            delta: delta_from_cos(c, alpha),
            zeta_plus,
            zeta_minus,
            tau,
            z,
            t: [Complex64::default(); 3],
        };
        sample.t = sample.frame_roots();
        Ok(sample)
    }

    /// The three t-values built from the stored `tau` and `zeta_plus`.
    pub fn frame_roots(&self) -> [Complex64; 3] {
        let tau = self.tau.to_complex();
        [
            tau * Complex64::from_polar(1.0, -self.theta),
            tau * Complex64::from_polar(1.0, self.theta),
            tau * self.zeta_plus.to_complex(),
        ]
    }

    /// `1 + z t + t^2 + alpha z t^3` at each stored t, relative to the
    /// largest term.
    pub fn cubic_residuals(&self) -> [f64; 3] {
        let z = self.z.to_complex();
        self.t.map(|t| {
            let terms = [
                Complex64::new(1.0, 0.0),
                z * t,
                t * t,
                self.alpha * z * t * t * t,
            ];
            let scale = terms.iter().map(|v| v.norm()).fold(0.0, f64::max);
            terms.iter().sum::<Complex64>().norm() / scale
        })
    }
}

/// Deviations of the elementary symmetric functions of the t-values from
/// `-1/(alpha z)`, `1/alpha` and `-1/(alpha z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VietaResidual {
    pub r1: Complex64,
    pub r2: Complex64,
    pub r3: Complex64,
    pub target_sum: Complex64,
    pub target_pair: Complex64,
}

impl VietaResidual {
    /// Largest residual relative to its target.
    pub fn max_relative(&self) -> f64 {
        let ts = self.target_sum.norm();
        let tp = self.target_pair.norm();
        (self.r1.norm() / ts)
            .max(self.r2.norm() / tp)
            .max(self.r3.norm() / ts)
    }
}

pub const VIETA_TOLERANCE: f64 = 1e-10;

pub fn vieta_residuals<T: FrameScalar>(sample: &ThetaSample<T>) -> VietaResidual {
    let [t1, t2, t3] = sample.t;
    let z = sample.z.to_complex();
    let target_sum = -(sample.alpha * z).inv();
    let target_pair = Complex64::new(sample.alpha.recip(), 0.0);
    VietaResidual {
        r1: t1 + t2 + t3 - target_sum,
        r2: t1 * t2 + t1 * t3 + t2 * t3 - target_pair,
        r3: t1 * t2 * t3 - target_sum,
        target_sum,
        target_pair,
    }
}

/// Result of sampling `z(theta)` on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport {
    pub alpha: f64,
    pub grid_size: usize,
    pub strictly_increasing: bool,
    /// Smallest centered difference quotient over interior grid points.
    pub min_slope: f64,
    /// Grid angle just after `z` changes sign.
    pub sign_change_at: Option<f64>,
    pub z_first: f64,
    pub z_last: f64,
}

pub const GRID_OFFSET: f64 = 1e-6;

/// Uniform grid on `[offset, pi - offset]` that steps around `pi/2`.
pub fn theta_grid(grid_size: usize, offset: f64) -> Vec<f64> {
    let n = grid_size.max(2);
    let h = (PI - 2.0 * offset) / (n - 1) as f64;
    (0..n)
        .map(|k| {
            let th = offset + k as f64 * h;
            if (th - FRAC_PI_2).abs() < 1e-9 {
                FRAC_PI_2 - 1e-9
            } else {
                th
            }
        })
        .collect()
}

pub fn monotonicity_scan(alpha: f64, grid_size: usize) -> Result<MonotonicityReport> {
    let grid = theta_grid(grid_size, GRID_OFFSET);
    let z = grid
        .iter()
        .map(|&th| z_of_theta(th, alpha))
        .collect::<Result<Vec<_>>>()?;
    let strictly_increasing = z.windows(2).all(|w| w[1] > w[0]);
    let min_slope = (1..z.len() - 1)
        .map(|k| (z[k + 1] - z[k - 1]) / (grid[k + 1] - grid[k - 1]))
        .fold(f64::INFINITY, f64::min);
    let sign_change_at = (1..z.len())
        .find(|&k| z[k - 1] < 0.0 && z[k] >= 0.0)
        .map(|k| grid[k]);
    Ok(MonotonicityReport {
        alpha,
        grid_size: grid.len(),
        strictly_increasing,
        min_slope,
        sign_change_at,
        z_first: z[0],
        z_last: z[z.len() - 1],
    })
}

/// An angle near 0 where `Delta < 0`, for `1/9 < alpha <= 1`.
pub fn negative_delta_angle(alpha: f64) -> Option<f64> {
    if !(alpha > 1.0 / 9.0 && alpha <= 1.0) {
        return None;
    }
    let mut theta = 0.5;
    for _ in 0..60 {
        if delta(theta, alpha) < 0.0 {
            return Some(theta);
        }
        theta *= 0.5;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::lambda_bound_f64;
    use crate::scalar::Scalar;

    const ALPHAS: [f64; 4] = [1.0 / 9.0, 0.05, -1.0, -10.0];

    #[test]
    fn delta_examples() {
        for alpha in [0.3, -2.0, 1.0 / 9.0] {
            assert!((delta(FRAC_PI_2, alpha) - (alpha - 1.0) * (alpha - 1.0)).abs() < 1e-14);
        }
        let q = |n, d| BigRational::from_ratio(n, d);
        assert_eq!(delta_exact(&q(1, 4), &q(1, 9)), q(5, 9));
        assert_eq!(delta_exact(&q(1, 1), &q(-2, 1)), q(-19, 1) * q(-3, 1));
        assert!((delta(PI / 3.0, 1.0 / 9.0) - 5.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn reference_values_at_pi_over_three() {
        let s = ThetaSample::<f64>::new(PI / 3.0, 1.0 / 9.0).unwrap();
        let sqrt5 = 5f64.sqrt();
        assert!((s.zeta_plus - (7.0 + 3.0 * sqrt5) / 2.0).abs() < 1e-12);
        assert!((s.zeta_minus - (7.0 - 3.0 * sqrt5) / 2.0).abs() < 1e-12);
        assert!((s.tau - 1.07046).abs() < 1e-5);
        assert!((s.z + 1.0705).abs() < 1e-4);
        assert!(s.cubic_residuals().iter().all(|&r| r < 1e-10));
        let prod = s.t[0] * s.t[1] * s.t[2];
        assert!((prod + (s.alpha * s.z).recip()).norm() < 1e-12);
    }

    #[test]
    fn f_identity_and_zeta_bounds() {
        for alpha in ALPHAS {
            for th in theta_grid(400, GRID_OFFSET) {
                let d = delta(th, alpha);
                assert!(d > 0.0);
                assert!((f_value(th, alpha, 1.0) * f_value(th, alpha, -1.0) + d).abs() < 1e-12);
                let (zp, zm) = zeta_pair::<f64>(th, alpha).unwrap();
                assert!(zp.abs() > 1.0 && zm.abs() < 1.0);
                assert!((zp * zm - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn tau_radicand_positive_for_negative_alpha() {
        let th = PI / 4.0;
        let (zeta, _) = zeta_pair::<f64>(th, -1.0).unwrap();
        assert!(zeta.abs() > (2.0 * th.cos()).abs());
        let t = tau(th, -1.0).unwrap();
        assert!((t * t * zeta - (2.0 * th.cos() + zeta)).abs() < 1e-12);
    }

    #[test]
    fn asymptote_and_range() {
        assert_eq!(z_of_theta(FRAC_PI_2, 0.05), Ok(0.0));
        assert!(matches!(
            tau(FRAC_PI_2, 0.05),
            Err(Error::ThetaAtAsymptote(_))
        ));
        assert!(matches!(
            z_of_theta(0.0, 0.05),
            Err(Error::ThetaOutOfRange(_))
        ));
        assert!(matches!(
            z_of_theta(PI, 0.05),
            Err(Error::ThetaOutOfRange(_))
        ));
    }

    #[test]
    fn endpoint_limits_reach_lambda() {
        for alpha in ALPHAS {
            let lambda = lambda_bound_f64(alpha).unwrap();
            assert!((z_of_theta(1e-4, alpha).unwrap() + lambda).abs() < 1e-6);
            assert!((z_of_theta(PI - 1e-4, alpha).unwrap() - lambda).abs() < 1e-6);
        }
    }

    #[test]
    fn corrupted_tau_breaks_vieta() {
        let mut s = ThetaSample::<f64>::new(PI / 3.0, 1.0 / 9.0).unwrap();
        let good = vieta_residuals(&s);
        assert!(good.max_relative() < VIETA_TOLERANCE);
        assert!((good.r1 - good.r3).norm() < 1e-10);
        s.tau += 0.1;
        s.t = s.frame_roots();
        assert!(vieta_residuals(&s).max_relative() > 1e-3);
    }

    #[test]
    fn monotone_scan_small() {
        for alpha in [-1.0, 1.0 / 9.0] {
            let r = monotonicity_scan(alpha, 2000).unwrap();
            assert!(r.strictly_increasing && r.min_slope > 0.0);
            let zc = r.sign_change_at.unwrap();
            assert!((zc - FRAC_PI_2).abs() < 2e-3);
        }
    }

    #[test]
    fn complex_mode_beyond_boundary() {
        for alpha in [0.125, 0.5, 1.0] {
            let th = negative_delta_angle(alpha).unwrap();
            let s = ComplexSample::new(th, alpha).unwrap();
            assert!(s.delta < 0.0);
            assert!((s.zeta_plus.norm() - 1.0).abs() < 1e-12);
            assert!(s.z.im.abs() > 1e-8);
            assert!(vieta_residuals(&s).max_relative() < VIETA_TOLERANCE);
            let m: Vec<f64> = s.t.iter().map(|t| t.norm()).collect();
            assert!((m[0] - m[1]).abs() < 1e-12 && (m[1] - m[2]).abs() < 1e-12);
        }
        assert!(negative_delta_angle(0.1).is_none());
        assert!(ThetaSample::<f64>::new(0.01, 0.5).is_err());
    }
}
