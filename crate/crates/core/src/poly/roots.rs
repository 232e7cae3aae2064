//! Simultaneous complex root extraction (Aberth–Ehrlich) with Newton polish.
//!
//! The iteration only needs the Newton ratio `p(z)/p'(z)`, so evaluators are
//! free to compute it in whatever scaled or recurrence form keeps it
//! accurate. Dense coefficient vectors use Horner; the recurrence family
//! supplies its own three-term evaluator.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use super::{ExactNewton, IntPoly, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::{ComplexValue, Scalar};

/// Anything whose roots can be found from the Newton ratio alone.
pub trait NewtonRatio {
    fn degree(&self) -> usize;

    /// `p(z) / p'(z)`. May be zero at an exact root.
    fn newton_ratio(&self, z: Complex64) -> Complex64;

    /// Upper bound on the modulus of every root.
    fn root_radius(&self) -> f64;
}

#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    pub max_iterations: usize,
    /// Roots whose last correction stays above this (relative) after the
    /// iteration cap make the solve fail.
    pub failure_threshold: f64,
    /// Newton steps applied to each root after the simultaneous phase.
    pub polish_steps: usize,
    /// Polished roots closer than this (relative) are treated as one
    /// repeated root and replaced by their centroid.
    pub collision_tolerance: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            max_iterations: 1000,
            failure_threshold: 1e-7,
            polish_steps: 2,
            collision_tolerance: 1e-8,
        }
    }
}

/// Dense complex-coefficient polynomial evaluated by Horner.
#[derive(Debug, Clone)]
pub struct ComplexHorner {
    coeffs: Vec<Complex64>,
}

impl ComplexHorner {
    /// Ascending coefficients; trailing zeros are dropped.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * z + c)
    }
}

impl NewtonRatio for ComplexHorner {
    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn newton_ratio(&self, z: Complex64) -> Complex64 {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        if p.is_zero() {
            Complex64::zero()
        } else {
            p / dp
        }
    }

    /// Fujiwara's bound `2 max |a_{n-k}/a_n|^{1/k}`.
    fn root_radius(&self) -> f64 {
        let n = self.degree();
        let lead = self.coeffs[n].norm();
        (1..=n)
            .map(|k| {
                let ratio = self.coeffs[n - k].norm() / lead;
                if k == n {
                    (ratio / 2.0).powf(1.0 / k as f64)
                } else {
                    ratio.powf(1.0 / k as f64)
                }
            })
            .fold(0.0, f64::max)
            * 2.0
    }
}

/// All complex roots of `p`, with multiplicity.
pub fn all_roots<S: Scalar>(p: &Polynomial<S>) -> Result<Vec<ComplexValue>> {
    let degree = p.degree().unwrap_or(0);
    if degree < 1 {
        return Err(Error::DegreeTooLow {
            required: 1,
            actual: p.degree(),
        });
    }
    let horner = ComplexHorner::new(
        p.coeffs()
            .iter()
            .map(|c| Complex64::new(c.to_f64(), 0.0))
            .collect(),
    );
    let exact: Option<Vec<_>> = p.coeffs().iter().map(|c| c.to_exact()).collect();
    let Some(exact) = exact else {
        return aberth(&horner, None, RootOptions::default());
    };
    // Rounding the coefficients moves clustered roots far more than rounding
    // the roots themselves, so the float pass only supplies starting points
    // for a pass on the exact coefficients.
    let loose = RootOptions {
        failure_threshold: f64::INFINITY,
        ..RootOptions::default()
    };
    let rough = aberth(&horner, None, loose)?;
    let newton = ExactNewton::new(
        IntPoly::from_rational(&Polynomial::new(exact)),
        horner.root_radius(),
    );
    aberth(&newton, Some(&rough), RootOptions::default())
}

/// Aberth–Ehrlich iteration from `initial` guesses (or a circle of radius
/// [`NewtonRatio::root_radius`]). Output is sorted by real then imaginary
/// part.
pub fn aberth<E: NewtonRatio + ?Sized>(
    eval: &E,
    initial: Option<&[Complex64]>,
    opts: RootOptions,
) -> Result<Vec<Complex64>> {
    let n = eval.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut z: Vec<Complex64> = match initial {
        Some(init) if init.len() == n => init.to_vec(),
        _ => {
            let radius = eval.root_radius().max(f64::MIN_POSITIVE.sqrt());
            (0..n)
                .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
                .collect()
        }
    };
    // Distinct seeds are required by the repulsion term.
    for i in 1..n {
        for j in 0..i {
            if z[i] == z[j] {
                let bump = 1e-7 * (1.0 + z[i].norm()) * (i as f64);
                z[i] += Complex64::new(0.0, bump);
            }
        }
    }

    let tiny = 4.0 * f64::EPSILON;
    let mut active = vec![true; n];
    let mut last_step = vec![f64::INFINITY; n];
    let mut iterations = 0;
    while iterations < opts.max_iterations && active.iter().any(|&a| a) {
        iterations += 1;
        for k in 0..n {
            if !active[k] {
                continue;
            }
            let ratio = eval.newton_ratio(z[k]);
            if !ratio.is_finite() {
                // Critical point of the polynomial; step off it.
                let scale = 1.0 + z[k].norm();
                z[k] += Complex64::new(1e-7, 1e-7) * scale;
                continue;
            }
            let w = if ratio.is_zero() {
                Complex64::zero()
            } else {
                let repulsion: Complex64 = (0..n)
                    .filter(|&j| j != k)
                    .map(|j| (z[k] - z[j]).inv())
                    .sum();
                let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
                if w.is_finite() {
                    w
                } else {
                    ratio
                }
            };
            z[k] -= w;
            let rel = w.norm() / z[k].norm().max(f64::MIN_POSITIVE);
            // Stalled at rounding level: the correction stopped shrinking.
            let stalled = rel < 1e-10 && rel >= last_step[k];
            last_step[k] = rel;
            if rel <= tiny || w.is_zero() || stalled {
                active[k] = false;
            }
        }
    }

    let worst = last_step
        .iter()
        .zip(&active)
        .filter(|(_, &a)| a)
        .map(|(s, _)| *s)
        .fold(0.0, f64::max);
    if worst > opts.failure_threshold || z.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonConvergence {
            iterations,
            max_correction: worst,
        });
    }

    for root in z.iter_mut() {
        for _ in 0..opts.polish_steps {
            let step = eval.newton_ratio(*root);
            // A large Newton step means a clustered root; keep the Aberth value.
            if step.is_finite() && step.norm() <= 1e-6 * (1.0 + root.norm()) {
                *root -= step;
            }
        }
    }

    merge_collisions(&mut z, opts.collision_tolerance);
    z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(z)
}

/// Replaces each cluster of mutually close roots by its centroid.
fn merge_collisions(z: &mut [Complex64], tol: f64) {
    let n = z.len();
    let mut assigned = vec![false; n];
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let mut members = vec![i];
        for j in i + 1..n {
            if !assigned[j] && (z[i] - z[j]).norm() <= tol * (1.0 + z[i].norm()) {
                members.push(j);
            }
        }
        if members.len() > 1 {
            let centroid = members.iter().map(|&k| z[k]).sum::<Complex64>() / members.len() as f64;
            for &k in &members {
                z[k] = centroid;
                assigned[k] = true;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::FloatPoly;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn quadratic_examples() {
        let r = all_roots(&FloatPoly::new(vec![1.0, 0.0, 1.0])).unwrap();
        assert!(close(r[0], Complex64::new(0.0, -1.0), 1e-14));
        assert!(close(r[1], Complex64::new(0.0, 1.0), 1e-14));
        let r = all_roots(&FloatPoly::new(vec![-3.0, 0.0, 1.0])).unwrap();
        assert!(close(r[0], Complex64::new(-3f64.sqrt(), 0.0), 1e-14));
        assert!(close(r[1], Complex64::new(3f64.sqrt(), 0.0), 1e-14));
    }

    #[test]
    fn constant_rejected() {
        assert!(matches!(
            all_roots(&FloatPoly::new(vec![2.0])),
            Err(Error::DegreeTooLow { .. })
        ));
    }

    #[test]
    fn repeated_root_collapses() {
        // (z - 1)^2 (z + 2)
        let r = all_roots(&FloatPoly::new(vec![2.0, -3.0, 0.0, 1.0])).unwrap();
        assert!(close(r[0], Complex64::new(-2.0, 0.0), 1e-12));
        assert!(close(r[1], Complex64::new(1.0, 0.0), 1e-7));
        assert!(close(r[2], Complex64::new(1.0, 0.0), 1e-7));
    }

    #[test]
    fn complex_coefficients() {
        // (t - i)(t + 2) = t^2 + (2 - i) t - 2i
        let h = ComplexHorner::new(vec![
            Complex64::new(0.0, -2.0),
            Complex64::new(2.0, -1.0),
            Complex64::new(1.0, 0.0),
        ]);
        let r = aberth(&h, None, RootOptions::default()).unwrap();
        assert!(close(r[0], Complex64::new(-2.0, 0.0), 1e-13));
        assert!(close(r[1], Complex64::new(0.0, 1.0), 1e-13));
    }

    #[test]
    fn clustered_real_roots_degree_twelve() {
        let mut p = FloatPoly::new(vec![1.0]);
        for k in 1..=12 {
            p = &p * &FloatPoly::new(vec![-(k as f64) / 4.0, 1.0]);
        }
        let r = all_roots(&p).unwrap();
        for (k, root) in r.iter().enumerate() {
            assert!((root.re - (k + 1) as f64 / 4.0).abs() < 1e-6, "{root}");
        }
    }
}
