//! Zero density on `(-lambda, lambda)` and the `b < 0`, `c = 0` diagnostic.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gn::GnProblem;
use crate::params::lambda_bound_f64;
use crate::poly::NewtonRatio;
use crate::recurrence::{member_roots, FloatParams, MemberEvaluator};

/// Fraction of `(-lambda, lambda)` over which gaps are measured.
pub const CENTRAL_FRACTION: f64 = 0.95;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityProfile {
    pub alpha: f64,
    pub n_max: usize,
    pub lambda: f64,
    /// Zeros of every `P_n`, `1 <= n <= n_max`, ascending.
    pub union_roots: Vec<f64>,
    pub max_gap_central: f64,
    pub contained: bool,
}

/// Real zeros of the normalized `P_n`: angular predictions refined by
/// Newton steps on the recurrence evaluator.
fn polished_roots(alpha: f64, n: usize) -> Result<Vec<f64>> {
    let eval = MemberEvaluator::new(&FloatParams::from_alpha(alpha), n);
    let mut z = GnProblem::new(n, alpha)?.predicted_roots(1e-15)?;
    for v in z.iter_mut() {
        for _ in 0..2 {
            let step = eval.newton_ratio(Complex64::new(*v, 0.0)).re;
            if step.is_finite() && step.abs() < 1e-6 {
                *v -= step;
            }
        }
    }
    Ok(z)
}

pub fn density_profile(alpha: f64, n_max: usize) -> Result<DensityProfile> {
    let lambda = lambda_bound_f64(alpha)?;
    let per_n = (1..=n_max)
        .into_par_iter()
        .map(|n| polished_roots(alpha, n))
        .collect::<Result<Vec<_>>>()?;
    let mut union_roots: Vec<f64> = per_n.into_iter().flatten().collect();
    union_roots.sort_by(f64::total_cmp);
    let contained = union_roots.iter().all(|z| z.abs() < lambda);
    let half = CENTRAL_FRACTION * lambda;
    let mut central: Vec<f64> = union_roots
        .iter()
        .copied()
        .filter(|z| z.abs() < half)
        .collect();
    central.dedup();
    let max_gap_central = if central.len() < 2 {
        2.0 * half
    } else {
        central.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    };
    Ok(DensityProfile {
        alpha,
        n_max,
        lambda,
        union_roots,
        max_gap_central,
        contained,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImaginaryAxisReport {
    pub n_max: usize,
    pub on_axis: bool,
    pub max_abs_re: f64,
    pub max_abs_im: f64,
}

/// Every zero of `P_n`, `n <= n_max`, for `(a, b, c) = (1, -1, 0)` has
/// `|Re| < 1e-9` and `|Im| < 2`.
pub fn imaginary_axis_check(n_max: usize) -> Result<ImaginaryAxisReport> {
    let params = FloatParams::new(1.0, -1.0, 0.0).map_err(|e| Error::Consistency(e.to_string()))?;
    let roots = (1..=n_max)
        .into_par_iter()
        .map(|n| member_roots(&params, n, None))
        .collect::<Result<Vec<_>>>()?;
    let (max_abs_re, max_abs_im) = roots.iter().flatten().fold((0.0f64, 0.0f64), |(r, i), z| {
        (r.max(z.re.abs()), i.max(z.im.abs()))
    });
    Ok(ImaginaryAxisReport {
        n_max,
        on_axis: max_abs_re < 1e-9 && max_abs_im < 2.0,
        max_abs_re,
        max_abs_im,
    })
}
