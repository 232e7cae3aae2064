//! Zeros of `P_n` through the angular equation
//! `g_n(theta) = (zeta - cos theta) sin((n+1) theta) / sin theta - cos((n+1) theta) + zeta^{-(n+1)}`.
//!
//! `P_n(z(theta)) = 0` exactly when `g_n(theta) = 0`. Sign changes of `g_n`
//! between the angles `k pi / (n+1)` locate `n` zeros for even `n` and `n - 1`
//! for odd `n`, where `z = 0` supplies the last one.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::theta::{z_of_theta, zeta_pair};

/// Angle used in place of the open endpoints `0` and `pi`.
pub const EDGE_OFFSET: f64 = 1e-8;
/// Half-width of the excluded window around `pi/2`.
pub const POLE_OFFSET: f64 = 1e-6;
pub const BISECTION_CAP: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaSign {
    Negative,
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GnProblem {
    n: usize,
    alpha: f64,
}

impl GnProblem {
    /// Requires `n >= 1` and `alpha <= 1/9`, `alpha != 0`.
    pub fn new(n: usize, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::DegreeTooLow {
                required: 1,
                actual: Some(0),
            });
        }
        if alpha == 0.0 || alpha > 1.0 / 9.0 || !alpha.is_finite() {
            return Err(Error::AlphaOutOfRange(alpha));
        }
        Ok(Self { n, alpha })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn sign(&self) -> AlphaSign {
        if self.alpha < 0.0 {
            AlphaSign::Negative
        } else {
            AlphaSign::Positive
        }
    }

    pub fn g_value(&self, theta: f64) -> Result<f64> {
        let (zeta, _) = zeta_pair::<f64>(theta, self.alpha)?;
        let m = (self.n + 1) as f64;
        let c = theta.cos();
        Ok(
            (zeta - c) * (m * theta).sin() / theta.sin() - (m * theta).cos()
                + inverse_power(zeta, self.n + 1),
        )
    }

    /// Angles at which signs are compared: the edges, the interior grid
    /// `k pi/(n+1)`, and `pi/2 -+ POLE_OFFSET` in place of `pi/2`.
    pub fn sample_angles(&self) -> Vec<f64> {
        let m = self.n + 1;
        let step = PI / m as f64;
        let mut out = vec![EDGE_OFFSET];
        for k in 1..m {
            if 2 * k != m {
                out.push(k as f64 * step);
            }
        }
        out.push(FRAC_PI_2 - POLE_OFFSET);
        out.push(FRAC_PI_2 + POLE_OFFSET);
        out.push(PI - EDGE_OFFSET);
        out.sort_by(f64::total_cmp);
        out
    }

    /// Intervals with a sign change of `g_n`, never crossing `pi/2`.
    pub fn brackets(&self) -> Result<BracketSet> {
        let angles = self.sample_angles();
        let values = angles
            .iter()
            .map(|&th| self.g_value(th))
            .collect::<Result<Vec<_>>>()?;
        let mut intervals = Vec::new();
        for k in 1..angles.len() {
            let (lo, hi) = (angles[k - 1], angles[k]);
            if lo < FRAC_PI_2 && hi > FRAC_PI_2 {
                continue;
            }
            if values[k - 1] == 0.0 {
                intervals.push(Bracket::point(lo));
            } else if values[k - 1] * values[k] < 0.0 {
                intervals.push(Bracket {
                    lo,
                    hi,
                    g_lo: values[k - 1],
                    g_hi: values[k],
                });
            }
        }
        let expected = self.expected_theta_roots();
        if intervals.len() != expected {
            return Err(Error::Consistency(format!(
                "g_{} with alpha={} has {} sign changes, expected {expected}",
                self.n,
                self.alpha,
                intervals.len()
            )));
        }
        Ok(BracketSet {
            intervals,
            includes_origin_root: self.n % 2 == 1,
        })
    }

    pub fn expected_theta_roots(&self) -> usize {
        self.n - self.n % 2
    }

    /// One refined angle per bracket, ascending.
    pub fn solve(&self, tol: f64) -> Result<Vec<f64>> {
        self.brackets()?
            .intervals
            .iter()
            .map(|b| self.refine(b, tol))
            .collect()
    }

    fn refine(&self, b: &Bracket, tol: f64) -> Result<f64> {
        let (mut lo, mut hi, mut g_lo, mut g_hi) = (b.lo, b.hi, b.g_lo, b.g_hi);
        if g_lo == 0.0 {
            return Ok(lo);
        }
        let mut steps = 0;
        while hi - lo > tol {
            steps += 1;
            if steps > BISECTION_CAP {
                return Err(Error::BisectionCap(BISECTION_CAP));
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let g = self.g_value(mid)?;
            if g == 0.0 {
                return Ok(mid);
            }
            if (g < 0.0) == (g_lo < 0.0) {
                lo = mid;
                g_lo = g;
            } else {
                hi = mid;
                g_hi = g;
            }
        }
        // Secant polish, kept inside the final bracket.
        let secant = lo - g_lo * (hi - lo) / (g_hi - g_lo);
        Ok(if secant.is_finite() && secant > lo && secant < hi {
            secant
        } else {
            0.5 * (lo + hi)
        })
    }

    /// Zeros of the normalized `P_n`, ascending: `z(theta)` at each angular
    /// root, plus `0` for odd `n`.
    pub fn predicted_roots(&self, tol: f64) -> Result<Vec<f64>> {
        let mut z = self
            .solve(tol)?
            .into_iter()
            .map(|th| z_of_theta(th, self.alpha))
            .collect::<Result<Vec<_>>>()?;
        if self.n % 2 == 1 {
            z.push(0.0);
        }
        z.sort_by(f64::total_cmp);
        Ok(z)
    }
}

/// `zeta^{-k}` in exp-log form, flushed to zero below `1e-300`.
fn inverse_power(zeta: f64, k: usize) -> f64 {
    let log_mag = -(k as f64) * zeta.abs().ln();
    if log_mag < (1e-300f64).ln() {
        return 0.0;
    }
    let mag = log_mag.exp();
    if zeta < 0.0 && k % 2 == 1 {
        -mag
    } else {
        mag
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub g_lo: f64,
    pub g_hi: f64,
}

impl Bracket {
    fn point(theta: f64) -> Self {
        Self {
            lo: theta,
            hi: theta,
            g_lo: 0.0,
            g_hi: 0.0,
        }
    }

    pub fn contains(&self, theta: f64) -> bool {
        self.lo < theta && theta < self.hi
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BracketSet {
    pub intervals: Vec<Bracket>,
    pub includes_origin_root: bool,
}
