//! Real-rootedness analysis for the polynomial family
//!
//! ```text
//! P_n(z) + a z P_{n-1}(z) + b P_{n-2}(z) + c z P_{n-3}(z) = 0,   P_0 = 1,  P_{-k} = 0.
//! ```
//!
//! All zeros of every `P_n` are real exactly when `b > 0` and
//! `alpha = c/(ab) <= 1/9`; they then lie in `(-lambda, lambda)` for the
//! closed-form `lambda(alpha)` of [`params::lambda_bound`]. The crate
//! generates the family, certifies real-rootedness with exact Sturm
//! arithmetic, evaluates the theta-parametrization of the zero locus and
//! searches for non-real zeros outside that regime.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod gn;
pub mod params;
pub mod poly;
pub mod recurrence;
pub mod scalar;
pub mod theta;

pub use error::{Error, Result};
