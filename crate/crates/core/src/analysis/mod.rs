//! Certification, counterexample search, dominance probes and zero density.

mod certify;
mod density;
mod sokal;

pub use certify::{
    certify, count_distinct_real, first_nonreal, short_dyadic_between, CertificateMethod,
    CounterexampleRecord, HyperbolicityReport, RealRootCount,
};
pub use density::{density_profile, imaginary_axis_check, DensityProfile, ImaginaryAxisReport};
pub use sokal::{
    cubic_discriminant, dominance_at, necessity_probe, real_root_by_bisection,
    reciprocal_dominance, zero_approach, DominanceReport, ReciprocalReport, MODULUS_TOLERANCE,
};
