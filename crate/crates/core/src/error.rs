use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial degree must be at least {required}, got {actual:?}")]
    DegreeTooLow {
        required: usize,
        actual: Option<usize>,
    },

    #[error("empty or inverted interval: lo must be below hi")]
    EmptyInterval,

    #[error("root finder did not converge after {iterations} iterations (max correction {max_correction:e})")]
    NonConvergence {
        iterations: usize,
        max_correction: f64,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("normalization needs b > 0")]
    NonPositiveB,

    #[error("alpha = {0} is outside the real-rooted regime (alpha must be <= 1/9 and nonzero)")]
    AlphaOutOfRange(f64),

    #[error("theta = {0} sits on the pole of zeta at pi/2")]
    ThetaAtAsymptote(f64),

    #[error("theta = {0} is outside (0, pi)")]
    ThetaOutOfRange(f64),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("degenerate cubic: leading coefficient vanishes")]
    DegenerateCubic,

    #[error("bisection exceeded {0} iterations")]
    BisectionCap(usize),

    #[error("could not parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}
