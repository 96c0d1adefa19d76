use thiserror::Error;

use crate::result::MethodTag;

/// Errors produced by the evaluation and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {re}{im:+}i is a pole of the gamma function")]
    Pole { re: f64, im: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid integral specification: {0}")]
    InvalidSpec(String),

    #[error("did not converge: error estimate {abs_error:e} above target {target:e} after {evaluations} evaluations")]
    Convergence {
        abs_error: f64,
        target: f64,
        evaluations: usize,
    },

    #[error("contour abscissa {c} does not separate the poles (admissible interval ({lo}, {hi}))")]
    Contour { c: f64, lo: f64, hi: f64 },

    #[error("contour truncated at height {half_height}: integrand magnitude {magnitude:e} exceeds budget {budget:e}")]
    Truncation {
        half_height: f64,
        magnitude: f64,
        budget: f64,
    },

    #[error("lower parameters {0} and {1} differ by an integer; residue series needs simple poles")]
    CoincidentPole(f64, f64),

    #[error("residue series terms kept growing for {0} steps")]
    Divergence(usize),

    #[error("unsupported variant for this operation: {0}")]
    UnsupportedVariant(String),

    #[error("delta/rho = {0} is not a positive integer")]
    NonIntegerRatio(f64),

    #[error("{first:?} gave {first_value:e}, {second:?} gave {second_value:e}; allowed gap {allowed:e}")]
    MethodDisagreement {
        first: MethodTag,
        first_value: f64,
        second: MethodTag,
        second_value: f64,
        allowed: f64,
    },

    #[error("s = {re}{im:+}i lies outside the Mellin convergence strip")]
    StripViolation { re: f64, im: f64 },

    #[error("finite-difference step {0} is dominated by evaluation noise")]
    StepTooSmall(f64),
}

impl Error {
    /// True for failures caused by numerics not converging, as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Convergence { .. }
                | Error::Truncation { .. }
                | Error::Divergence(_)
                | Error::StepTooSmall(_)
                | Error::MethodDisagreement { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
