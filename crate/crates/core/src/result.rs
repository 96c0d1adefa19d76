use serde::{Deserialize, Serialize};

/// Which evaluation route produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodTag {
    Quadrature,
    MellinBarnes,
    ResidueSeries,
}

impl MethodTag {
    pub fn as_str(self) -> &'static str {
        match self {
            MethodTag::Quadrature => "quadrature",
            MethodTag::MellinBarnes => "mellin_barnes",
            MethodTag::ResidueSeries => "residue_series",
        }
    }
}

/// A value together with how it was obtained and how much it cost.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub method: MethodTag,
    /// Integrand evaluations, contour nodes or series terms, depending on `method`.
    pub work: u64,
}

impl EvalResult {
    pub fn new(value: f64, abs_error_estimate: f64, method: MethodTag, work: u64) -> Self {
        EvalResult {
            value,
            abs_error_estimate,
            method,
            work,
        }
    }

    /// Multiply value and error estimate by a positive constant.
    pub fn scaled(self, factor: f64) -> Self {
        EvalResult {
            value: self.value * factor,
            abs_error_estimate: self.abs_error_estimate * factor.abs(),
            ..self
        }
    }

    pub fn relative_error_estimate(&self) -> f64 {
        if self.value == 0.0 {
            self.abs_error_estimate
        } else {
            self.abs_error_estimate / self.value.abs()
        }
    }
}
