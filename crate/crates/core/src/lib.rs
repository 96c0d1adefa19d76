//! Extended nonresonant thermonuclear reaction-rate integrals.
//!
//! Four integral families are evaluated by three independent routes:
//!
//! - direct adaptive quadrature on the real line ([`integral`]),
//! - numerical Mellin–Barnes contour integration of the gamma-product
//!   representation ([`mellin`]),
//! - Meijer G residue series when `δ/ρ` is a positive integer ([`meijer`]).
//!
//! [`representations`] ties an [`IntegralSpec`] to its exact G-function form,
//! [`ode`] checks the differential equations those forms satisfy and
//! [`limits`] checks the `β → 1` limits of the pathway families.
//! [`verify`] bundles the seeded verification suites used by the CLI.

// reference constants keep the digits they were computed with
#![allow(clippy::excessive_precision)]
// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dd;
pub mod error;
pub mod gamma;
pub mod integral;
pub mod limits;
pub mod meijer;
pub mod mellin;
pub mod ode;
pub mod quadrature;
pub mod representations;
pub mod result;
pub mod verify;

pub use error::{Error, Result};
pub use gamma::ComplexValue;
pub use integral::{IntegralSpec, Variant};
pub use meijer::MeijerGParams;
pub use mellin::{ContourConfig, GammaFactor, MellinIntegrand};
pub use representations::{Method, ReducedForm};
pub use result::{EvalResult, MethodTag};
