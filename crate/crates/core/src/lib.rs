//! Numerical toolkit for the Ramanujan R-function
//! `R(x) = −2γ − ψ(x) − ψ(1−x)` on `(0, 1)`.
//!
//! The crate evaluates `R`, the companion function
//! `f(x) = [1 + x(1−x)]R(x) − π/sin(πx)` and its series expansions, builds the
//! coefficient sequences of those expansions, and provides two-sided bounds
//! for `R` together with the root finding needed for their sharp constants.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod bounds;
pub mod coefficients;
pub mod constants;
pub mod dirichlet;
pub mod error;
pub mod polygamma;
pub mod ramanujan;
mod sum;

pub use analysis::{Comparison, DeltaEstimate, Root, RootBracket, RootTarget};
pub use bounds::{BoundMethod, BoundPair};
pub use coefficients::{CoeffKind, CoefficientTable};
pub use constants::{constants, Constants};
pub use error::{Error, Result};
pub use ramanujan::{EvalMethod, RFunctionValue};
pub use sum::{compensated_sum, CompensatedSum, SeriesValue, TERM_CAP};
