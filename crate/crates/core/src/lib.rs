//! Interpolating splines on a uniform grid that minimize
//! `∫ (φ^(m) + ω² φ^(m-2))² dx`, built in `O(N)` through a discrete inverse of
//! the kernel. See the guide in `book/` for a walkthrough.

// `!(a < b)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Tests use literals near pi/2 and frozen reference digits on purpose.
#![cfg_attr(test, allow(clippy::approx_constant, clippy::excessive_precision))]

pub mod builder;
pub mod config;
pub mod dd;
pub mod error;
pub mod eval;
pub mod kernel;
pub mod linalg;
pub mod operator;
pub mod oracle;
pub mod poly;
pub mod real;

pub use builder::{build_spline, BoundarySolution, Samples, SplineBuilder, SplineCoefficients};
pub use config::{SampleSet, SplineConfig};
pub use dd::Dd;
pub use error::{Error, Result};
pub use eval::Spline;
pub use operator::{build_operator, DiscreteOperator, Signal};
pub use real::Real;

// The guide in book/ is compiled here so its snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/problem.md")]
    mod problem {}
    #[doc = include_str!("../../../book/src/kernel.md")]
    mod kernel {}
    #[doc = include_str!("../../../book/src/operator.md")]
    mod operator {}
    #[doc = include_str!("../../../book/src/building.md")]
    mod building {}
    #[doc = include_str!("../../../book/src/precision.md")]
    mod precision {}
    #[doc = include_str!("../../../book/src/evaluation.md")]
    mod evaluation {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
