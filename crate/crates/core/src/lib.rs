//! Exact classification of hypergeometric series over ℚ as polynomial,
//! algebraic, or transcendental.
//!
//! A series is described by a [`params::HypergeomSpec`]: a pair of monic
//! polynomials `(C, D)` with `u_{n+1}/uₙ = scale · C(n)/D(n)`. The
//! [`classify::classify`] procedure contracts the pair, checks that the
//! contraction has rational parameters and is reduced, and then applies the
//! interlacing criterion for every multiplier coprime to the common
//! denominator. The [`oracle`] module provides independent numeric checks.

pub mod classify;
pub mod criteria;
pub mod exact;
pub mod exec;
mod modp;
pub mod oracle;
pub mod params;
pub mod transform;

pub use classify::{
    classify, classify_batch, derivative_spec, gaussian_degenerate_verdict, ClassificationTrace, Verdict,
};
pub use exact::{PolyQ, Rational};
pub use exec::Execution;
pub use params::{assemble, from_recurrence, FactorPair, Form, HypergeomSpec, Parameter};
