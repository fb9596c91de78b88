//! Text and file formats around `hypalg-core`: the expression parser, JSON
//! input documents and classification traces, and SVG interlacing diagrams.

pub mod document;
pub mod parse;
pub mod svg;
pub mod trace;

use hypalg_core::criteria::{christol_globally_bounded, CriterionReport};
use hypalg_core::params::{FactorPair, ParamsError};
use hypalg_core::{Execution, Rational};
use num_traits::One;
use thiserror::Error;

pub use document::{document_from_json, document_to_json, to_spec};
pub use parse::{parse_expression, InputDocument, ParamExpr};
pub use svg::interlacing_svg;
pub use trace::{emit_trace_json, TraceDocument};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{line}:{column}: `{name}` is not an algebraic parameter; use a rational, sqrt, root or allroots")]
    NonAlgebraicParameter { name: String, line: usize, column: usize },
    #[error("{head} expects {expected} {side} parameters, found {got}")]
    Arity { head: String, side: &'static str, expected: usize, got: usize },
    #[error("invalid input document: {0}")]
    Document(String),
    #[error(transparent)]
    Params(#[from] ParamsError),
}

impl InputError {
    /// Whether the input parsed but describes an ill-defined series.
    pub fn is_ill_defined(&self) -> bool {
        matches!(self, InputError::Params(ParamsError::IllDefined { .. }))
    }
}

/// Christol's criterion for the series with coefficient ratio pair `pair`.
///
/// When `D` has the factor `t + 1` it plays the role of `n!` and the
/// remaining roots give `b`; otherwise the factor is supplied on top. The
/// error explains why the criterion does not apply.
pub fn christol_from_pair(pair: &FactorPair, exec: Execution) -> Result<CriterionReport, String> {
    let pair = pair.cancel_common();
    let (mut a, mut b) = pair.rational_parameters().ok_or_else(|| "not all parameters are rational".to_string())?;
    let one = Rational::one();
    match b.iter().position(|x| *x == one) {
        Some(i) => {
            b.remove(i);
        }
        None => a.push(one),
    }
    if a.len() != b.len() + 1 {
        return Err(format!(
            "degrees are unbalanced ({} top against {} bottom parameters)",
            pair.c.deg(),
            pair.d.deg()
        ));
    }
    christol_globally_bounded(&a, &b, exec).map_err(|e| e.to_string())
}
