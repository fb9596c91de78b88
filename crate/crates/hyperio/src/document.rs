//! JSON form of an [`InputDocument`] and conversion to a core spec.
//!
//! ```json
//! {"kind": "pFq", "top": ["1/2", "1 + sqrt(2)"], "bottom": ["sqrt(2)"], "scale": "4", "u0": "1"}
//! {"kind": "recurrence", "A": ["1", "2"], "B": ["1", "1"], "u0": "1"}
//! {"expression": "2F1([1,1],[2]; x)"}
//! ```
//!
//! `A` and `B` list coefficients from the constant term up. Every number is
//! an exact rational string.

use hypalg_core::params::{assemble, from_recurrence, Form, HypergeomSpec, Parameter, RealAlgebraic, RootBlock};
use hypalg_core::{PolyQ, Rational};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::parse::{parse_expression, parse_param, parse_rational, Atom, InputDocument, ParamExpr};
use crate::InputError;

pub const INPUT_SCHEMA: &str = "hypalg-input/1";

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Wire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expression: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    top: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bottom: Option<Vec<String>>,
    #[serde(default, rename = "A", skip_serializing_if = "Option::is_none")]
    a: Option<Vec<String>>,
    #[serde(default, rename = "B", skip_serializing_if = "Option::is_none")]
    b: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scale: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    u0: Option<String>,
}

fn doc_err(msg: impl Into<String>) -> InputError {
    InputError::Document(msg.into())
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn rational_field(v: Option<String>, name: &str, default: Option<Rational>) -> Result<Rational, InputError> {
    match (v, default) {
        (Some(s), _) => parse_rational(&s).map_err(|e| doc_err(format!("{name}: {e}"))),
        (None, Some(d)) => Ok(d),
        (None, None) => Err(doc_err(format!("missing field `{name}`"))),
    }
}

fn coefficient_list(v: Option<Vec<String>>, name: &str) -> Result<PolyQ, InputError> {
    let v = v.ok_or_else(|| doc_err(format!("missing field `{name}`")))?;
    let coeffs = v
        .iter()
        .map(|s| parse_rational(s).map_err(|e| doc_err(format!("{name}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PolyQ::new(coeffs))
}

fn param_list(v: Option<Vec<String>>, name: &str) -> Result<Vec<ParamExpr>, InputError> {
    v.unwrap_or_default().iter().map(|s| parse_param(s).map_err(|e| doc_err(format!("{name}: `{s}`: {e}")))).collect()
}

/// Reads a JSON input document. An `expression` field is parsed with the
/// expression grammar; otherwise `kind` selects the structured form.
pub fn document_from_json(text: &str) -> Result<InputDocument, InputError> {
    let w: Wire = serde_json::from_str(text).map_err(|e| doc_err(e.to_string()))?;
    if let Some(s) = &w.schema {
        if s != INPUT_SCHEMA {
            return Err(doc_err(format!("unsupported schema `{s}`, expected `{INPUT_SCHEMA}`")));
        }
    }
    if let Some(expr) = w.expression {
        let extra = w.kind.is_some() || w.top.is_some() || w.bottom.is_some() || w.a.is_some() || w.b.is_some();
        if extra || w.scale.is_some() || w.u0.is_some() {
            return Err(doc_err("`expression` excludes every other input field"));
        }
        return parse_expression(&expr);
    }
    let kind = w.kind.ok_or_else(|| doc_err("need either `expression` or `kind`"))?;
    let form = match kind.as_str() {
        "pFq" => Form::F,
        "scriptF" => Form::ScriptF,
        "recurrence" => {
            if w.top.is_some() || w.bottom.is_some() || w.scale.is_some() {
                return Err(doc_err("a recurrence takes only `A`, `B` and `u0`"));
            }
            return Ok(InputDocument::Recurrence {
                a: coefficient_list(w.a, "A")?,
                b: coefficient_list(w.b, "B")?,
                u0: rational_field(w.u0, "u0", Some(Rational::one()))?,
            });
        }
        other => return Err(doc_err(format!("unknown kind `{other}`; use pFq, scriptF or recurrence"))),
    };
    if w.a.is_some() || w.b.is_some() {
        return Err(doc_err("`A` and `B` belong to kind `recurrence`"));
    }
    Ok(InputDocument::Hypergeometric {
        form,
        top: param_list(w.top, "top")?,
        bottom: param_list(w.bottom, "bottom")?,
        scale: rational_field(w.scale, "scale", Some(Rational::one()))?,
        u0: rational_field(w.u0, "u0", Some(Rational::one()))?,
    })
}

/// Structured JSON for a document; [`document_from_json`] reads it back.
pub fn document_to_json(doc: &InputDocument) -> String {
    let w = match doc {
        InputDocument::Hypergeometric { form, top, bottom, scale, u0 } => Wire {
            schema: Some(INPUT_SCHEMA.into()),
            kind: Some(if *form == Form::F { "pFq" } else { "scriptF" }.into()),
            top: Some(strings(top)),
            bottom: Some(strings(bottom)),
            scale: Some(scale.to_string()),
            u0: Some(u0.to_string()),
            ..Wire::default()
        },
        InputDocument::Recurrence { a, b, u0 } => Wire {
            schema: Some(INPUT_SCHEMA.into()),
            kind: Some("recurrence".into()),
            a: Some(strings(a.coeffs())),
            b: Some(strings(b.coeffs())),
            u0: Some(u0.to_string()),
            ..Wire::default()
        },
    };
    serde_json::to_string_pretty(&w).expect("plain strings serialize")
}

fn to_parameter(p: &ParamExpr) -> Result<Parameter, InputError> {
    let Some((k, atom)) = &p.term else {
        return Ok(Parameter::Rational(p.offset.clone()));
    };
    let k = Rational::from_integer(k.clone());
    Ok(match atom {
        Atom::Sqrt(n) => Parameter::RealAlgebraic(RealAlgebraic::sqrt(*n)?.affine(&k, &p.offset)),
        Atom::Root { poly, lo, hi } => {
            Parameter::RealAlgebraic(RealAlgebraic::new(poly, lo.clone(), hi.clone())?.affine(&k, &p.offset))
        }
        Atom::AllRoots(poly) => Parameter::RootBlock(RootBlock::new(poly, 1)?.affine(&k, &p.offset)),
    })
}

/// Validates the parameters and builds the canonical spec.
pub fn to_spec(doc: &InputDocument) -> Result<HypergeomSpec, InputError> {
    match doc {
        InputDocument::Hypergeometric { form, top, bottom, scale, u0 } => {
            let top = top.iter().map(to_parameter).collect::<Result<Vec<_>, _>>()?;
            let bottom = bottom.iter().map(to_parameter).collect::<Result<Vec<_>, _>>()?;
            Ok(assemble(&top, &bottom, *form, scale.clone(), u0.clone())?)
        }
        InputDocument::Recurrence { a, b, u0 } => Ok(from_recurrence(a, b, u0.clone())?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hypalg_core::exact::int;
    use hypalg_core::params::ParamsError;

    #[test]
    fn structured_and_expression_forms_agree() {
        let from_json = document_from_json(
            r#"{"kind": "pFq", "top": ["1/2", "1 + sqrt(2)", "1 - sqrt(2)"], "bottom": ["sqrt(2)", "-sqrt(2)"], "scale": "4"}"#,
        )
        .unwrap();
        let from_expr = parse_expression("3F2([1/2, 1+sqrt(2), 1-sqrt(2)], [sqrt(2), -sqrt(2)]; 4*x)").unwrap();
        assert_eq!(from_json, from_expr);
        let wrapped =
            document_from_json(r#"{"expression": "3F2([1/2, 1+sqrt(2), 1-sqrt(2)], [sqrt(2), -sqrt(2)]; 4x)"}"#);
        assert_eq!(wrapped.unwrap(), from_expr);
        assert_eq!(document_from_json(&document_to_json(&from_expr)).unwrap(), from_expr);
    }

    #[test]
    fn recurrence_document() {
        let doc = document_from_json(r#"{"kind": "recurrence", "A": ["5", "1"], "B": ["1", "1"], "u0": "2"}"#).unwrap();
        let spec = to_spec(&doc).unwrap();
        assert_eq!(spec.coefficients(3).unwrap(), vec![int(2), int(10), int(30)]);
        assert_eq!(document_from_json(&document_to_json(&doc)).unwrap(), doc);
    }

    #[test]
    fn rejects_malformed_documents() {
        for bad in [
            r#"{"kind": "pFq", "top": ["1/2"], "scale": 0.5}"#,
            r#"{"kind": "pFq", "top": ["0.5"]}"#,
            r#"{"kind": "recurrence", "A": ["1"]}"#,
            r#"{"expression": "2F1([1,1],[2]; x)", "kind": "pFq"}"#,
            r#"{"kind": "hyper"}"#,
            r#"{"top": ["1"]}"#,
            r#"{"kind": "pFq", "colour": "red"}"#,
        ] {
            assert!(matches!(document_from_json(bad), Err(InputError::Document(_))), "{bad}");
        }
    }

    #[test]
    fn validation_errors() {
        let doc = parse_expression("1F0([sqrt(2)], []; x)").unwrap();
        assert!(matches!(to_spec(&doc), Err(InputError::Params(ParamsError::ConjugateClosureViolation(_)))));
        let doc = parse_expression("1F1([1/2], [-2]; x)").unwrap();
        let err = to_spec(&doc).unwrap_err();
        assert!(err.is_ill_defined());
    }
}
