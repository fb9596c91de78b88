//! JSON classification trace.
//!
//! Field order is fixed by the struct definitions and every rational is
//! written as a `"num/den"` string. The canonical pair together with `scale`
//! and `u0` is enough to rebuild the series, see [`TraceDocument::replay`].

use hypalg_core::classify::{classify, ClassificationTrace, ClassifyError, NodePayload, Radius, Verdict};
use hypalg_core::criteria::{CriterionReport, LambdaReport};
use hypalg_core::exact::BracketValue;
use hypalg_core::oracle::{Annihilator, GuessOutcome};
use hypalg_core::params::{from_recurrence, FactorPair, HypergeomSpec};
use hypalg_core::transform::RemovalStep;
use hypalg_core::{Execution, PolyQ, Rational};
use serde::{Deserialize, Serialize};

use crate::parse::parse_rational;
use crate::InputError;

pub const TRACE_SCHEMA: &str = "hypalg-trace/1";

/// `"num/den"`, also for integers.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational_string).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDoc {
    /// Coefficients from the constant term up.
    pub coefficients: Vec<String>,
    pub text: String,
}

impl PolyDoc {
    fn new(p: &PolyQ) -> Self {
        PolyDoc { coefficients: rationals(p.coeffs()), text: p.to_string() }
    }

    fn poly(&self) -> Result<PolyQ, InputError> {
        let c = self.coefficients.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
        Ok(PolyQ::new(c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDoc {
    pub c: PolyDoc,
    pub d: PolyDoc,
}

impl PairDoc {
    fn new(p: &FactorPair) -> Self {
        PairDoc { c: PolyDoc::new(&p.c), d: PolyDoc::new(&p.d) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub label: String,
    pub algebraic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u64>,
}

impl VerdictDoc {
    fn new(v: Verdict) -> Self {
        let degree_bound = match v {
            Verdict::Polynomial { degree_bound } => Some(degree_bound),
            _ => None,
        };
        VerdictDoc { label: v.to_string(), algebraic: v.is_algebraic(), degree_bound }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DetailDoc {
    PolynomialCheck { truncation: Option<u64>, shielded_denominator_zeros: Vec<u64> },
    DegreeBalance { top_degree: usize, bottom_degree: usize, radius: String },
    ContractionRationality { top: Option<Vec<String>>, bottom: Option<Vec<String>> },
    Reducedness { reduced: bool },
    InterlacingCriterion { satisfied: bool, modulus: u64 },
}

impl DetailDoc {
    fn new(p: &NodePayload) -> Self {
        match p {
            NodePayload::PolynomialCheck { truncation, shielded_denominator_zeros } => DetailDoc::PolynomialCheck {
                truncation: *truncation,
                shielded_denominator_zeros: shielded_denominator_zeros.clone(),
            },
            NodePayload::DegreeBalance { top_degree, bottom_degree, radius } => DetailDoc::DegreeBalance {
                top_degree: *top_degree,
                bottom_degree: *bottom_degree,
                radius: match radius {
                    Radius::Finite => "finite",
                    Radius::Infinite => "infinite",
                    Radius::Zero => "zero",
                }
                .into(),
            },
            NodePayload::ContractionRationality { top, bottom } => DetailDoc::ContractionRationality {
                top: top.as_deref().map(rationals),
                bottom: bottom.as_deref().map(rationals),
            },
            NodePayload::Reducedness { reduced } => DetailDoc::Reducedness { reduced: *reduced },
            NodePayload::InterlacingCriterion { satisfied, modulus } => {
                DetailDoc::InterlacingCriterion { satisfied: *satisfied, modulus: *modulus }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub name: String,
    pub outcome: bool,
    pub terminal: bool,
    pub detail: DetailDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub difference: i64,
    pub pairs_removed: usize,
    pub top_factor: PolyDoc,
    pub bottom_factor: PolyDoc,
}

impl StepDoc {
    fn new(s: &RemovalStep) -> Self {
        StepDoc {
            difference: s.difference,
            pairs_removed: s.pairs_removed,
            top_factor: PolyDoc::new(&s.removed_factor),
            bottom_factor: PolyDoc::new(&s.bottom_factor()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDoc {
    pub value: String,
    pub bracket: String,
}

fn points(v: &[(Rational, BracketValue)]) -> Vec<PointDoc> {
    v.iter().map(|(x, b)| PointDoc { value: rational_string(x), bracket: rational_string(b.value()) }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaDoc {
    pub lambda: u64,
    pub satisfied: bool,
    pub top: Vec<PointDoc>,
    pub bottom: Vec<PointDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl LambdaDoc {
    fn new(r: &LambdaReport) -> Self {
        LambdaDoc {
            lambda: r.lambda,
            satisfied: r.satisfied,
            top: points(&r.sorted_top),
            bottom: points(&r.sorted_bottom),
            witness: r.failure_witness.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub criterion: String,
    pub modulus: u64,
    pub satisfied: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size_mismatch: Option<(usize, usize)>,
    pub lambdas: Vec<LambdaDoc>,
}

impl ReportDoc {
    pub fn new(r: &CriterionReport) -> Self {
        ReportDoc {
            criterion: r.kind.to_string(),
            modulus: r.modulus,
            satisfied: r.satisfied,
            size_mismatch: r.size_mismatch,
            lambdas: r.per_lambda.iter().map(LambdaDoc::new).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuessDoc {
    pub dx_max: usize,
    pub dy_max: usize,
    pub terms: usize,
    pub guard: usize,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bidegree: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified_terms: Option<usize>,
}

impl GuessDoc {
    pub fn new(dx_max: usize, dy_max: usize, terms: usize, guard: usize, out: &GuessOutcome) -> Self {
        let found: Option<&Annihilator> = match out {
            GuessOutcome::Found(a) => Some(a),
            GuessOutcome::NoneUpTo { .. } => None,
        };
        GuessDoc {
            dx_max,
            dy_max,
            terms,
            guard,
            found: found.is_some(),
            bidegree: found.map(|a| (a.dx, a.dy)),
            polynomial: found.map(|a| a.poly.to_string()),
            verified_terms: found.map(|a| a.verified_terms),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub christol: Option<ReportDoc>,
    /// Why Christol's criterion could not be run, if it was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub christol_skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guess: Option<GuessDoc>,
}

impl OracleDoc {
    pub fn is_empty(&self) -> bool {
        *self == OracleDoc::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub schema: String,
    pub tool: String,
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub verdict: VerdictDoc,
    pub scale: String,
    pub u0: String,
    pub canonical: PairDoc,
    pub raw: PairDoc,
    pub raw_contracted: bool,
    pub raw_reduced: bool,
    pub nodes: Vec<NodeDoc>,
    pub contraction: Option<PairDoc>,
    pub contraction_steps: Vec<StepDoc>,
    pub ic_report: Option<ReportDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDoc>,
}

impl TraceDocument {
    pub fn new(trace: &ClassificationTrace, input: Option<String>) -> Self {
        TraceDocument {
            schema: TRACE_SCHEMA.into(),
            tool: env!("CARGO_PKG_NAME").into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            input,
            verdict: VerdictDoc::new(trace.verdict),
            scale: rational_string(&trace.scale),
            u0: rational_string(&trace.leading),
            canonical: PairDoc::new(&trace.canonical),
            raw: PairDoc::new(&trace.raw),
            raw_contracted: trace.raw_contracted,
            raw_reduced: trace.raw_reduced,
            nodes: trace
                .nodes
                .iter()
                .map(|n| NodeDoc {
                    name: n.name.to_string(),
                    outcome: n.outcome,
                    terminal: n.terminal,
                    detail: DetailDoc::new(&n.payload),
                })
                .collect(),
            contraction: trace.contraction.as_ref().map(PairDoc::new),
            contraction_steps: trace.contraction_steps.iter().map(StepDoc::new).collect(),
            ic_report: trace.ic_report.as_ref().map(ReportDoc::new),
            oracle: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, InputError> {
        let doc: TraceDocument = serde_json::from_str(text).map_err(|e| InputError::Document(e.to_string()))?;
        if doc.schema != TRACE_SCHEMA {
            return Err(InputError::Document(format!("unsupported trace schema `{}`", doc.schema)));
        }
        Ok(doc)
    }

    /// The series rebuilt from the recorded canonical pair, scale and `u₀`.
    pub fn replay_spec(&self) -> Result<HypergeomSpec, InputError> {
        let scale = parse_rational(&self.scale)?;
        let u0 = parse_rational(&self.u0)?;
        let c = self.canonical.c.poly()?;
        let d = self.canonical.d.poly()?;
        Ok(from_recurrence(&c.scale(&scale), &d, u0)?)
    }

    /// Reclassifies the recorded canonical form.
    pub fn replay(&self, exec: Execution) -> Result<ClassificationTrace, ReplayError> {
        let spec = self.replay_spec().map_err(ReplayError::Input)?;
        classify(&spec, exec).map_err(ReplayError::Classify)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReplayError {
    #[error(transparent)]
    Input(InputError),
    #[error(transparent)]
    Classify(ClassifyError),
}

/// Pretty-printed JSON with a trailing newline.
pub fn emit_trace_json(doc: &TraceDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("trace documents serialize");
    s.push('\n');
    s
}
