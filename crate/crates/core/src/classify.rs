//! The decision procedure: polynomial check, degree balance, contraction,
//! rationality and reducedness of the contraction, interlacing criterion.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::criteria::{ic_check, CriteriaError, CriterionReport};
use crate::exact::{is_natural, is_nonpositive_integer, PolyQ, Rational};
use crate::exec::Execution;
use crate::params::{
    self, assemble, from_recurrence, shielded_denominator_zeros, truncation_degree, FactorPair, Form, HypergeomSpec,
    Origin, Parameter, ParamsError,
};
use crate::transform::{contract, degree_balanced, is_contracted, is_reduced, RemovalStep};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// `uₙ = 0` for all `n ≥ degree_bound`.
    Polynomial {
        degree_bound: u64,
    },
    Algebraic,
    Transcendental,
}

impl Verdict {
    pub fn is_algebraic(self) -> bool {
        !matches!(self, Verdict::Transcendental)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Polynomial { degree_bound } => write!(f, "POLYNOMIAL(deg<{degree_bound})"),
            Verdict::Algebraic => f.write_str("ALGEBRAIC"),
            Verdict::Transcendental => f.write_str("TRANSCENDENTAL"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeName {
    PolynomialCheck,
    DegreeBalance,
    ContractionRationality,
    Reducedness,
    InterlacingCriterion,
}

impl fmt::Display for NodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Growth of the coefficient ratio, which fixes the radius of convergence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Radius {
    Finite,
    /// `deg C < deg D`: entire function.
    Infinite,
    /// `deg C > deg D`: divergent for every `x ≠ 0`.
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodePayload {
    PolynomialCheck { truncation: Option<u64>, shielded_denominator_zeros: Vec<u64> },
    DegreeBalance { top_degree: usize, bottom_degree: usize, radius: Radius },
    ContractionRationality { top: Option<Vec<Rational>>, bottom: Option<Vec<Rational>> },
    Reducedness { reduced: bool },
    InterlacingCriterion { satisfied: bool, modulus: u64 },
}

/// One decision of the procedure. `outcome` answers the node's question:
/// "polynomial?", "balanced?", "rational?", "reduced?", "interlacing holds?".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionNode {
    pub name: NodeName,
    pub outcome: bool,
    pub terminal: bool,
    pub payload: NodePayload,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationTrace {
    /// Pair as assembled, before common factors are cancelled.
    pub raw: FactorPair,
    pub raw_contracted: bool,
    pub raw_reduced: bool,
    pub canonical: FactorPair,
    pub scale: Rational,
    pub leading: Rational,
    pub nodes: Vec<DecisionNode>,
    pub contraction: Option<FactorPair>,
    pub contraction_steps: Vec<RemovalStep>,
    pub ic_report: Option<CriterionReport>,
    pub verdict: Verdict,
}

struct TraceBuilder {
    nodes: Vec<DecisionNode>,
}

impl TraceBuilder {
    fn pass(&mut self, name: NodeName, outcome: bool, payload: NodePayload) {
        self.nodes.push(DecisionNode { name, outcome, terminal: false, payload });
    }

    fn stop(&mut self, name: NodeName, outcome: bool, payload: NodePayload) {
        self.nodes.push(DecisionNode { name, outcome, terminal: true, payload });
    }
}

/// Decides whether the series of `spec` is a polynomial, algebraic, or
/// transcendental over ℚ(x).
pub fn classify(spec: &HypergeomSpec, exec: Execution) -> Result<ClassificationTrace, ClassifyError> {
    params::check_defined(spec)?;
    let raw = spec.pair.clone();
    let canonical = raw.cancel_common();
    let mut trace = ClassificationTrace {
        raw_contracted: is_contracted(&raw),
        raw_reduced: is_reduced(&raw),
        raw,
        canonical: canonical.clone(),
        scale: spec.scale.clone(),
        leading: spec.leading.clone(),
        nodes: Vec::new(),
        contraction: None,
        contraction_steps: Vec::new(),
        ic_report: None,
        verdict: Verdict::Transcendental,
    };
    let mut tb = TraceBuilder { nodes: Vec::new() };
    let verdict = decide(spec, &canonical, &mut trace, &mut tb, exec)?;
    trace.nodes = tb.nodes;
    trace.verdict = verdict;
    Ok(trace)
}

fn decide(
    spec: &HypergeomSpec,
    canonical: &FactorPair,
    trace: &mut ClassificationTrace,
    tb: &mut TraceBuilder,
    exec: Execution,
) -> Result<Verdict, ClassifyError> {
    let truncation = truncation_degree(spec);
    let shielded = match truncation {
        Some(_) if !spec.leading.is_zero() => shielded_denominator_zeros(spec),
        _ => Vec::new(),
    };
    let payload = NodePayload::PolynomialCheck { truncation, shielded_denominator_zeros: shielded };
    if let Some(degree_bound) = truncation {
        tb.stop(NodeName::PolynomialCheck, true, payload);
        return Ok(Verdict::Polynomial { degree_bound });
    }
    tb.pass(NodeName::PolynomialCheck, false, payload);

    let (top_degree, bottom_degree) = (canonical.c.deg(), canonical.d.deg());
    let radius = match top_degree.cmp(&bottom_degree) {
        std::cmp::Ordering::Equal => Radius::Finite,
        std::cmp::Ordering::Less => Radius::Infinite,
        std::cmp::Ordering::Greater => Radius::Zero,
    };
    let payload = NodePayload::DegreeBalance { top_degree, bottom_degree, radius };
    if !degree_balanced(canonical) {
        tb.stop(NodeName::DegreeBalance, false, payload);
        return Ok(Verdict::Transcendental);
    }
    tb.pass(NodeName::DegreeBalance, true, payload);

    let (contracted, steps) = contract(canonical);
    trace.contraction = Some(contracted.clone());
    trace.contraction_steps = steps;
    let Some((top, bottom)) = contracted.rational_parameters() else {
        let payload = NodePayload::ContractionRationality { top: None, bottom: None };
        tb.stop(NodeName::ContractionRationality, false, payload);
        return Ok(Verdict::Transcendental);
    };
    let payload = NodePayload::ContractionRationality { top: Some(top.clone()), bottom: Some(bottom.clone()) };
    tb.pass(NodeName::ContractionRationality, true, payload);

    let reduced = is_reduced(&contracted);
    if !reduced {
        tb.stop(NodeName::Reducedness, false, NodePayload::Reducedness { reduced });
        return Ok(Verdict::Transcendental);
    }
    tb.pass(NodeName::Reducedness, true, NodePayload::Reducedness { reduced });

    let report = ic_check(&top, &bottom, exec)?;
    let satisfied = report.satisfied;
    tb.stop(
        NodeName::InterlacingCriterion,
        satisfied,
        NodePayload::InterlacingCriterion { satisfied, modulus: report.modulus },
    );
    trace.ic_report = Some(report);
    Ok(if satisfied { Verdict::Algebraic } else { Verdict::Transcendental })
}

/// Classifies independent specs, in parallel when requested. The output
/// order matches the input order.
pub fn classify_batch(specs: &[HypergeomSpec], exec: Execution) -> Vec<Result<ClassificationTrace, ClassifyError>> {
    exec.map(specs, |s| classify(s, Execution::Sequential))
}

/// Which case of the degenerate Gaussian lists fired.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianCase {
    /// 1 for `₂F₁([α, β], [α + k])`, 2 for `₂F₁([k, β], [γ])`.
    pub list: u8,
    /// `"k<=0"`, a letter `a`–`f`, or `"none"` when no case applies.
    pub case: &'static str,
    pub k: Rational,
    pub verdict: Verdict,
}

fn is_int(x: &Rational) -> bool {
    x.is_integer()
}

fn first_list(alpha: &Rational, beta: &Rational, k: &Rational) -> GaussianCase {
    let zero = Rational::zero();
    let case = if *k <= zero {
        "k<=0"
    } else if is_int(alpha) && !is_int(beta) {
        "a"
    } else if !is_int(alpha) && is_nonpositive_integer(beta) {
        "b"
    } else if !is_int(alpha) && !is_int(beta) && is_natural(&(beta - alpha - k)) {
        "c"
    } else if is_int(alpha) && is_int(beta) && alpha < beta && *beta <= zero && beta - alpha >= *k {
        "d"
    } else if is_int(alpha) && is_int(beta) && zero < *alpha && alpha < beta && *beta <= zero && beta - alpha >= *k {
        // unsatisfiable as stated (0 < α < β ≤ 0); kept verbatim
        "e"
    } else if is_int(alpha) && is_int(beta) && *beta <= zero && zero < *alpha {
        "f"
    } else {
        "none"
    };
    let verdict = if case == "none" { Verdict::Transcendental } else { Verdict::Algebraic };
    GaussianCase { list: 1, case, k: k.clone(), verdict }
}

fn second_list(k: &Rational, beta: &Rational, gamma: &Rational) -> GaussianCase {
    let zero = Rational::zero();
    let case = if *k <= zero {
        "k<=0"
    } else if !is_nonpositive_integer(beta) && is_natural(&(beta - gamma)) {
        "a"
    } else if is_nonpositive_integer(beta) {
        "b"
    } else if is_int(beta) && is_int(gamma) && zero < *beta && beta < gamma && gamma <= k {
        "c"
    } else if !is_int(beta) && is_natural(&(k - gamma)) {
        "d"
    } else {
        "none"
    };
    let verdict = if case == "none" { Verdict::Transcendental } else { Verdict::Algebraic };
    GaussianCase { list: 2, case, k: k.clone(), verdict }
}

/// Closed-form verdict for `₂F₁([α, β], [γ])` in the reducible case
/// (`γ − α`, `γ − β`, `α` or `β` integral); `None` otherwise.
///
/// Polynomial series are reported as [`Verdict::Algebraic`].
pub fn gaussian_degenerate_verdict(alpha: &Rational, beta: &Rational, gamma: &Rational) -> Option<GaussianCase> {
    if is_int(alpha) && is_int(beta) {
        // the first list misclassifies some polynomials and rational functions
        // with two integral top parameters; the second list covers them all
        let (k, other) =
            if *beta <= Rational::zero() && *alpha > Rational::zero() { (beta, alpha) } else { (alpha, beta) };
        return Some(second_list(k, other, gamma));
    }
    if is_int(&(gamma - alpha)) {
        return Some(first_list(alpha, beta, &(gamma - alpha)));
    }
    if is_int(alpha) {
        return Some(second_list(alpha, beta, gamma));
    }
    if is_int(&(gamma - beta)) {
        return Some(first_list(beta, alpha, &(gamma - beta)));
    }
    if is_int(beta) {
        return Some(second_list(beta, alpha, gamma));
    }
    None
}

/// F-form parameter lists of an explicit presentation.
fn f_form_lists(form: Form, top: &[Parameter], bottom: &[Parameter]) -> (Vec<Parameter>, Vec<Parameter>) {
    match form {
        Form::F => (top.to_vec(), bottom.to_vec()),
        Form::ScriptF => {
            let mut t = top.to_vec();
            t.push(Parameter::Rational(Rational::one()));
            (t, bottom.to_vec())
        }
    }
}

/// The derivative series `Σ (n+1) u_{n+1} xⁿ`. On F-form parameters every
/// parameter moves up by one and the leading value becomes
/// `scale · (∏aⱼ / ∏b_k) · u₀`.
pub fn derivative_spec(spec: &HypergeomSpec) -> Result<HypergeomSpec, ParamsError> {
    params::check_defined(spec)?;
    let canonical = spec.pair.cancel_common();
    let zero = Rational::zero();
    let leading = if spec.leading.is_zero() {
        zero.clone()
    } else {
        let c0 = canonical.c.eval(&zero);
        if c0.is_zero() {
            zero.clone()
        } else {
            let d0 = canonical.d.eval(&zero);
            if d0.is_zero() {
                return Err(ParamsError::IllDefined { at: 0 });
            }
            &spec.scale * c0 / d0 * &spec.leading
        }
    };
    let one = Rational::one();
    match &spec.origin {
        Origin::Parameters { form, top, bottom, scale, .. } => {
            let (top, bottom) = f_form_lists(*form, top, bottom);
            let shift = |ps: Vec<Parameter>| ps.iter().map(|p| p.shifted(&one)).collect::<Vec<_>>();
            assemble(&shift(top), &shift(bottom), Form::F, scale.clone(), leading)
        }
        Origin::Recurrence { .. } => {
            let c = &spec.pair.c.shift(&one) * &PolyQ::linear(Rational::from_integer(2.into()));
            let d = &spec.pair.d.shift(&one) * &PolyQ::linear(one.clone());
            from_recurrence(&c.scale(&spec.scale), &d, leading)
        }
    }
}
