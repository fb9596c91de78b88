//! The interlacing criterion and Christol's counting criterion on rational
//! parameter multisets.
//!
//! Both criteria scale every parameter by each `λ ∈ [1, N]` coprime to the
//! common denominator `N`. The per-`λ` checks are independent and can be
//! evaluated with [`Execution::Parallel`]; reports are always in ascending
//! `λ` order.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::exact::{bracket, common_denominator, is_nonpositive_integer, prec_le, BracketValue, Rational};
use crate::exec::Execution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error("parameter {0} lies in −ℕ")]
    NonPositiveIntegerParameter(Rational),
    #[error("expected p = q + 1, got {top} top and {bottom} bottom parameters")]
    ArityMismatch { top: usize, bottom: usize },
    #[error("common denominator {0} is too large for a λ sweep")]
    ModulusTooLarge(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CriterionKind {
    Interlacing,
    Christol,
}

impl fmt::Display for CriterionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CriterionKind::Interlacing => "interlacing",
            CriterionKind::Christol => "christol",
        })
    }
}

/// Outcome for a single multiplier `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaReport {
    pub lambda: u64,
    /// `λ·a` with its bracket, sorted by bracket.
    pub sorted_top: Vec<(Rational, BracketValue)>,
    pub sorted_bottom: Vec<(Rational, BracketValue)>,
    pub satisfied: bool,
    pub failure_witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub kind: CriterionKind,
    pub modulus: u64,
    pub per_lambda: Vec<LambdaReport>,
    pub satisfied: bool,
    /// Set when the multisets differ in size; no `λ` can then pass.
    pub size_mismatch: Option<(usize, usize)>,
}

impl CriterionReport {
    pub fn lambdas(&self) -> Vec<u64> {
        self.per_lambda.iter().map(|r| r.lambda).collect()
    }

    /// First failing `λ`, if any.
    pub fn first_failure(&self) -> Option<&LambdaReport> {
        self.per_lambda.iter().find(|r| !r.satisfied)
    }
}

/// `λ ∈ [1, N]` with `gcd(λ, N) = 1`; `[1]` for `N = 1`.
pub fn units(modulus: u64) -> Vec<u64> {
    (1..=modulus.max(1)).filter(|l| l.gcd(&modulus) == 1).collect()
}

fn modulus_of<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Result<u64, CriteriaError> {
    let n = common_denominator(values);
    n.to_u64().ok_or_else(|| CriteriaError::ModulusTooLarge(n.to_string()))
}

fn sorted_by_bracket(values: &[Rational], lambda: u64) -> Vec<(Rational, BracketValue)> {
    let l = Rational::from_integer(lambda.into());
    let mut v: Vec<(Rational, BracketValue)> = values
        .iter()
        .map(|a| {
            let x = a * &l;
            let b = bracket(&x);
            (x, b)
        })
        .collect();
    v.sort_by(|x, y| x.1.cmp(&y.1).then_with(|| x.0.cmp(&y.0)));
    v
}

/// Checks `⟨a₁⟩ < ⟨b₁⟩ < ⟨a₂⟩ < ⋯ < ⟨a_p⟩ < ⟨b_p⟩` on pre-sorted lists,
/// returning the first violated inequality.
fn interlacing_violation(top: &[(Rational, BracketValue)], bottom: &[(Rational, BracketValue)]) -> Option<String> {
    if top.len() != bottom.len() {
        return Some(format!("{} top vs {} bottom parameters", top.len(), bottom.len()));
    }
    let chain: Vec<(&str, &(Rational, BracketValue))> =
        top.iter().zip(bottom).flat_map(|(a, b)| [("top", a), ("bottom", b)]).collect();
    chain.windows(2).find_map(|w| {
        let ((ka, a), (kb, b)) = (w[0], w[1]);
        (a.1.cmp(&b.1) != Ordering::Less)
            .then(|| format!("⟨{}⟩ = {} ({ka}) is not below ⟨{}⟩ = {} ({kb})", a.0, a.1, b.0, b.1))
    })
}

/// Whether the multisets interlace after sorting by bracket, top first.
/// Empty multisets interlace; different sizes never do.
pub fn interlaces(top: &[Rational], bottom: &[Rational]) -> bool {
    interlacing_violation(&sorted_by_bracket(top, 1), &sorted_by_bracket(bottom, 1)).is_none()
}

/// The interlacing criterion for script-F parameters `C`, `D`.
pub fn ic_check(top: &[Rational], bottom: &[Rational], exec: Execution) -> Result<CriterionReport, CriteriaError> {
    let modulus = modulus_of(top.iter().chain(bottom))?;
    let lambdas = units(modulus);
    let per_lambda = exec.map(&lambdas, |&lambda| {
        let sorted_top = sorted_by_bracket(top, lambda);
        let sorted_bottom = sorted_by_bracket(bottom, lambda);
        let failure_witness = interlacing_violation(&sorted_top, &sorted_bottom);
        LambdaReport { lambda, sorted_top, sorted_bottom, satisfied: failure_witness.is_none(), failure_witness }
    });
    let size_mismatch = (top.len() != bottom.len()).then_some((top.len(), bottom.len()));
    let satisfied = size_mismatch.is_none() && per_lambda.iter().all(|r| r.satisfied);
    Ok(CriterionReport { kind: CriterionKind::Interlacing, modulus, per_lambda, satisfied, size_mismatch })
}

/// Christol's criterion for `ₚF_{p−1}(a; b)` to be almost integral. The
/// bottom list gets `b_p = 1` appended internally.
pub fn christol_globally_bounded(
    a: &[Rational],
    b: &[Rational],
    exec: Execution,
) -> Result<CriterionReport, CriteriaError> {
    if a.len() != b.len() + 1 {
        return Err(CriteriaError::ArityMismatch { top: a.len(), bottom: b.len() });
    }
    if let Some(x) = a.iter().chain(b).find(|x| is_nonpositive_integer(x)) {
        return Err(CriteriaError::NonPositiveIntegerParameter(x.clone()));
    }
    let mut bottom = b.to_vec();
    bottom.push(Rational::from_integer(1.into()));
    let modulus = modulus_of(a.iter().chain(&bottom))?;
    let lambdas = units(modulus);
    let per_lambda = exec.map(&lambdas, |&lambda| {
        let l = Rational::from_integer(lambda.into());
        let la: Vec<Rational> = a.iter().map(|x| x * &l).collect();
        let lb: Vec<Rational> = bottom.iter().map(|x| x * &l).collect();
        let failure_witness = lb.iter().find_map(|bk| {
            let tops = la.iter().filter(|x| prec_le(x, bk)).count();
            let bottoms = lb.iter().filter(|x| prec_le(x, bk)).count();
            (tops < bottoms).then(|| format!("at λb = {bk}: {tops} top values ⪯ it against {bottoms} bottom values"))
        });
        LambdaReport {
            lambda,
            sorted_top: sorted_by_bracket(a, lambda),
            sorted_bottom: sorted_by_bracket(&bottom, lambda),
            satisfied: failure_witness.is_none(),
            failure_witness,
        }
    });
    let satisfied = per_lambda.iter().all(|r| r.satisfied);
    Ok(CriterionReport { kind: CriterionKind::Christol, modulus, per_lambda, satisfied, size_mismatch: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    const SEQ: Execution = Execution::Sequential;

    #[test]
    fn interlacing_examples() {
        assert!(interlaces(&[rat(1, 14), rat(3, 14), rat(11, 14)], &[rat(1, 7), rat(3, 7), int(1)]));
        assert!(interlaces(&[rat(1, 2), rat(5, 6)], &[rat(5, 3), int(2)]));
        assert!(!interlaces(&[rat(1, 2), rat(1, 2)], &[rat(1, 3), int(1)]));
        assert!(interlaces(&[], &[]));
        assert!(!interlaces(&[rat(1, 2)], &[]));
    }

    #[test]
    fn ic_examples() {
        let r = ic_check(&[rat(1, 14), rat(3, 14), rat(11, 14)], &[rat(1, 7), rat(3, 7), int(3)], SEQ).unwrap();
        assert!(r.satisfied);
        assert_eq!(r.modulus, 14);
        assert_eq!(r.lambdas(), vec![1, 3, 5, 9, 11, 13]);

        let r = ic_check(&[rat(1, 2)], &[int(1)], SEQ).unwrap();
        assert!(r.satisfied);
        assert_eq!(r.lambdas(), vec![1]);

        let r = ic_check(&[rat(1, 2)], &[rat(1, 3)], SEQ).unwrap();
        assert!(!r.satisfied);
        assert_eq!(r.first_failure().unwrap().lambda, 1);

        let r = ic_check(&[], &[], SEQ).unwrap();
        assert!(r.satisfied && r.modulus == 1 && r.lambdas() == vec![1]);

        let r = ic_check(&[rat(1, 2)], &[rat(1, 3), int(1)], SEQ).unwrap();
        assert!(!r.satisfied);
        assert_eq!(r.size_mismatch, Some((1, 2)));
    }

    #[test]
    fn christol_examples() {
        assert!(christol_globally_bounded(&[rat(1, 2), rat(1, 2)], &[int(1)], SEQ).unwrap().satisfied);
        let r = christol_globally_bounded(&[int(1), int(1)], &[rat(1, 2)], SEQ).unwrap();
        assert!(!r.satisfied);
        assert_eq!(r.first_failure().unwrap().lambda, 1);
        let r = christol_globally_bounded(&[rat(5, 6), rat(1, 2), int(1)], &[rat(5, 3), int(2)], SEQ).unwrap();
        assert!(r.satisfied);
        assert!(matches!(
            christol_globally_bounded(&[int(-1), int(1)], &[rat(1, 2)], SEQ),
            Err(CriteriaError::NonPositiveIntegerParameter(_))
        ));
        assert!(matches!(
            christol_globally_bounded(&[int(1)], &[rat(1, 2)], SEQ),
            Err(CriteriaError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn units_are_coprime_residues() {
        assert_eq!(units(1), vec![1]);
        assert_eq!(units(6), vec![1, 5]);
        assert_eq!(units(2310).len(), 480);
    }

    #[test]
    fn parallel_sweep_matches_sequential() {
        let top = [rat(1, 2), rat(1, 3), rat(1, 5), rat(1, 7), rat(1, 11), rat(3, 7)];
        let bottom = [rat(2, 3), rat(3, 5), rat(5, 11), rat(6, 7), rat(1, 10), int(1)];
        let a = ic_check(&top, &bottom, SEQ).unwrap();
        let b = ic_check(&top, &bottom, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.modulus, 2310);
    }
}
