//! Randomized property checks. Each returns the number of cases checked or
//! a description of the first counterexample.

use hypalg_core::classify::{classify, derivative_spec, gaussian_degenerate_verdict};
use hypalg_core::criteria::{christol_globally_bounded, ic_check};
use hypalg_core::exact::{int, is_natural, is_nonpositive_integer, Rational};
use hypalg_core::oracle::{is_zero_residual, ode_residual, series_residual};
use hypalg_core::params::{assemble, FactorPair, Form, HypergeomSpec};
use hypalg_core::transform::{contract, is_reduced};
use hypalg_core::Execution;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::q;

const SEQ: Execution = Execution::Sequential;

pub type Outcome = Result<usize, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rational with denominator at most `max_den` and absolute value below `span`.
fn random_rational(r: &mut ChaCha8Rng, max_den: i64, span: i64) -> Rational {
    let den = r.gen_range(1..=max_den);
    Rational::new(r.gen_range(-span * den..=span * den).into(), den.into())
}

fn random_list(r: &mut ChaCha8Rng, len: usize, max_den: i64, span: i64) -> Vec<Rational> {
    (0..len).map(|_| random_rational(r, max_den, span)).collect()
}

/// Contraction by explicit pair removal on multisets: at each step take the
/// smallest difference `c − d ∈ ℕ` and remove a random pair attaining it.
fn contract_by_pairs(r: &mut ChaCha8Rng, mut top: Vec<Rational>, mut bottom: Vec<Rational>) -> FactorPair {
    loop {
        let mut best: Option<Rational> = None;
        let mut pairs = Vec::new();
        for (i, c) in top.iter().enumerate() {
            for (j, d) in bottom.iter().enumerate() {
                let diff = c - d;
                if !is_natural(&diff) {
                    continue;
                }
                match &best {
                    Some(b) if diff > *b => {}
                    Some(b) if diff == *b => pairs.push((i, j)),
                    _ => {
                        best = Some(diff);
                        pairs = vec![(i, j)];
                    }
                }
            }
        }
        let Some(&(i, j)) = pairs.choose(r) else {
            return FactorPair::from_rationals(&top, &bottom);
        };
        top.swap_remove(i);
        bottom.swap_remove(j);
    }
}

pub fn contraction_laws(cases: usize) -> Outcome {
    let mut r = rng(1);
    for case in 0..cases {
        let (p, q_len) = (r.gen_range(0..=6), r.gen_range(0..=6));
        let top = random_list(&mut r, p, 4, 4);
        let bottom = random_list(&mut r, q_len, 4, 4);
        let pair = FactorPair::from_rationals(&top, &bottom);
        let (c, _) = contract(&pair);
        let (again, steps) = contract(&c);
        if again != c || !steps.is_empty() {
            return Err(format!("case {case}: contraction not idempotent on {top:?} / {bottom:?}"));
        }
        for _ in 0..3 {
            let by_pairs = contract_by_pairs(&mut r, top.clone(), bottom.clone());
            if by_pairs != c {
                return Err(format!("case {case}: pairwise removal disagrees on {top:?} / {bottom:?}"));
            }
        }
    }
    Ok(cases)
}

/// A well-defined F-form spec with rational parameters, `p = q + 1` most of the time.
fn random_spec(r: &mut ChaCha8Rng, max_den: i64) -> HypergeomSpec {
    loop {
        let q_len = r.gen_range(0..=3);
        let p = if r.gen_bool(0.85) { q_len + 1 } else { r.gen_range(0..=4) };
        let mut top = random_list(r, p, max_den, 3);
        let bottom = random_list(r, q_len, max_den, 3);
        // bias toward integer differences so contraction does real work
        if !top.is_empty() && !bottom.is_empty() && r.gen_bool(0.5) {
            let k = r.gen_range(0..=3);
            top[0] = &bottom[0] + int(k);
        }
        let scale = random_rational(r, 5, 3);
        if scale == int(0) {
            continue;
        }
        if let Ok(spec) = assemble(&q(&top), &q(&bottom), Form::F, scale, int(1)) {
            return spec;
        }
    }
}

pub fn derivative_invariance(cases: usize) -> Outcome {
    let mut r = rng(2);
    for case in 0..cases {
        let spec = random_spec(&mut r, 6);
        let v = classify(&spec, SEQ).map_err(|e| e.to_string())?.verdict;
        let d = derivative_spec(&spec).map_err(|e| format!("case {case}: {e}"))?;
        let w = classify(&d, SEQ).map_err(|e| e.to_string())?.verdict;
        if v.is_algebraic() != w.is_algebraic() {
            return Err(format!("case {case}: {v} but derivative {w} for {:?}", spec.origin));
        }
    }
    Ok(cases)
}

pub fn scale_invariance(cases: usize) -> Outcome {
    let mut r = rng(3);
    for case in 0..cases {
        let spec = random_spec(&mut r, 6);
        let v = classify(&spec, SEQ).map_err(|e| e.to_string())?.verdict;
        let mut s = random_rational(&mut r, 7, 5);
        if s == int(0) {
            s = int(-2);
        }
        let rescaled = HypergeomSpec { scale: &spec.scale * &s, ..spec.clone() };
        let w = classify(&rescaled, SEQ).map_err(|e| e.to_string())?.verdict;
        if v != w {
            return Err(format!("case {case}: {v} vs {w} after scaling by {s}"));
        }
    }
    Ok(cases)
}

pub fn gaussian_cross_check(cases: usize) -> Outcome {
    let mut r = rng(4);
    let mut checked = 0;
    let mut seen = std::collections::BTreeSet::new();
    while checked < cases {
        let k = int(r.gen_range(-5..=5));
        let mut a = random_rational(&mut r, 6, 4);
        let mut b = random_rational(&mut r, 6, 4);
        let mut c = random_rational(&mut r, 6, 4);
        match r.gen_range(0..4) {
            0 => c = &a + &k,
            1 => c = &b + &k,
            2 => a = k,
            _ => b = k,
        }
        let Ok(spec) = assemble(&q(&[a.clone(), b.clone()]), &q(&[c.clone()]), Form::F, int(1), int(1)) else {
            continue;
        };
        let got = classify(&spec, SEQ).map_err(|e| e.to_string())?.verdict;
        let Some(case) = gaussian_degenerate_verdict(&a, &b, &c) else {
            return Err(format!("no Gaussian case for ({a}, {b}, {c})"));
        };
        if got.is_algebraic() != case.verdict.is_algebraic() {
            return Err(format!(
                "2F1([{a}, {b}], [{c}]): classifier {got}, list {} case {} says {}",
                case.list, case.case, case.verdict
            ));
        }
        seen.insert((case.list, case.case));
        checked += 1;
    }
    // the suite is only meaningful if it reaches many distinct cases
    if seen.len() < 8 {
        return Err(format!("only cases {seen:?} were exercised"));
    }
    Ok(checked)
}

/// Christol parameters of a script-F pair: `1` moves between the lists.
fn christol_lists(top: &[Rational], bottom: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let one = int(1);
    match bottom.iter().position(|d| *d == one) {
        Some(i) => {
            let mut b = bottom.to_vec();
            b.remove(i);
            (top.to_vec(), b)
        }
        None => {
            let mut a = top.to_vec();
            a.push(one);
            (a, bottom.to_vec())
        }
    }
}

pub fn ic_implies_christol(cases: usize) -> Outcome {
    let mut r = rng(5);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < cases {
        attempts += 1;
        if attempts > 200 * cases {
            return Err(format!("only {checked} interlacing cases found"));
        }
        let len = r.gen_range(1..=3);
        let top = random_list(&mut r, len, 9, 2);
        let bottom = random_list(&mut r, len, 9, 2);
        if top.iter().chain(&bottom).any(is_nonpositive_integer) {
            continue;
        }
        let pair = FactorPair::from_rationals(&top, &bottom);
        if !is_reduced(&pair) {
            continue;
        }
        if !ic_check(&top, &bottom, SEQ).map_err(|e| e.to_string())?.satisfied {
            continue;
        }
        let (a, b) = christol_lists(&top, &bottom);
        let report = christol_globally_bounded(&a, &b, SEQ).map_err(|e| e.to_string())?;
        if !report.satisfied {
            return Err(format!("IC holds but Christol fails for {top:?} / {bottom:?}"));
        }
        checked += 1;
    }
    Ok(checked)
}

/// The θ-operator annihilates `terms` coefficients of random series, and a
/// single perturbed coefficient is always detected.
pub fn ode_residuals(cases: usize, terms: usize) -> Outcome {
    let mut r = rng(6);
    for case in 0..cases {
        let spec = random_spec(&mut r, 6);
        let res = ode_residual(&spec, terms).map_err(|e| e.to_string())?;
        if !is_zero_residual(&res) {
            return Err(format!("case {case}: nonzero residual for {:?}", spec.origin));
        }
        let mut u = spec.coefficients(terms).map_err(|e| e.to_string())?;
        let at = r.gen_range(1..terms - 1);
        u[at] += Rational::new(1.into(), 7.into());
        if is_zero_residual(&series_residual(&spec.pair, &spec.scale, &u)) {
            return Err(format!("case {case}: perturbation at {at} went unnoticed"));
        }
    }
    Ok(cases)
}
