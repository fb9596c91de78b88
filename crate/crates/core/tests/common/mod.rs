//! Worked examples shared by the integration tests.
#![allow(dead_code)]

use hypalg_core::exact::{int, rat};
use hypalg_core::params::{assemble, from_recurrence, Form, HypergeomSpec, Parameter, RealAlgebraic};
use hypalg_core::{PolyQ, Rational, Verdict};

pub struct Golden {
    pub name: &'static str,
    pub spec: HypergeomSpec,
    pub expected: Verdict,
}

pub fn q(v: &[Rational]) -> Vec<Parameter> {
    v.iter().cloned().map(Parameter::from).collect()
}

pub fn f(top: &[Rational], bottom: &[Rational], scale: Rational) -> HypergeomSpec {
    assemble(&q(top), &q(bottom), Form::F, scale, int(1)).unwrap()
}

pub fn script_f(top: &[Rational], bottom: &[Rational], scale: Rational) -> HypergeomSpec {
    assemble(&q(top), &q(bottom), Form::ScriptF, scale, int(1)).unwrap()
}

fn sqrt2(k: i64, r: i64) -> Parameter {
    Parameter::RealAlgebraic(RealAlgebraic::sqrt(2).unwrap().affine(&int(k), &int(r)))
}

/// Product of `aᵢ·t + bᵢ` over `(aᵢ, bᵢ)`.
pub fn linear_product(factors: &[(i64, i64)]) -> PolyQ {
    factors.iter().map(|&(a, b)| PolyQ::from_ints(&[b, a])).product()
}

pub fn intro() -> HypergeomSpec {
    let top = vec![rat(1, 2).into(), sqrt2(1, 1), sqrt2(-1, 1)];
    let bottom = vec![sqrt2(1, 0), sqrt2(-1, 0)];
    assemble(&top, &bottom, Form::F, int(4), int(1)).unwrap()
}

pub fn crazy() -> HypergeomSpec {
    let a = &linear_product(&[(14, 1), (14, 3), (14, 11)]) * &PolyQ::from_ints(&[4, 2, 1]);
    let b = &linear_product(&[(7, 1), (7, 3), (1, 3)]).scale(&int(56)) * &PolyQ::from_ints(&[3, 0, 1]);
    from_recurrence(&a, &b, int(1)).unwrap()
}

/// `p_n(2) = 112n³ + 108n² − 10n − 9`.
pub fn p_r2() -> PolyQ {
    PolyQ::from_ints(&[-9, -10, 108, 112])
}

pub fn f_r2() -> HypergeomSpec {
    let p = p_r2();
    let a = &linear_product(&[(2, -1), (2, 1)]) * &p.shift_int(1);
    let b = &linear_product(&[(1, 2), (1, 1)]).scale(&int(4)) * &p;
    from_recurrence(&a, &b, int(1)).unwrap()
}

/// `f_R` with the parameters `−1/2` and `2` swapped.
pub fn g_r2() -> HypergeomSpec {
    let p = p_r2();
    let a = &linear_product(&[(1, 2), (2, 1)]) * &p.shift_int(1);
    let b = &linear_product(&[(2, -1), (1, 1)]) * &p;
    from_recurrence(&a, &b, int(1)).unwrap()
}

pub fn binomial_u() -> HypergeomSpec {
    f(
        &[rat(1, 4), rat(1, 2), rat(3, 4), int(3), int(3), int(1)],
        &[rat(1, 3), rat(2, 3), int(4), int(2), int(2)],
        rat(256, 27),
    )
}

pub fn binomial_v() -> HypergeomSpec {
    f(
        &[rat(1, 4), rat(1, 2), rat(3, 4), int(3), int(1), int(1)],
        &[rat(1, 3), rat(2, 3), int(2), int(2), int(2)],
        rat(256, 27),
    )
}

pub fn gessel() -> HypergeomSpec {
    f(&[rat(5, 6), rat(1, 2), int(1)], &[rat(5, 3), int(2)], int(16))
}

pub fn golden_suite() -> Vec<Golden> {
    use Verdict::{Algebraic, Transcendental};
    let g = |name, spec, expected| Golden { name, spec, expected };
    vec![
        g("intro 3F2 with sqrt(2) parameters", intro(), Algebraic),
        g("2F1([1,1],[2])", f(&[int(1), int(1)], &[int(2)], int(1)), Transcendental),
        g("2F1([2,2],[1])", f(&[int(2), int(2)], &[int(1)], int(1)), Algebraic),
        g("2F1([1/2,1/2],[1])", f(&[rat(1, 2), rat(1, 2)], &[int(1)], int(1)), Transcendental),
        g(
            "3F2([1/14,3/14,11/14],[1/7,3/7])",
            f(&[rat(1, 14), rat(3, 14), rat(11, 14)], &[rat(1, 7), rat(3, 7)], int(1)),
            Algebraic,
        ),
        g("crazy 6F5", crazy(), Algebraic),
        g("f_R, R = 2", f_r2(), Transcendental),
        g("g_R, R = 2", g_r2(), Algebraic),
        g("binomial u_n 6F5", binomial_u(), Algebraic),
        g("binomial v_n 6F5", binomial_v(), Transcendental),
        g("Gessel 3F2", gessel(), Algebraic),
        g("2F1([-1/2,-1/6],[2/3])", f(&[rat(-1, 2), rat(-1, 6)], &[rat(2, 3)], int(1)), Algebraic),
    ]
}

/// Coefficients of `(1 − 4x)^(−5/2)`, by the generalized binomial theorem.
fn power_series_of_binomial(m: usize) -> Vec<Rational> {
    let mut out = vec![int(1)];
    for n in 0..m - 1 {
        let n = n as i64;
        let next = &out[n as usize] * rat(4 * (2 * n + 5), 2 * (n + 1));
        out.push(next);
    }
    out
}

/// `(7x − 1)(2x − 1) / (1 − 4x)^(5/2)`.
pub fn intro_closed_form(m: usize) -> Vec<Rational> {
    let s = power_series_of_binomial(m);
    let num = [int(1), int(-9), int(14)];
    (0..m).map(|n| (0..3).filter(|&k| k <= n).map(|k| &num[k] * &s[n - k]).sum()).collect()
}

pub mod properties;
