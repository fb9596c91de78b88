//! Parameter model and canonicalization of a hypergeometric series into a
//! pair of monic rational polynomials.
//!
//! A series `Σ uₙ xⁿ` with `u_{n+1} / uₙ = scale · C(n) / D(n)` is described
//! by [`FactorPair`] `(C, D)` where `C = ∏(t + cⱼ)` and `D = ∏(t + d_k)` over
//! the script-F parameters. The F-form contributes the extra factor `(t + 1)`
//! to `D` for the `n!`. Irrational parameters never appear individually in
//! the pair; they enter only through complete sets of conjugates, which keeps
//! every coefficient rational.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{is_natural, rational_roots, rational_roots_with_cofactor, PolyQ, Rational, SturmChain};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("coefficients would be irrational: {0}")]
    ConjugateClosureViolation(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("series is ill-defined: denominator vanishes at n = {at}")]
    IllDefined { at: u64 },
    #[error("argument scale must be nonzero")]
    ZeroScale,
    #[error("recurrence polynomials must be nonzero")]
    ZeroRecurrence,
}

/// A real algebraic number given by a squarefree polynomial and an open
/// interval containing exactly one of its roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealAlgebraic {
    minpoly: PolyQ,
    lo: Rational,
    hi: Rational,
}

impl RealAlgebraic {
    pub fn new(poly: &PolyQ, lo: Rational, hi: Rational) -> Result<Self, ParamsError> {
        if poly.is_constant() {
            return Err(ParamsError::InvalidParameter(format!("root of constant polynomial {poly}")));
        }
        if lo >= hi {
            return Err(ParamsError::InvalidParameter(format!("empty isolating interval ({lo}, {hi})")));
        }
        let minpoly = poly.squarefree();
        if minpoly.eval(&lo).is_zero() || minpoly.eval(&hi).is_zero() {
            return Err(ParamsError::InvalidParameter(format!(
                "isolating interval ({lo}, {hi}) has a root of {minpoly} at an endpoint"
            )));
        }
        let count = SturmChain::new(&minpoly).count_in(&lo, &hi);
        if count != 1 {
            return Err(ParamsError::InvalidParameter(format!(
                "interval ({lo}, {hi}) contains {count} roots of {minpoly}, expected exactly one"
            )));
        }
        Ok(RealAlgebraic { minpoly, lo, hi })
    }

    /// `√n` for a positive non-square integer `n`.
    pub fn sqrt(n: u64) -> Result<Self, ParamsError> {
        let r = num_integer::Roots::sqrt(&n);
        if n == 0 || r * r == n {
            return Err(ParamsError::InvalidParameter(format!(
                "sqrt({n}) is rational; write it as a rational literal"
            )));
        }
        let n = Rational::from_integer(n.into());
        Self::new(
            &PolyQ::new(vec![-n, Rational::zero(), Rational::one()]),
            Rational::from_integer(r.into()),
            Rational::from_integer((r + 1).into()),
        )
    }

    pub fn minpoly(&self) -> &PolyQ {
        &self.minpoly
    }

    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    /// `k·α + r` for nonzero `k`.
    pub fn affine(&self, k: &Rational, r: &Rational) -> Self {
        assert!(!k.is_zero(), "affine map with zero multiplier");
        // roots of P((t - r)/k) are k·ρ + r
        let poly = self.minpoly.dilate(&k.recip()).shift(&-r).monic();
        let (a, b) = (k * &self.lo + r, k * &self.hi + r);
        let (lo, hi) = if k.is_positive() { (a, b) } else { (b, a) };
        RealAlgebraic { minpoly: poly, lo, hi }
    }

    /// Either the rational value of this number, or the rational-root-free
    /// part of its polynomial together with the index of the root among that
    /// part's real roots (ascending).
    fn normalize(&self) -> Result<Rational, (PolyQ, usize)> {
        let (roots, cofactor) = rational_roots_with_cofactor(&self.minpoly);
        if let Some(r) = roots.into_iter().find(|r| *r > self.lo && *r < self.hi) {
            return Ok(r);
        }
        let index = SturmChain::new(&cofactor).count_at_most(&self.lo);
        Err((cofactor, index))
    }
}

/// Every root of `poly`, with the root multiplicities of `poly` itself,
/// repeated `multiplicity` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBlock {
    poly: PolyQ,
    multiplicity: usize,
}

impl RootBlock {
    pub fn new(poly: &PolyQ, multiplicity: usize) -> Result<Self, ParamsError> {
        if poly.is_constant() {
            return Err(ParamsError::InvalidParameter(format!("root block of constant polynomial {poly}")));
        }
        if multiplicity == 0 {
            return Err(ParamsError::InvalidParameter("root block multiplicity must be positive".into()));
        }
        Ok(RootBlock { poly: poly.monic(), multiplicity })
    }

    pub fn poly(&self) -> &PolyQ {
        &self.poly
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    /// The block `{k·ρ + r}` for nonzero `k`.
    pub fn affine(&self, k: &Rational, r: &Rational) -> Self {
        assert!(!k.is_zero(), "affine map with zero multiplier");
        RootBlock { poly: self.poly.dilate(&k.recip()).shift(&-r).monic(), multiplicity: self.multiplicity }
    }

    /// `∏(t + ρ)` over the block.
    pub fn factor(&self) -> PolyQ {
        self.poly.reflect().monic().pow(self.multiplicity)
    }
}

/// A top or bottom parameter as supplied by the user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parameter {
    Rational(Rational),
    RealAlgebraic(RealAlgebraic),
    RootBlock(RootBlock),
}

impl Parameter {
    /// Number of parameters this entry stands for.
    pub fn arity(&self) -> usize {
        match self {
            Parameter::Rational(_) | Parameter::RealAlgebraic(_) => 1,
            Parameter::RootBlock(b) => b.poly.deg() * b.multiplicity,
        }
    }

    /// The parameter shifted by `r`.
    pub fn shifted(&self, r: &Rational) -> Self {
        let one = Rational::one();
        match self {
            Parameter::Rational(a) => Parameter::Rational(a + r),
            Parameter::RealAlgebraic(a) => Parameter::RealAlgebraic(a.affine(&one, r)),
            Parameter::RootBlock(b) => Parameter::RootBlock(b.affine(&one, r)),
        }
    }
}

impl From<Rational> for Parameter {
    fn from(r: Rational) -> Self {
        Parameter::Rational(r)
    }
}

/// Presentation of a parameter list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    /// `ₚF_q`: the `n!` is implicit.
    F,
    /// `𝓕`: no `n!` factor.
    ScriptF,
}

/// The input a [`HypergeomSpec`] was built from, kept for reporting and replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Parameters { form: Form, top: Vec<Parameter>, bottom: Vec<Parameter>, scale: Rational, u0: Rational },
    Recurrence { a: PolyQ, b: PolyQ, u0: Rational },
}

/// Monic `(C, D)` with coefficient ratio `u_{n+1}/uₙ = scale · C(n)/D(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorPair {
    pub c: PolyQ,
    pub d: PolyQ,
}

impl FactorPair {
    pub fn new(c: PolyQ, d: PolyQ) -> Self {
        debug_assert!(c.is_monic() && d.is_monic());
        FactorPair { c, d }
    }

    /// Pair for rational script-F parameter lists.
    pub fn from_rationals(top: &[Rational], bottom: &[Rational]) -> Self {
        let f = |xs: &[Rational]| xs.iter().map(|a| PolyQ::linear(a.clone())).product();
        FactorPair { c: f(top), d: f(bottom) }
    }

    /// Divides out `gcd(C, D)`.
    pub fn cancel_common(&self) -> Self {
        let g = self.c.gcd(&self.d);
        if g.is_constant() {
            return self.clone();
        }
        FactorPair { c: self.c.exact_div(&g).expect("gcd divides"), d: self.d.exact_div(&g).expect("gcd divides") }
    }

    /// Negated roots of `C` and `D` when both split over ℚ.
    pub fn rational_parameters(&self) -> Option<(Vec<Rational>, Vec<Rational>)> {
        let params = |p: &PolyQ| {
            let roots = rational_roots(p);
            (roots.len() == p.deg()).then(|| {
                let mut v: Vec<Rational> = roots.into_iter().map(|r| -r).collect();
                v.sort();
                v
            })
        };
        Some((params(&self.c)?, params(&self.d)?))
    }
}

/// A hypergeometric series in canonical polynomial form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeomSpec {
    pub pair: FactorPair,
    pub scale: Rational,
    pub leading: Rational,
    pub origin: Origin,
}

impl HypergeomSpec {
    /// Coefficients `u₀ … u_{m−1}` by the first-order recurrence of the
    /// cancelled pair. Stops with `IllDefined` if a denominator vanishes
    /// while the series is still live.
    pub fn coefficients(&self, m: usize) -> Result<Vec<Rational>, ParamsError> {
        let pair = self.pair.cancel_common();
        let mut out = Vec::with_capacity(m);
        let mut u = self.leading.clone();
        for n in 0..m {
            out.push(u.clone());
            if n + 1 == m {
                break;
            }
            if u.is_zero() {
                continue;
            }
            let x = Rational::from_integer(n.into());
            let den = pair.d.eval(&x);
            if den.is_zero() {
                return Err(ParamsError::IllDefined { at: n as u64 });
            }
            u = u * &self.scale * pair.c.eval(&x) / den;
        }
        Ok(out)
    }

    pub fn canonical(&self) -> Self {
        cancel_common(self)
    }
}

/// Builds the canonical form of an explicit parameter presentation.
pub fn assemble(
    top: &[Parameter],
    bottom: &[Parameter],
    form: Form,
    scale: Rational,
    u0: Rational,
) -> Result<HypergeomSpec, ParamsError> {
    if scale.is_zero() {
        return Err(ParamsError::ZeroScale);
    }
    let c = parameter_product(top)?;
    let mut d = parameter_product(bottom)?;
    if form == Form::F {
        d = &d * &PolyQ::linear(Rational::one());
    }
    let spec = HypergeomSpec {
        pair: FactorPair::new(c, d),
        scale: scale.clone(),
        leading: u0.clone(),
        origin: Origin::Parameters { form, top: top.to_vec(), bottom: bottom.to_vec(), scale, u0 },
    };
    check_defined(&spec)?;
    Ok(spec)
}

/// The series of `B(n) u_{n+1} = A(n) uₙ` with the given `u₀`.
pub fn from_recurrence(a: &PolyQ, b: &PolyQ, u0: Rational) -> Result<HypergeomSpec, ParamsError> {
    if a.is_zero() || b.is_zero() {
        return Err(ParamsError::ZeroRecurrence);
    }
    let spec = HypergeomSpec {
        pair: FactorPair::new(a.monic(), b.monic()),
        scale: a.leading() / b.leading(),
        leading: u0.clone(),
        origin: Origin::Recurrence { a: a.clone(), b: b.clone(), u0 },
    };
    check_defined(&spec)?;
    Ok(spec)
}

/// Removes the common factors of `C` and `D`; the series is unchanged.
pub fn cancel_common(spec: &HypergeomSpec) -> HypergeomSpec {
    HypergeomSpec { pair: spec.pair.cancel_common(), ..spec.clone() }
}

fn natural_roots(p: &PolyQ) -> Vec<u64> {
    if p.is_constant() {
        return Vec::new();
    }
    let mut v: Vec<u64> = rational_roots(p)
        .into_iter()
        .filter(is_natural)
        .map(|r| u64::try_from(r.to_integer()).expect("natural root fits u64"))
        .collect();
    v.dedup();
    v
}

/// Smallest `m` with `uₙ = 0` for all `n ≥ m`, if the series terminates.
/// A zero leading value gives `Some(0)`.
pub fn truncation_degree(spec: &HypergeomSpec) -> Option<u64> {
    if spec.leading.is_zero() {
        return Some(0);
    }
    let pair = spec.pair.cancel_common();
    natural_roots(&pair.c).first().map(|r| r + 1)
}

/// Natural roots of the canonical `D` that are shielded by an earlier
/// truncation. Nonempty means the input relied on the tolerated extension.
pub fn shielded_denominator_zeros(spec: &HypergeomSpec) -> Vec<u64> {
    let pair = spec.pair.cancel_common();
    natural_roots(&pair.d)
}

pub fn check_defined(spec: &HypergeomSpec) -> Result<(), ParamsError> {
    if spec.leading.is_zero() {
        return Ok(());
    }
    let pair = spec.pair.cancel_common();
    let cut = natural_roots(&pair.c).first().copied();
    match natural_roots(&pair.d).first() {
        Some(&m) if cut.is_none_or(|r| m < r) => Err(ParamsError::IllDefined { at: m }),
        _ => Ok(()),
    }
}

/// `∏(t + a)` over a parameter list, validating conjugate closure of the
/// real algebraic singletons.
fn parameter_product(params: &[Parameter]) -> Result<PolyQ, ParamsError> {
    let mut product = PolyQ::one();
    // rational-root-free polynomial -> per-root occurrence counts
    let mut groups: BTreeMap<Vec<Rational>, (PolyQ, Vec<usize>)> = BTreeMap::new();
    for p in params {
        match p {
            Parameter::Rational(a) => product = &product * &PolyQ::linear(a.clone()),
            Parameter::RootBlock(b) => product = &product * &b.factor(),
            Parameter::RealAlgebraic(alpha) => match alpha.normalize() {
                Ok(r) => product = &product * &PolyQ::linear(r),
                Err((poly, index)) => {
                    let entry =
                        groups.entry(poly.coeffs().to_vec()).or_insert_with(|| (poly.clone(), vec![0; poly.deg()]));
                    entry.1[index] += 1;
                }
            },
        }
    }
    for (poly, counts) in groups.into_values() {
        let real = SturmChain::new(&poly).count_all();
        if real != poly.deg() {
            return Err(ParamsError::ConjugateClosureViolation(format!(
                "{poly} has {} non-real roots; list them with allroots(...)",
                poly.deg() - real
            )));
        }
        let m = counts[0];
        if counts.iter().any(|&c| c != m) {
            return Err(ParamsError::ConjugateClosureViolation(format!(
                "roots of {poly} occur with multiplicities {counts:?}; every conjugate must appear equally often"
            )));
        }
        product = &product * &poly.reflect().monic().pow(m);
    }
    Ok(product)
}
