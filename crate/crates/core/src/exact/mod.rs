//! Exact arithmetic substrate: arbitrary-precision rationals, the bracket
//! `⟨x⟩`, the `⪯` order, and univariate polynomials over ℚ.

mod poly;
mod roots;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use poly::PolyQ;
pub use roots::{
    cauchy_bound, count_real_roots, rational_roots, rational_roots_with_cofactor, shift_search_bound, SturmChain,
};

/// Exact rational number. `num_rational` keeps it in lowest terms with a
/// positive denominator, so equality is structural.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `x ∈ ℕ` with the convention `0 ∈ ℕ`.
pub fn is_natural(x: &Rational) -> bool {
    x.is_integer() && !x.is_negative()
}

/// `x ∈ −ℕ`, i.e. `x` is an integer `≤ 0`.
pub fn is_nonpositive_integer(x: &Rational) -> bool {
    x.is_integer() && !x.is_positive()
}

/// A value of `⟨x⟩`, always in the half-open interval `(0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BracketValue(Rational);

impl BracketValue {
    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_inner(self) -> Rational {
        self.0
    }
}

impl std::fmt::Display for BracketValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// `⟨x⟩`: 1 on integers, the fractional part `x − ⌊x⌋` otherwise.
pub fn bracket(x: &Rational) -> BracketValue {
    let frac = x - x.floor();
    if frac.is_zero() {
        BracketValue(Rational::one())
    } else {
        BracketValue(frac)
    }
}

/// Position of `a` relative to `b` in the total order `⪯`.
///
/// `Less` means `a` strictly precedes `b`: either `⟨a⟩ < ⟨b⟩`, or the brackets
/// agree and `a > b` (of two numbers on the same point of the circle the
/// larger real number comes first).
pub fn prec_compare(a: &Rational, b: &Rational) -> Ordering {
    bracket(a).cmp(&bracket(b)).then_with(|| b.cmp(a))
}

/// `a ⪯ b` (reflexive).
pub fn prec_le(a: &Rational, b: &Rational) -> bool {
    prec_compare(a, b) != Ordering::Greater
}

/// Least common multiple of the denominators; 1 for an empty or all-integer list.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Primes dividing `n` (trial division; intended for moderate sizes).
pub fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = BigInt::from(2u32);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            out.push(p.clone());
            while (&n % &p).is_zero() {
                n /= &p;
            }
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// All positive divisors of `n`, ascending. `n` must be nonzero.
pub(crate) fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    let mut m = n.abs();
    for p in prime_factors(n) {
        let mut e = 0usize;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        let base = divs.clone();
        let mut pk = BigInt::one();
        for _ in 0..e {
            pk *= &p;
            divs.extend(base.iter().map(|d| d * &pk));
        }
    }
    divs.sort();
    divs
}
