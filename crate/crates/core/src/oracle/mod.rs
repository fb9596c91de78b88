//! Independent checks of a classification: raw coefficients, their
//! denominator primes, an algebraic-relation guesser, and the residual of the
//! hypergeometric differential equation.

mod guess;
mod ode;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::{common_denominator, Rational};
use crate::params::{HypergeomSpec, ParamsError};

pub use guess::{guess_annihilator, Annihilator, BivariatePolyQ, GuessError, GuessOutcome, MIN_GUARD};
pub use ode::{is_zero_residual, ode_residual, series_residual};

/// `u₀ … u_{m−1}` of the series.
pub fn series(spec: &HypergeomSpec, m: usize) -> Result<Vec<Rational>, ParamsError> {
    spec.coefficients(m)
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Primes dividing some denominator of `coeffs`.
///
/// Trial division runs up to 10⁶. A leftover cofactor below 10¹² is prime;
/// a larger one is reported as is and may be composite.
pub fn denominator_primes(coeffs: &[Rational]) -> BTreeSet<BigInt> {
    let mut n = common_denominator(coeffs);
    let mut out = BTreeSet::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT && BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        if n.is_multiple_of(&bp) {
            while n.is_multiple_of(&bp) {
                n /= &bp;
            }
            out.insert(bp);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.insert(n);
    }
    out
}

/// Whether every coefficient is an integer.
pub fn is_integral(coeffs: &[Rational]) -> bool {
    coeffs.iter().all(|c| c.is_integer() || c.is_zero())
}
