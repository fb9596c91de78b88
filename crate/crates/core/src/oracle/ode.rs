//! Residual of the θ-operator `D(θ − 1) − scale · x · C(θ)` applied to a
//! truncated series, where `θ = x d/dx` acts by `θ xⁿ = n xⁿ`.
//!
//! The operator annihilates the series exactly when the coefficients obey
//! `D(n) u_{n+1} = scale · C(n) uₙ` and `D(−1) u₀ = 0`. An F-form pair has
//! `D(−1) = 0`; any other pair is first brought to F-form by multiplying
//! both `C` and `D` by `(t + 1)`, which multiplies the operator by `θ`.

use num_traits::Zero;

use crate::exact::{PolyQ, Rational};
use crate::params::{FactorPair, HypergeomSpec, ParamsError};

/// Coefficients of `L f_m` below `x^m`, for `f_m` the series of `spec`
/// truncated to `m` terms.
pub fn ode_residual(spec: &HypergeomSpec, m: usize) -> Result<Vec<Rational>, ParamsError> {
    let u = spec.coefficients(m)?;
    Ok(series_residual(&spec.pair, &spec.scale, &u))
}

/// Same as [`ode_residual`] for an arbitrary prefix `u`.
pub fn series_residual(pair: &FactorPair, scale: &Rational, u: &[Rational]) -> Vec<Rational> {
    let minus_one = Rational::from_integer((-1).into());
    let owned;
    let pair = if pair.d.eval(&minus_one).is_zero() {
        pair
    } else {
        let t1 = PolyQ::linear(Rational::from_integer(1.into()));
        owned = FactorPair::new(&pair.c * &t1, &pair.d * &t1);
        &owned
    };
    (0..u.len())
        .map(|n| {
            let theta = Rational::from_integer((n as i64 - 1).into());
            let mut r = pair.d.eval(&theta) * &u[n];
            if n > 0 {
                let prev = Rational::from_integer((n as i64 - 1).into());
                r -= scale * pair.c.eval(&prev) * &u[n - 1];
            }
            r
        })
        .collect()
}

/// Whether every entry of a residual vanishes.
pub fn is_zero_residual(r: &[Rational]) -> bool {
    r.iter().all(Zero::is_zero)
}
