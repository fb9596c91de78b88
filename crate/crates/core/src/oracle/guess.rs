//! Guessing a polynomial `P(x, y)` with `P(x, f(x)) ≡ 0 mod x^N` from the
//! first `N` coefficients of `f`.
//!
//! Bidegrees are tried with `deg_y` ascending, then `deg_x` ascending. Each
//! linear system is first ranked modulo a large prime: full rank there proves
//! the rational system has only the zero solution, so exact elimination runs
//! only on the first bidegree that survives. There the kernel is computed
//! modulo several primes and lifted to ℚ, and the lift is checked exactly
//! against every available coefficient.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::Rational;
use crate::modp::{large_primes, Field, PRIMES};

/// Smallest accepted number of equations beyond the number of unknowns.
pub const MIN_GUARD: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GuessError {
    #[error("need at least {needed} terms, got {have}")]
    InsufficientTerms { needed: usize, have: usize },
    #[error("guard {0} is below the minimum of {MIN_GUARD}")]
    GuardTooSmall(usize),
    #[error("no usable prime for the coefficient denominators")]
    NoPrime,
}

/// `Σ c_{ij} xⁱ yʲ` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePolyQ {
    /// `coeffs[j][i]` is the coefficient of `xⁱ yʲ`.
    coeffs: Vec<Vec<Rational>>,
}

impl BivariatePolyQ {
    pub fn new(coeffs: Vec<Vec<Rational>>) -> Self {
        BivariatePolyQ { coeffs }
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.coeffs.get(j).and_then(|r| r.get(i)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(Zero::is_zero)
    }

    pub fn deg_y(&self) -> usize {
        self.coeffs.iter().rposition(|r| r.iter().any(|c| !c.is_zero())).unwrap_or(0)
    }

    pub fn deg_x(&self) -> usize {
        self.coeffs.iter().filter_map(|r| r.iter().rposition(|c| !c.is_zero())).max().unwrap_or(0)
    }

    /// `P(x, f(x))` truncated below `x^n`.
    pub fn substitute(&self, f: &[Rational], n: usize) -> Vec<Rational> {
        substitute_with(self, &series_powers(f, self.coeffs.len().saturating_sub(1), n), n)
    }

    /// Scaled to coprime integer coefficients with a positive leading
    /// coefficient in `y`.
    fn normalized(mut self) -> Self {
        let all = self.coeffs.iter().flatten();
        let den = all.clone().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = all.fold(BigInt::zero(), |acc, c| acc.gcd(&(c * Rational::from_integer(den.clone())).to_integer()));
        if num.is_zero() {
            return self;
        }
        let mut k = Rational::new(den, num);
        let lead = self.coeffs[self.deg_y()].iter().rev().find(|c| !c.is_zero()).cloned();
        if lead.is_some_and(|c| c.is_negative()) {
            k = -k;
        }
        for c in self.coeffs.iter_mut().flatten() {
            *c *= &k;
        }
        self
    }
}

impl fmt::Display for BivariatePolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (j, row) in self.coeffs.iter().enumerate().rev() {
            for (i, c) in row.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
                let mono = match (i, j) {
                    (0, 0) => String::new(),
                    (0, _) => pow("y", j),
                    (_, 0) => pow("x", i),
                    _ => format!("{}*{}", pow("x", i), pow("y", j)),
                };
                terms.push(match (mono.is_empty(), c.is_one()) {
                    (true, _) => c.to_string(),
                    (false, true) => mono,
                    (false, false) if *c == -Rational::one() => format!("-{mono}"),
                    (false, false) => format!("{c}*{mono}"),
                });
            }
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms.join(" + ").replace("+ -", "- "))
    }
}

fn substitute_with(p: &BivariatePolyQ, powers: &[Vec<Rational>], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (j, row) in p.coeffs.iter().enumerate() {
        for (i, c) in row.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for k in i..n {
                out[k] += c * &powers[j][k - i];
            }
        }
    }
    out
}

fn pow(v: &str, e: usize) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Annihilator {
    pub poly: BivariatePolyQ,
    /// Bidegree bound at which it was found.
    pub dx: usize,
    pub dy: usize,
    /// Number of coefficients `P(x, f)` is verified to vanish on.
    pub verified_terms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GuessOutcome {
    Found(Annihilator),
    /// No relation of bidegree at most `(dx, dy)` fits the data.
    NoneUpTo {
        dx: usize,
        dy: usize,
    },
}

/// `f⁰ … f^k` truncated below `xⁿ`.
fn series_powers(f: &[Rational], k: usize, n: usize) -> Vec<Vec<Rational>> {
    let mut powers = Vec::with_capacity(k + 1);
    let mut one = vec![Rational::zero(); n];
    if n > 0 {
        one[0] = Rational::one();
    }
    powers.push(one);
    for j in 1..=k {
        let prev = &powers[j - 1];
        let mut next = vec![Rational::zero(); n];
        for (a, pa) in prev.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, fb) in f.iter().take(n - a).enumerate().filter(|(_, c)| !c.is_zero()) {
                next[a + b] += pa * fb;
            }
        }
        powers.push(next);
    }
    powers
}

/// Column `(i, j)` of the system is `x^i f^j`; row `n` is the coefficient of `xⁿ`.
fn system<T: Clone>(powers: &[Vec<T>], zero: &T, dx: usize, dy: usize, n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|row| {
            (0..=dy)
                .flat_map(|j| (0..=dx).map(move |i| (i, j)))
                .map(|(i, j)| if row >= i { powers[j][row - i].clone() } else { zero.clone() })
                .collect()
        })
        .collect()
}

/// A nonzero kernel vector of an exact matrix, if any.
fn exact_kernel(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Option<Vec<Rational>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for c in col..ncols {
            rows[r][c] = &rows[r][c] * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for c in col..ncols {
                let v = &f * &rows[r][c];
                rows[i][c] -= v;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free = (0..ncols).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rational::zero(); ncols];
    v[free] = Rational::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -rows[row][free].clone();
    }
    Some(v)
}

/// Upper limit on primes combined before falling back to exact elimination.
const MAX_PRIMES: usize = 64;

/// `r/s ≡ a (mod m)` with `|r|, s ≤ √(m/2)`, if it exists.
fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m >> 1usize).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        (r0, r1, s0, s1) = (r1, r2, s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(Rational::new(r1, s1))
}

/// Kernel vector from modular images combined by the Chinese remainder
/// theorem and lifted by rational reconstruction, confirmed exactly.
/// `None` means the modular route did not produce a certified vector.
fn multimodular_kernel(
    coeffs: &[Rational],
    powers: &[Vec<Rational>],
    dx: usize,
    dy: usize,
    n: usize,
) -> Option<Vec<Rational>> {
    let mut pivots_seen: Option<Vec<usize>> = None;
    let mut residues: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut used = 0;
    for p in large_primes() {
        if used == MAX_PRIMES {
            return None;
        }
        let field = Field::new(p);
        let Some(image) = coeffs.iter().map(|c| field.from_rational(c)).collect::<Option<Vec<u64>>>() else {
            continue;
        };
        used += 1;
        let mut m = system(&modular_powers(field, &image, dy), &0u64, dx, dy, n);
        let (pivots, v) = field.rref_kernel(&mut m);
        let v = v?;
        match &pivots_seen {
            Some(seen) if *seen != pivots => continue,
            None => pivots_seen = Some(pivots),
            _ => {}
        }
        let bp = BigInt::from(p);
        if residues.is_empty() {
            residues = v.iter().map(|&x| BigInt::from(x)).collect();
        } else {
            // x ≡ r (mod M), x ≡ v (mod p)  ⇒  x = r + M·((v − r)·M⁻¹ mod p)
            let m_inv = BigInt::from(field.inv(field.from_int(&modulus)));
            for (r, &x) in residues.iter_mut().zip(&v) {
                let t = ((BigInt::from(x) - &*r) * &m_inv).mod_floor(&bp);
                *r += &modulus * t;
            }
        }
        modulus *= bp;
        let Some(candidate) =
            residues.iter().map(|r| rational_reconstruction(r, &modulus)).collect::<Option<Vec<Rational>>>()
        else {
            continue;
        };
        let rows: Vec<Vec<Rational>> = candidate.chunks(dx + 1).map(<[Rational]>::to_vec).collect();
        if substitute_with(&BivariatePolyQ::new(rows), powers, n).iter().all(Zero::is_zero) {
            return Some(candidate);
        }
    }
    None
}

/// Searches for `P ≠ 0` of bidegree at most `(dx_max, dy_max)`, `dy ≥ 1`,
/// with `P(x, f) ≡ 0 mod x^N` where `N = coeffs.len()`.
///
/// Requires `N ≥ (dx_max + 1)(dy_max + 1) + guard`, so every candidate is
/// overdetermined by at least `guard` equations.
pub fn guess_annihilator(
    coeffs: &[Rational],
    dx_max: usize,
    dy_max: usize,
    guard: usize,
) -> Result<GuessOutcome, GuessError> {
    if guard < MIN_GUARD {
        return Err(GuessError::GuardTooSmall(guard));
    }
    let n = coeffs.len();
    let needed = (dx_max + 1) * (dy_max + 1) + guard;
    if n < needed {
        return Err(GuessError::InsufficientTerms { needed, have: n });
    }
    let field = PRIMES
        .iter()
        .map(|&p| Field::new(p))
        .find(|f| coeffs.iter().all(|c| f.from_rational(c).is_some()))
        .ok_or(GuessError::NoPrime)?;
    let image: Vec<u64> = coeffs.iter().map(|c| field.from_rational(c).unwrap()).collect();
    let mod_powers = modular_powers(field, &image, dy_max);
    let mut exact_powers: Option<Vec<Vec<Rational>>> = None;
    for dy in 1..=dy_max {
        for dx in 0..=dx_max {
            let ncols = (dx + 1) * (dy + 1);
            let mut m = system(&mod_powers, &0u64, dx, dy, n);
            if field.rank(&mut m) == ncols {
                continue;
            }
            let powers = exact_powers.get_or_insert_with(|| series_powers(coeffs, dy_max, n));
            let kernel = multimodular_kernel(coeffs, powers, dx, dy, n)
                .or_else(|| exact_kernel(system(powers, &Rational::zero(), dx, dy, n), ncols));
            let Some(v) = kernel else {
                continue;
            };
            let rows: Vec<Vec<Rational>> = v.chunks(dx + 1).map(<[Rational]>::to_vec).collect();
            let poly = BivariatePolyQ::new(rows).normalized();
            let residual = substitute_with(&poly, powers, n);
            debug_assert!(residual.iter().all(Zero::is_zero));
            let verified_terms = residual.iter().take_while(|c| c.is_zero()).count();
            return Ok(GuessOutcome::Found(Annihilator { poly, dx, dy, verified_terms }));
        }
    }
    Ok(GuessOutcome::NoneUpTo { dx: dx_max, dy: dy_max })
}

fn modular_powers(f: Field, image: &[u64], k: usize) -> Vec<Vec<u64>> {
    let n = image.len();
    let mut powers = Vec::with_capacity(k + 1);
    let mut one = vec![0u64; n];
    if n > 0 {
        one[0] = 1;
    }
    powers.push(one);
    for j in 1..=k {
        let prev = &powers[j - 1];
        let mut next = vec![0u64; n];
        for a in 0..n {
            if prev[a] == 0 {
                continue;
            }
            for b in 0..n - a {
                next[a + b] = f.add(next[a + b], f.mul(prev[a], image[b]));
            }
        }
        powers.push(next);
    }
    powers
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn binomial_half(n: usize) -> Vec<Rational> {
        // (1 − 4x)^(−1/2): central binomials
        let mut v = vec![int(1)];
        for k in 0..n - 1 {
            let next = &v[k] * rat(2 * (2 * k as i64 + 1), k as i64 + 1);
            v.push(next);
        }
        v
    }

    #[test]
    fn finds_quadratic_relation() {
        let f = binomial_half(40);
        let GuessOutcome::Found(a) = guess_annihilator(&f, 2, 2, 10).unwrap() else {
            panic!("no relation found");
        };
        assert_eq!((a.dx, a.dy), (1, 2));
        assert_eq!(a.poly.to_string(), "4*x*y^2 - y^2 + 1");
        assert_eq!(a.verified_terms, 40);
    }

    #[test]
    fn rejects_transcendental_and_short_input() {
        let log: Vec<Rational> = (0..60).map(|n| rat(1, n + 1)).collect();
        assert_eq!(guess_annihilator(&log, 3, 3, 10).unwrap(), GuessOutcome::NoneUpTo { dx: 3, dy: 3 });
        assert_eq!(
            guess_annihilator(&log[..20], 3, 3, 10),
            Err(GuessError::InsufficientTerms { needed: 26, have: 20 })
        );
        assert_eq!(guess_annihilator(&log, 1, 1, 3), Err(GuessError::GuardTooSmall(3)));
    }
}
