//! Contraction and reduction as exact rewriting of a [`FactorPair`].
//!
//! A top parameter `c` and a bottom parameter `d` with `c − d = n` are exactly
//! the common roots of `C(t)` and `D(t + n)`, so all pairs at one difference
//! are removed at once by a single gcd. Differences are visited in ascending
//! order; removing pairs never creates a new, smaller difference.

use crate::exact::{shift_search_bound, PolyQ, Rational};
use crate::modp::{Field, PRIMES};
use crate::params::FactorPair;

/// One batch of removed parameter pairs sharing the difference `c − d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemovalStep {
    /// `c − d` for every removed pair; negative only in the reduction phase.
    pub difference: i64,
    /// Monic divisor removed from `C`. The divisor removed from `D` is
    /// `removed_factor(t − difference)`.
    pub removed_factor: PolyQ,
    pub pairs_removed: usize,
}

impl RemovalStep {
    /// The divisor that was removed from `D`.
    pub fn bottom_factor(&self) -> PolyQ {
        self.removed_factor.shift_int(-self.difference)
    }
}

/// Modular image of a pair used to skip shifts that cannot share a root.
struct ShiftFilter {
    field: Field,
    c: Vec<u64>,
    d: Vec<u64>,
}

impl ShiftFilter {
    fn new(pair: &FactorPair) -> Option<Self> {
        PRIMES.iter().find_map(|&p| {
            let field = Field::new(p);
            Some(ShiftFilter { field, c: field.poly(&pair.c)?, d: field.poly(&pair.d)? })
        })
    }

    /// False only if `gcd(C(t), D(t + n))` is certainly constant.
    fn may_share(&self, n: i64) -> bool {
        let f = self.field;
        let shifted = f.shift(&self.d, f.from_i64(n));
        f.gcd_degree(&self.c, &shifted) > 0
    }
}

fn shared_factor(pair: &FactorPair, filter: Option<&ShiftFilter>, n: i64) -> Option<PolyQ> {
    if pair.c.is_constant() || pair.d.is_constant() {
        return None;
    }
    if filter.is_some_and(|f| !f.may_share(n)) {
        return None;
    }
    let g = pair.c.gcd(&pair.d.shift_int(n));
    (!g.is_constant()).then_some(g)
}

/// Removes every common root of `C(t)` and `D(t + n)` for one `n`.
fn strip_shift(pair: &mut FactorPair, n: i64, steps: &mut Vec<RemovalStep>) {
    let filter = ShiftFilter::new(pair);
    while let Some(g) = shared_factor(pair, filter.as_ref(), n) {
        pair.c = pair.c.exact_div(&g).expect("gcd divides C");
        let bottom = g.shift_int(-n);
        pair.d = pair.d.exact_div(&bottom).expect("shifted gcd divides D");
        steps.push(RemovalStep { difference: n, pairs_removed: g.deg(), removed_factor: g });
    }
}

fn search_bound(pair: &FactorPair) -> i64 {
    if pair.c.is_constant() || pair.d.is_constant() {
        return -1;
    }
    i64::try_from(shift_search_bound(&pair.c, &pair.d)).expect("shift bound fits i64")
}

/// The contraction: repeatedly removes pairs with `c − d ∈ ℕ`, smallest
/// difference first, until none remain.
pub fn contract(pair: &FactorPair) -> (FactorPair, Vec<RemovalStep>) {
    let mut out = pair.clone();
    let mut steps = Vec::new();
    let bound = search_bound(pair);
    let mut filter = ShiftFilter::new(&out);
    for n in 0..=bound {
        if out.c.is_constant() || out.d.is_constant() {
            break;
        }
        if filter.as_ref().is_some_and(|f| !f.may_share(n)) {
            continue;
        }
        let before = steps.len();
        strip_shift(&mut out, n, &mut steps);
        if steps.len() != before {
            filter = ShiftFilter::new(&out);
        }
    }
    (out, steps)
}

/// Contraction followed by removal of pairs with `d − c ∈ ℕ`, smallest
/// difference first. The result is reduced.
pub fn reduce_full(pair: &FactorPair) -> (FactorPair, Vec<RemovalStep>) {
    let (mut out, mut steps) = contract(pair);
    let bound = search_bound(&out);
    for n in 1..=bound {
        if out.c.is_constant() || out.d.is_constant() {
            break;
        }
        strip_shift(&mut out, -n, &mut steps);
    }
    (out, steps)
}

fn no_shared_root(pair: &FactorPair, range: impl Iterator<Item = i64>) -> bool {
    let filter = ShiftFilter::new(pair);
    let mut range = range;
    range.all(|n| shared_factor(pair, filter.as_ref(), n).is_none())
}

/// No difference `c − d` lies in ℕ.
pub fn is_contracted(pair: &FactorPair) -> bool {
    let bound = search_bound(pair);
    no_shared_root(pair, 0..=bound)
}

/// No difference `c − d` lies in ℤ.
pub fn is_reduced(pair: &FactorPair) -> bool {
    let bound = search_bound(pair);
    no_shared_root(pair, -bound..=bound)
}

/// Script-F parameters when `C` and `D` both split over ℚ.
pub fn has_rational_parameters(pair: &FactorPair) -> Option<(Vec<Rational>, Vec<Rational>)> {
    pair.rational_parameters()
}

/// `deg C = deg D`, i.e. `p = q + 1` in the F-form.
pub fn degree_balanced(pair: &FactorPair) -> bool {
    pair.c.deg() == pair.d.deg()
}
