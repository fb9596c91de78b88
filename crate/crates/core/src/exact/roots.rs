use num_traits::{One, Signed, Zero};

use super::{divisors, PolyQ, Rational};

/// Cauchy root bound `1 + max|aᵢ| / |lead|` over the non-leading coefficients.
/// Every complex root of `p` has modulus strictly below it. Panics on zero.
pub fn cauchy_bound(p: &PolyQ) -> Rational {
    let d = p.degree().expect("root bound of the zero polynomial");
    let lead = p.leading().abs();
    let max = p.coeffs()[..d].iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero);
    Rational::one() + max / lead
}

/// `⌈B(p) + B(q)⌉` for the Cauchy bound `B`. Any integer `n` for which
/// `p(t)` and `q(t + n)` share a root satisfies `|n| ≤` this value.
pub fn shift_search_bound(p: &PolyQ, q: &PolyQ) -> u64 {
    let b = (cauchy_bound(p) + cauchy_bound(q)).ceil().to_integer();
    u64::try_from(b).expect("shift search bound exceeds u64")
}

/// All rational roots of `p` with multiplicity, ascending. Panics on zero.
pub fn rational_roots(p: &PolyQ) -> Vec<Rational> {
    rational_roots_with_cofactor(p).0
}

/// Rational roots of `p` (ascending, with multiplicity) together with the
/// monic cofactor that has no rational root.
pub fn rational_roots_with_cofactor(p: &PolyQ) -> (Vec<Rational>, PolyQ) {
    assert!(!p.is_zero(), "rational roots of the zero polynomial");
    let mut rest = p.monic();
    let mut roots = Vec::new();
    while rest.coeff(0).is_zero() && !rest.is_constant() {
        roots.push(Rational::zero());
        rest = rest.exact_div(&PolyQ::linear(Rational::zero())).expect("t divides");
    }
    if rest.is_constant() {
        return (roots, rest);
    }
    let ints = rest.primitive_integer();
    let (a0, ad) = (&ints[0], ints.last().unwrap());
    let nums = divisors(a0);
    let dens = divisors(ad);
    let mut candidates: Vec<Rational> = Vec::new();
    for q in &dens {
        for n in &nums {
            let r = Rational::new(n.clone(), q.clone());
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();
    for r in candidates {
        if rest.is_constant() {
            break;
        }
        while !rest.is_constant() && rest.eval(&r).is_zero() {
            roots.push(r.clone());
            rest = rest.exact_div(&PolyQ::linear(-r.clone())).expect("root divides");
        }
    }
    roots.sort();
    (roots, rest)
}

/// Sturm chain of a squarefree polynomial, used to count real roots.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<PolyQ>,
}

impl SturmChain {
    pub fn new(p: &PolyQ) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            if r.is_zero() {
                break;
            }
            chain.push(-&r);
        }
        SturmChain { chain }
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn sign(x: &Rational) -> i8 {
        if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            0
        }
    }

    fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.chain.iter().map(|p| Self::sign(&p.eval(x))))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let s = Self::sign(&p.leading());
            if positive || p.deg() % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_in(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    /// Number of distinct real roots `≤ x`.
    pub fn count_at_most(&self, x: &Rational) -> usize {
        self.variations_at_infinity(false).saturating_sub(self.variations_at(x))
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false).saturating_sub(self.variations_at_infinity(true))
    }
}

/// Number of distinct real roots of `p`.
pub fn count_real_roots(p: &PolyQ) -> usize {
    SturmChain::new(&p.squarefree()).count_all()
}
