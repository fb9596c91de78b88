//! Arithmetic modulo a word-sized prime. Used only as a fast filter: a
//! nonconstant gcd or a nontrivial kernel over ℚ survives reduction, so a
//! negative answer modulo `p` is a proof and a positive one is rechecked
//! exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::exact::{PolyQ, Rational};

/// Primes just below 2^62, tried in order when a denominator vanishes.
pub(crate) const PRIMES: [u64; 3] = [4611686018427387847, 4611686018427387817, 4611686018427387787];

/// Deterministic Miller–Rabin for 64-bit integers.
pub(crate) fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    if let Some(&b) = BASES.iter().find(|&&b| n.is_multiple_of(b)) {
        return n == b;
    }
    let f = Field::new(n);
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    BASES.iter().all(|&a| {
        let mut x = f.pow(a % n, d);
        if x == 1 || x == n - 1 {
            return true;
        }
        (1..s).any(|_| {
            x = f.mul(x, x);
            x == n - 1
        })
    })
}

/// Primes below `2^62`, descending.
pub(crate) fn large_primes() -> impl Iterator<Item = u64> {
    (0..(1u64 << 61)).map(|k| (1u64 << 62) - 1 - 2 * k).filter(|&n| is_prime(n))
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        Field { p }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn from_int(self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    pub fn from_i64(self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// Reduction of a rational; `None` when `p` divides the denominator.
    pub fn from_rational(self, x: &Rational) -> Option<u64> {
        let den = self.from_int(x.denom());
        if den == 0 {
            return None;
        }
        Some(self.mul(self.from_int(x.numer()), self.inv(den)))
    }

    pub fn poly(self, p: &PolyQ) -> Option<Vec<u64>> {
        p.coeffs().iter().map(|c| self.from_rational(c)).collect()
    }

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    /// `P(t + n)` for a reduced polynomial.
    pub fn shift(self, coeffs: &[u64], n: u64) -> Vec<u64> {
        let mut out: Vec<u64> = Vec::with_capacity(coeffs.len());
        for &c in coeffs.iter().rev() {
            // out = out * (t + n) + c
            out.insert(0, 0);
            for i in 0..out.len() - 1 {
                let v = self.mul(out[i + 1], n);
                out[i] = self.add(out[i], v);
            }
            out[0] = self.add(out[0], c);
        }
        out
    }

    /// Degree of `gcd(a, b)`; zero polynomials are treated as having no
    /// common factor with a nonzero partner beyond the partner itself.
    pub fn gcd_degree(self, a: &[u64], b: &[u64]) -> usize {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        Self::trim(&mut a);
        Self::trim(&mut b);
        while !b.is_empty() {
            let inv = self.inv(*b.last().unwrap());
            while a.len() >= b.len() {
                let q = self.mul(*a.last().unwrap(), inv);
                let off = a.len() - b.len();
                for (i, &bc) in b.iter().enumerate() {
                    let v = self.mul(q, bc);
                    a[off + i] = self.sub(a[off + i], v);
                }
                Self::trim(&mut a);
                if a.is_empty() {
                    break;
                }
            }
            std::mem::swap(&mut a, &mut b);
        }
        a.len().saturating_sub(1)
    }

    /// Rank of a dense matrix (rows of equal length), by elimination in place.
    pub fn rank(self, rows: &mut [Vec<u64>]) -> usize {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..ncols {
            let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, piv);
            let inv = self.inv(rows[rank][col]);
            for c in col..ncols {
                rows[rank][c] = self.mul(rows[rank][c], inv);
            }
            let (head, tail) = rows.split_at_mut(rank + 1);
            let pivot = &head[rank];
            for row in tail.iter_mut() {
                let f = row[col];
                if f == 0 {
                    continue;
                }
                for c in col..ncols {
                    let v = self.mul(f, pivot[c]);
                    row[c] = self.sub(row[c], v);
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    /// Pivot columns of the reduced row echelon form and the kernel vector
    /// for the first free column (1 there, 0 at the other free columns).
    pub fn rref_kernel(self, rows: &mut [Vec<u64>]) -> (Vec<usize>, Option<Vec<u64>>) {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        for col in 0..ncols {
            let r = pivots.len();
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(r, piv);
            let inv = self.inv(rows[r][col]);
            for c in col..ncols {
                rows[r][c] = self.mul(rows[r][c], inv);
            }
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                let f = row[col];
                if i == r || f == 0 {
                    continue;
                }
                for c in col..ncols {
                    row[c] = self.sub(row[c], self.mul(f, pivot[c]));
                }
            }
            pivots.push(col);
            if pivots.len() == rows.len() {
                break;
            }
        }
        let Some(free) = (0..ncols).find(|c| !pivots.contains(c)) else {
            return (pivots, None);
        };
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = self.sub(0, rows[r][free]);
        }
        (pivots, Some(v))
    }
}
