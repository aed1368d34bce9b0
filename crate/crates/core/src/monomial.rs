//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

/// Largest number of variables a ring may have.
pub const MAX_VARS: usize = 15;

/// Exponent vector of a monomial.
///
/// Byte `MAX_VARS` caches the total (unweighted) degree, so equality and
/// hashing work on a single 128-bit word.
#[derive(Clone, Copy, PartialEq, Eq, Default)]
#[repr(C, align(16))]
pub struct Monomial {
    e: [u8; MAX_VARS + 1],
}

impl Hash for Monomial {
    #[inline]
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u128(self.as_u128());
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.e[..MAX_VARS])
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        e: [0; MAX_VARS + 1],
    };

    #[inline(always)]
    fn as_u128(&self) -> u128 {
        u128::from_ne_bytes(self.e)
    }

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::ONE;
        let mut total = 0u32;
        for (i, &x) in exps.iter().enumerate() {
            assert!(x < 256, "exponent overflow");
            m.e[i] = x as u8;
            total += x;
        }
        assert!(total < 256, "degree overflow");
        m.e[MAX_VARS] = total as u8;
        m
    }

    /// The monomial `x_i`.
    pub fn var(i: usize) -> Monomial {
        let mut m = Monomial::ONE;
        m.e[i] = 1;
        m.e[MAX_VARS] = 1;
        m
    }

    #[inline(always)]
    pub fn exp(&self, i: usize) -> u32 {
        self.e[i] as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.e[..nvars].iter().map(|&x| x as u32).collect()
    }

    /// Cached total degree.
    #[inline(always)]
    pub fn degree(&self) -> u32 {
        self.e[MAX_VARS] as u32
    }

    #[inline]
    pub fn weighted_degree(&self, w: &[u32]) -> u32 {
        w.iter().zip(self.e.iter()).map(|(&a, &b)| a * b as u32).sum()
    }

    #[inline(always)]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut r = Monomial::ONE;
        for i in 0..=MAX_VARS {
            r.e[i] = self.e[i] + other.e[i];
        }
        r
    }

    /// `self` divides `other`.
    #[inline(always)]
    pub fn divides(&self, other: &Monomial) -> bool {
        let mut ok = true;
        for i in 0..MAX_VARS {
            ok &= self.e[i] <= other.e[i];
        }
        ok
    }

    /// `self / other`; the caller guarantees divisibility.
    #[inline(always)]
    pub fn div_unchecked(&self, other: &Monomial) -> Monomial {
        let mut r = Monomial::ONE;
        for i in 0..=MAX_VARS {
            r.e[i] = self.e[i] - other.e[i];
        }
        r
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(self.div_unchecked(other))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut r = Monomial::ONE;
        let mut t = 0u32;
        for i in 0..MAX_VARS {
            r.e[i] = self.e[i].max(other.e[i]);
            t += r.e[i] as u32;
        }
        r.e[MAX_VARS] = t as u8;
        r
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut r = Monomial::ONE;
        let mut t = 0u32;
        for i in 0..MAX_VARS {
            r.e[i] = self.e[i].min(other.e[i]);
            t += r.e[i] as u32;
        }
        r.e[MAX_VARS] = t as u8;
        r
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.e[i] == 0 || other.e[i] == 0)
    }

    /// Removes the largest power of `x_i` dividing the monomial; returns it.
    pub fn strip_var(&self, i: usize) -> (Monomial, u32) {
        let k = self.e[i];
        let mut r = *self;
        r.e[i] = 0;
        r.e[MAX_VARS] -= k;
        (r, k as u32)
    }

    /// Sets exponent `i` to `x`.
    pub fn with_exp(&self, i: usize, x: u32) -> Monomial {
        let mut r = *self;
        let old = r.e[i] as u32;
        r.e[i] = x as u8;
        r.e[MAX_VARS] = (r.e[MAX_VARS] as u32 + x - old) as u8;
        r
    }

    /// Support bitmask over the variables.
    pub fn support(&self) -> u32 {
        let mut s = 0;
        for i in 0..MAX_VARS {
            if self.e[i] > 0 {
                s |= 1 << i;
            }
        }
        s
    }

    /// Divisibility pre-filter: four threshold bits per variable.
    #[inline]
    pub fn divmask(&self) -> u64 {
        let mut m = 0u64;
        for i in 0..16.min(MAX_VARS) {
            let x = self.e[i];
            let bits = (x >= 1) as u64 | ((x >= 2) as u64) << 1 | ((x >= 3) as u64) << 2 | ((x >= 5) as u64) << 3;
            m |= bits << (4 * i);
        }
        m
    }
}

/// A monomial order. Ties in the weighted variants are broken by graded
/// reverse lexicographic order with respect to the ring grading.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic order (the default).
    Grevlex,
    /// Pure lexicographic order, `x0 > x1 > ...`.
    Lex,
    /// Compare by a weight vector first, then grevlex.
    Weighted(Vec<u32>),
    /// Product order: grevlex on the first `k` variables, ties broken by
    /// grevlex on the rest.
    Block(usize),
}

impl MonomialOrder {
    /// Block order eliminating the first `k` of `n` variables.
    pub fn elimination(k: usize, n: usize) -> MonomialOrder {
        MonomialOrder::Weighted((0..n).map(|i| (i < k) as u32).collect())
    }

    /// Compares two monomials; `grading` gives the degree of each variable.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial, n: usize, grading: Option<&[u32]>) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex(a, b, n, grading),
            MonomialOrder::Lex => {
                for i in 0..n {
                    if a.e[i] != b.e[i] {
                        return a.e[i].cmp(&b.e[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Weighted(w) => {
                let (wa, wb) = (a.weighted_degree(w), b.weighted_degree(w));
                if wa != wb {
                    return wa.cmp(&wb);
                }
                grevlex(a, b, n, grading)
            }
            MonomialOrder::Block(k) => {
                let k = (*k).min(n);
                match block_grevlex(a, b, 0, k) {
                    Ordering::Equal => block_grevlex(a, b, k, n),
                    o => o,
                }
            }
        }
    }

    /// Whether the order refines the (weighted) degree.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex)
    }
}

fn block_grevlex(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    let da: u32 = (lo..hi).map(|i| a.e[i] as u32).sum();
    let db: u32 = (lo..hi).map(|i| b.e[i] as u32).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (lo..hi).rev() {
        if a.e[i] != b.e[i] {
            return b.e[i].cmp(&a.e[i]);
        }
    }
    Ordering::Equal
}

#[inline(always)]
fn grevlex(a: &Monomial, b: &Monomial, n: usize, grading: Option<&[u32]>) -> Ordering {
    let (da, db) = match grading {
        None => (a.degree(), b.degree()),
        Some(w) => (a.weighted_degree(w), b.weighted_degree(w)),
    };
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..n).rev() {
        if a.e[i] != b.e[i] {
            return b.e[i].cmp(&a.e[i]);
        }
    }
    Ordering::Equal
}

/// All exponent vectors of total degree `d` in `n` variables, sorted
/// decreasingly in grevlex order.
pub fn monomials_of_degree(d: u32, n: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for x in (0..=left).rev() {
            cur[i] = x;
            rec(i + 1, left - x, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::ONE);
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort_by(|a, b| grevlex(b, a, n, None));
    out
}

/// Monomials of weighted degree `d` for the given positive weights.
pub fn monomials_of_weighted_degree(d: u32, weights: &[u32]) -> Vec<Monomial> {
    let n = weights.len();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, w: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == w.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(cur));
            }
            return;
        }
        let mut x = 0;
        while x * w[i] <= left {
            cur[i] = x;
            rec(i + 1, left - x * w[i], w, cur, out);
            x += 1;
        }
        cur[i] = 0;
    }
    assert!(weights.iter().all(|&w| w > 0));
    rec(0, d, weights, &mut cur, &mut out);
    out.sort_by(|a, b| grevlex(b, a, n, Some(weights)));
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 6).len(), 56);
        assert_eq!(monomials_of_degree(5, 6).len(), 252);
        assert_eq!(monomials_of_degree(0, 6).len(), 1);
        assert_eq!(monomials_of_degree(0, 6)[0], Monomial::ONE);
        for d in 0..6 {
            assert_eq!(monomials_of_degree(d, 4).len() as u64, binomial(d as u64 + 3, 3));
        }
    }

    #[test]
    fn degree_is_cached() {
        let m = Monomial::from_exponents(&[1, 2, 0, 3]);
        assert_eq!(m.degree(), 6);
        let v = Monomial::var(2);
        assert_eq!(m.mul(&v).degree(), 7);
        assert_eq!(m.mul(&v).div(&m), Some(v));
        assert_eq!(m.lcm(&v).degree(), 7);
        assert_eq!(m.gcd(&v).degree(), 0);
        assert_eq!(m.strip_var(3), (Monomial::from_exponents(&[1, 2]), 3));
    }

    /// Reference grevlex: bigger degree wins, then the monomial whose
    /// exponent vector has the smaller last nonzero entry of the difference.
    fn brute_grevlex(a: &[u32], b: &[u32]) -> Ordering {
        let da: u32 = a.iter().sum();
        let db: u32 = b.iter().sum();
        if da != db {
            return da.cmp(&db);
        }
        let diff: Vec<i64> = a.iter().zip(b).map(|(&x, &y)| x as i64 - y as i64).collect();
        match diff.iter().rev().find(|&&d| d != 0) {
            None => Ordering::Equal,
            Some(&d) if d < 0 => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    #[test]
    fn grevlex_agrees_with_reference() {
        let mut all = Vec::new();
        for d in 0..=4 {
            all.extend(monomials_of_degree(d, 6));
        }
        for a in &all {
            for b in &all {
                let got = MonomialOrder::Grevlex.cmp(a, b, 6, None);
                assert_eq!(got, brute_grevlex(&a.exponents(6), &b.exponents(6)));
            }
        }
    }

    #[test]
    fn orders_refine_divisibility() {
        let mons = monomials_of_degree(3, 4);
        let orders = [
            MonomialOrder::Grevlex,
            MonomialOrder::Lex,
            MonomialOrder::elimination(2, 4),
        ];
        for o in &orders {
            for a in &mons {
                for i in 0..4 {
                    let b = a.mul(&Monomial::var(i));
                    assert_eq!(o.cmp(&b, a, 4, None), Ordering::Greater);
                }
            }
        }
    }

    #[test]
    fn weighted_monomials() {
        let w = [1, 1, 3];
        let ms = monomials_of_weighted_degree(3, &w);
        // x^3, x^2y, xy^2, y^3, z
        assert_eq!(ms.len(), 5);
        assert!(ms.iter().all(|m| m.weighted_degree(&w) == 3));
    }
}
