//! Dense univariate polynomials over `F_p`: gcds, roots and minimal
//! polynomials. Coefficients are stored from the constant term upward.

use crate::error::Result;
use crate::field::Fp;
use crate::linalg::Matrix;
use rand::Rng;

pub type UPoly = Vec<u32>;

fn trim(mut a: UPoly) -> UPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn mul(f: &Fp, a: &[u32], b: &[u32]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

pub fn sub(f: &Fp, a: &[u32], b: &[u32]) -> UPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    trim(out)
}

/// Quotient and remainder of `a` by nonzero `b`.
pub fn divrem(f: &Fp, a: &[u32], b: &[u32]) -> (UPoly, UPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u32; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], inv);
        q[dr - db] = c;
        for j in 0..=db {
            r[dr - db + j] = f.sub(r[dr - db + j], f.mul(c, b[j]));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn monic(f: &Fp, a: &[u32]) -> UPoly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = f.inv(a[d]).expect("nonzero");
            a[..=d].iter().map(|&c| f.mul(c, inv)).collect()
        }
    }
}

pub fn gcd(f: &Fp, a: &[u32], b: &[u32]) -> UPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = divrem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

pub fn derivative(f: &Fp, a: &[u32]) -> UPoly {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| f.mul(c, (i as u64 % f.p() as u64) as u32))
        .collect();
    trim(out)
}

/// `base^e mod m`.
pub fn powmod(f: &Fp, base: &[u32], mut e: u64, m: &[u32]) -> UPoly {
    let mut acc: UPoly = vec![1];
    let mut b = divrem(f, base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = divrem(f, &mul(f, &acc, &b), m).1;
        }
        b = divrem(f, &mul(f, &b, &b), m).1;
        e >>= 1;
    }
    acc
}

/// Degree of the squarefree part, i.e. the number of distinct roots over
/// the algebraic closure (valid when the degree is below `p`).
pub fn squarefree_degree(f: &Fp, a: &[u32]) -> usize {
    let Some(d) = degree(a) else { return 0 };
    let g = gcd(f, a, &derivative(f, a));
    d - degree(&g).unwrap_or(0)
}

/// Distinct roots in `F_p`, sorted.
pub fn roots<R: Rng>(f: &Fp, a: &[u32], rng: &mut R) -> Vec<u32> {
    let a = monic(f, a);
    if degree(&a).unwrap_or(0) == 0 {
        return Vec::new();
    }
    // Product of the distinct linear factors: gcd(a, x^p - x).
    let xp = powmod(f, &[0, 1], f.p() as u64, &a);
    let g = gcd(f, &a, &sub(f, &xp, &[0, 1]));
    let mut out = Vec::new();
    split(f, g, rng, &mut out);
    out.sort_unstable();
    out
}

fn split<R: Rng>(f: &Fp, g: UPoly, rng: &mut R, out: &mut Vec<u32>) {
    match degree(&g) {
        None | Some(0) => {}
        Some(1) => out.push(f.neg(f.mul(g[0], f.inv(g[1]).unwrap()))),
        Some(d) => loop {
            let shift = rng.gen_range(0..f.p());
            let h = powmod(f, &[shift, 1], (f.p() as u64 - 1) / 2, &g);
            let h = gcd(f, &g, &sub(f, &h, &[1]));
            let dh = degree(&h).unwrap_or(0);
            if dh > 0 && dh < d {
                let (q, _) = divrem(f, &g, &h);
                split(f, h, rng, out);
                split(f, q, rng, out);
                return;
            }
        },
    }
}

/// Minimal polynomial of the square matrix `m`, computed from Krylov
/// sequences of random vectors. Correct with high probability; the result
/// is checked to annihilate the random probes.
pub fn minimal_polynomial<R: Rng>(f: &Fp, m: &Matrix, rng: &mut R) -> Result<UPoly> {
    let n = m.rows;
    let mut result: UPoly = vec![1];
    for _ in 0..2 {
        let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..f.p())).collect();
        // Krylov vectors v, Mv, M^2 v, ... until linearly dependent.
        let mut kry = vec![v];
        loop {
            let next = m.mul_vec(f, kry.last().unwrap());
            let basis = Matrix::from_rows(kry.clone(), n).transpose();
            if let Some(c) = basis.solve(f, &next)? {
                // next = sum c_i M^i v  =>  x^k - sum c_i x^i
                let mut poly: UPoly = c.iter().map(|&x| f.neg(x)).collect();
                poly.push(1);
                result = lcm(f, &result, &poly);
                break;
            }
            kry.push(next);
        }
    }
    Ok(result)
}

pub fn lcm(f: &Fp, a: &[u32], b: &[u32]) -> UPoly {
    let g = gcd(f, a, b);
    monic(f, &divrem(f, &mul(f, a, b), &g).0)
}

pub fn eval(f: &Fp, a: &[u32], x: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn roots_of_split_polynomial() {
        let f = Fp::new(32003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rs = [3u32, 17, 999, 31000];
        let mut poly: UPoly = vec![1];
        for &r in &rs {
            poly = mul(&f, &poly, &[f.neg(r), 1]);
        }
        // an irreducible quadratic factor x^2 - nonresidue
        let mut nr = 2;
        while f.sqrt(nr).is_some() {
            nr += 1;
        }
        poly = mul(&f, &poly, &[f.neg(nr), 0, 1]);
        poly = mul(&f, &poly, &[f.neg(3), 1]);
        assert_eq!(roots(&f, &poly, &mut rng), rs.to_vec());
        assert_eq!(squarefree_degree(&f, &poly), 6);
    }

    #[test]
    fn minimal_polynomial_of_diagonal() {
        let f = Fp::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut m = Matrix::zeros(4, 4);
        for (i, v) in [2u32, 2, 5, 7].iter().enumerate() {
            m.set(i, i, *v);
        }
        let mp = minimal_polynomial(&f, &m, &mut rng).unwrap();
        assert_eq!(degree(&mp), Some(3));
        for v in [2, 5, 7] {
            assert_eq!(eval(&f, &mp, v), 0);
        }
    }
}
