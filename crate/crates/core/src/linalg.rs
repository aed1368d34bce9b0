//! Dense linear algebra over `F_p`.

use crate::error::{Error, Result};
use crate::exec::check_budget;
use crate::field::Fp;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::Ring;
use rustc_hash::FxHashMap;
use std::sync::Arc;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Row-major dense matrix with entries in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

/// `row -= c * pivot` on the columns `from..`.
#[inline]
fn axpy(f: &Fp, row: &mut [u32], pivot: &[u32], c: u32, from: usize) {
    if c == 0 {
        return;
    }
    let mc = f.neg(c) as u64;
    for (a, &b) in row[from..].iter_mut().zip(&pivot[from..]) {
        if b != 0 {
            *a = f.reduce(*a as u64 + mc * b as u64);
        }
    }
}

/// Applies `op` to every row, in parallel when enabled.
fn for_each_row(data: &mut [u32], cols: usize, op: impl Fn(usize, &mut [u32]) + Sync + Send) {
    if cols == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    if crate::exec::parallel() && data.len() >= 1 << 14 {
        data.par_chunks_mut(cols).enumerate().for_each(|(i, r)| op(i, r));
        return;
    }
    data.chunks_mut(cols).enumerate().for_each(|(i, r)| op(i, r));
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u32>>, cols: usize) -> Matrix {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[u32]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, f: &Fp, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        let p2 = (f.p() as u64) * (f.p() as u64);
        let oc = other.cols;
        for_each_row(&mut out.data, oc, |i, orow| {
            let mut acc = vec![0u64; oc];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * oc..(k + 1) * oc];
                for (x, &b) in acc.iter_mut().zip(brow) {
                    *x += a * b as u64;
                    if *x >= p2 {
                        *x -= p2;
                    }
                }
            }
            for (o, x) in orow.iter_mut().zip(acc) {
                *o = f.reduce(x);
            }
        });
        out
    }

    pub fn mul_vec(&self, f: &Fp, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (a, b) in self.row(i).iter().zip(v) {
                    acc = (acc + *a as u64 * *b as u64) % (f.p() as u64 * f.p() as u64);
                }
                f.reduce(acc)
            })
            .collect()
    }

    /// Brings the matrix to reduced row echelon form in place, drops zero
    /// rows, and returns the pivot columns.
    pub fn rref(&mut self, f: &Fp) -> Result<Vec<usize>> {
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for k in c..cols {
                    self.data.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = f.inv(self.data[r * cols + c])?;
            for k in c..cols {
                let v = self.data[r * cols + k];
                self.data[r * cols + k] = f.mul(v, inv);
            }
            let pivot: Vec<u32> = self.data[r * cols..(r + 1) * cols].to_vec();
            for_each_row(&mut self.data, cols, |i, row| {
                if i != r {
                    let c0 = row[c];
                    axpy(f, row, &pivot, c0, c);
                }
            });
            pivots.push(c);
            r += 1;
            if r % 64 == 0 {
                check_budget()?;
            }
        }
        self.rows = r;
        self.data.truncate(r * cols);
        Ok(pivots)
    }

    pub fn rank(&self, f: &Fp) -> Result<usize> {
        let mut m = self.clone();
        Ok(m.rref(f)?.len())
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per row.
    pub fn kernel(&self, f: &Fp) -> Result<Matrix> {
        let mut m = self.clone();
        let pivots = m.rref(f)?;
        let mut is_pivot = vec![usize::MAX; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = r;
        }
        let mut out = Matrix::zeros(0, self.cols);
        for free in 0..self.cols {
            if is_pivot[free] != usize::MAX {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(m.get(r, free));
            }
            out.push_row(&v);
        }
        Ok(out)
    }

    /// Basis of the left kernel `{w : w M = 0}`.
    pub fn left_kernel(&self, f: &Fp) -> Result<Matrix> {
        self.transpose().kernel(f)
    }

    /// One solution of `M x = b`, if any.
    pub fn solve(&self, f: &Fp, b: &[u32]) -> Result<Option<Vec<u32>>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            aug.data[i * (self.cols + 1) + self.cols] = b[i];
        }
        let pivots = aug.rref(f)?;
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Ok(Some(x))
    }

    pub fn inverse(&self, f: &Fp) -> Result<Option<Matrix>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            aug.row_mut(i)[..n].copy_from_slice(self.row(i));
            aug.data[i * 2 * n + n + i] = 1;
        }
        let pivots = aug.rref(f)?;
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            inv.row_mut(i).copy_from_slice(&aug.row(i)[n..]);
        }
        Ok(Some(inv))
    }
}

/// Whether two sets of row vectors span the same space.
pub fn same_row_space(f: &Fp, a: &Matrix, b: &Matrix) -> Result<bool> {
    assert_eq!(a.cols, b.cols);
    let mut ra = a.clone();
    let mut rb = b.clone();
    ra.rref(f)?;
    rb.rref(f)?;
    Ok(ra == rb)
}

/// Column index for a fixed list of monomials.
pub struct MonomialIndex {
    pub monomials: Vec<Monomial>,
    index: FxHashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        MonomialIndex { monomials, index }
    }

    /// Collects the monomials of `polys`, sorted decreasingly in the ring
    /// order.
    pub fn of_polys(ring: &Ring, polys: &[Poly]) -> Self {
        let mut ms: Vec<Monomial> = polys.iter().flat_map(|p| p.terms().iter().map(|t| t.0)).collect();
        ms.sort_unstable_by(|a, b| ring.cmp(b, a));
        ms.dedup();
        MonomialIndex::new(ms)
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn get(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coefficient vector of `p`; fails if a monomial is not indexed.
    pub fn vector(&self, p: &Poly) -> Result<Vec<u32>> {
        let mut v = vec![0u32; self.len()];
        for (m, c) in p.terms() {
            let i = self
                .get(m)
                .ok_or_else(|| Error::InvalidArgument("monomial outside index".into()))?;
            v[i] = *c;
        }
        Ok(v)
    }

    pub fn poly(&self, ring: &Arc<Ring>, v: &[u32]) -> Poly {
        let terms = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.monomials[i], c))
            .collect();
        Poly::from_terms(ring, terms)
    }

    pub fn matrix(&self, polys: &[Poly]) -> Result<Matrix> {
        let mut m = Matrix::zeros(0, self.len());
        for p in polys {
            m.push_row(&self.vector(p)?);
        }
        Ok(m)
    }
}

/// Reduced echelon basis of the span of `polys`, ordered by decreasing
/// leading monomial.
pub fn poly_echelon(ring: &Arc<Ring>, polys: &[Poly]) -> Result<Vec<Poly>> {
    let idx = MonomialIndex::of_polys(ring, polys);
    let mut m = idx.matrix(polys)?;
    m.rref(ring.field())?;
    Ok((0..m.rows).map(|i| idx.poly(ring, m.row(i))).collect())
}

/// Dimension of the span of `polys`.
pub fn poly_rank(ring: &Arc<Ring>, polys: &[Poly]) -> Result<usize> {
    let idx = MonomialIndex::of_polys(ring, polys);
    idx.matrix(polys)?.rank(ring.field())
}

/// Linear combinations `sum c_i polys[i]` that vanish, one row per relation.
pub fn poly_relations(ring: &Arc<Ring>, polys: &[Poly]) -> Result<Matrix> {
    let idx = MonomialIndex::of_polys(ring, polys);
    idx.matrix(polys)?.left_kernel(ring.field())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(f: &Fp, r: usize, c: usize, rng: &mut ChaCha8Rng) -> Matrix {
        let data = (0..r * c).map(|_| rng.gen_range(0..f.p())).collect();
        Matrix { rows: r, cols: c, data }
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = Fp::new(32003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random(&f, 5, 9, &mut rng);
        let k = a.kernel(&f).unwrap();
        assert_eq!(k.rows, 4);
        let prod = a.mul(&f, &k.transpose());
        assert!(prod.data.iter().all(|&x| x == 0));
    }

    #[test]
    fn inverse_and_solve() {
        let f = Fp::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = random(&f, 6, 6, &mut rng);
        let inv = a.inverse(&f).unwrap().unwrap();
        assert_eq!(a.mul(&f, &inv), Matrix::identity(6));
        let b: Vec<u32> = (0..6).map(|i| i as u32).collect();
        let x = a.solve(&f, &b).unwrap().unwrap();
        assert_eq!(a.mul_vec(&f, &x), b);
    }

    #[test]
    fn rank_of_product_is_bounded() {
        let f = Fp::new(32003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random(&f, 20, 3, &mut rng);
        let b = random(&f, 3, 20, &mut rng);
        assert_eq!(a.mul(&f, &b).rank(&f).unwrap(), 3);
        assert!(same_row_space(&f, &b, &a.mul(&f, &b)).unwrap());
    }
}
