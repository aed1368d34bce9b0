//! Matrix-based reduction: symbolic preprocessing followed by sparse row
//! reduction against pivot rows built from basis multiples.

use super::pairs::Elem;
use crate::error::Result;
use crate::exec::check_budget;
use crate::field::Fp;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::Ring;
use rustc_hash::FxHashMap;
use std::sync::Arc;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

type SparseRow = Vec<(u32, u32)>;

/// Picks a basis element whose leading monomial divides `m`, preferring
/// non-redundant elements with few terms.
pub(crate) fn find_reducer(elems: &[Elem], m: &Monomial) -> Option<usize> {
    let mask = m.divmask();
    let mut best: Option<usize> = None;
    for (k, e) in elems.iter().enumerate() {
        if e.mask & !mask != 0 || !e.lm.divides(m) {
            continue;
        }
        best = match best {
            None => Some(k),
            Some(b) => {
                let eb = &elems[b];
                let better = (eb.redundant && !e.redundant)
                    || (eb.redundant == e.redundant && e.poly.len() < eb.poly.len());
                Some(if better { k } else { b })
            }
        };
    }
    best
}

struct Columns {
    index: FxHashMap<Monomial, u32>,
    mons: Vec<Monomial>,
    pivot: Vec<Option<(Monomial, usize)>>,
}

impl Columns {
    fn add(&mut self, m: Monomial) -> u32 {
        let n = self.mons.len() as u32;
        *self.index.entry(m).or_insert_with(|| {
            self.mons.push(m);
            self.pivot.push(None);
            n
        })
    }
}

/// Reduces every row in `to_reduce` (and the surplus multiples among
/// `fixed`) modulo the basis.
///
/// With `echelon` the reduced rows are brought to echelon form and the
/// nonzero monic rows are returned. Without it the result has one entry per
/// input row, each fully reduced (a normal form up to the basis being a
/// Gröbner basis).
pub(crate) fn reduce(
    ring: &Arc<Ring>,
    elems: &[Elem],
    fixed: &[(Monomial, usize)],
    to_reduce: Vec<Poly>,
    echelon: bool,
) -> Result<Vec<Poly>> {
    let f = *ring.field();
    let mut cols = Columns { index: FxHashMap::default(), mons: Vec::new(), pivot: Vec::new() };
    let mut rows = to_reduce;
    for &(mult, e) in fixed {
        let lead = mult.mul(&elems[e].lm);
        let c = cols.add(lead) as usize;
        if cols.pivot[c].is_none() {
            cols.pivot[c] = Some((mult, e));
            for (t, _) in elems[e].poly.terms() {
                cols.add(t.mul(&mult));
            }
        } else {
            rows.push(elems[e].poly.mul_term(&mult, 1));
        }
    }
    for r in &rows {
        for (t, _) in r.terms() {
            cols.add(*t);
        }
    }
    // Symbolic preprocessing.
    let mut k = 0;
    while k < cols.mons.len() {
        if cols.pivot[k].is_none() {
            let m = cols.mons[k];
            if let Some(e) = find_reducer(elems, &m) {
                let mult = m.div_unchecked(&elems[e].lm);
                cols.pivot[k] = Some((mult, e));
                for (t, _) in elems[e].poly.terms().iter().skip(1) {
                    cols.add(t.mul(&mult));
                }
            }
        }
        k += 1;
    }
    check_budget()?;

    let ncols = cols.mons.len();
    let mut order: Vec<u32> = (0..ncols as u32).collect();
    order.sort_unstable_by(|&a, &b| ring.cmp(&cols.mons[b as usize], &cols.mons[a as usize]));
    let mut newcol = vec![0u32; ncols];
    for (new, &old) in order.iter().enumerate() {
        newcol[old as usize] = new as u32;
    }
    let to_sparse = |terms: &mut dyn Iterator<Item = (Monomial, u32)>| -> SparseRow {
        terms.map(|(m, c)| (newcol[cols.index[&m] as usize], c)).collect()
    };
    let mut pivots: Vec<Option<SparseRow>> = vec![None; ncols];
    for old in 0..ncols {
        if let Some((mult, e)) = cols.pivot[old] {
            let row = to_sparse(&mut elems[e].poly.terms().iter().map(|&(t, c)| (t.mul(&mult), c)));
            debug_assert_eq!(row[0], (newcol[old], 1));
            pivots[newcol[old] as usize] = Some(row);
        }
    }
    let sparse_rows: Vec<SparseRow> =
        rows.iter().map(|r| to_sparse(&mut r.terms().iter().copied())).collect();
    drop(rows);

    let reduced = reduce_all(&f, &pivots, ncols, sparse_rows);
    check_budget()?;

    let mons_sorted: Vec<Monomial> = order.iter().map(|&o| cols.mons[o as usize]).collect();
    let to_poly = |row: &SparseRow| -> Poly {
        let terms = row.iter().map(|&(c, v)| (mons_sorted[c as usize], v)).collect();
        Poly::from_sorted_terms(ring, terms)
    };
    if !echelon {
        return Ok(reduced.iter().map(to_poly).collect());
    }
    let out = echelonize(&f, ncols, reduced)?;
    Ok(out.iter().map(to_poly).collect())
}

fn reduce_all(f: &Fp, pivots: &[Option<SparseRow>], ncols: usize, rows: Vec<SparseRow>) -> Vec<SparseRow> {
    #[cfg(feature = "parallel")]
    if crate::exec::parallel() && rows.len() > 1 {
        return rows
            .into_par_iter()
            .map_init(|| vec![0u64; ncols], |acc, r| reduce_row(f, pivots, acc, &r))
            .collect();
    }
    let mut acc = vec![0u64; ncols];
    rows.iter().map(|r| reduce_row(f, pivots, &mut acc, r)).collect()
}

/// Left-to-right reduction with a dense accumulator kept below `p^2`.
fn reduce_row(f: &Fp, pivots: &[Option<SparseRow>], acc: &mut [u64], row: &SparseRow) -> SparseRow {
    let Some(&(first, _)) = row.first() else { return Vec::new() };
    let p = f.p() as u64;
    let p2 = p * p;
    for &(c, v) in row {
        acc[c as usize] = v as u64;
    }
    let mut out = Vec::new();
    for c in first as usize..acc.len() {
        if acc[c] == 0 {
            continue;
        }
        let v = f.reduce(acc[c]);
        acc[c] = 0;
        if v == 0 {
            continue;
        }
        match &pivots[c] {
            Some(piv) => {
                let mult = p - v as u64;
                for &(k, w) in &piv[1..] {
                    let a = &mut acc[k as usize];
                    *a += mult * w as u64;
                    if *a >= p2 {
                        *a -= p2;
                    }
                }
            }
            None => out.push((c as u32, v)),
        }
    }
    out
}

/// Echelon form of rows that already avoid all pivot columns. Rows become
/// monic; zero rows are dropped.
fn echelonize(f: &Fp, ncols: usize, rows: Vec<SparseRow>) -> Result<Vec<SparseRow>> {
    let mut rows: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    if rows.is_empty() {
        return Ok(rows);
    }
    // Compress to the columns actually used.
    let mut used: Vec<u32> = rows.iter().flat_map(|r| r.iter().map(|t| t.0)).collect();
    used.sort_unstable();
    used.dedup();
    let mut compact = vec![u32::MAX; ncols];
    for (i, &c) in used.iter().enumerate() {
        compact[c as usize] = i as u32;
    }
    for r in rows.iter_mut() {
        for t in r.iter_mut() {
            t.0 = compact[t.0 as usize];
        }
    }
    rows.sort_by_key(|r| (r[0].0, r.len()));
    let n = used.len();
    let mut piv: Vec<Option<SparseRow>> = vec![None; n];
    let mut acc = vec![0u64; n];
    let mut out = Vec::new();
    for (k, r) in rows.iter().enumerate() {
        let red = reduce_row(f, &piv, &mut acc, r);
        if let Some(&(lead, lc)) = red.first() {
            let inv = f.inv(lc)?;
            let row: SparseRow = red.iter().map(|&(c, v)| (c, f.mul(v, inv))).collect();
            piv[lead as usize] = Some(row.clone());
            out.push(row);
        }
        if k % 256 == 255 {
            check_budget()?;
        }
    }
    for r in out.iter_mut() {
        for t in r.iter_mut() {
            t.0 = used[t.0 as usize];
        }
    }
    Ok(out)
}
