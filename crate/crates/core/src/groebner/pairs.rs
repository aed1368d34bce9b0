//! Critical pair bookkeeping with the Gebauer-Möller criteria.

use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::Ring;

/// A basis element during a Gröbner basis run.
pub(crate) struct Elem {
    pub poly: Poly,
    pub lm: Monomial,
    pub mask: u64,
    pub sugar: u32,
    /// Leading monomial divisible by a later element's; kept only as a
    /// reducer.
    pub redundant: bool,
}

impl Elem {
    pub fn new(poly: Poly, sugar: u32) -> Elem {
        let lm = poly.lm().expect("nonzero basis element");
        Elem { mask: lm.divmask(), lm, poly, sugar, redundant: false }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Pair {
    pub i: usize,
    pub j: usize,
    pub lcm: Monomial,
    pub sugar: u32,
}

/// Adds element `h` to the pair set, pruning with the chain and product
/// criteria, and marks older elements whose leading monomial it divides.
pub(crate) fn update(ring: &Ring, elems: &mut [Elem], pairs: &mut Vec<Pair>, h: usize) {
    let hl = elems[h].lm;
    let hs = elems[h].sugar;
    let hd = ring.deg(&hl);
    pairs.retain(|p| {
        !(hl.divides(&p.lcm)
            && elems[p.i].lm.lcm(&hl) != p.lcm
            && elems[p.j].lm.lcm(&hl) != p.lcm)
    });

    let mut new: Vec<(Pair, bool)> = Vec::new();
    for (g, e) in elems[..h].iter().enumerate() {
        if e.redundant {
            continue;
        }
        let lcm = e.lm.lcm(&hl);
        let dl = ring.deg(&lcm);
        let sugar = (e.sugar + dl - ring.deg(&e.lm)).max(hs + dl - hd);
        new.push((Pair { i: g, j: h, lcm, sugar }, e.lm.is_coprime(&hl)));
    }

    // Chain criterion among the new pairs: drop a pair whose lcm is a
    // proper multiple of another new pair's lcm.
    let keep: Vec<bool> = new
        .iter()
        .map(|(p, _)| !new.iter().any(|(q, _)| q.lcm != p.lcm && q.lcm.divides(&p.lcm)))
        .collect();
    let mut survivors: Vec<(Pair, bool)> =
        new.into_iter().zip(keep).filter(|(_, k)| *k).map(|(x, _)| x).collect();

    // One pair per lcm; a class containing a coprime pair is dropped.
    survivors.sort_by(|a, b| ring.cmp(&a.0.lcm, &b.0.lcm));
    let mut k = 0;
    while k < survivors.len() {
        let mut end = k + 1;
        while end < survivors.len() && survivors[end].0.lcm == survivors[k].0.lcm {
            end += 1;
        }
        if !survivors[k..end].iter().any(|(_, coprime)| *coprime) {
            pairs.push(survivors[k].0.clone());
        }
        k = end;
    }

    for e in elems[..h].iter_mut() {
        if !e.redundant && hl.divides(&e.lm) {
            e.redundant = true;
        }
    }
}

/// Removes and returns all pairs of the minimal sugar degree.
pub(crate) fn select_min_sugar(pairs: &mut Vec<Pair>) -> Option<(u32, Vec<Pair>)> {
    let d = pairs.iter().map(|p| p.sugar).min()?;
    let (sel, rest): (Vec<Pair>, Vec<Pair>) = pairs.drain(..).partition(|p| p.sugar == d);
    *pairs = rest;
    Some((d, sel))
}
