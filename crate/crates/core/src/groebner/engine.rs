//! The Buchberger loop over left modules `W^r`, with `W` a Weyl algebra
//! with central variables (a polynomial ring when there are no pairs).
//!
//! Terms are `(position, monomial, coefficient)` and polynomials are term
//! vectors sorted descending under position-over-term: a smaller position
//! index is larger.

use std::cmp::Ordering;
use std::collections::HashSet;

use super::order::TermOrder;
use crate::error::{Error, Result};
use crate::ratpoly::{Coeff, Mono, Poly, Rational};
use crate::weyl::{mono_product, weyl_poly_mul};

pub(crate) type Term<C> = (u32, Mono, C);

#[derive(Debug, Clone)]
pub struct GbOptions {
    /// Abort once an element of larger total degree appears.
    pub degree_bound: u32,
    /// Track each basis element as a left combination of the inputs.
    pub track: bool,
    /// Re-verify every S-pair of the final basis.
    pub post_check: bool,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { degree_bound: 60, track: false, post_check: true }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs_considered: usize,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub chain_skipped: usize,
    pub product_skipped: usize,
}

pub(crate) struct Ring<'a> {
    pub pairs: &'a [(usize, usize)],
    pub order: &'a TermOrder,
}

pub(crate) struct Elem<C: Coeff> {
    pub terms: Vec<Term<C>>,
    pub support: u32,
    pub rep: Option<Vec<Poly<C>>>,
}

impl<C: Coeff> Elem<C> {
    pub fn new(terms: Vec<Term<C>>, rep: Option<Vec<Poly<C>>>) -> Self {
        let support = support_of(&terms);
        Elem { terms, support, rep }
    }

    /// Whether every term sits at the leading position.
    pub fn single_position(&self) -> bool {
        let p = self.terms[0].0;
        self.terms.iter().all(|t| t.0 == p)
    }

    pub fn lead(&self) -> (u32, Mono) {
        (self.terms[0].0, self.terms[0].1)
    }
}

pub(crate) fn support_of<C: Coeff>(terms: &[Term<C>]) -> u32 {
    terms.iter().fold(0, |acc, t| acc | t.1.support())
}

fn max_degree<C: Coeff>(terms: &[Term<C>]) -> u32 {
    terms.iter().map(|t| t.1.total_degree()).max().unwrap_or(0)
}

impl<'a> Ring<'a> {
    #[inline]
    pub fn cmp(&self, a: (u32, &Mono), b: (u32, &Mono)) -> Ordering {
        match b.0.cmp(&a.0) {
            Ordering::Equal => self.order.cmp(a.1, b.1),
            o => o,
        }
    }

    pub fn normalize<C: Coeff>(&self, mut v: Vec<Term<C>>) -> Vec<Term<C>> {
        v.sort_by(|a, b| self.cmp((b.0, &b.1), (a.0, &a.1)));
        let mut out: Vec<Term<C>> = Vec::with_capacity(v.len());
        for t in v {
            match out.last_mut() {
                Some(last) if last.0 == t.0 && last.1 == t.1 => last.2 = last.2.add(&t.2),
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.2.is_zero());
        out
    }

    /// `true` when `m·g` needs no reordering corrections.
    fn commutes(&self, m: &Mono, g_support: u32) -> bool {
        self.pairs.iter().all(|&(xi, di)| m.exp(di) == 0 || g_support & (1 << xi) == 0)
    }

    /// `c·m·g` in normal order.
    pub fn left_mul<C: Coeff>(&self, m: &Mono, c: &C, g: &[Term<C>], g_support: u32) -> Vec<Term<C>> {
        if self.commutes(m, g_support) {
            return g.iter().map(|(p, gm, gc)| (*p, m.mul(gm), c.mul(gc))).collect();
        }
        let mut out = Vec::with_capacity(g.len() * 2);
        for (p, gm, gc) in g {
            let cc = c.mul(gc);
            for (mm, k) in mono_product::<C>(self.pairs, m, gm) {
                let coef = if k.is_one() { cc.clone() } else { cc.mul(&k) };
                out.push((*p, mm, coef));
            }
        }
        self.normalize(out)
    }

    pub fn add<C: Coeff>(&self, a: &[Term<C>], b: &[Term<C>]) -> Vec<Term<C>> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.cmp((a[i].0, &a[i].1), (b[j].0, &b[j].1)) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].2.add(&b[j].2);
                    if !c.is_zero() {
                        out.push((a[i].0, a[i].1, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        out
    }

    /// Full reduction of `p` by `basis`. `step(j, q, coef)` is called for
    /// every elimination `p ← p − coef·q·basis[j]`.
    pub fn reduce<C: Coeff>(
        &self,
        p: Vec<Term<C>>,
        basis: &[&Elem<C>],
        mut step: impl FnMut(usize, &Mono, &C),
    ) -> Vec<Term<C>> {
        let leads: Vec<(u32, Mono)> = basis.iter().map(|e| e.lead()).collect();
        let lcs: Vec<C> = basis.iter().map(|e| e.terms[0].2.clone()).collect();
        let mut rem: Vec<Term<C>> = Vec::new();
        let mut cur = p;
        let mut start = 0usize;
        while start < cur.len() {
            let (pos, m, c) = (cur[start].0, cur[start].1, cur[start].2.clone());
            let hit = leads.iter().position(|(lp, lm)| *lp == pos && lm.divides(&m));
            match hit {
                None => {
                    rem.push(cur[start].clone());
                    start += 1;
                }
                Some(j) => {
                    let q = leads[j].1.quotient_of(&m).expect("divides");
                    let coef = if lcs[j].is_one() { c } else { c.div(&lcs[j]) };
                    step(j, &q, &coef);
                    let sub = self.left_mul(&q, &coef.neg(), &basis[j].terms, basis[j].support);
                    debug_assert!(sub[0].0 == pos && sub[0].1 == m);
                    cur = self.add(&cur[start + 1..], &sub[1..]);
                    start = 0;
                }
            }
        }
        rem
    }

    fn rep_axpy<C: Coeff>(&self, acc: &mut [Poly<C>], q: &Mono, coef: &C, src: &[Poly<C>]) {
        let mul = Poly::monomial(*q, coef.clone());
        for (a, s) in acc.iter_mut().zip(src) {
            if !s.is_zero() {
                *a = a.add(&weyl_poly_mul(self.pairs, &mul, s));
            }
        }
    }

    fn s_poly<C: Coeff>(&self, f: &Elem<C>, g: &Elem<C>, track: bool) -> (Vec<Term<C>>, Option<Vec<Poly<C>>>) {
        let (_, mf) = f.lead();
        let (_, mg) = g.lead();
        let l = mf.lcm(&mg);
        let qf = mf.quotient_of(&l).expect("lcm");
        let qg = mg.quotient_of(&l).expect("lcm");
        let cf = f.terms[0].2.inv();
        let cg = g.terms[0].2.inv().neg();
        let a = self.left_mul(&qf, &cf, &f.terms, f.support);
        let b = self.left_mul(&qg, &cg, &g.terms, g.support);
        let s = self.add(&a[1..], &b[1..]);
        let rep = if track {
            let n = f.rep.as_ref().map_or(0, Vec::len);
            let mut acc = vec![Poly::zero(); n];
            self.rep_axpy(&mut acc, &qf, &cf, f.rep.as_ref().unwrap());
            self.rep_axpy(&mut acc, &qg, &cg, g.rep.as_ref().unwrap());
            Some(acc)
        } else {
            None
        };
        (s, rep)
    }

    fn reduce_tracked<C: Coeff>(
        &self,
        p: Vec<Term<C>>,
        rep: Option<Vec<Poly<C>>>,
        basis: &[Elem<C>],
        skip: Option<usize>,
    ) -> (Vec<Term<C>>, Option<Vec<Poly<C>>>) {
        let idx: Vec<usize> = (0..basis.len()).filter(|&i| Some(i) != skip).collect();
        let refs: Vec<&Elem<C>> = idx.iter().map(|&i| &basis[i]).collect();
        match rep {
            None => (self.reduce(p, &refs, |_, _, _| {}), None),
            Some(mut r) => {
                let mut steps: Vec<(usize, Mono, C)> = Vec::new();
                let out = self.reduce(p, &refs, |j, q, c| steps.push((idx[j], *q, c.clone())));
                for (j, q, c) in steps {
                    self.rep_axpy(&mut r, &q, &c.neg(), basis[j].rep.as_ref().unwrap());
                }
                (out, Some(r))
            }
        }
    }

    /// Whether the two elements commute exactly, so that the coprime
    /// criterion applies.
    fn elements_commute<C: Coeff>(&self, f: &Elem<C>, g: &Elem<C>) -> bool {
        self.pairs.iter().all(|&(xi, di)| {
            let fx = f.support & (1 << xi) != 0;
            let fd = f.support & (1 << di) != 0;
            let gx = g.support & (1 << xi) != 0;
            let gd = g.support & (1 << di) != 0;
            !(fx && gd) && !(fd && gx)
        })
    }
}

pub(crate) struct BbOutput<C: Coeff> {
    pub elems: Vec<Elem<C>>,
    pub pivots: Vec<Poly<Rational>>,
    pub stats: GbStats,
}

fn record_pivots<C: Coeff>(pivots: &mut Vec<Poly<Rational>>, c: &C) {
    for p in c.pivot_conditions() {
        if !pivots.contains(&p) {
            pivots.push(p);
        }
    }
}

fn make_monic<C: Coeff>(
    terms: Vec<Term<C>>,
    rep: Option<Vec<Poly<C>>>,
    pivots: &mut Vec<Poly<Rational>>,
) -> (Vec<Term<C>>, Option<Vec<Poly<C>>>) {
    let lc = terms[0].2.clone();
    if lc.is_one() {
        return (terms, rep);
    }
    record_pivots(pivots, &lc);
    let inv = lc.inv();
    let terms = terms.into_iter().map(|(p, m, c)| (p, m, c.mul(&inv))).collect();
    let rep = rep.map(|r| r.into_iter().map(|q| q.scale(&inv)).collect());
    (terms, rep)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    pos: u32,
}

/// Runs Buchberger's algorithm and returns the reduced basis sorted by
/// ascending leading term.
pub(crate) fn buchberger<C: Coeff>(ring: &Ring, gens: Vec<Vec<Term<C>>>, opts: &GbOptions) -> Result<BbOutput<C>> {
    let ngens = gens.len();
    let mut pivots = Vec::new();
    let mut stats = GbStats::default();
    let mut basis: Vec<Elem<C>> = Vec::new();
    let mut pending: Vec<Pair> = Vec::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();

    let check_degree = |terms: &[Term<C>]| -> Result<()> {
        let d = max_degree(terms);
        if d > opts.degree_bound {
            Err(Error::DegreeBound { bound: opts.degree_bound, degree: d })
        } else {
            Ok(())
        }
    };

    let insert = |basis: &mut Vec<Elem<C>>,
                  pending: &mut Vec<Pair>,
                  pending_set: &mut HashSet<(usize, usize)>,
                  stats: &mut GbStats,
                  e: Elem<C>| {
        let k = basis.len();
        let (pk, mk) = e.lead();
        for (i, b) in basis.iter().enumerate() {
            let (pi, mi) = b.lead();
            if pi != pk {
                continue;
            }
            if mi.coprime(&mk) && b.single_position() && e.single_position() && ring.elements_commute(b, &e) {
                stats.product_skipped += 1;
                continue;
            }
            pending.push(Pair { i, j: k, lcm: mi.lcm(&mk), pos: pk });
            pending_set.insert((i, k));
        }
        basis.push(e);
    };

    for (gi, g) in gens.into_iter().enumerate() {
        let g = ring.normalize(g);
        if g.is_empty() {
            continue;
        }
        check_degree(&g)?;
        let rep = opts.track.then(|| {
            let mut r = vec![Poly::zero(); ngens];
            r[gi] = Poly::one();
            r
        });
        let (r, rep) = ring.reduce_tracked(g, rep, &basis, None);
        if r.is_empty() {
            continue;
        }
        let (r, rep) = make_monic(r, rep, &mut pivots);
        insert(&mut basis, &mut pending, &mut pending_set, &mut stats, Elem::new(r, rep));
    }

    while !pending.is_empty() {
        let best = (0..pending.len())
            .min_by(|&a, &b| {
                let pa = &pending[a];
                let pb = &pending[b];
                pa.lcm
                    .total_degree()
                    .cmp(&pb.lcm.total_degree())
                    .then_with(|| ring.cmp((pa.pos, &pa.lcm), (pb.pos, &pb.lcm)))
                    .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
            })
            .expect("nonempty");
        let pair = pending.swap_remove(best);
        pending_set.remove(&(pair.i, pair.j));
        stats.pairs_considered += 1;

        let chain = basis.iter().enumerate().any(|(k, e)| {
            if k == pair.i || k == pair.j {
                return false;
            }
            let (pk, mk) = e.lead();
            if pk != pair.pos || !mk.divides(&pair.lcm) {
                return false;
            }
            let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
            !pending_set.contains(&key(pair.i, k)) && !pending_set.contains(&key(pair.j, k))
        });
        if chain {
            stats.chain_skipped += 1;
            continue;
        }

        stats.pairs_reduced += 1;
        let (s, rep) = ring.s_poly(&basis[pair.i], &basis[pair.j], opts.track);
        let (r, rep) = ring.reduce_tracked(s, rep, &basis, None);
        if r.is_empty() {
            stats.zero_reductions += 1;
            continue;
        }
        check_degree(&r)?;
        let (r, rep) = make_monic(r, rep, &mut pivots);
        insert(&mut basis, &mut pending, &mut pending_set, &mut stats, Elem::new(r, rep));
    }

    let elems = interreduce(ring, basis, &mut pivots);
    Ok(BbOutput { elems, pivots, stats })
}

/// Drops redundant elements, tail-reduces the rest, sorts ascending.
pub(crate) fn interreduce<C: Coeff>(
    ring: &Ring,
    basis: Vec<Elem<C>>,
    pivots: &mut Vec<Poly<Rational>>,
) -> Vec<Elem<C>> {
    let leads: Vec<(u32, Mono)> = basis.iter().map(|e| e.lead()).collect();
    let keep: Vec<bool> = (0..basis.len())
        .map(|i| {
            !(0..basis.len()).any(|j| {
                j != i
                    && leads[j].0 == leads[i].0
                    && leads[j].1.divides(&leads[i].1)
                    && (leads[j].1 != leads[i].1 || j < i)
            })
        })
        .collect();
    let mut kept: Vec<Elem<C>> = basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();
    kept.sort_by(|a, b| {
        let (pa, ma) = a.lead();
        let (pb, mb) = b.lead();
        ring.cmp((pa, &ma), (pb, &mb))
    });
    for i in 0..kept.len() {
        let terms = std::mem::take(&mut kept[i].terms);
        let rep = kept[i].rep.take();
        let lead = terms[0].clone();
        let tail = terms[1..].to_vec();
        let (tail, rep) = ring.reduce_tracked(tail, rep, &kept, Some(i));
        let mut t = vec![lead];
        t.extend(tail);
        let (t, rep) = make_monic(t, rep, pivots);
        kept[i] = Elem::new(t, rep);
    }
    kept
}

/// Every S-pair of `basis` reduces to zero.
pub(crate) fn verify<C: Coeff>(ring: &Ring, basis: &[Elem<C>]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if basis[i].lead().0 != basis[j].lead().0 {
                continue;
            }
            let (s, _) = ring.s_poly(&basis[i], &basis[j], false);
            let (r, _) = ring.reduce_tracked(s, None, basis, None);
            if !r.is_empty() {
                return false;
            }
        }
    }
    true
}
