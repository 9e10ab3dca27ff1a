//! Gröbner bases of left ideals and left submodules of `W^r`.
//!
//! The same loop serves commutative rings (contexts without Weyl pairs);
//! see [`commutative`].

pub mod commutative;
mod engine;
mod order;

use std::sync::Arc;

pub use engine::{GbOptions, GbStats};
pub use order::{OrderKind, TermOrder};

use engine::{Elem, Ring, Term};

use crate::error::{Error, Result};
use crate::ratpoly::{Coeff, Mono, Poly, Rational};
use crate::weyl::{WeylContext, WeylOp};

/// An element of the free left module `W^rank`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeModuleElem<C: Coeff = Rational> {
    comps: Vec<WeylOp<C>>,
}

impl<C: Coeff> FreeModuleElem<C> {
    pub fn new(comps: Vec<WeylOp<C>>) -> Result<Self> {
        let first = comps.first().ok_or_else(|| Error::InvalidArgument("rank must be positive".into()))?;
        let ctx = first.ctx().clone();
        if comps.iter().any(|c| c.ctx() != &ctx) {
            return Err(Error::ContextMismatch("module components from different contexts".into()));
        }
        Ok(FreeModuleElem { comps })
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[WeylOp<C>] {
        &self.comps
    }

    pub fn ctx(&self) -> &Arc<WeylContext> {
        self.comps[0].ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(WeylOp::is_zero)
    }

    fn to_terms(&self, ring: &Ring) -> Vec<Term<C>> {
        let mut v = Vec::new();
        for (pos, c) in self.comps.iter().enumerate() {
            v.extend(c.poly().terms().iter().map(|(m, k)| (pos as u32, *m, k.clone())));
        }
        ring.normalize(v)
    }
}

fn op_terms<C: Coeff>(ring: &Ring, op: &WeylOp<C>) -> Vec<Term<C>> {
    ring.normalize(op.poly().terms().iter().map(|(m, c)| (0u32, *m, c.clone())).collect())
}

fn component<C: Coeff>(ctx: &Arc<WeylContext>, terms: &[Term<C>], pos: u32) -> WeylOp<C> {
    WeylOp::from_poly(ctx, Poly::from_terms(terms.iter().filter(|t| t.0 == pos).map(|t| (t.1, t.2.clone()))))
}

/// A reduced Gröbner basis together with the order it was computed for.
pub struct GroebnerBasis<C: Coeff = Rational> {
    ctx: Arc<WeylContext>,
    order: TermOrder,
    rank: usize,
    pairs: Vec<(usize, usize)>,
    elems: Vec<Elem<C>>,
    pivots: Vec<Poly<Rational>>,
    stats: GbStats,
    ngens: usize,
}

impl<C: Coeff> GroebnerBasis<C> {
    fn ring(&self) -> Ring<'_> {
        Ring { pairs: &self.pairs, order: &self.order }
    }

    pub fn ctx(&self) -> &Arc<WeylContext> {
        &self.ctx
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    /// The unit ideal (or the whole module)?
    pub fn is_unit(&self) -> bool {
        self.elems.iter().any(|e| e.terms.len() == 1 && e.terms[0].1.is_one())
            && (self.rank == 1
                || (0..self.rank as u32).all(|p| self.elems.iter().any(|e| e.terms[0].0 == p && e.terms[0].1.is_one())))
    }

    /// Basis elements of a rank-one basis, ascending by leading term.
    pub fn elements(&self) -> Vec<WeylOp<C>> {
        self.elems.iter().map(|e| component(&self.ctx, &e.terms, 0)).collect()
    }

    pub fn module_elements(&self) -> Vec<FreeModuleElem<C>> {
        self.elems
            .iter()
            .map(|e| FreeModuleElem {
                comps: (0..self.rank as u32).map(|p| component(&self.ctx, &e.terms, p)).collect(),
            })
            .collect()
    }

    /// Position and monomial of each leading term.
    pub fn leading_monomials(&self) -> Vec<(usize, Mono)> {
        self.elems.iter().map(|e| (e.terms[0].0 as usize, e.terms[0].1)).collect()
    }

    /// Basis element `i` as a left combination of the input generators,
    /// when tracking was requested.
    pub fn representation(&self, i: usize) -> Option<Vec<WeylOp<C>>> {
        let rep = self.elems.get(i)?.rep.as_ref()?;
        Some(rep.iter().map(|p| WeylOp::from_poly(&self.ctx, p.clone())).collect())
    }

    pub fn input_count(&self) -> usize {
        self.ngens
    }

    /// Parameter polynomials inverted while normalizing leading
    /// coefficients; the basis is valid where none of them vanishes.
    pub fn genericity_certificate(&self) -> &[Poly<Rational>] {
        &self.pivots
    }

    pub fn reduce(&self, p: &WeylOp<C>) -> Result<WeylOp<C>> {
        if p.ctx() != &self.ctx {
            return Err(Error::ContextMismatch("operator and basis contexts differ".into()));
        }
        let ring = self.ring();
        let refs: Vec<&Elem<C>> = self.elems.iter().collect();
        let r = ring.reduce(op_terms(&ring, p), &refs, |_, _, _| {});
        Ok(component(&self.ctx, &r, 0))
    }

    pub fn reduce_module(&self, p: &FreeModuleElem<C>) -> Result<FreeModuleElem<C>> {
        if p.rank() != self.rank {
            return Err(Error::InvalidArgument("rank mismatch".into()));
        }
        let ring = self.ring();
        let refs: Vec<&Elem<C>> = self.elems.iter().collect();
        let r = ring.reduce(p.to_terms(&ring), &refs, |_, _, _| {});
        Ok(FreeModuleElem { comps: (0..self.rank as u32).map(|k| component(&self.ctx, &r, k)).collect() })
    }

    pub fn contains(&self, p: &WeylOp<C>) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }

    /// Leading monomials pairwise non-divisible, leading coefficients one
    /// and tails in normal form.
    pub fn is_reduced(&self) -> bool {
        let ring = self.ring();
        for (i, e) in self.elems.iter().enumerate() {
            if !e.terms[0].2.is_one() {
                return false;
            }
            for (j, f) in self.elems.iter().enumerate() {
                if i == j || e.terms[0].0 != f.terms[0].0 {
                    continue;
                }
                let lead = f.terms[0].1;
                if e.terms.iter().any(|t| t.0 == f.terms[0].0 && lead.divides(&t.1)) {
                    return false;
                }
            }
        }
        let _ = ring;
        true
    }

    /// Full S-pair check: every S-polynomial reduces to zero.
    pub fn verify(&self) -> bool {
        engine::verify(&self.ring(), &self.elems)
    }

    /// Equality of generated ideals, for bases under the same order.
    pub fn same_ideal(&self, other: &Self) -> bool {
        self.ctx == other.ctx
            && self.order == other.order
            && self.elems.len() == other.elems.len()
            && self.elems.iter().zip(&other.elems).all(|(a, b)| a.terms == b.terms)
    }
}

fn check_ctx<C: Coeff>(ctx: &Arc<WeylContext>, order: &TermOrder, ops: &[&WeylOp<C>]) -> Result<()> {
    if ops.iter().any(|o| o.ctx() != ctx) {
        return Err(Error::ContextMismatch("generators from different contexts".into()));
    }
    if order.nvars() != ctx.nvars() {
        return Err(Error::InvalidArgument(format!(
            "term order covers {} variables, context has {}",
            order.nvars(),
            ctx.nvars()
        )));
    }
    Ok(())
}

fn run<C: Coeff>(
    ctx: &Arc<WeylContext>,
    order: &TermOrder,
    rank: usize,
    gens: Vec<Vec<Term<C>>>,
    opts: &GbOptions,
) -> Result<GroebnerBasis<C>> {
    let pairs = ctx.pairs();
    let ngens = gens.len();
    let ring = Ring { pairs: &pairs, order };
    let out = engine::buchberger(&ring, gens.clone(), opts)?;
    let gb = GroebnerBasis {
        ctx: ctx.clone(),
        order: order.clone(),
        rank,
        pairs: pairs.clone(),
        elems: out.elems,
        pivots: out.pivots,
        stats: out.stats,
        ngens,
    };
    if opts.post_check {
        let refs: Vec<&Elem<C>> = gb.elems.iter().collect();
        let inputs_ok = gens.into_iter().all(|g| ring.reduce(ring.normalize(g), &refs, |_, _, _| {}).is_empty());
        if !inputs_ok || !gb.verify() {
            return Err(Error::Structural("Gröbner basis post-check failed".into()));
        }
    }
    Ok(gb)
}

/// Reduced Gröbner basis of the left ideal generated by `gens`.
pub fn buchberger<C: Coeff>(gens: &[WeylOp<C>], order: &TermOrder) -> Result<GroebnerBasis<C>> {
    buchberger_with(gens, order, &GbOptions::default())
}

pub fn buchberger_with<C: Coeff>(gens: &[WeylOp<C>], order: &TermOrder, opts: &GbOptions) -> Result<GroebnerBasis<C>> {
    let ctx = match gens.first() {
        Some(g) => g.ctx().clone(),
        None => return Err(Error::InvalidArgument("empty generator list has no context".into())),
    };
    buchberger_in(&ctx, gens, order, opts)
}

/// As [`buchberger_with`] with an explicit context, so an empty generator
/// list yields the zero ideal.
pub fn buchberger_in<C: Coeff>(
    ctx: &Arc<WeylContext>,
    gens: &[WeylOp<C>],
    order: &TermOrder,
    opts: &GbOptions,
) -> Result<GroebnerBasis<C>> {
    check_ctx(ctx, order, &gens.iter().collect::<Vec<_>>())?;
    let pairs = ctx.pairs();
    let ring = Ring { pairs: &pairs, order };
    let terms = gens.iter().map(|g| op_terms(&ring, g)).collect();
    run(ctx, order, 1, terms, opts)
}

/// Reduced Gröbner basis of a submodule of `W^r` under position-over-term
/// with position 0 dominant.
pub fn module_buchberger<C: Coeff>(
    gens: &[FreeModuleElem<C>],
    order: &TermOrder,
    opts: &GbOptions,
) -> Result<GroebnerBasis<C>> {
    let first = gens.first().ok_or_else(|| Error::InvalidArgument("empty generator list".into()))?;
    let rank = first.rank();
    if gens.iter().any(|g| g.rank() != rank) {
        return Err(Error::InvalidArgument("rank mismatch among module generators".into()));
    }
    let ctx = first.ctx().clone();
    let ops: Vec<&WeylOp<C>> = gens.iter().flat_map(|g| g.comps.iter()).collect();
    check_ctx(&ctx, order, &ops)?;
    let pairs = ctx.pairs();
    let ring = Ring { pairs: &pairs, order };
    let terms = gens.iter().map(|g| g.to_terms(&ring)).collect();
    run(&ctx, order, rank, terms, opts)
}

pub fn leading_term<C: Coeff>(p: &WeylOp<C>, order: &TermOrder) -> Result<(Mono, C)> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("the zero operator has no leading term".into()));
    }
    let best = p.poly().terms().iter().max_by(|a, b| order.cmp(&a.0, &b.0)).expect("nonzero");
    Ok(best.clone())
}

/// Result of [`divide`]: `p = Σ cofactors[i]·divisors[i] + remainder`.
#[derive(Debug, Clone)]
pub struct Division<C: Coeff = Rational> {
    pub remainder: WeylOp<C>,
    pub cofactors: Option<Vec<WeylOp<C>>>,
}

pub fn divide<C: Coeff>(p: &WeylOp<C>, divisors: &[WeylOp<C>], order: &TermOrder, track: bool) -> Result<Division<C>> {
    let ctx = p.ctx().clone();
    let mut all: Vec<&WeylOp<C>> = divisors.iter().collect();
    all.push(p);
    check_ctx(&ctx, order, &all)?;
    if divisors.iter().any(WeylOp::is_zero) {
        return Err(Error::InvalidArgument("division by the zero operator".into()));
    }
    let pairs = ctx.pairs();
    let ring = Ring { pairs: &pairs, order };
    let elems: Vec<Elem<C>> = divisors.iter().map(|d| Elem::new(op_terms(&ring, d), None)).collect();
    let refs: Vec<&Elem<C>> = elems.iter().collect();
    let mut cof: Vec<Vec<(Mono, C)>> = vec![Vec::new(); divisors.len()];
    let rem = ring.reduce(op_terms(&ring, p), &refs, |j, q, c| {
        if track {
            cof[j].push((*q, c.clone()));
        }
    });
    let cofactors = track.then(|| cof.into_iter().map(|ts| WeylOp::from_poly(&ctx, Poly::from_terms(ts))).collect());
    Ok(Division { remainder: component(&ctx, &rem, 0), cofactors })
}

/// Generators of the intersection of a left ideal with the commutative
/// subring in `keep` (central variables only).
pub struct Elimination<C: Coeff = Rational> {
    pub generators: Vec<WeylOp<C>>,
    pub basis: GroebnerBasis<C>,
}

pub fn elimination_order(ctx: &WeylContext, keep: &[&str]) -> Result<TermOrder> {
    let mut slots = Vec::new();
    for name in keep {
        let i = ctx.index_of(name).ok_or_else(|| Error::UnknownIdentifier(name.to_string()))?;
        if !ctx.central_slots().contains(&i) {
            return Err(Error::Structural(format!(
                "cannot eliminate onto `{name}`: only central variables may be kept"
            )));
        }
        slots.push(i);
    }
    TermOrder::elimination(ctx.nvars(), &slots)
}

pub fn eliminate<C: Coeff>(gens: &[WeylOp<C>], keep: &[&str], opts: &GbOptions) -> Result<Elimination<C>> {
    let ctx = gens.first().ok_or_else(|| Error::InvalidArgument("empty generator list".into()))?.ctx().clone();
    let order = elimination_order(&ctx, keep)?;
    let mask = keep.iter().fold(0u32, |acc, n| acc | (1 << ctx.index_of(n).expect("checked")));
    let basis = buchberger_in(&ctx, gens, &order, opts)?;
    let generators = basis.elements().into_iter().filter(|e| e.poly().supported_in(mask)).collect();
    Ok(Elimination { generators, basis })
}

/// Generators of `(J : h) = {R | R·h ∈ J}`.
pub fn left_quotient<C: Coeff>(
    j_gens: &[WeylOp<C>],
    h: &WeylOp<C>,
    order: &TermOrder,
    opts: &GbOptions,
) -> Result<Vec<WeylOp<C>>> {
    if h.is_zero() {
        return Err(Error::InvalidArgument("quotient by zero".into()));
    }
    let ctx = h.ctx().clone();
    let zero = WeylOp::zero(&ctx);
    let mut gens = vec![FreeModuleElem::new(vec![h.clone(), WeylOp::one(&ctx)])?];
    for g in j_gens {
        gens.push(FreeModuleElem::new(vec![g.clone(), zero.clone()])?);
    }
    let mopts = GbOptions { track: false, ..opts.clone() };
    let gb = module_buchberger(&gens, order, &mopts)?;
    let mut out = Vec::new();
    for e in gb.module_elements() {
        if e.comps[0].is_zero() {
            out.push(e.comps[1].clone());
        }
    }
    Ok(out)
}

/// Combined genericity conditions from several runs, deduplicated.
pub fn merge_certificates(parts: &[&[Poly<Rational>]]) -> Vec<Poly<Rational>> {
    let mut out: Vec<Poly<Rational>> = Vec::new();
    for p in parts.iter().flat_map(|s| s.iter()) {
        if !out.contains(p) {
            out.push(p.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane() -> Arc<WeylContext> {
        WeylContext::plane(&[], &[])
    }

    fn v(c: &Arc<WeylContext>, n: &str) -> WeylOp {
        WeylOp::var(c, n).unwrap()
    }

    fn cusp_fields(c: &Arc<WeylContext>) -> (WeylOp, WeylOp) {
        let (x1, x2, d1, d2) = (v(c, "x1"), v(c, "x2"), v(c, "d1"), v(c, "d2"));
        (&x1.scale_i64(3) * &d1 + &x2.scale_i64(2) * &d2, &x2.pow(2).scale_i64(3) * &d1 + &x1.scale_i64(2) * &d2)
    }

    #[test]
    fn leading_terms() {
        let c = plane();
        let o = TermOrder::degrevlex(4);
        let op = &(&v(&c, "x1") * &v(&c, "d1")) + &WeylOp::one(&c);
        assert_eq!(leading_term(&op, &o).unwrap().0, Mono::from_exps(&[1, 0, 1, 0]));
        let (_, d2) = cusp_fields(&c);
        let (m, k) = leading_term(&d2.pow(2), &o).unwrap();
        assert_eq!(m, Mono::from_exps(&[0, 4, 2, 0]));
        assert_eq!(k, Rational::from_int(9));
        assert!(leading_term(&WeylOp::<Rational>::zero(&c), &o).is_err());
    }

    #[test]
    fn derivations_are_a_basis() {
        let c = plane();
        let o = TermOrder::degrevlex(4);
        let gb = buchberger(&[v(&c, "d1"), v(&c, "d2")], &o).unwrap();
        assert_eq!(gb.elements().len(), 2);
        assert!(gb.is_reduced() && gb.verify());
        assert!(gb.contains(&(&v(&c, "x2") * &v(&c, "d1"))).unwrap());
        assert!(!gb.contains(&v(&c, "x1")).unwrap());
    }

    #[test]
    fn multiples_are_members() {
        let c = plane();
        let (d1, d2) = cusp_fields(&c);
        let gb = buchberger(&[d1, d2.clone()], &TermOrder::degrevlex(4)).unwrap();
        assert!(gb.contains(&(&v(&c, "x2") * &d2)).unwrap());
        assert!(gb.verify());
    }

    #[test]
    fn division_reconstructs() {
        let c = plane();
        let (d1, d2) = cusp_fields(&c);
        let p = &(&v(&c, "d1") * &d2) + &(&v(&c, "x2").pow(3) * &d1);
        let o = TermOrder::degrevlex(4);
        let div = divide(&p, &[d1.clone(), d2.clone()], &o, true).unwrap();
        let cof = div.cofactors.unwrap();
        let back = &(&(&cof[0] * &d1) + &(&cof[1] * &d2)) + &div.remainder;
        assert_eq!(back, p);
        let trivial = divide(&d1, std::slice::from_ref(&d1), &o, true).unwrap();
        assert!(trivial.remainder.is_zero());
        assert_eq!(trivial.cofactors.unwrap()[0], WeylOp::one(&c));
    }

    #[test]
    fn elimination_only_on_central_variables() {
        let c = WeylContext::plane(&["s"], &[]);
        let x1 = v(&c, "x1");
        assert!(matches!(
            eliminate(std::slice::from_ref(&x1), &["x1"], &GbOptions::default()),
            Err(Error::Structural(_))
        ));
        let unit = eliminate(&[WeylOp::<Rational>::one(&c)], &["s"], &GbOptions::default()).unwrap();
        assert_eq!(unit.generators, vec![WeylOp::one(&c)]);
    }

    #[test]
    fn cusp_b_function_setup_is_nonzero() {
        // h, δ₁ − 6s, δ₂ with s central
        let c = WeylContext::plane(&["s"], &[]);
        let (d1, d2) = cusp_fields(&plane());
        let d1 = d1.embed(&c).unwrap();
        let d2 = d2.embed(&c).unwrap();
        let h = &v(&c, "x1").pow(2) - &v(&c, "x2").pow(3);
        let g1 = &d1 - &v(&c, "s").scale_i64(6);
        let el = eliminate(&[h, g1, d2], &["s"], &GbOptions::default()).unwrap();
        assert_eq!(el.generators.len(), 1);
        // (s + 1)(s + 5/6)(s + 7/6)
        assert_eq!(el.generators[0].to_string(), "s^3 + 3s^2 + 107/36s + 35/36");
    }

    #[test]
    fn module_positions_do_not_interact() {
        let c = plane();
        let z = WeylOp::zero(&c);
        let a = FreeModuleElem::new(vec![v(&c, "x1"), z.clone()]).unwrap();
        let b = FreeModuleElem::new(vec![z, v(&c, "x2")]).unwrap();
        let gb = module_buchberger(&[a.clone(), b.clone()], &TermOrder::degrevlex(4), &GbOptions::default()).unwrap();
        let els = gb.module_elements();
        assert_eq!(els.len(), 2);
        assert!(els.contains(&a) && els.contains(&b));
        assert_eq!(gb.stats().pairs_considered, 0);
    }

    #[test]
    fn structure_sheaf_quotient() {
        // J = (δ₁ + 6, δ₂), h = x₁² − x₂³  ⇒  (J : h) = (∂₁, ∂₂)
        let c = plane();
        let (d1, d2) = cusp_fields(&c);
        let h = &v(&c, "x1").pow(2) - &v(&c, "x2").pow(3);
        let j = vec![&d1 + &WeylOp::from_i64(&c, 6), d2];
        let o = TermOrder::degrevlex(4);
        let k = left_quotient(&j, &h, &o, &GbOptions::default()).unwrap();
        let gb = buchberger(&k, &o).unwrap();
        let expected = buchberger(&[v(&c, "d1"), v(&c, "d2")], &o).unwrap();
        assert!(gb.same_ideal(&expected));
        let one = left_quotient(&j, &WeylOp::one(&c), &o, &GbOptions::default()).unwrap();
        assert!(buchberger(&one, &o).unwrap().same_ideal(&buchberger(&j, &o).unwrap()));
    }

    #[test]
    fn tracked_representation() {
        let c = WeylContext::plane(&["s"], &[]);
        let (d1, d2) = cusp_fields(&plane());
        let d1 = d1.embed(&c).unwrap();
        let d2 = d2.embed(&c).unwrap();
        let h = &v(&c, "x1").pow(2) - &v(&c, "x2").pow(3);
        let gens = vec![h, &d1 - &v(&c, "s").scale_i64(6), d2];
        let order = elimination_order(&c, &["s"]).unwrap();
        let gb = buchberger_with(&gens, &order, &GbOptions { track: true, ..Default::default() }).unwrap();
        for (i, e) in gb.elements().iter().enumerate() {
            let rep = gb.representation(i).unwrap();
            let mut acc = WeylOp::zero(&c);
            for (r, g) in rep.iter().zip(&gens) {
                acc = &acc + &(r * g);
            }
            assert_eq!(&acc, e);
        }
    }

    #[test]
    fn degree_bound_aborts() {
        let c = WeylContext::plane(&["s"], &[]);
        let (d1, d2) = cusp_fields(&plane());
        let gens = vec![
            &v(&c, "x1").pow(2) - &v(&c, "x2").pow(3),
            &d1.embed(&c).unwrap() - &v(&c, "s").scale_i64(6),
            d2.embed(&c).unwrap(),
        ];
        let order = elimination_order(&c, &["s"]).unwrap();
        let r = buchberger_with(&gens, &order, &GbOptions { degree_bound: 2, ..Default::default() });
        assert!(matches!(r, Err(Error::DegreeBound { bound: 2, degree: 3 })));
    }

    #[test]
    fn module_pairs_with_coprime_leads() {
        // a commutative quotient whose pairs have coprime leading terms in
        // position 0 but nonzero tails in position 1
        let c = WeylContext::commutative(&["x1", "x2", "xi1", "xi2"], &[]).unwrap();
        let (x1, x2, y1, y2) = (v(&c, "x1"), v(&c, "x2"), v(&c, "xi1"), v(&c, "xi2"));
        let s1 = &(&x1 * &y1).scale_i64(3) + &(&x2 * &y2).scale_i64(2);
        let s2 = &(&x2.pow(2) * &y1).scale_i64(3) + &(&x1 * &y2).scale_i64(2);
        let h = &x1.pow(2) - &x2.pow(3);
        let order = TermOrder::degrevlex(4);
        let q = left_quotient(&[s1.clone(), s2.pow(2)], &h, &order, &GbOptions::default()).unwrap();
        let q0 = &(&x2 * &y1.pow(2)).scale_i64(9) - &y2.pow(2).scale_i64(4);
        let got = buchberger(&q, &order).unwrap();
        let want = buchberger(&[s1, q0], &order).unwrap();
        assert!(got.same_ideal(&want));
    }
}
