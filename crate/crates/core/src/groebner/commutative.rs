//! Commutative Gröbner bases as the pair-free case of the Weyl engine.

use std::sync::Arc;

use super::{buchberger_in, GbOptions, GroebnerBasis, TermOrder};
use crate::error::{Error, Result};
use crate::ratpoly::{Coeff, CommPoly, VarContext};
use crate::weyl::{WeylContext, WeylOp};

/// A Gröbner basis of an ideal of a polynomial ring.
pub struct CommGroebnerBasis<C: Coeff> {
    ctx: Arc<VarContext>,
    inner: GroebnerBasis<C>,
}

fn weyl_context(ctx: &VarContext) -> Arc<WeylContext> {
    WeylContext::commutative(ctx.names(), ctx.params()).expect("names already validated")
}

fn lift<C: Coeff>(wctx: &Arc<WeylContext>, p: &CommPoly<C>) -> WeylOp<C> {
    WeylOp::from_poly(wctx, p.poly().clone())
}

fn check<C: Coeff>(ctx: &Arc<VarContext>, gens: &[CommPoly<C>]) -> Result<()> {
    if gens.iter().any(|g| g.ctx() != ctx) {
        return Err(Error::ContextMismatch("generators from different contexts".into()));
    }
    Ok(())
}

impl<C: Coeff> CommGroebnerBasis<C> {
    pub fn generators(&self) -> Vec<CommPoly<C>> {
        self.inner.elements().into_iter().map(|e| CommPoly::new(&self.ctx, e.into_poly())).collect()
    }

    pub fn reduce(&self, p: &CommPoly<C>) -> Result<CommPoly<C>> {
        if p.ctx() != &self.ctx {
            return Err(Error::ContextMismatch("polynomial and basis contexts differ".into()));
        }
        let r = self.inner.reduce(&lift(self.inner.ctx(), p))?;
        Ok(CommPoly::new(&self.ctx, r.into_poly()))
    }

    pub fn contains(&self, p: &CommPoly<C>) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }

    pub fn verify(&self) -> bool {
        self.inner.verify()
    }

    pub fn is_reduced(&self) -> bool {
        self.inner.is_reduced()
    }

    pub fn basis(&self) -> &GroebnerBasis<C> {
        &self.inner
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }
}

/// Reduced Gröbner basis; an empty generator list gives the zero ideal.
pub fn commutative_buchberger<C: Coeff>(
    ctx: &Arc<VarContext>,
    gens: &[CommPoly<C>],
    order: &TermOrder,
) -> Result<CommGroebnerBasis<C>> {
    check(ctx, gens)?;
    let wctx = weyl_context(ctx);
    let ops: Vec<WeylOp<C>> = gens.iter().map(|g| lift(&wctx, g)).collect();
    let inner = buchberger_in(&wctx, &ops, order, &GbOptions::default())?;
    Ok(CommGroebnerBasis { ctx: ctx.clone(), inner })
}

/// Generators of `(I : h) = {p | p·h ∈ I}`.
pub fn colon_ideal<C: Coeff>(
    ctx: &Arc<VarContext>,
    ideal: &[CommPoly<C>],
    h: &CommPoly<C>,
) -> Result<Vec<CommPoly<C>>> {
    check(ctx, ideal)?;
    check(ctx, std::slice::from_ref(h))?;
    if h.is_zero() {
        return Err(Error::InvalidArgument("colon by the zero polynomial".into()));
    }
    let wctx = weyl_context(ctx);
    let ops: Vec<WeylOp<C>> = ideal.iter().map(|g| lift(&wctx, g)).collect();
    let order = TermOrder::degrevlex(ctx.names().len());
    let q = super::left_quotient(&ops, &lift(&wctx, h), &order, &GbOptions::default())?;
    let qb = buchberger_in(&wctx, &q, &order, &GbOptions::default())?;
    Ok(qb.elements().into_iter().map(|e| CommPoly::new(ctx, e.into_poly())).collect())
}

/// Equality of the ideals generated by `a` and `b`.
pub fn ideal_eq<C: Coeff>(ctx: &Arc<VarContext>, a: &[CommPoly<C>], b: &[CommPoly<C>]) -> Result<bool> {
    let order = TermOrder::degrevlex(ctx.names().len());
    let ga = commutative_buchberger(ctx, a, &order)?;
    let gb = commutative_buchberger(ctx, b, &order)?;
    Ok(ga.inner.same_ideal(&gb.inner))
}

/// Krull dimension of `R/I`, read off the leading monomials of a
/// Gröbner basis as the size of a largest independent set of variables.
pub fn krull_dimension<C: Coeff>(ctx: &Arc<VarContext>, gens: &[CommPoly<C>]) -> Result<usize> {
    let n = ctx.names().len();
    let gb = commutative_buchberger(ctx, gens, &TermOrder::degrevlex(n))?;
    if gb.inner.is_unit() {
        return Ok(0);
    }
    let supports: Vec<u32> = gb.inner.leading_monomials().iter().map(|(_, m)| m.support()).collect();
    let mut best = 0;
    for subset in 0u32..(1 << n) {
        let size = subset.count_ones() as usize;
        if size <= best {
            continue;
        }
        if supports.iter().all(|s| s & !subset != 0) {
            best = size;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::Rational;

    fn ctx() -> Arc<VarContext> {
        VarContext::new(&["x1", "x2"], &[]).unwrap()
    }

    fn v(c: &Arc<VarContext>, n: &str) -> CommPoly<Rational> {
        CommPoly::var(c, n).unwrap()
    }

    #[test]
    fn already_reduced() {
        let c = ctx();
        let gb = commutative_buchberger(&c, &[v(&c, "x1"), v(&c, "x2")], &TermOrder::degrevlex(2)).unwrap();
        assert_eq!(gb.generators(), vec![v(&c, "x2"), v(&c, "x1")]);
    }

    #[test]
    fn cusp_with_crossing() {
        let c = ctx();
        let h = &v(&c, "x1").pow(2) - &v(&c, "x2").pow(3);
        let g = &v(&c, "x1") * &v(&c, "x2");
        let gb = commutative_buchberger(&c, &[h.clone(), g.clone()], &TermOrder::lex(2)).unwrap();
        let gens = gb.generators();
        assert!(gens.contains(&v(&c, "x2").pow(4)));
        assert!(gens.contains(&g));
        assert!(gens.contains(&h.neg()) || gens.contains(&h));
        assert!(gb.contains(&v(&c, "x2").pow(5)).unwrap());
        assert!(!gb.contains(&v(&c, "x2").pow(3)).unwrap());
        assert!(gb.verify());
    }

    #[test]
    fn empty_is_zero_ideal() {
        let c = ctx();
        let gb = commutative_buchberger::<Rational>(&c, &[], &TermOrder::degrevlex(2)).unwrap();
        assert!(gb.generators().is_empty());
        assert!(!gb.contains(&v(&c, "x1")).unwrap());
    }

    #[test]
    fn trivial_colons() {
        let c = ctx();
        let x1 = v(&c, "x1");
        let one = CommPoly::constant(&c, Rational::one());
        let i = vec![x1.clone(), v(&c, "x2").pow(2)];
        let q = colon_ideal(&c, &i, &one).unwrap();
        assert!(ideal_eq(&c, &q, &i).unwrap());
        let full = colon_ideal(&c, std::slice::from_ref(&x1), &x1).unwrap();
        assert_eq!(full, vec![one]);
        assert!(colon_ideal(&c, &[x1], &CommPoly::zero(&c)).is_err());
    }

    #[test]
    fn dimensions() {
        let c = ctx();
        assert_eq!(krull_dimension(&c, &[v(&c, "x1")]).unwrap(), 1);
        assert_eq!(krull_dimension(&c, &[v(&c, "x1"), v(&c, "x2")]).unwrap(), 0);
        assert_eq!(krull_dimension::<Rational>(&c, &[]).unwrap(), 2);
    }
}
