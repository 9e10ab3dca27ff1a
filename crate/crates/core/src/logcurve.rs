//! Quasi-homogeneous plane curves and their logarithmic derivations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{buchberger_in, GbOptions, TermOrder};
use crate::ratpoly::{Coeff, CommPoly, Mono, Poly, Rational};
use crate::weyl::{WeylContext, WeylOp};

/// A reduced quasi-homogeneous curve `h = 0` with weights `(ω₁, ω₂)`.
///
/// `δ₁ = ω₁x₁∂₁ + ω₂x₂∂₂` and `δ₂ = −h_{x₂}∂₁ + h_{x₁}∂₂` form a basis of the
/// logarithmic derivations, with `[δ₁, δ₂] = c·δ₂`.
#[derive(Clone, Debug)]
pub struct PlaneCurve {
    ctx: Arc<WeylContext>,
    weights: (u32, u32),
    omega_h: u32,
    h: WeylOp,
    delta1: WeylOp,
    delta2: WeylOp,
    c: i64,
}

fn weight(weights: (u32, u32), slots: (usize, usize), m: &Mono) -> u32 {
    weights.0 * m.exp(slots.0) as u32 + weights.1 * m.exp(slots.1) as u32
}

impl PlaneCurve {
    /// The operator context `x1, x2, d1, d2`.
    pub fn ctx(&self) -> &Arc<WeylContext> {
        &self.ctx
    }

    pub fn weights(&self) -> (u32, u32) {
        self.weights
    }

    pub fn omega_h(&self) -> u32 {
        self.omega_h
    }

    pub fn h(&self) -> &WeylOp {
        &self.h
    }

    pub fn delta1(&self) -> &WeylOp {
        &self.delta1
    }

    pub fn delta2(&self) -> &WeylOp {
        &self.delta2
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    /// `h_{x₁}` and `h_{x₂}`.
    pub fn partials(&self) -> (WeylOp, WeylOp) {
        let p = self.h.poly();
        (
            WeylOp::from_poly(&self.ctx, p.derivative(self.ctx.x_slot(0))),
            WeylOp::from_poly(&self.ctx, p.derivative(self.ctx.x_slot(1))),
        )
    }

    /// Determinant of the coefficient matrix of `(δ₁, δ₂)`.
    pub fn saito_determinant(&self) -> WeylOp {
        let (hx1, hx2) = self.partials();
        let x1 = WeylOp::x(&self.ctx, 0).scale_i64(self.weights.0 as i64);
        let x2 = WeylOp::x(&self.ctx, 1).scale_i64(self.weights.1 as i64);
        &(&x1 * &hx1) - &(&x2 * &hx2.neg())
    }

    /// Weighted degree of an x-monomial in any context with slots `x1, x2`.
    pub fn weight_in(&self, ctx: &WeylContext, m: &Mono) -> u32 {
        weight(self.weights, (ctx.x_slot(0), ctx.x_slot(1)), m)
    }

    /// `h`, `δ₁`, `δ₂` moved into a context containing `x1, x2, d1, d2`.
    pub fn embedded<C: Coeff>(&self, ctx: &Arc<WeylContext>) -> Result<(WeylOp<C>, WeylOp<C>, WeylOp<C>)> {
        Ok((
            self.h.specialize_into(ctx, &[])?,
            self.delta1.specialize_into(ctx, &[])?,
            self.delta2.specialize_into(ctx, &[])?,
        ))
    }

    /// Whether this is the cusp `x₁² − x₂³` with weights `(3, 2)`.
    pub fn is_cusp(&self) -> bool {
        let x1 = WeylOp::x(&self.ctx, 0);
        let x2 = WeylOp::x(&self.ctx, 1);
        self.weights == (3, 2) && self.h == &x1.pow(2) - &x2.pow(3)
    }
}

/// Validates `h` and derives the logarithmic basis.
///
/// `h` must be a nonzero polynomial in `x1, x2` whose monomials all have the
/// same weighted degree, and `(h, h_{x₁}, h_{x₂})` must contain a power of
/// each variable.
pub fn build_curve(w1: u32, w2: u32, h: &CommPoly) -> Result<PlaneCurve> {
    if w1 == 0 || w2 == 0 {
        return Err(Error::InvalidCurve("weights must be strictly positive".into()));
    }
    let ctx = WeylContext::plane(&[], &[]);
    let mut terms = Vec::new();
    for (m, c) in h.poly().terms() {
        let mut n = Mono::ONE;
        for (i, name) in h.ctx().names().iter().enumerate() {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            match name.as_str() {
                "x1" => n.set(ctx.x_slot(0), e),
                "x2" => n.set(ctx.x_slot(1), e),
                other => {
                    return Err(Error::InvalidCurve(format!("h must be a polynomial in x1, x2 (found `{other}`)")))
                }
            }
        }
        terms.push((n, c.clone()));
    }
    let hop = WeylOp::from_poly(&ctx, Poly::from_terms(terms));
    curve_from_op(w1, w2, hop)
}

fn curve_from_op(w1: u32, w2: u32, h: WeylOp) -> Result<PlaneCurve> {
    let ctx = h.ctx().clone();
    if h.is_zero() {
        return Err(Error::InvalidCurve("h is zero".into()));
    }
    let weights = (w1, w2);
    let slots = (ctx.x_slot(0), ctx.x_slot(1));
    let ws: Vec<u32> = h.poly().terms().iter().map(|t| weight(weights, slots, &t.0)).collect();
    let omega_h = ws[0];
    if let Some(&other) = ws.iter().find(|&&w| w != omega_h) {
        return Err(Error::InvalidCurve(format!(
            "h is not quasi-homogeneous for weights ({w1}, {w2}): monomials of weight {omega_h} and {other}"
        )));
    }
    if omega_h == 0 {
        return Err(Error::InvalidCurve("h is a nonzero constant".into()));
    }
    let hx1 = WeylOp::from_poly(&ctx, h.poly().derivative(slots.0));
    let hx2 = WeylOp::from_poly(&ctx, h.poly().derivative(slots.1));
    check_reduced(&ctx, &h, &hx1, &hx2)?;

    let x1 = WeylOp::x(&ctx, 0);
    let x2 = WeylOp::x(&ctx, 1);
    let d1 = WeylOp::d(&ctx, 0);
    let d2 = WeylOp::d(&ctx, 1);
    let delta1 = &(&x1.scale_i64(w1 as i64) * &d1) + &(&x2.scale_i64(w2 as i64) * &d2);
    let delta2 = &(&hx2.neg() * &d1) + &(&hx1 * &d2);
    let c = omega_h as i64 - w1 as i64 - w2 as i64;
    let curve = PlaneCurve { ctx: ctx.clone(), weights, omega_h, h, delta1, delta2, c };

    let h = &curve.h;
    if curve.delta1.apply(h)? != h.scale_i64(omega_h as i64) {
        return Err(Error::InvalidCurve("δ₁(h) ≠ ω_h·h".into()));
    }
    if !curve.delta2.apply(h)?.is_zero() {
        return Err(Error::InvalidCurve("δ₂(h) ≠ 0".into()));
    }
    if curve.saito_determinant() != h.scale_i64(omega_h as i64) {
        return Err(Error::InvalidCurve("Saito determinant differs from ω_h·h".into()));
    }
    if curve.delta1.commutator(&curve.delta2)? != curve.delta2.scale_i64(c) {
        return Err(Error::InvalidCurve("[δ₁, δ₂] ≠ c·δ₂".into()));
    }
    Ok(curve)
}

fn check_reduced(ctx: &Arc<WeylContext>, h: &WeylOp, hx1: &WeylOp, hx2: &WeylOp) -> Result<()> {
    let fctx = WeylContext::commutative(&["x1", "x2"], &[])?;
    let lift = |p: &WeylOp| WeylOp::<Rational>::from_poly(&fctx, p.poly().remap_vars(&slot_map(ctx)));
    let gens = vec![lift(h), lift(hx1), lift(hx2)];
    let gb = buchberger_in(&fctx, &gens, &TermOrder::degrevlex(2), &GbOptions::default())?;
    let leads = gb.leading_monomials();
    let pure = |i: usize| leads.iter().any(|(_, m)| m.support() & !(1 << i) == 0);
    if pure(0) && pure(1) {
        Ok(())
    } else {
        Err(Error::InvalidCurve("h is not reduced: (h, h_x1, h_x2) does not contain a power of each variable".into()))
    }
}

fn slot_map(ctx: &WeylContext) -> Vec<usize> {
    let mut map = vec![0usize; crate::ratpoly::MAX_VARS];
    map[ctx.x_slot(0)] = 0;
    map[ctx.x_slot(1)] = 1;
    map
}

/// Solution of `(δ₁ − k)(p) = q`.
#[derive(Clone, Debug)]
pub struct EulerSolution<C: Coeff> {
    /// The solution without weight-`k` component.
    pub particular: WeylOp<C>,
    /// Monomials of weight exactly `k`, spanning the kernel.
    pub kernel: Vec<WeylOp<C>>,
}

/// Solves `(δ₁ − k)(p) = q` monomial by monomial: `δ₁` multiplies an
/// x-monomial by its weight. Central variables have weight zero.
pub fn euler_solve<C: Coeff>(curve: &PlaneCurve, k: i64, q: &WeylOp<C>) -> Result<EulerSolution<C>> {
    let ctx = q.ctx().clone();
    if !q.is_function() {
        return Err(Error::Structural("right-hand side must be a function".into()));
    }
    let mut terms = Vec::new();
    for (m, c) in q.poly().terms() {
        let w = curve.weight_in(&ctx, m) as i64;
        if w == k {
            return Err(Error::Unsolvable(format!("right-hand side `{q}` has a nonzero component of weight {k}")));
        }
        terms.push((*m, c.div(&C::from_i64(w - k))));
    }
    let particular = WeylOp::from_poly(&ctx, Poly::from_terms(terms));
    let mut kernel = Vec::new();
    if k >= 0 {
        let (w1, w2) = curve.weights();
        for i in (0..=k as u32 / w1).rev() {
            let rest = k as u32 - i * w1;
            if rest.is_multiple_of(w2) {
                let mut m = Mono::ONE;
                m.set(ctx.x_slot(0), i as u16);
                m.set(ctx.x_slot(1), (rest / w2) as u16);
                kernel.push(WeylOp::from_poly(&ctx, Poly::monomial(m, C::one())));
            }
        }
    }
    let (_, d1, _) = curve.embedded::<C>(&ctx)?;
    let check = &d1.apply(&particular)? - &particular.scale_i64(k);
    debug_assert_eq!(&check, q);
    if &check != q {
        return Err(Error::Structural("Euler solver failed re-substitution".into()));
    }
    Ok(EulerSolution { particular, kernel })
}

/// Coefficients `a_ij` of `Σ a_ij δ₁^i δ₂^j`, keyed by `(i, j)`.
pub type LogParts<C> = Vec<((u32, u32), WeylOp<C>)>;

/// Writes an operator of the logarithmic ring as `Σ a_ij δ₁^i δ₂^j` with
/// function coefficients, returned as `((i, j), a_ij)` with `a_ij ≠ 0`.
///
/// The order-`d` symbol, with `ξ` expressed through the symbols `u, v` of
/// `δ₁, δ₂`, must be divisible by `(ω_h h)^d`; otherwise the operator is not
/// logarithmic and a structural error is returned.
pub fn log_decompose<C: Coeff>(curve: &PlaneCurve, p: &WeylOp<C>) -> Result<LogParts<C>> {
    let ctx = p.ctx().clone();
    if ctx.nvars() + 2 > crate::ratpoly::MAX_VARS {
        return Err(Error::InvalidArgument("too many variables for the logarithmic decomposition".into()));
    }
    let (h, d1, d2) = curve.embedded::<C>(&ctx)?;
    let (u, v) = (ctx.nvars(), ctx.nvars() + 1);
    let (w1, w2) = curve.weights();
    let hx1 = h.poly().derivative(ctx.x_slot(0));
    let hx2 = h.poly().derivative(ctx.x_slot(1));
    let x1 = Poly::<C>::var(ctx.x_slot(0));
    let x2 = Poly::<C>::var(ctx.x_slot(1));
    let xi1 = hx1.mul(&Poly::var(u)).sub(&x2.scale(&C::from_i64(w2 as i64)).mul(&Poly::var(v)));
    let xi2 = hx2.mul(&Poly::var(u)).add(&x1.scale(&C::from_i64(w1 as i64)).mul(&Poly::var(v)));
    let wh = h.poly().scale(&C::from_i64(curve.omega_h() as i64));
    let ds = ctx.d_slots();
    let mut rest = p.clone();
    let mut out: Vec<((u32, u32), WeylOp<C>)> = Vec::new();
    while !rest.is_zero() {
        let d = rest.order();
        let top = Poly::from_terms(rest.poly().terms().iter().filter(|t| t.0.degree_in(&ds) == d).cloned());
        let sub = top.substitute(ds[0], &xi1).substitute(ds[1], &xi2);
        let denom = wh.pow(d);
        let mut lower = rest.clone();
        for (i, part) in sub.univariate_coeffs(u).iter().enumerate() {
            for (j, coeff) in part.univariate_coeffs(v).iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let a = coeff
                    .div_exact(&denom)
                    .ok_or_else(|| Error::Structural(format!("`{p}` is not a logarithmic differential operator")))?;
                let a = WeylOp::from_poly(&ctx, a);
                let term = &(&a * &d1.pow(i as u32)) * &d2.pow(j as u32);
                lower = &lower - &term;
                match out.iter_mut().find(|o| o.0 == (i as u32, j as u32)) {
                    Some(o) => o.1 = &o.1 + &a,
                    None => out.push(((i as u32, j as u32), a)),
                }
            }
        }
        debug_assert!(lower.is_zero() || lower.order() < d);
        rest = lower;
    }
    out.retain(|o| !o.1.is_zero());
    out.sort_by_key(|a| std::cmp::Reverse((a.0 .0 + a.0 .1, a.0)));
    Ok(out)
}

/// Inverse of [`log_decompose`].
pub fn log_compose<C: Coeff>(curve: &PlaneCurve, parts: &[((u32, u32), WeylOp<C>)]) -> Result<WeylOp<C>> {
    let ctx = parts.first().map(|p| p.1.ctx().clone()).unwrap_or_else(|| curve.ctx().clone());
    let (_, d1, d2) = curve.embedded::<C>(&ctx)?;
    let mut acc = WeylOp::zero(&ctx);
    for ((i, j), a) in parts {
        acc = &acc + &(&(a * &d1.pow(*i)) * &d2.pow(*j));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::VarContext;

    fn poly(src: &[(i64, u16, u16)]) -> CommPoly {
        let ctx = VarContext::new(&["x1", "x2"], &[]).unwrap();
        CommPoly::new(
            &ctx,
            Poly::from_terms(src.iter().map(|&(c, a, b)| (Mono::from_exps(&[a, b]), Rational::from_int(c)))),
        )
    }

    #[test]
    fn cusp_data() {
        let curve = build_curve(3, 2, &poly(&[(1, 2, 0), (-1, 0, 3)])).unwrap();
        assert_eq!(curve.delta1().to_string(), "3x1*d1 + 2x2*d2");
        assert_eq!(curve.delta2().to_string(), "3x2^2*d1 + 2x1*d2");
        assert_eq!((curve.c(), curve.omega_h()), (1, 6));
        assert!(curve.is_cusp());
    }

    #[test]
    fn normal_crossing() {
        let curve = build_curve(1, 1, &poly(&[(1, 1, 1)])).unwrap();
        assert_eq!(curve.delta1().to_string(), "x1*d1 + x2*d2");
        assert_eq!(curve.delta2().to_string(), "-x1*d1 + x2*d2");
        assert_eq!((curve.c(), curve.omega_h()), (0, 2));
    }

    #[test]
    fn rejections() {
        assert!(matches!(build_curve(3, 2, &poly(&[(1, 2, 0), (-1, 0, 2)])), Err(Error::InvalidCurve(_))));
        assert!(matches!(build_curve(3, 2, &poly(&[])), Err(Error::InvalidCurve(_))));
        // x1^2 is not reduced
        assert!(matches!(build_curve(1, 1, &poly(&[(1, 2, 0)])), Err(Error::InvalidCurve(_))));
        assert!(matches!(build_curve(0, 1, &poly(&[(1, 1, 0)])), Err(Error::InvalidCurve(_))));
    }

    #[test]
    fn decomposition() {
        let curve = build_curve(3, 2, &poly(&[(1, 2, 0), (-1, 0, 3)])).unwrap();
        let ctx = curve.ctx().clone();
        let d1 = curve.delta1().clone();
        let d2 = curve.delta2().clone();
        let x2 = WeylOp::x(&ctx, 1);
        let p = &(&(&x2 * &d1.pow(2)) * &d2) + &(&d2 * &d1);
        let parts = log_decompose(&curve, &p).unwrap();
        assert_eq!(log_compose(&curve, &parts).unwrap(), p);
        assert_eq!(parts[0], ((2, 1), x2.clone()));
        assert_eq!(parts.len(), 3);
        assert!(log_decompose(&curve, &WeylOp::<Rational>::d(&ctx, 0)).is_err());
        let hd1 = &curve.h().clone() * &WeylOp::d(&ctx, 0);
        assert!(log_decompose(&curve, &hd1).is_ok());
    }

    #[test]
    fn euler_kernels() {
        let curve = build_curve(3, 2, &poly(&[(1, 2, 0), (-1, 0, 3)])).unwrap();
        let ctx = curve.ctx().clone();
        let x2 = WeylOp::x(&ctx, 1);
        let sol = euler_solve(&curve, 2, &WeylOp::<Rational>::zero(&ctx)).unwrap();
        assert!(sol.particular.is_zero());
        assert_eq!(sol.kernel, vec![x2.clone()]);
        let sol = euler_solve(&curve, 0, &x2).unwrap();
        assert_eq!(sol.particular, x2.scale(&Rational::new(1, 2)));
        assert_eq!(sol.kernel, vec![WeylOp::one(&ctx)]);
        assert!(euler_solve(&curve, 1, &x2).unwrap().kernel.is_empty());
        assert!(matches!(euler_solve(&curve, 2, &x2), Err(Error::Unsolvable(_))));
    }
}
