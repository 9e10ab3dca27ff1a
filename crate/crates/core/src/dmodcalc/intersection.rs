//! Presentations of the image of `D/I_{a+ω_h(1−k′)} → D/I_{a+ω_h k}`,
//! `P̄ ↦ P̄h^{k+k′−1}`, and their characteristic varieties.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{buchberger_in, left_quotient, merge_certificates, GbOptions, GroebnerBasis, TermOrder};
use crate::ilc::{twist_kd, CuspFamily, IlcSpec};
use crate::ratpoly::{ideal_eq, krull_dimension, Coeff, CommPoly, Poly, Rational, VarContext};
use crate::weyl::{WeylContext, WeylOp};

/// Check of the closed form `K = (g₁, Q)` for the cusp family.
#[derive(Clone, Debug)]
pub struct ClosedForm<C: Coeff> {
    pub q: WeylOp<C>,
    /// `Qh = x₂(δ₁ + a + 7 − 2λ)(g₁ + 6) − g₂ + (λ² − λ + ν − ν²)x₂`.
    pub identity: bool,
    /// `[Q, g₁] = 4Q`.
    pub commutator: bool,
    /// `K = D(g₁, Q)`.
    pub equal: bool,
}

#[derive(Clone, Debug)]
pub struct IntersectionPresentation<C: Coeff> {
    pub k: i64,
    pub kprime: i64,
    /// Reduced Gröbner basis of `K` under degrevlex, largest leading term first.
    pub k_gens: Vec<WeylOp<C>>,
    /// Principal symbols of a basis of `K` under an order refining the
    /// order filtration; they generate `gr K`.
    pub symbol_ideal: Vec<CommPoly<C>>,
    pub conormal_origin_excluded: bool,
    pub genericity_certificate: Vec<Poly<Rational>>,
    /// Present when the family satisfies `λ² − λ + ν − ν² = 0` and `k = k′ = 1`.
    pub closed_form: Option<ClosedForm<C>>,
    /// Every generator `R` satisfies `R·h^{k+k′−1} ∈ I_{a+ω_h k}`.
    pub members_verified: bool,
    /// `I_{a+ω_h(1−k′)} ⊆ K`.
    pub source_contained: bool,
    symbol_ctx: Arc<VarContext>,
    sigma_g: (CommPoly<C>, CommPoly<C>),
    cusp: bool,
}

/// `∂`-first block order: `∂` degree dominates, degrevlex inside blocks.
pub fn order_filtration(ctx: &WeylContext) -> Result<TermOrder> {
    let d: Vec<usize> = ctx.d_slots();
    let rest: Vec<usize> = (0..ctx.nvars()).filter(|i| !d.contains(i)).collect();
    TermOrder::blocks(ctx.nvars(), vec![d, rest])
}

/// `Q = 9x₂∂₁² − 4∂₂² + 6m x₂∂₁ − 4n∂₂ + m²x₂ − n²`.
pub fn cusp_q<C: Coeff>(fam: &CuspFamily<C>) -> WeylOp<C> {
    let ctx = fam.lambda.ctx().clone();
    let x2 = WeylOp::x(&ctx, 1);
    let d1 = WeylOp::d(&ctx, 0);
    let d2 = WeylOp::d(&ctx, 1);
    let q0 = &(&x2 * &d1.pow(2)).scale_i64(9) - &d2.pow(2).scale_i64(4);
    let lin = &(&(&fam.m * &x2) * &d1).scale_i64(6) - &(&fam.n * &d2).scale_i64(4);
    let cst = &(&fam.m.pow(2) * &x2) - &fam.n.pow(2);
    &(&q0 + &lin) + &cst
}

fn closed_form<C: Coeff>(
    spec: &IlcSpec<C>,
    fam: &CuspFamily<C>,
    k_basis: &GroebnerBasis<C>,
    order: &TermOrder,
    opts: &GbOptions,
) -> Result<Option<ClosedForm<C>>> {
    let ctx = spec.ctx().clone();
    let lam = &fam.lambda;
    let cond = &(&(lam * lam) - lam) + &(&fam.nu - &fam.nu.pow(2));
    if !cond.is_zero() {
        return Ok(None);
    }
    let q = cusp_q(fam);
    let (d1, _, h) = spec.fields();
    let x2 = WeylOp::x(&ctx, 1);
    let g1 = spec.g1();
    let shift = &(&d1 + spec.a()) + &(&WeylOp::from_i64(&ctx, 7) - &lam.scale_i64(2));
    let rhs = &(&(&(&x2 * &shift) * &(g1 + &WeylOp::from_i64(&ctx, 6))) - spec.g2()) + &(&cond * &x2);
    let identity = &q * &h == rhs;
    let commutator = q.commutator(g1)? == q.scale_i64(4);
    let other = buchberger_in(&ctx, &[g1.clone(), q.clone()], order, opts)?;
    let equal = other.same_ideal(k_basis);
    Ok(Some(ClosedForm { q, identity, commutator, equal }))
}

/// `K = {R | R·h^{k+k′−1} ∈ I_{a+ω_h k}}`, which contains
/// `I_{a+ω_h(1−k′)}`, computed by iterated left quotients by `h`.
pub fn intersection_presentation<C: Coeff>(
    spec: &IlcSpec<C>,
    k: i64,
    kprime: i64,
    family: Option<&CuspFamily<C>>,
    opts: &GbOptions,
) -> Result<IntersectionPresentation<C>> {
    if 1 - kprime > k {
        return Err(Error::InvalidArgument(format!("need 1 - k' <= k, got k = {k}, k' = {kprime}")));
    }
    let ctx = spec.ctx().clone();
    let order = TermOrder::degrevlex(ctx.nvars());
    let target = twist_kd(spec, k);
    let source = twist_kd(spec, 1 - kprime);
    let (_, _, h) = spec.fields();
    let power = (k + kprime - 1) as u32;
    let target_gens = vec![target.g1().clone(), target.g2().clone()];
    let target_gb = buchberger_in(&ctx, &target_gens, &order, opts)?;
    let mut certs: Vec<Vec<Poly<Rational>>> = vec![target_gb.genericity_certificate().to_vec()];
    let mut gens = target_gb.elements();
    for _ in 0..power {
        gens = left_quotient(&gens, &h, &order, opts)?;
    }
    let k_gb = buchberger_in(&ctx, &gens, &order, opts)?;
    certs.push(k_gb.genericity_certificate().to_vec());
    let mut k_gens = k_gb.elements();
    k_gens.reverse();

    let hp = h.pow(power);
    let mut members_verified = true;
    for r in &k_gens {
        members_verified &= target_gb.contains(&(r * &hp))?;
    }
    let source_contained = k_gb.contains(source.g1())? && k_gb.contains(source.g2())?;

    let forder = order_filtration(&ctx)?;
    let f_gb = buchberger_in(&ctx, &k_gens, &forder, opts)?;
    certs.push(f_gb.genericity_certificate().to_vec());
    let symbol_ideal: Vec<CommPoly<C>> = f_gb.elements().iter().rev().map(WeylOp::principal_symbol).collect();
    let slots: Vec<usize> = (0..ctx.base().len()).map(|i| ctx.x_slot(i)).collect();
    let conormal_origin_excluded =
        symbol_ideal.iter().any(|p| p.poly().terms().iter().any(|(m, _)| m.degree_in(&slots) == 0));

    let closed = match family {
        Some(f) if spec.curve().is_cusp() && spec.rank() == 2 && k == 1 && kprime == 1 => {
            closed_form(spec, f, &k_gb, &order, opts)?
        }
        _ => None,
    };
    let refs: Vec<&[Poly<Rational>]> = certs.iter().map(Vec::as_slice).collect();
    let sctx = ctx.symbol_context();
    let sigma_g = (spec.g1().principal_symbol(), spec.g2().principal_symbol());
    Ok(IntersectionPresentation {
        k,
        kprime,
        k_gens,
        symbol_ideal,
        conormal_origin_excluded,
        genericity_certificate: merge_certificates(&refs),
        closed_form: closed,
        members_verified,
        source_contained,
        symbol_ctx: sctx,
        sigma_g,
        cusp: spec.curve().is_cusp(),
    })
}

#[derive(Clone, Debug)]
pub struct CharVarReport<C: Coeff> {
    pub symbol_ideal: Vec<CommPoly<C>>,
    pub conormal_origin_excluded: bool,
    /// Named components when recognized.
    pub components: Option<&'static str>,
    /// Krull dimension of the symbol ring modulo the symbol ideal.
    pub dimension: usize,
    /// `σ(g₁), σ(g₂)` cut out codimension 2.
    pub koszul_regular: bool,
}

fn symbol<C: Coeff>(ctx: &Arc<VarContext>, terms: &[(i64, &[(&str, u16)])]) -> CommPoly<C> {
    let mut acc = CommPoly::zero(ctx);
    for (c, mono) in terms {
        let mut t = CommPoly::constant(ctx, C::from_i64(*c));
        for (name, e) in *mono {
            t = &t * &CommPoly::var(ctx, name).expect("symbol variable").pow(*e as u32);
        }
        acc = &acc + &t;
    }
    acc
}

pub fn characteristic_variety<C: Coeff>(pres: &IntersectionPresentation<C>) -> Result<CharVarReport<C>> {
    let ctx = &pres.symbol_ctx;
    let n = ctx.names().len();
    let ideal = &pres.symbol_ideal;
    let zero_section = vec![symbol::<C>(ctx, &[(1, &[("xi1", 1)])]), symbol::<C>(ctx, &[(1, &[("xi2", 1)])])];
    let mut components = None;
    if ideal_eq(ctx, ideal, &zero_section)? {
        components = Some("T_X^*X");
    } else if pres.cusp {
        let sd1 = symbol::<C>(ctx, &[(3, &[("x1", 1), ("xi1", 1)]), (2, &[("x2", 1), ("xi2", 1)])]);
        let sq0 = symbol::<C>(ctx, &[(9, &[("x2", 1), ("xi1", 2)]), (-4, &[("xi2", 2)])]);
        if ideal_eq(ctx, ideal, &[sd1, sq0])? {
            components = Some("T_X^*X ∪ T_D^*X");
        }
    }
    let dimension = krull_dimension(ctx, ideal)?;
    let pair = vec![pres.sigma_g.0.clone(), pres.sigma_g.1.clone()];
    let koszul_regular = krull_dimension(ctx, &pair)? + 2 == n;
    Ok(CharVarReport {
        symbol_ideal: ideal.clone(),
        conormal_origin_excluded: pres.conormal_origin_excluded,
        components,
        dimension,
        koszul_regular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dmodcalc::tests::cusp;
    use crate::ilc::build_ilc;
    use crate::ratpoly::RatFunc;

    #[test]
    fn structure_sheaf() {
        let curve = cusp();
        let ctx = curve.ctx().clone();
        let zero = WeylOp::<Rational>::zero(&ctx);
        let spec = build_ilc(&curve, 1, &zero, std::slice::from_ref(&zero)).unwrap();
        let pres = intersection_presentation(&spec, 1, 1, None, &GbOptions::default()).unwrap();
        let texts: Vec<String> = pres.k_gens.iter().map(ToString::to_string).collect();
        assert_eq!(texts, ["d1", "d2"]);
        assert!(pres.members_verified && pres.source_contained);
        let cv = characteristic_variety(&pres).unwrap();
        assert_eq!(cv.components, Some("T_X^*X"));
        assert!(cv.conormal_origin_excluded);
        assert_eq!(cv.dimension, 2);
        assert!(intersection_presentation(&spec, -1, 1, None, &GbOptions::default()).is_err());
    }

    #[test]
    fn family_on_the_condition() {
        let curve = cusp();
        let ctx = WeylContext::plane(&[], &["lambda", "m", "n"]);
        let v = |s: &str| WeylOp::<RatFunc>::var(&ctx, s).unwrap();
        let fam = CuspFamily { lambda: v("lambda"), m: v("m"), n: v("n"), nu: v("lambda") };
        let spec = fam.build(&curve).unwrap();
        let pres = intersection_presentation(&spec, 1, 1, Some(&fam), &GbOptions::default()).unwrap();
        let cf = pres.closed_form.as_ref().unwrap();
        assert!(cf.identity && cf.commutator && cf.equal);
        assert!(pres.members_verified && pres.source_contained);
        let cv = characteristic_variety(&pres).unwrap();
        assert_eq!(cv.components, Some("T_X^*X ∪ T_D^*X"));
        assert!(cv.conormal_origin_excluded && cv.koszul_regular);
        assert_eq!(cv.dimension, 2);
    }
}
