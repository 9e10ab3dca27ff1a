//! The D-module pipeline: the `Φ` twist, annihilators of `e·h^s`,
//! Bernstein–Sato polynomials, isomorphism-range conditions, intersection
//! presentations and characteristic varieties.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ilc::IlcSpec;
use crate::logcurve::{log_decompose, PlaneCurve};
use crate::ratpoly::Coeff;
use crate::weyl::{WeylContext, WeylOp};

pub mod bernstein;
pub mod conditions;
pub mod intersection;

pub use bernstein::{bernstein_sato, BernsteinOptions, BernsteinResult, Certificate, Method, Mode, RootForm};
pub use conditions::{conditions_i_iv, kappa_and_conditions, Condition, ConditionReport, NumericConditions};
pub use intersection::{
    characteristic_variety, cusp_q, intersection_presentation, order_filtration, CharVarReport, ClosedForm,
    IntersectionPresentation,
};

/// The variable of the functional equation.
pub const S: &str = "s";

/// `ctx` with the central variable `s` prepended, or `ctx` itself if it
/// already has one.
pub fn with_s(ctx: &Arc<WeylContext>) -> Result<Arc<WeylContext>> {
    if ctx.central().iter().any(|c| c == S) {
        return Ok(ctx.clone());
    }
    let mut central = vec![S.to_string()];
    central.extend(ctx.central().iter().cloned());
    WeylContext::new(&central, ctx.base(), ctx.deriv(), ctx.params())
}

fn s_op<C: Coeff>(ctx: &Arc<WeylContext>) -> Result<WeylOp<C>> {
    if !ctx.central().iter().any(|c| c == S) {
        return Err(Error::ContextMismatch("context has no central variable `s`".into()));
    }
    WeylOp::var(ctx, S)
}

fn twist<C: Coeff>(curve: &PlaneCurve, p: &WeylOp<C>, sign: i64) -> Result<WeylOp<C>> {
    let ctx = p.ctx().clone();
    let s = s_op::<C>(&ctx)?;
    let (_, d1, d2) = curve.embedded::<C>(&ctx)?;
    let parts = log_decompose(curve, p).map_err(|e| match e {
        Error::Structural(m) => Error::Structural(format!("unsupported form for Φ: {m}")),
        e => e,
    })?;
    let t1 = &d1 + &s.scale_i64(sign * curve.omega_h() as i64);
    let mut acc = WeylOp::zero(&ctx);
    for ((i, j), a) in &parts {
        acc = &acc + &(&(a * &t1.pow(*i)) * &d2.pow(*j));
    }
    Ok(acc)
}

/// `Φ(δ) = δ − (δ(h)/h)s` on logarithmic derivations, identity on
/// functions and `s`: `δ₁ ↦ δ₁ − ω_h s`, `δ₂ ↦ δ₂`.
pub fn phi<C: Coeff>(curve: &PlaneCurve, p: &WeylOp<C>) -> Result<WeylOp<C>> {
    twist(curve, p, -1)
}

pub fn phi_inverse<C: Coeff>(curve: &PlaneCurve, p: &WeylOp<C>) -> Result<WeylOp<C>> {
    twist(curve, p, 1)
}

/// `ann_{D[s]}(e₁h^s) = D[s]·(Φ(g₁), Φ(g₂))`, in the spec's context
/// extended by `s`.
pub fn annihilator_fs<C: Coeff>(spec: &IlcSpec<C>) -> Result<Vec<WeylOp<C>>> {
    let ctx = with_s(spec.ctx())?;
    let g1 = spec.g1().embed(&ctx)?;
    let g2 = spec.g2().embed(&ctx)?;
    Ok(vec![phi(spec.curve(), &g1)?, phi(spec.curve(), &g2)?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ilc::{build_ilc, CuspFamily};
    use crate::logcurve::build_curve;
    use crate::ratpoly::{CommPoly, Rational, VarContext};

    pub(crate) fn cusp() -> PlaneCurve {
        let ctx = VarContext::new(&["x1", "x2"], &[]).unwrap();
        let x1 = CommPoly::var(&ctx, "x1").unwrap();
        let x2 = CommPoly::var(&ctx, "x2").unwrap();
        build_curve(3, 2, &(&x1.pow(2) - &x2.pow(3))).unwrap()
    }

    #[test]
    fn phi_on_generators() {
        let curve = cusp();
        let ctx = WeylContext::plane(&["s", "lambda", "m", "n", "nu"], &[]);
        let v = |s: &str| WeylOp::<Rational>::var(&ctx, s).unwrap();
        let fam = CuspFamily { lambda: v("lambda"), m: v("m"), n: v("n"), nu: v("nu") };
        let spec = fam.build(&curve).unwrap();
        let ann = annihilator_fs(&spec).unwrap();
        assert_eq!(ann[0], &(spec.g1() - &v("s").scale_i64(6)) + &WeylOp::zero(&ctx));
        assert_eq!(&ann[1], spec.g2());
        for p in [spec.g1(), spec.g2()] {
            assert_eq!(&phi_inverse(&curve, &phi(&curve, p).unwrap()).unwrap(), p);
        }
        let lhs = phi(&curve, &spec.g1().commutator(spec.g2()).unwrap()).unwrap();
        assert_eq!(lhs, ann[0].commutator(&ann[1]).unwrap());
        assert!(phi(&curve, &WeylOp::<Rational>::d(&ctx, 0)).is_err());
    }

    #[test]
    fn structure_sheaf_annihilators() {
        let curve = cusp();
        let ctx = curve.ctx().clone();
        let zero = WeylOp::<Rational>::zero(&ctx);
        for (a, text) in [(0, "3x1*d1 + 2x2*d2 - 6s"), (6, "3x1*d1 + 2x2*d2 - 6s + 6")] {
            let spec = build_ilc(&curve, 1, &WeylOp::from_i64(&ctx, a), std::slice::from_ref(&zero)).unwrap();
            let ann = annihilator_fs(&spec).unwrap();
            assert_eq!(ann[0].to_string(), text);
            assert_eq!(ann[1].to_string(), "3x2^2*d1 + 2x1*d2");
        }
    }
}
