//! Randomized invariants of the algebra layers and the connection family.

use std::sync::Arc;

use logdmod::cli::{parse_expression, universal_context};
use logdmod::groebner::{buchberger_in, GbOptions, TermOrder};
use logdmod::ilc::{dual_rank2, spair_remainder, twist_kd, CuspFamily};
use logdmod::logcurve::{build_curve, PlaneCurve};
use logdmod::ratpoly::{multivariate_gcd, CommPoly, Mono, Poly, Rational, VarContext};
use logdmod::weyl::{WeylContext, WeylOp};
use logdmod::Error;
use proptest::prelude::*;

fn cusp() -> PlaneCurve {
    let ctx = VarContext::new(&["x1", "x2"], &[]).unwrap();
    let x1 = CommPoly::var(&ctx, "x1").unwrap();
    let x2 = CommPoly::var(&ctx, "x2").unwrap();
    build_curve(3, 2, &(&x1.pow(2) - &x2.pow(3))).unwrap()
}

/// Terms as (exponents, numerator, denominator).
type RawTerms = Vec<(Vec<u16>, i64, i64)>;

fn raw_terms(nvars: usize, max_exp: u16, max_terms: usize) -> impl Strategy<Value = RawTerms> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -5i64..=5, 1i64..=3), 0..=max_terms)
}

fn op_from(ctx: &Arc<WeylContext>, slots: &[usize], raw: &RawTerms) -> WeylOp {
    let terms = raw.iter().map(|(exps, n, d)| {
        let mut m = Mono::ONE;
        for (s, e) in slots.iter().zip(exps) {
            m.set(*s, *e);
        }
        (m, Rational::new(*n, *d))
    });
    WeylOp::from_poly(ctx, Poly::from_terms(terms))
}

fn plane() -> Arc<WeylContext> {
    WeylContext::plane(&[], &[])
}

fn plane_slots(ctx: &WeylContext) -> Vec<usize> {
    vec![ctx.x_slot(0), ctx.x_slot(1), ctx.d_slot(0), ctx.d_slot(1)]
}

fn function_of(ctx: &Arc<WeylContext>, raw: &RawTerms) -> WeylOp {
    op_from(ctx, &[ctx.x_slot(0), ctx.x_slot(1)], raw)
}

fn comm_poly(ctx: &Arc<VarContext>, raw: &RawTerms) -> CommPoly {
    let terms = raw.iter().map(|(exps, n, d)| (Mono::from_exps(exps), Rational::new(*n, *d)));
    CommPoly::new(ctx, Poly::from_terms(terms))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

fn family(ctx: &Arc<WeylContext>, v: &[Rational; 4]) -> CuspFamily<Rational> {
    let c = |q: &Rational| WeylOp::constant(ctx, q.clone());
    CuspFamily { lambda: c(&v[0]), m: c(&v[1]), n: c(&v[2]), nu: c(&v[3]) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn commutative_ring_axioms(a in raw_terms(3, 3, 5), b in raw_terms(3, 3, 5), c in raw_terms(3, 3, 5)) {
        let ctx = VarContext::new(&["x", "y", "z"], &[]).unwrap();
        let (a, b, c) = (comm_poly(&ctx, &a), comm_poly(&ctx, &b), comm_poly(&ctx, &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn gcd_divides_and_is_maximal(a in raw_terms(2, 2, 3), b in raw_terms(2, 2, 3), c in raw_terms(2, 2, 3)) {
        let ctx = VarContext::new(&["x", "y"], &[]).unwrap();
        let (a, b, c) = (comm_poly(&ctx, &a), comm_poly(&ctx, &b), comm_poly(&ctx, &c));
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let g = multivariate_gcd(&(&a * &c), &(&b * &c)).unwrap();
        prop_assert!((&a * &c).poly().div_exact(g.poly()).is_some());
        prop_assert!((&b * &c).poly().div_exact(g.poly()).is_some());
        prop_assert!(g.poly().div_exact(c.poly()).is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn weyl_product_laws(p in raw_terms(4, 2, 3), q in raw_terms(4, 2, 3), r in raw_terms(4, 2, 3), f in raw_terms(2, 3, 3)) {
        let ctx = plane();
        let slots = plane_slots(&ctx);
        let (p, q, r) = (op_from(&ctx, &slots, &p), op_from(&ctx, &slots, &q), op_from(&ctx, &slots, &r));
        let f = function_of(&ctx, &f);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!((&p * &q).apply(&f).unwrap(), p.apply(&q.apply(&f).unwrap()).unwrap());
        let sigma = |o: &WeylOp| o.principal_symbol();
        prop_assert_eq!(sigma(&(&p * &q)), &sigma(&p) * &sigma(&q));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn parse_renders_round_trip(raw in raw_terms(9, 2, 5)) {
        let ctx = universal_context();
        let op = op_from(&ctx, &(0..9).collect::<Vec<_>>(), &raw);
        let back = parse_expression(&op.to_string(), &ctx).unwrap();
        prop_assert_eq!(back, op);
    }

    #[test]
    fn parse_errors_carry_offsets(prefix in "[x12+*() ]{0,8}") {
        let src = format!("{prefix} + (");
        match parse_expression(&src, &universal_context()) {
            Err(Error::Syntax { offset, .. }) => prop_assert!(offset < src.len()),
            Err(Error::UnknownIdentifier(_)) => {}
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn dual_and_twist_laws(
        v in [small_rational(), small_rational(), small_rational(), small_rational()],
        k in -3i64..=3,
        l in -3i64..=3,
    ) {
        let curve = cusp();
        let ctx = curve.ctx().clone();
        let fam = family(&ctx, &v);
        let spec = fam.build(&curve).unwrap();
        let dual = dual_rank2(&spec).unwrap();
        prop_assert_eq!(&dual_rank2(&dual).unwrap(), &spec);
        prop_assert_eq!(&dual, &fam.dual().build(&curve).unwrap());
        prop_assert_eq!(&twist_kd(&twist_kd(&spec, k), l), &twist_kd(&spec, k + l));
        prop_assert_eq!(&twist_kd(&spec, 0), &spec);
        prop_assert_eq!(&dual_rank2(&twist_kd(&spec, k)).unwrap(), &twist_kd(&dual, -k));
        prop_assert!(spair_remainder(&spec).unwrap().is_zero());
        prop_assert!(spair_remainder(&dual).unwrap().is_zero());
    }

    #[test]
    fn groebner_bases_pass_post_check(p in raw_terms(4, 1, 3), q in raw_terms(4, 1, 3)) {
        let ctx = plane();
        let slots = plane_slots(&ctx);
        let gens = vec![op_from(&ctx, &slots, &p), op_from(&ctx, &slots, &q)];
        let opts = GbOptions { degree_bound: 12, ..GbOptions::default() };
        match buchberger_in(&ctx, &gens, &TermOrder::degrevlex(ctx.nvars()), &opts) {
            Ok(gb) => {
                prop_assert!(gb.verify());
                for g in &gens {
                    prop_assert!(gb.contains(g).unwrap());
                }
            }
            Err(Error::DegreeBound { .. }) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}
