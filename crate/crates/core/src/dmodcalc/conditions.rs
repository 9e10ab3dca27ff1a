//! When the twisted comparison maps `ρ_{F,k}` and `ρ_{F*,k′}` are isomorphisms.
//!
//! `ρ_{E,k}` is an isomorphism as soon as `B_E` has no integer root
//! `≤ −k − 1`. A root `(lλ + uν + v)/ω` turns this into the condition
//! `lλ + uν + ωk + v + ω ∉ {0, −ω, −2ω, …}`.

use std::fmt;

use super::bernstein::{bernstein_sato, BernsteinOptions, BernsteinResult, Mode, RootForm};
use crate::error::Result;
use crate::ilc::{dual_rank2, CuspFamily, IlcSpec};
use crate::ratpoly::{Coeff, Rational};

/// The exclusion attached to one root of `B`, for the twist variable `twist`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub root: RootForm,
    pub twist: &'static str,
}

fn is_nonpositive_multiple(x: &Rational, omega: i64) -> bool {
    let q = x.div(&Rational::from_int(omega));
    q.is_integer() && (q.is_negative() || q.is_zero())
}

impl Condition {
    /// Whether the root avoids the integers `≤ −k − 1`.
    pub fn holds(&self, lambda: &Rational, nu: &Rational, k: i64) -> bool {
        let r = self.root.eval(lambda, nu);
        !(r.is_integer() && r.to_i64().is_some_and(|r| r < -k))
    }

    /// Exact form of [`Condition::holds`] through the residue class of the
    /// numerator.
    fn holds_by_residue(&self, lambda: &Rational, nu: &Rational, k: i64) -> bool {
        match &self.root {
            RootForm::Linear { l, u, v, omega } => {
                let w = *omega as i64;
                let x = lambda
                    .mul(&Rational::from_int(*l))
                    .add(&nu.mul(&Rational::from_int(*u)))
                    .add(&Rational::from_int(w * k + v + w));
                !is_nonpositive_multiple(&x, w)
            }
            RootForm::Value(_) => self.holds(lambda, nu, k),
        }
    }
}

fn seq(start: i64, step: i64) -> String {
    format!("{}, {}, {}, {}, ...", start, start + step, start + 2 * step, start + 3 * step)
}

fn signed_term(first: bool, coeff: i64, name: &str) -> String {
    let body = if coeff.abs() == 1 { name.to_string() } else { format!("{}{}", coeff.abs(), name) };
    match (first, coeff < 0) {
        (true, false) => body,
        (true, true) => format!("-{body}"),
        (false, false) => format!(" + {body}"),
        (false, true) => format!(" - {body}"),
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.root {
            RootForm::Linear { l, u, v, omega } => {
                // scaled by l so that λ has coefficient 1
                let w = *omega as i64;
                let sign = *l;
                let mut lhs = String::from("lambda");
                if *u != 0 {
                    lhs.push_str(&signed_term(false, sign * u, "nu"));
                }
                lhs.push_str(&signed_term(false, sign * w, self.twist));
                write!(f, "{lhs} != {}", seq(sign * (-v - w), -sign * w))
            }
            RootForm::Value(q) => match (q.is_integer(), q.to_i64()) {
                (true, Some(r)) => write!(f, "{} >= {}", self.twist, -r),
                _ => write!(f, "no condition (root {q} is not an integer)"),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub roots: Vec<RootForm>,
    pub dual_roots: Vec<RootForm>,
    /// Conditions for `ρ_{F,k}`.
    pub rho: Vec<Condition>,
    /// Conditions for `ρ_{F*,k′}`.
    pub rho_dual: Vec<Condition>,
    /// `F* = F_{ν,(1−λ,−m,−n)}`, when the family is known.
    pub dual_is_family_member: Option<bool>,
    /// Numeric data, for specialized runs.
    pub numeric: Option<NumericConditions>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericConditions {
    pub lambda: Rational,
    pub nu: Rational,
    /// Smallest integer root of `B`, `None` for `+∞`.
    pub tau: Option<i64>,
    pub tau_dual: Option<i64>,
    /// Conditions (i)–(iv).
    pub conditions: [bool; 4],
}

impl ConditionReport {
    pub fn rho_holds(&self, lambda: &Rational, nu: &Rational, k: i64) -> bool {
        self.rho.iter().all(|c| c.holds(lambda, nu, k))
    }

    pub fn rho_dual_holds(&self, lambda: &Rational, nu: &Rational, k: i64) -> bool {
        self.rho_dual.iter().all(|c| c.holds(lambda, nu, k))
    }

    /// Both exclusion forms agree; used as an internal cross-check.
    fn consistent(&self, lambda: &Rational, nu: &Rational, k: i64) -> bool {
        self.rho.iter().chain(&self.rho_dual).all(|c| c.holds(lambda, nu, k) == c.holds_by_residue(lambda, nu, k))
    }
}

fn congruent(x: &Rational, a: i64, m: i64) -> bool {
    x.sub(&Rational::from_int(a)).div(&Rational::from_int(m)).is_integer()
}

/// Conditions (i)–(iv) for the cusp family:
/// (i) `λ ≢ 2 (mod 6)` or `λ = 2`; (ii) `λ ≢ 5` or `λ = −1`;
/// (iii) `λ + ν ≢ 1` or `λ + ν = 1`; (iv) `λ − ν ≢ 0` or `λ − ν = 0`.
pub fn conditions_i_iv(lambda: &Rational, nu: &Rational) -> [bool; 4] {
    let eq = |x: &Rational, a: i64| x == &Rational::from_int(a);
    let sum = lambda.add(nu);
    let diff = lambda.sub(nu);
    [
        !congruent(lambda, 2, 6) || eq(lambda, 2),
        !congruent(lambda, 5, 6) || eq(lambda, -1),
        !congruent(&sum, 1, 6) || eq(&sum, 1),
        !congruent(&diff, 0, 6) || eq(&diff, 0),
    ]
}

/// Builds the condition report for `spec` from its `B(s)` and that of its
/// dual, computed through [`dual_rank2`].
pub fn kappa_and_conditions<C: Coeff>(
    b: &BernsteinResult<C>,
    spec: &IlcSpec<C>,
    family: Option<&CuspFamily<C>>,
    mode: &Mode,
    opts: &BernsteinOptions,
) -> Result<ConditionReport> {
    let dual = dual_rank2(spec)?;
    let dual_is_family_member = match family {
        Some(f) => Some(f.dual().build(spec.curve())? == dual),
        None => None,
    };
    let bd = bernstein_sato(&dual, mode, opts)?;
    let conditions = |roots: &[RootForm], twist: &'static str| {
        let mut out: Vec<Condition> = roots.iter().map(|r| Condition { root: r.clone(), twist }).collect();
        out.dedup();
        out
    };
    let rho = conditions(&b.roots, "k");
    let rho_dual = conditions(&bd.roots, "k'");
    let numeric = match mode {
        Mode::Specialized { lambda, nu } => Some(NumericConditions {
            lambda: lambda.clone(),
            nu: nu.clone(),
            tau: b.min_integer_root(),
            tau_dual: bd.min_integer_root(),
            conditions: conditions_i_iv(lambda, nu),
        }),
        Mode::Symbolic => None,
    };
    let report = ConditionReport {
        roots: b.roots.clone(),
        dual_roots: bd.roots.clone(),
        rho,
        rho_dual,
        dual_is_family_member,
        numeric,
    };
    debug_assert!(report.consistent(&Rational::from_int(2), &Rational::from_int(1), 1));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dmodcalc::tests::cusp;
    use crate::ratpoly::RatFunc;
    use crate::weyl::{WeylContext, WeylOp};

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn symbolic_report() -> ConditionReport {
        let curve = cusp();
        let ctx = WeylContext::plane(&[], &["lambda", "m", "n", "nu"]);
        let v = |s: &str| WeylOp::<RatFunc>::var(&ctx, s).unwrap();
        let fam = CuspFamily { lambda: v("lambda"), m: v("m"), n: v("n"), nu: v("nu") };
        let spec = fam.build(&curve).unwrap();
        let opts = BernsteinOptions::default();
        let b = bernstein_sato(&spec, &Mode::Symbolic, &opts).unwrap();
        kappa_and_conditions(&b, &spec, Some(&fam), &Mode::Symbolic, &opts).unwrap()
    }

    #[test]
    fn symbolic_lists() {
        let r = symbolic_report();
        assert_eq!(r.dual_is_family_member, Some(true));
        let rho: Vec<String> = r.rho.iter().map(ToString::to_string).collect();
        assert_eq!(
            rho,
            [
                "lambda + 6k != -1, -7, -13, -19, ...",
                "lambda + 6k != 2, -4, -10, -16, ...",
                "lambda - nu + 6k != 0, -6, -12, -18, ...",
                "lambda + nu + 6k != 1, -5, -11, -17, ...",
            ]
        );
        let dual: Vec<String> = r.rho_dual.iter().map(ToString::to_string).collect();
        assert_eq!(
            dual,
            [
                "lambda - 6k' != 2, 8, 14, 20, ...",
                "lambda - 6k' != -1, 5, 11, 17, ...",
                "lambda + nu - 6k' != 1, 7, 13, 19, ...",
                "lambda - nu - 6k' != 0, 6, 12, 18, ...",
            ]
        );
        for l in -14..=14 {
            for nu in -3..=3 {
                assert!(r.consistent(&q(l), &q(nu), 1));
                let both = r.rho_holds(&q(l), &q(nu), 1) && r.rho_dual_holds(&q(l), &q(nu), 1);
                assert_eq!(both, conditions_i_iv(&q(l), &q(nu)).iter().all(|&b| b), "λ={l} ν={nu}");
            }
        }
    }

    #[test]
    fn numeric_examples() {
        assert_eq!(conditions_i_iv(&q(2), &q(1)), [true; 4]);
        assert!(!conditions_i_iv(&q(8), &q(0))[0]);
        assert_eq!(conditions_i_iv(&Rational::new(1, 2), &q(0)), [true; 4]);
        let c = Condition { root: RootForm::Value(q(-1)), twist: "k" };
        assert_eq!(c.to_string(), "k >= 1");
        assert!(c.holds(&q(0), &q(0), 1) && !c.holds(&q(0), &q(0), 0));
    }
}
