//! Bernstein–Sato polynomials of `e₁h^s` and their functional-equation
//! certificates.
//!
//! Two methods compute the generator `B(s)` of `I ∩ K[s]` for
//! `I = D[s](h, Φ(g₁), g₂)`:
//!
//! * elimination of `x, ∂` from a tracked Gröbner basis of `I`;
//! * substitution: with `T = g₁/ω_h` one has `hT = (T − 1)h` and
//!   `g₂T = (T − q/ω_h)g₂` whenever `[g₁, g₂] = q·g₂`, so `J = D(h, g₂)`
//!   satisfies `J·T ⊆ J`. The map `Σ Pᵢsⁱ ↦ Σ PᵢTⁱ` sends `I` onto `J`,
//!   hence `B(s) ∈ I` iff `B(T) ∈ J`, and `B` is the minimal polynomial of
//!   right multiplication by `T` on the class of `1` in `D/J`.

use std::cmp::Reverse;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::{annihilator_fs, with_s, S};
use crate::error::{Error, Result};
use crate::groebner::{buchberger_in, divide, eliminate, GbOptions, GroebnerBasis, TermOrder};
use crate::ilc::IlcSpec;
use crate::ratpoly::{Coeff, Poly, Rational};
use crate::weyl::{WeylContext, WeylOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Elimination,
    /// Needs `[g₁, g₂]` to be a scalar multiple of `g₂` and no central
    /// variables besides `s`.
    Substitution,
}

#[derive(Clone, Debug)]
pub struct BernsteinOptions {
    pub method: Method,
    pub gb: GbOptions,
    /// Largest degree of `B` the substitution method searches before giving up.
    pub max_degree: u32,
}

impl Default for BernsteinOptions {
    fn default() -> Self {
        BernsteinOptions { method: Method::Elimination, gb: GbOptions::default(), max_degree: 40 }
    }
}

/// Which kind of parameters the run uses: symbolic parameters keep root
/// labels in terms of `λ, ν`; specialized values make every root numeric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    Specialized { lambda: Rational, nu: Rational },
}

/// A root of `B`: `(lλ + uν + v)/ω` with `l = ±1`, or a rational number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootForm {
    Linear { l: i64, u: i64, v: i64, omega: u32 },
    Value(Rational),
}

impl RootForm {
    fn sort_key(&self) -> (u8, Reverse<i64>, i64, i64, Reverse<i64>, Rational) {
        match self {
            RootForm::Linear { l, u, v, .. } => (0, Reverse(*l), u.abs(), *u, Reverse(*v), Rational::zero()),
            RootForm::Value(q) => (1, Reverse(0), 0, 0, Reverse(0), q.clone()),
        }
    }

    /// The root at given `λ, ν`.
    pub fn eval(&self, lambda: &Rational, nu: &Rational) -> Rational {
        match self {
            RootForm::Linear { l, u, v, omega } => lambda
                .mul(&Rational::from_int(*l))
                .add(&nu.mul(&Rational::from_int(*u)))
                .add(&Rational::from_int(*v))
                .div(&Rational::from_int(*omega as i64)),
            RootForm::Value(q) => q.clone(),
        }
    }

    /// Numerator `lλ + uν + v` rendered, without the division.
    pub fn numerator_text(l: i64, u: i64, v: i64) -> String {
        let mut t = String::from(if l < 0 { "-lambda" } else { "lambda" });
        match u {
            0 => {}
            1 => t.push_str(" + nu"),
            -1 => t.push_str(" - nu"),
            u if u > 0 => t.push_str(&format!(" + {u}nu")),
            u => t.push_str(&format!(" - {}nu", -u)),
        }
        match v {
            0 => {}
            v if v > 0 => t.push_str(&format!(" + {v}")),
            v => t.push_str(&format!(" - {}", -v)),
        }
        t
    }

    /// The linear factor `s − root`.
    pub fn factor_text(&self) -> String {
        match self {
            RootForm::Linear { l, u, v, omega } => {
                let num = Self::numerator_text(*l, *u, *v);
                if *u == 0 && *v == 0 {
                    format!("(s - {num}/{omega})")
                } else {
                    format!("(s - ({num})/{omega})")
                }
            }
            RootForm::Value(q) if q.is_zero() => "s".to_string(),
            RootForm::Value(q) if q.is_negative() => format!("(s + {})", q.neg()),
            RootForm::Value(q) => format!("(s - {q})"),
        }
    }
}

impl fmt::Display for RootForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootForm::Linear { l, u, v, omega } => {
                let num = Self::numerator_text(*l, *u, *v);
                if *u == 0 && *v == 0 {
                    write!(f, "{num}/{omega}")
                } else {
                    write!(f, "({num})/{omega}")
                }
            }
            RootForm::Value(q) => write!(f, "{q}"),
        }
    }
}

/// `B(s) = P·h + C·Φ(g₁) + D·g₂`.
#[derive(Clone, Debug)]
pub struct Certificate<C: Coeff> {
    pub p: WeylOp<C>,
    pub c: WeylOp<C>,
    pub d: WeylOp<C>,
}

/// `B`, its certificate and the genericity conditions used.
type Generator<C> = (WeylOp<C>, Certificate<C>, Vec<Poly<Rational>>);

#[derive(Clone, Debug)]
pub struct BernsteinResult<C: Coeff> {
    /// Context of the annihilator: the spec's context extended by `s`.
    pub ctx: Arc<WeylContext>,
    /// Monic generator of `I ∩ K[s]`.
    pub b: WeylOp<C>,
    /// Roots with multiplicity, in display order.
    pub roots: Vec<RootForm>,
    /// Part of `B` not split by the root search (1 when fully factored).
    pub unfactored: WeylOp<C>,
    pub certificate: Certificate<C>,
    pub method: Method,
    /// Parameter polynomials inverted along the way.
    pub genericity: Vec<Poly<Rational>>,
}

impl<C: Coeff> BernsteinResult<C> {
    pub fn degree(&self) -> u32 {
        self.b.poly().degree_in(self.ctx.index_of(S).expect("s")) as u32
    }

    pub fn is_factored(&self) -> bool {
        self.unfactored.poly().is_constant()
    }

    /// Product form of `B` in display order, falling back to the
    /// expanded polynomial for an unsplit part.
    pub fn factored_text(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.roots.len() {
            let mut j = i;
            while j < self.roots.len() && self.roots[j] == self.roots[i] {
                j += 1;
            }
            let f = self.roots[i].factor_text();
            if j - i > 1 {
                parts.push(format!("{f}^{}", j - i));
            } else {
                parts.push(f);
            }
            i = j;
        }
        if !self.is_factored() {
            parts.push(format!("({})", self.unfactored));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("")
        }
    }

    /// Smallest integer root, for numeric roots; `None` stands for `+∞`.
    pub fn min_integer_root(&self) -> Option<i64> {
        self.roots
            .iter()
            .filter_map(|r| match r {
                RootForm::Value(q) if q.is_integer() => q.to_i64(),
                _ => None,
            })
            .min()
    }

    /// Re-checks the certificate identity exactly.
    pub fn verify(&self, spec: &IlcSpec<C>) -> Result<bool> {
        let ann = annihilator_fs(spec)?;
        let h = spec.curve().embedded::<C>(&self.ctx)?.0;
        let c = &self.certificate;
        let rhs = &(&(&c.p * &h) + &(&c.c * &ann[0])) + &(&c.d * &ann[1]);
        Ok(rhs == self.b)
    }
}

/// Computes `B(s)` for `e₁h^s` with a verified certificate.
pub fn bernstein_sato<C: Coeff>(spec: &IlcSpec<C>, mode: &Mode, opts: &BernsteinOptions) -> Result<BernsteinResult<C>> {
    let ctx = with_s(spec.ctx())?;
    let method = opts.method;
    let (b, certificate, genericity) = match method {
        Method::Substitution => {
            if commutator_scalar(spec).is_none() {
                return Err(Error::InvalidArgument("substitution needs [g1, g2] to be a scalar multiple of g2".into()));
            }
            if ctx.central().len() > 1 {
                return Err(Error::InvalidArgument("substitution works over a coefficient field only".into()));
            }
            substitution(spec, &ctx, opts)?
        }
        Method::Elimination => elimination(spec, &ctx, opts)?,
    };
    let s_slot = ctx.index_of(S).expect("s");
    let (roots, unfactored) = split_roots(&ctx, spec, b.poly(), s_slot, mode);
    let result = BernsteinResult { ctx, b, roots, unfactored, certificate, method, genericity };
    if !result.verify(spec)? {
        return Err(Error::Structural("functional-equation certificate does not verify".into()));
    }
    Ok(result)
}

/// `q` with `[g₁, g₂] = q·g₂` when it exists.
fn commutator_scalar<C: Coeff>(spec: &IlcSpec<C>) -> Option<C> {
    let comm = spec.g1().commutator(spec.g2()).ok()?;
    if comm.is_zero() {
        return Some(C::zero());
    }
    let (m, c) = spec.g2().poly().leading()?.clone();
    let q = comm.poly().coeff_of(&m).div(&c);
    (comm == spec.g2().scale(&q)).then_some(q)
}

fn substitution<C: Coeff>(spec: &IlcSpec<C>, ctx: &Arc<WeylContext>, opts: &BernsteinOptions) -> Result<Generator<C>> {
    let base = spec.ctx();
    let omega = spec.curve().omega_h() as i64;
    let (_, _, h) = spec.fields();
    let t = spec.g1().scale(&C::from_i64(omega).inv());
    let inputs = vec![h.clone(), spec.g2().clone()];
    let order = TermOrder::degrevlex(base.nvars());
    let gbopts = GbOptions { track: true, ..opts.gb.clone() };
    let gb = buchberger_in(base, &inputs, &order, &gbopts)?;
    if gb.is_unit() {
        return Err(Error::Structural("D(h, g2) is the unit ideal".into()));
    }

    // Normal forms of Tⁱ, reduced against earlier ones; each row keeps its
    // combination of powers of T.
    let mut rows: Vec<(Poly<C>, Vec<C>)> = Vec::new();
    let mut power = WeylOp::one(base);
    let mut dependency = None;
    for i in 0..=opts.max_degree as usize {
        let nf = gb.reduce(&power)?;
        let mut v = nf.poly().clone();
        let mut comb = vec![C::zero(); i + 1];
        comb[i] = C::one();
        for (row, rc) in &rows {
            let (pm, pc) = row.leading().expect("nonzero row").clone();
            let k = v.coeff_of(&pm);
            if k.is_zero() {
                continue;
            }
            let f = k.div(&pc);
            v = v.sub(&row.scale(&f));
            for (j, c) in rc.iter().enumerate() {
                comb[j] = comb[j].sub(&f.mul(c));
            }
        }
        if v.is_zero() {
            dependency = Some(comb);
            break;
        }
        rows.push((v, comb));
        rows.sort_by(|a, b| crate::ratpoly::degrevlex_cmp(&b.0.leading().unwrap().0, &a.0.leading().unwrap().0));
        power = &nf * &t;
    }
    let coeffs = dependency.ok_or(Error::DegreeBound { bound: opts.max_degree, degree: opts.max_degree + 1 })?;

    // B(T) = Σ cᵢTⁱ lies in J; express it through the tracked basis.
    let mut bt = WeylOp::zero(base);
    let mut tp = WeylOp::one(base);
    for c in &coeffs {
        bt = &bt + &tp.scale(c);
        tp = &tp * &t;
    }
    let (p_base, d_base) = express(&gb, &bt, &order)?;

    let s = WeylOp::<C>::var(ctx, S)?;
    let t_s = t.embed(ctx)?;
    let mut b = WeylOp::zero(ctx);
    let mut cpoly = WeylOp::zero(ctx);
    for (i, ci) in coeffs.iter().enumerate() {
        b = &b + &s.pow(i as u32).scale(ci);
        for j in 0..i {
            let term = &s.pow((i - 1 - j) as u32) * &t_s.pow(j as u32);
            cpoly = &cpoly - &term.scale(ci);
        }
    }
    let certificate =
        Certificate { p: p_base.embed(ctx)?, c: cpoly.scale(&C::from_i64(omega).inv()), d: d_base.embed(ctx)? };
    let mut genericity = gb.genericity_certificate().to_vec();
    for (row, _) in &rows {
        for p in row.leading().expect("nonzero").1.pivot_conditions() {
            if !genericity.contains(&p) {
                genericity.push(p);
            }
        }
    }
    Ok((b, certificate, genericity))
}

/// Cofactors `(P, D)` with `op = P·h + D·g₂` for `op` in the ideal of a
/// tracked basis of `(h, g₂)`.
fn express<C: Coeff>(gb: &GroebnerBasis<C>, op: &WeylOp<C>, order: &TermOrder) -> Result<(WeylOp<C>, WeylOp<C>)> {
    let elems = gb.elements();
    let div = divide(op, &elems, order, true)?;
    if !div.remainder.is_zero() {
        return Err(Error::Structural("B(T) does not reduce to zero modulo (h, g2)".into()));
    }
    let ctx = op.ctx().clone();
    let mut acc = vec![WeylOp::zero(&ctx), WeylOp::zero(&ctx)];
    for (i, q) in div.cofactors.expect("tracked").iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        let rep = gb.representation(i).ok_or_else(|| Error::Structural("basis lacks a representation".into()))?;
        for (k, r) in rep.iter().enumerate() {
            acc[k] = &acc[k] + &(q * r);
        }
    }
    let d = acc.pop().expect("two");
    let p = acc.pop().expect("two");
    Ok((p, d))
}

fn elimination<C: Coeff>(spec: &IlcSpec<C>, ctx: &Arc<WeylContext>, opts: &BernsteinOptions) -> Result<Generator<C>> {
    let ann = annihilator_fs(spec)?;
    let h = spec.curve().embedded::<C>(ctx)?.0;
    let gens = vec![h, ann[0].clone(), ann[1].clone()];
    let gbopts = GbOptions { track: true, ..opts.gb.clone() };
    let keep: Vec<&str> = ctx.central().iter().map(String::as_str).collect();
    let elim = eliminate(&gens, &keep, &gbopts)?;
    let found: Vec<usize> = {
        let all = elim.basis.elements();
        elim.generators.iter().map(|g| all.iter().position(|e| e == g).expect("from basis")).collect()
    };
    match found.as_slice() {
        [] => Err(Error::NonPrincipal("the annihilator meets K[s] only in zero".into())),
        [i] => {
            let b = elim.basis.elements()[*i].clone();
            if b.poly().is_constant() {
                return Err(Error::Structural("I contains a unit, so B(s) is constant".into()));
            }
            let s_slot = ctx.index_of(S).expect("s");
            let lead = b.poly().univariate_coeffs(s_slot).pop().expect("nonzero");
            if !lead.is_constant() {
                return Err(Error::NonPrincipal(format!("generator `{b}` is not monic in s")));
            }
            let rep = elim.basis.representation(*i).ok_or_else(|| Error::Structural("untracked basis".into()))?;
            let certificate = Certificate { p: rep[0].clone(), c: rep[1].clone(), d: rep[2].clone() };
            Ok((b, certificate, elim.basis.genericity_certificate().to_vec()))
        }
        more => Err(Error::NonPrincipal(format!("{} generators in s alone", more.len()))),
    }
}

/// Candidate roots `(lλ + uν + v)/ω_h` with `l = ±1`, `u ∈ {−1, 0, 1}` and
/// `v ∈ −12..=12`.
fn candidates<C: Coeff>(ctx: &Arc<WeylContext>, spec: &IlcSpec<C>, mode: &Mode) -> Vec<(RootForm, WeylOp<C>)> {
    let omega = spec.curve().omega_h();
    let mut out: Vec<(RootForm, WeylOp<C>)> = Vec::new();
    for l in [1i64, -1] {
        for u in -1i64..=1 {
            for v in -12i64..=12 {
                let form = RootForm::Linear { l, u, v, omega };
                match mode {
                    Mode::Symbolic => {
                        let (Ok(lam), Ok(nu)) = (WeylOp::<C>::var(ctx, "lambda"), WeylOp::<C>::var(ctx, "nu")) else {
                            return out;
                        };
                        let num = &(&lam.scale_i64(l) + &nu.scale_i64(u)) + &WeylOp::from_i64(ctx, v);
                        out.push((form, num.scale(&C::from_i64(omega as i64).inv())));
                    }
                    Mode::Specialized { lambda, nu } => {
                        let q = RootForm::Value(form.eval(lambda, nu));
                        if !out.iter().any(|(f, _)| f == &q) {
                            let RootForm::Value(value) = &q else { unreachable!() };
                            let c = WeylOp::constant(ctx, C::from_rational(value));
                            out.push((q, c));
                        }
                    }
                }
            }
        }
    }
    out
}

fn split_roots<C: Coeff>(
    ctx: &Arc<WeylContext>,
    spec: &IlcSpec<C>,
    b: &Poly<C>,
    s_slot: usize,
    mode: &Mode,
) -> (Vec<RootForm>, WeylOp<C>) {
    let s = Poly::<C>::var(s_slot);
    let mut rest = b.clone();
    let mut roots = Vec::new();
    for (form, value) in candidates(ctx, spec, mode) {
        let lin = s.sub(value.poly());
        loop {
            if rest.degree_in(s_slot) == 0 {
                break;
            }
            match rest.div_exact(&lin) {
                Some(q) => {
                    roots.push(form.clone());
                    rest = q;
                }
                None => break,
            }
        }
    }
    if matches!(mode, Mode::Specialized { .. }) {
        while rest.degree_in(s_slot) > 0 {
            let Some(q) = rational_root(&rest, s_slot) else { break };
            let lin = s.sub(&Poly::constant(C::from_rational(&q)));
            rest = rest.div_exact(&lin).expect("root divides");
            roots.push(RootForm::Value(q));
        }
    }
    roots.sort_by_key(RootForm::sort_key);
    (roots, WeylOp::from_poly(ctx, rest))
}

/// One rational root of a univariate polynomial over ℚ, by the rational
/// root theorem, when the relevant integers are small enough to factor.
fn rational_root<C: Coeff>(p: &Poly<C>, slot: usize) -> Option<Rational> {
    let coeffs: Vec<Rational> = p
        .univariate_coeffs(slot)
        .iter()
        .map(|c| {
            if c.is_zero() {
                Some(Rational::zero())
            } else {
                c.constant_term().to_rational().filter(|_| c.is_constant())
            }
        })
        .collect::<Option<_>>()?;
    if coeffs[0].is_zero() {
        return Some(Rational::zero());
    }
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| {
        let d = c.denom();
        let g = num_integer::Integer::gcd(&acc, &d);
        acc * d / g
    });
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c.to_big() * &lcm).to_integer()).collect();
    let a0 = ints[0].abs().to_u64()?;
    let an = ints.last()?.abs().to_u64()?;
    if a0 > 1 << 40 || an > 1 << 40 {
        return None;
    }
    let eval = |q: &Rational| {
        let mut acc = Rational::zero();
        for c in coeffs.iter().rev() {
            acc = acc.mul(q).add(c);
        }
        acc.is_zero()
    };
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [-1i64, 1] {
                let q = Rational::from_big(num_rational::BigRational::new(BigInt::from(num) * sign, BigInt::from(den)));
                if eval(&q) {
                    return Some(q);
                }
            }
        }
    }
    None
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dmodcalc::tests::cusp;
    use crate::ilc::CuspFamily;
    use crate::ratpoly::RatFunc;

    fn numeric_spec(l: i64, m: i64, n: i64, nu: i64) -> IlcSpec<Rational> {
        let curve = cusp();
        let ctx = curve.ctx().clone();
        let k = |v: i64| WeylOp::<Rational>::from_i64(&ctx, v);
        CuspFamily { lambda: k(l), m: k(m), n: k(n), nu: k(nu) }.build(&curve).unwrap()
    }

    fn zero_mode() -> Mode {
        Mode::Specialized { lambda: Rational::zero(), nu: Rational::zero() }
    }

    #[test]
    fn origin_specialization() {
        let spec = numeric_spec(0, 0, 0, 0);
        let r = bernstein_sato(&spec, &zero_mode(), &BernsteinOptions::default()).unwrap();
        let roots: Vec<String> = r.roots.iter().map(ToString::to_string).collect();
        assert_eq!(roots, ["-4/3", "-7/6", "-1", "-5/6"]);
        assert_eq!(r.min_integer_root(), Some(-1));
        assert!(r.is_factored());
    }

    #[test]
    fn methods_agree() {
        let spec = numeric_spec(0, 0, 0, 0);
        let opts = BernsteinOptions { method: Method::Substitution, ..Default::default() };
        let e = bernstein_sato(&spec, &zero_mode(), &BernsteinOptions::default()).unwrap();
        let s = bernstein_sato(&spec, &zero_mode(), &opts).unwrap();
        assert_eq!(e.b, s.b);
        assert!(s.verify(&spec).unwrap());
    }

    #[test]
    fn symbolic_family() {
        let curve = cusp();
        let ctx = WeylContext::plane(&[], &["lambda", "m", "n", "nu"]);
        let v = |s: &str| WeylOp::<RatFunc>::var(&ctx, s).unwrap();
        let fam = CuspFamily { lambda: v("lambda"), m: v("m"), n: v("n"), nu: v("nu") };
        let spec = fam.build(&curve).unwrap();
        let r = bernstein_sato(&spec, &Mode::Symbolic, &BernsteinOptions::default()).unwrap();
        assert_eq!(r.factored_text(), PAPER_B);
        let opts = BernsteinOptions { method: Method::Substitution, ..Default::default() };
        assert_eq!(bernstein_sato(&spec, &Mode::Symbolic, &opts).unwrap().b, r.b);
    }

    const PAPER_B: &str = "(s - (lambda - 5)/6)(s - (lambda - 8)/6)(s - (lambda - nu - 6)/6)(s - (lambda + nu - 7)/6)";

    #[test]
    fn central_parameters() {
        let curve = cusp();
        let ctx = WeylContext::plane(&["lambda", "m", "n", "nu"], &[]);
        let v = |s: &str| WeylOp::<Rational>::var(&ctx, s).unwrap();
        let fam = CuspFamily { lambda: v("lambda"), m: v("m"), n: v("n"), nu: v("nu") };
        let spec = fam.build(&curve).unwrap();
        let r = bernstein_sato(&spec, &Mode::Symbolic, &BernsteinOptions::default()).unwrap();
        assert_eq!(r.factored_text(), PAPER_B);
        assert!(r.genericity.is_empty());
        let opts = BernsteinOptions { method: Method::Substitution, ..Default::default() };
        assert!(bernstein_sato(&spec, &Mode::Symbolic, &opts).is_err());
    }

    #[test]
    fn structure_sheaf() {
        // b-function of h^s itself for the cusp
        let curve = cusp();
        let ctx = curve.ctx().clone();
        let zero = WeylOp::<Rational>::zero(&ctx);
        let spec = crate::ilc::build_ilc(&curve, 1, &zero, std::slice::from_ref(&zero)).unwrap();
        let r = bernstein_sato(&spec, &zero_mode(), &BernsteinOptions::default()).unwrap();
        assert_eq!(r.factored_text(), "(s + 7/6)(s + 1)(s + 5/6)");
    }
}
