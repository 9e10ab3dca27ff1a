//! The Weyl algebra with central variables.
//!
//! An operator is a [`Poly`] over one flat exponent layout
//! `[central | x | ∂]`; a term `(m, c)` stands for `c · x^α ∂^β` with all
//! x-powers to the left, so normal order is built into the representation.

mod product;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

pub use product::mono_product;

use crate::error::{Error, Result};
use crate::ratpoly::{degrevlex_cmp, render_terms, Coeff, CommPoly, Mono, Poly, Rational, VarContext, MAX_VARS};

/// Variable layout of a Weyl algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylContext {
    central: Vec<String>,
    base: Vec<String>,
    deriv: Vec<String>,
    params: Vec<String>,
}

impl WeylContext {
    pub fn new<S: AsRef<str>>(central: &[S], base: &[S], deriv: &[S], params: &[S]) -> Result<Arc<Self>> {
        let own = |v: &[S]| v.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>();
        let ctx = WeylContext { central: own(central), base: own(base), deriv: own(deriv), params: own(params) };
        if ctx.base.len() != ctx.deriv.len() {
            return Err(Error::InvalidArgument("base and derivation variables must pair up".into()));
        }
        if ctx.nvars() > MAX_VARS || ctx.params.len() > MAX_VARS {
            return Err(Error::InvalidArgument(format!("at most {MAX_VARS} variables are supported")));
        }
        let mut all: Vec<&String> = ctx.var_names().chain(ctx.params.iter()).collect();
        all.sort();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("duplicate variable name".into()));
        }
        Ok(Arc::new(ctx))
    }

    /// `x1, x2, d1, d2` with the given central variables and parameters.
    pub fn plane(central: &[&str], params: &[&str]) -> Arc<Self> {
        Self::new(central, &["x1", "x2"], &["d1", "d2"], params).expect("valid plane context")
    }

    /// A commutative ring: every variable is central.
    pub fn commutative<S: AsRef<str>>(names: &[S], params: &[S]) -> Result<Arc<Self>> {
        Self::new(names, &[], &[], params)
    }

    pub fn central(&self) -> &[String] {
        &self.central
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn deriv(&self) -> &[String] {
        &self.deriv
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn nvars(&self) -> usize {
        self.central.len() + 2 * self.base.len()
    }

    pub fn npairs(&self) -> usize {
        self.base.len()
    }

    pub fn var_names(&self) -> impl Iterator<Item = &String> {
        self.central.iter().chain(self.base.iter()).chain(self.deriv.iter())
    }

    pub fn names(&self) -> Vec<String> {
        self.var_names().cloned().collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.var_names().position(|n| n == name)
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|n| n == name)
    }

    pub fn x_slot(&self, i: usize) -> usize {
        self.central.len() + i
    }

    pub fn d_slot(&self, i: usize) -> usize {
        self.central.len() + self.base.len() + i
    }

    pub fn central_slots(&self) -> std::ops::Range<usize> {
        0..self.central.len()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.npairs()).map(|i| (self.x_slot(i), self.d_slot(i))).collect()
    }

    pub fn d_slots(&self) -> Vec<usize> {
        (0..self.npairs()).map(|i| self.d_slot(i)).collect()
    }

    pub fn d_mask(&self) -> u32 {
        self.d_slots().iter().fold(0, |acc, &i| acc | (1 << i))
    }

    pub fn central_mask(&self) -> u32 {
        self.central_slots().fold(0, |acc, i| acc | (1 << i))
    }

    /// Name of the cotangent coordinate paired with `x_i`.
    pub fn symbol_name(&self, i: usize) -> String {
        let base = &self.base[i];
        match base.strip_prefix('x') {
            Some(rest) => format!("xi{rest}"),
            None => format!("xi_{base}"),
        }
    }

    /// Commutative context of principal symbols: `(central, x, ξ)`.
    pub fn symbol_context(&self) -> Arc<VarContext> {
        let mut names = self.central.clone();
        names.extend(self.base.iter().cloned());
        names.extend((0..self.npairs()).map(|i| self.symbol_name(i)));
        VarContext::new(&names, &self.params).expect("symbol names are distinct")
    }

    /// Commutative context of functions: `(central, x)`.
    pub fn function_context(&self) -> Arc<VarContext> {
        let mut names = self.central.clone();
        names.extend(self.base.iter().cloned());
        VarContext::new(&names, &self.params).expect("names are distinct")
    }
}

/// A normally ordered Weyl-algebra element.
#[derive(Clone)]
pub struct WeylOp<C: Coeff = Rational> {
    ctx: Arc<WeylContext>,
    poly: Poly<C>,
}

impl<C: Coeff> PartialEq for WeylOp<C> {
    fn eq(&self, o: &Self) -> bool {
        self.poly == o.poly && (Arc::ptr_eq(&self.ctx, &o.ctx) || self.ctx == o.ctx)
    }
}

impl<C: Coeff> Eq for WeylOp<C> {}

fn same_ctx(a: &Arc<WeylContext>, b: &Arc<WeylContext>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::ContextMismatch(format!("{:?} vs {:?}", a.names(), b.names())))
    }
}

impl<C: Coeff> WeylOp<C> {
    pub fn from_poly(ctx: &Arc<WeylContext>, poly: Poly<C>) -> Self {
        WeylOp { ctx: ctx.clone(), poly }
    }

    pub fn zero(ctx: &Arc<WeylContext>) -> Self {
        Self::from_poly(ctx, Poly::zero())
    }

    pub fn one(ctx: &Arc<WeylContext>) -> Self {
        Self::from_poly(ctx, Poly::one())
    }

    pub fn constant(ctx: &Arc<WeylContext>, c: C) -> Self {
        Self::from_poly(ctx, Poly::constant(c))
    }

    pub fn from_i64(ctx: &Arc<WeylContext>, n: i64) -> Self {
        Self::constant(ctx, C::from_i64(n))
    }

    /// A variable or, for fraction-field coefficients, a parameter.
    pub fn var(ctx: &Arc<WeylContext>, name: &str) -> Result<Self> {
        if let Some(i) = ctx.index_of(name) {
            return Ok(Self::from_poly(ctx, Poly::var(i)));
        }
        if let Some(j) = ctx.param_index(name) {
            if let Some(p) = C::param(j) {
                return Ok(Self::constant(ctx, p));
            }
        }
        Err(Error::UnknownIdentifier(name.to_string()))
    }

    pub fn x(ctx: &Arc<WeylContext>, i: usize) -> Self {
        Self::from_poly(ctx, Poly::var(ctx.x_slot(i)))
    }

    pub fn d(ctx: &Arc<WeylContext>, i: usize) -> Self {
        Self::from_poly(ctx, Poly::var(ctx.d_slot(i)))
    }

    pub fn ctx(&self) -> &Arc<WeylContext> {
        &self.ctx
    }

    pub fn poly(&self) -> &Poly<C> {
        &self.poly
    }

    pub fn into_poly(self) -> Poly<C> {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn len(&self) -> usize {
        self.poly.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poly.is_empty()
    }

    /// No derivation variable occurs.
    pub fn is_function(&self) -> bool {
        self.poly.support() & self.ctx.d_mask() == 0
    }

    /// Maximal total ∂-degree (0 for the zero operator).
    pub fn order(&self) -> u32 {
        let ds = self.ctx.d_slots();
        self.poly.terms().iter().map(|t| t.0.degree_in(&ds)).max().unwrap_or(0)
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        same_ctx(&self.ctx, &o.ctx)?;
        Ok(Self::from_poly(&self.ctx, self.poly.add(&o.poly)))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        same_ctx(&self.ctx, &o.ctx)?;
        Ok(Self::from_poly(&self.ctx, self.poly.sub(&o.poly)))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        same_ctx(&self.ctx, &o.ctx)?;
        Ok(Self::from_poly(&self.ctx, weyl_poly_mul(&self.ctx.pairs(), &self.poly, &o.poly)))
    }

    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.checked_mul(o)?.checked_sub(&o.checked_mul(self)?)
    }

    pub fn neg(&self) -> Self {
        Self::from_poly(&self.ctx, self.poly.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_poly(&self.ctx, self.poly.scale(c))
    }

    pub fn scale_i64(&self, n: i64) -> Self {
        self.scale(&C::from_i64(n))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The action on functions: `∂ᵢ` differentiates, everything else
    /// multiplies.
    pub fn apply(&self, f: &Self) -> Result<Self> {
        same_ctx(&self.ctx, &f.ctx)?;
        if !f.is_function() {
            return Err(Error::Structural(format!("cannot act on `{f}`: it contains derivation variables")));
        }
        let mut acc = Poly::zero();
        for (m, c) in self.poly.terms() {
            let mut g = f.poly.clone();
            let mut rest = *m;
            for (xi, di) in self.ctx.pairs() {
                for _ in 0..m.exp(di) {
                    g = g.derivative(xi);
                }
                rest.set(di, 0);
            }
            acc = acc.add(&g.mul_term(&rest, c));
        }
        Ok(Self::from_poly(&self.ctx, acc))
    }

    /// Acts on a polynomial over the function context `(central, x)`.
    pub fn apply_poly(&self, f: &CommPoly<C>) -> Result<CommPoly<C>> {
        let fctx = self.ctx.function_context();
        if f.ctx().names() != fctx.names() {
            return Err(Error::ContextMismatch("polynomial is not over the operator's function ring".into()));
        }
        let g = Self::from_poly(&self.ctx, f.poly().clone());
        Ok(CommPoly::new(&fctx, self.apply(&g)?.into_poly()))
    }

    /// Terms of top ∂-degree with `∂ᵢ ↦ ξᵢ`.
    pub fn principal_symbol(&self) -> CommPoly<C> {
        let sctx = self.ctx.symbol_context();
        let ds = self.ctx.d_slots();
        let top = self.order();
        let terms = self.poly.terms().iter().filter(|t| t.0.degree_in(&ds) == top).cloned();
        CommPoly::new(&sctx, Poly::from_terms(terms))
    }

    /// Function-valued coefficient of `∂^β`: `self = Σ_β c_β(x) ∂^β`.
    pub fn d_coefficients(&self) -> Vec<(Mono, Self)> {
        let dmask = self.ctx.d_mask();
        let mut groups: Vec<(Mono, Vec<(Mono, C)>)> = Vec::new();
        for (m, c) in self.poly.terms() {
            let mut dpart = Mono::ONE;
            let mut fpart = *m;
            for i in 0..MAX_VARS {
                if dmask & (1 << i) != 0 {
                    dpart.set(i, m.exp(i));
                    fpart.set(i, 0);
                }
            }
            match groups.iter_mut().find(|g| g.0 == dpart) {
                Some(g) => g.1.push((fpart, c.clone())),
                None => groups.push((dpart, vec![(fpart, c.clone())])),
            }
        }
        groups.into_iter().map(|(d, ts)| (d, Self::from_poly(&self.ctx, Poly::from_terms(ts)))).collect()
    }

    /// Re-expresses the operator in another context with the same
    /// coefficient parameters, matching variables by name.
    pub fn embed(&self, target: &Arc<WeylContext>) -> Result<Self> {
        if self.ctx.params != target.params {
            return Err(Error::ContextMismatch("coefficient parameters differ".into()));
        }
        let map = self.slot_map(target)?;
        Ok(Self::from_poly(target, self.poly.remap_vars(&map)))
    }

    fn slot_map(&self, target: &Arc<WeylContext>) -> Result<Vec<usize>> {
        let support = self.poly.support();
        let mut map = vec![0usize; MAX_VARS];
        for (i, name) in self.ctx.var_names().enumerate() {
            match target.index_of(name) {
                Some(j) => map[i] = j,
                None if support & (1 << i) == 0 => map[i] = 0,
                None => return Err(Error::ContextMismatch(format!("variable `{name}` missing from target"))),
            }
        }
        Self::check_roles(&self.ctx, target, support)?;
        Ok(map)
    }

    fn check_roles(src: &WeylContext, dst: &WeylContext, support: u32) -> Result<()> {
        for (i, name) in src.var_names().enumerate() {
            if support & (1 << i) == 0 {
                continue;
            }
            let role = |c: &WeylContext, n: &str| {
                if c.central.iter().any(|v| v == n) {
                    0
                } else if c.base.iter().any(|v| v == n) {
                    1
                } else {
                    2
                }
            };
            if dst.index_of(name).is_some() && role(src, name) != role(dst, name) {
                return Err(Error::ContextMismatch(format!("variable `{name}` changes role")));
            }
        }
        Ok(())
    }

    /// Terms in display order: total ∂-degree descending, then the
    /// canonical order.
    pub fn display_terms(&self) -> Vec<(Mono, C)> {
        let ds = self.ctx.d_slots();
        let mut terms = self.poly.terms().to_vec();
        terms.sort_by(|a, b| match b.0.degree_in(&ds).cmp(&a.0.degree_in(&ds)) {
            Ordering::Equal => degrevlex_cmp(&b.0, &a.0),
            o => o,
        });
        terms
    }
}

impl WeylOp<Rational> {
    /// Moves into `target` matching names: variables of `target` stay
    /// variables, names listed in `values` are replaced by the given numbers,
    /// and target coefficient parameters become parameters of `D`.
    pub fn specialize_into<D: Coeff>(
        &self,
        target: &Arc<WeylContext>,
        values: &[(String, Rational)],
    ) -> Result<WeylOp<D>> {
        let mut terms = Vec::with_capacity(self.poly.len());
        let support = self.poly.support();
        WeylOp::<Rational>::check_roles(&self.ctx, target, support)?;
        for (m, c) in self.poly.terms() {
            let mut n = Mono::ONE;
            let mut coeff = D::from_rational(c);
            for (i, name) in self.ctx.var_names().enumerate() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                if let Some((_, v)) = values.iter().find(|(k, _)| k == name) {
                    coeff = coeff.mul(&D::from_rational(&v.pow(e as u32)));
                } else if let Some(j) = target.index_of(name) {
                    n.set(j, e);
                } else if let Some(p) = target.param_index(name).and_then(D::param) {
                    let mut pe = D::one();
                    for _ in 0..e {
                        pe = pe.mul(&p);
                    }
                    coeff = coeff.mul(&pe);
                } else {
                    return Err(Error::ContextMismatch(format!("variable `{name}` has no image")));
                }
            }
            terms.push((n, coeff));
        }
        Ok(WeylOp::from_poly(target, Poly::from_terms(terms)))
    }
}

/// Normal-ordered product of two raw operators.
pub fn weyl_poly_mul<C: Coeff>(pairs: &[(usize, usize)], a: &Poly<C>, b: &Poly<C>) -> Poly<C> {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let mut terms = Vec::with_capacity(a.len() * b.len());
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let cab = ca.mul(cb);
            for (m, k) in mono_product::<C>(pairs, ma, mb) {
                let c = if k.is_one() { cab.clone() } else { cab.mul(&k) };
                terms.push((m, c));
            }
        }
    }
    Poly::from_terms(terms)
}

pub fn weyl_mul<C: Coeff>(p: &WeylOp<C>, q: &WeylOp<C>) -> Result<WeylOp<C>> {
    p.checked_mul(q)
}

pub fn commutator<C: Coeff>(p: &WeylOp<C>, q: &WeylOp<C>) -> Result<WeylOp<C>> {
    p.commutator(q)
}

pub fn apply<C: Coeff>(p: &WeylOp<C>, f: &CommPoly<C>) -> Result<CommPoly<C>> {
    p.apply_poly(f)
}

pub fn principal_symbol<C: Coeff>(p: &WeylOp<C>) -> CommPoly<C> {
    p.principal_symbol()
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<C: Coeff> std::ops::$tr for &WeylOp<C> {
            type Output = WeylOp<C>;
            fn $m(self, o: Self) -> WeylOp<C> {
                self.$checked(o).expect("operators from different contexts")
            }
        }
        impl<C: Coeff> std::ops::$tr for WeylOp<C> {
            type Output = WeylOp<C>;
            fn $m(self, o: Self) -> WeylOp<C> {
                (&self).$m(&o)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl<C: Coeff> std::ops::Neg for &WeylOp<C> {
    type Output = WeylOp<C>;
    fn neg(self) -> WeylOp<C> {
        WeylOp::neg(self)
    }
}

impl<C: Coeff> fmt::Display for WeylOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.display_terms();
        f.write_str(&render_terms(terms.iter(), &self.ctx.names(), &self.ctx.params))
    }
}

impl<C: Coeff> fmt::Debug for WeylOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylOp({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<WeylContext> {
        WeylContext::plane(&[], &[])
    }

    fn v(c: &Arc<WeylContext>, n: &str) -> WeylOp {
        WeylOp::var(c, n).unwrap()
    }

    #[test]
    fn defining_relation() {
        let c = ctx();
        let (x1, d1) = (v(&c, "x1"), v(&c, "d1"));
        assert_eq!((&d1 * &x1).to_string(), "x1*d1 + 1");
        assert_eq!((&x1 * &d1).to_string(), "x1*d1");
        assert_eq!((&d1.pow(2) * &x1.pow(2)).to_string(), "x1^2*d1^2 + 4x1*d1 + 2");
        assert!(v(&c, "x1").commutator(&v(&c, "x2")).unwrap().is_zero());
    }

    #[test]
    fn cusp_log_fields() {
        let c = ctx();
        let (x1, x2, d1, d2) = (v(&c, "x1"), v(&c, "x2"), v(&c, "d1"), v(&c, "d2"));
        let d1f = &x1.scale_i64(3) * &d1 + &x2.scale_i64(2) * &d2;
        let d2f = &x2.pow(2).scale_i64(3) * &d1 + &x1.scale_i64(2) * &d2;
        assert_eq!(d1f.commutator(&d2f).unwrap(), d2f);
        let h = &x1.pow(2) - &x2.pow(3);
        assert_eq!(d1f.apply(&h).unwrap(), h.scale_i64(6));
        assert!(d2f.apply(&h).unwrap().is_zero());
        assert_eq!(d2f.principal_symbol().to_string(), "3x2^2*xi1 + 2x1*xi2");
        let sq = d2f.pow(2);
        assert_eq!(sq.to_string(), "9x2^4*d1^2 + 12x1*x2^2*d1*d2 + 4x1^2*d2^2 + 12x1*x2*d1 + 6x2^2*d2");
        let sym = &(&x1 * &d1) + &WeylOp::one(&c);
        assert_eq!(sym.principal_symbol().to_string(), "x1*xi1");
    }

    #[test]
    fn apply_rejects_operators() {
        let c = ctx();
        let d1 = v(&c, "d1");
        assert!(matches!(d1.apply(&d1), Err(Error::Structural(_))));
    }

    #[test]
    fn embedding_by_name() {
        let small = ctx();
        let big = WeylContext::plane(&["s", "lambda"], &[]);
        let op = &v(&small, "x1") * &v(&small, "d1");
        let e = op.embed(&big).unwrap();
        assert_eq!(e.to_string(), "x1*d1");
        assert!(e.embed(&small).is_ok());
        let s = v(&big, "s");
        assert!(s.embed(&small).is_err());
        let spec = (&s * &v(&big, "lambda")).specialize_into::<Rational>(
            &small,
            &[("s".into(), Rational::from_int(2)), ("lambda".into(), Rational::new(1, 3))],
        );
        assert_eq!(spec.unwrap().to_string(), "2/3");
    }
}
