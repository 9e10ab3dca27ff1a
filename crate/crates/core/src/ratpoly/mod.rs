//! Exact scalars, sparse commutative polynomials and rational functions.
//!
//! [`Poly`] is the raw term container shared by every polynomial-like type in
//! the crate. [`CommPoly`] attaches a [`VarContext`] naming its variables.
//! The commutative Gröbner operations are the zero-pair degeneration of the
//! Weyl engine in [`crate::groebner`] and are re-exported here.

mod coeff;
mod gcd;
mod mono;
mod poly;
mod ratfunc;
mod rational;

use std::fmt;
use std::sync::Arc;

pub use coeff::{Coeff, CoeffText};
pub use gcd::gcd;
pub use mono::{degrevlex_cmp, Mono, MAX_VARS};
pub use poly::{render_mono, render_terms, Poly};
pub use ratfunc::RatFunc;
pub use rational::{factorial, ParseRationalError, Rational};

pub use crate::groebner::commutative::{colon_ideal, commutative_buchberger, ideal_eq, krull_dimension};

use crate::error::{Error, Result};

/// Ordered variable names of a commutative ring, plus the names of the
/// coefficient parameters when the coefficients are rational functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
    params: Vec<String>,
}

impl VarContext {
    pub fn new<S: AsRef<str>>(names: &[S], params: &[S]) -> Result<Arc<Self>> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let params: Vec<String> = params.iter().map(|s| s.as_ref().to_string()).collect();
        if names.len() > MAX_VARS || params.len() > MAX_VARS {
            return Err(Error::InvalidArgument(format!("at most {MAX_VARS} variables are supported")));
        }
        let mut all: Vec<&String> = names.iter().chain(params.iter()).collect();
        all.sort();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("duplicate variable name".into()));
        }
        Ok(Arc::new(VarContext { names, params }))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A polynomial over a named context.
#[derive(Clone, PartialEq, Eq)]
pub struct CommPoly<C: Coeff = Rational> {
    ctx: Arc<VarContext>,
    poly: Poly<C>,
}

impl<C: Coeff> CommPoly<C> {
    pub fn new(ctx: &Arc<VarContext>, poly: Poly<C>) -> Self {
        CommPoly { ctx: ctx.clone(), poly }
    }

    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        Self::new(ctx, Poly::zero())
    }

    pub fn constant(ctx: &Arc<VarContext>, c: C) -> Self {
        Self::new(ctx, Poly::constant(c))
    }

    pub fn var(ctx: &Arc<VarContext>, name: &str) -> Result<Self> {
        let i = ctx.index_of(name).ok_or_else(|| Error::UnknownIdentifier(name.to_string()))?;
        Ok(Self::new(ctx, Poly::var(i)))
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
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

    fn check(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &o.ctx) || self.ctx == o.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!("{:?} vs {:?}", self.ctx.names, o.ctx.names)))
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(Self::new(&self.ctx, self.poly.add(&o.poly)))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(Self::new(&self.ctx, self.poly.sub(&o.poly)))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(Self::new(&self.ctx, self.poly.mul(&o.poly)))
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.ctx, self.poly.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(&self.ctx, self.poly.scale(c))
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::new(&self.ctx, self.poly.pow(e))
    }

    pub fn monic(&self) -> Self {
        Self::new(&self.ctx, self.poly.monic())
    }

    pub fn derivative(&self, name: &str) -> Result<Self> {
        let i = self.ctx.index_of(name).ok_or_else(|| Error::UnknownIdentifier(name.to_string()))?;
        Ok(Self::new(&self.ctx, self.poly.derivative(i)))
    }
}

impl CommPoly<Rational> {
    /// A greatest common divisor, monic under the canonical order.
    pub fn gcd(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(Self::new(&self.ctx, gcd(&self.poly, &o.poly)))
    }
}

/// Arithmetic selector for [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith<C: Coeff>(p: &CommPoly<C>, q: &CommPoly<C>, op: ArithOp) -> Result<CommPoly<C>> {
    match op {
        ArithOp::Add => p.checked_add(q),
        ArithOp::Sub => p.checked_sub(q),
        ArithOp::Mul => p.checked_mul(q),
    }
}

pub fn multivariate_gcd(p: &CommPoly, q: &CommPoly) -> Result<CommPoly> {
    p.gcd(q)
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<C: Coeff> std::ops::$tr for &CommPoly<C> {
            type Output = CommPoly<C>;
            fn $m(self, o: Self) -> CommPoly<C> {
                self.$checked(o).expect("polynomials from different contexts")
            }
        }
        impl<C: Coeff> std::ops::$tr for CommPoly<C> {
            type Output = CommPoly<C>;
            fn $m(self, o: Self) -> CommPoly<C> {
                (&self).$m(&o)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl<C: Coeff> fmt::Display for CommPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.render(&self.ctx.names, &self.ctx.params))
    }
}

impl<C: Coeff> fmt::Debug for CommPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CommPoly({self})")
    }
}
