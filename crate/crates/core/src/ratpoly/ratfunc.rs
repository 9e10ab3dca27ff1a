//! Normalized rational functions over ℚ, used as the generic-parameter
//! coefficient field.

use super::coeff::{Coeff, CoeffText};
use super::gcd::gcd;
use super::poly::Poly;
use super::rational::Rational;

type P = Poly<Rational>;

/// `num/den` with `gcd(num, den) = 1` and `den` monic under the canonical
/// order. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: P,
    den: P,
}

impl RatFunc {
    pub fn new(num: P, den: P) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        Self::normalized(num, den)
    }

    pub fn from_poly(p: P) -> Self {
        RatFunc { num: p, den: P::one() }
    }

    pub fn num(&self) -> &P {
        &self.num
    }

    pub fn den(&self) -> &P {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    fn normalized(num: P, den: P) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: P::one() };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let s = lc.inv();
            RatFunc { num: num.scale(&s), den: den.scale(&s) }
        }
    }

    /// Value at a rational point; `None` where the denominator vanishes.
    pub fn eval(&self, point: &[(usize, Rational)]) -> Option<Rational> {
        let ev = |p: &P| {
            let mut q = p.clone();
            for (i, v) in point {
                q = q.eval_var(*i, v);
            }
            q
        };
        let n = ev(&self.num);
        let d = ev(&self.den);
        if !n.is_constant() || !d.is_constant() {
            return None;
        }
        let d = d.constant_term();
        if d.is_zero() {
            return None;
        }
        Some(n.constant_term().div(&d))
    }

    /// Substitutes parameter slots by polynomials in the parameters.
    pub fn substitute(&self, var: usize, value: &P) -> Self {
        Self::new(self.num.substitute(var, value), self.den.substitute(var, value))
    }
}

impl Coeff for RatFunc {
    fn zero() -> Self {
        RatFunc { num: P::zero(), den: P::one() }
    }

    fn one() -> Self {
        RatFunc { num: P::one(), den: P::one() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_constant() && self.den.is_constant() && self.num == self.den
    }

    fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            if self.den.is_constant() {
                return RatFunc { num, den: self.den.clone() };
            }
            return Self::normalized(num, self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = o.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d2).add(&o.num.mul(&d1));
        Self::normalized(num, self.den.mul(&d2))
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_constant() && o.den.is_constant() {
            return RatFunc { num: self.num.mul(&o.num), den: P::one() };
        }
        let g1 = gcd(&self.num, &o.den);
        let g2 = gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = o.den.div_exact(&g1).expect("gcd divides");
        let n2 = o.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.leading().expect("nonzero").1.clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let s = lc.inv();
            RatFunc { num: num.scale(&s), den: den.scale(&s) }
        }
    }

    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let lc = self.num.leading().expect("nonzero").1.inv();
        RatFunc { num: self.den.scale(&lc), den: self.num.scale(&lc) }
    }

    fn from_rational(q: &Rational) -> Self {
        RatFunc { num: P::constant(q.clone()), den: P::one() }
    }

    fn to_rational(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.constant_term())
    }

    fn param(i: usize) -> Option<Self> {
        Some(RatFunc { num: P::var(i), den: P::one() })
    }

    fn pivot_conditions(&self) -> Vec<P> {
        [&self.num, &self.den].into_iter().filter(|p| !p.is_constant()).map(|p| p.monic()).collect()
    }

    fn render(&self, params: &[String]) -> CoeffText {
        if let Some(q) = self.to_rational() {
            return q.render(params);
        }
        let wrap = |p: &P| {
            let s = p.render(params, &[]);
            if p.len() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_constant() {
            if self.num.len() == 1 {
                let (m, c) = &self.num.terms()[0];
                let abs = P::monomial(*m, c.abs());
                return CoeffText {
                    negative: c.is_negative(),
                    body: abs.render(params, &[]),
                    unit: false,
                    numeric: false,
                };
            }
            return CoeffText { negative: false, body: wrap(&self.num), unit: false, numeric: false };
        }
        let num = if self.num.len() == 1 && !self.num.terms()[0].0.is_one() {
            format!("({})", self.num.render(params, &[]))
        } else {
            wrap(&self.num)
        };
        CoeffText { negative: false, body: format!("{num}/{}", wrap(&self.den)), unit: false, numeric: false }
    }

    fn param_support(&self) -> u32 {
        self.num.support() | self.den.support()
    }
}
