//! The coefficient-field abstraction shared by commutative polynomials and
//! Weyl-algebra operators.

use std::fmt::Debug;

use num_bigint::BigInt;

use super::poly::Poly;
use super::rational::Rational;

/// Rendering of a coefficient, split so callers can place the sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffText {
    pub negative: bool,
    /// Absolute value (or the whole expression if `negative` is false).
    pub body: String,
    /// The body is literally `1`.
    pub unit: bool,
    /// The body is a numeric literal that may be juxtaposed with a monomial.
    pub numeric: bool,
}

/// A field of coefficients.
pub trait Coeff: Clone + PartialEq + Eq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;

    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    fn from_rational(q: &Rational) -> Self;

    fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(&Rational::from_bigint(n))
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_int(n))
    }

    /// The value as a rational constant, if it is one.
    fn to_rational(&self) -> Option<Rational>;

    /// The `i`-th coefficient parameter, for fields that have parameters.
    fn param(_i: usize) -> Option<Self> {
        None
    }

    /// Parameter polynomials that must not vanish for a division by `self`
    /// to stay valid under specialization.
    fn pivot_conditions(&self) -> Vec<Poly<Rational>> {
        Vec::new()
    }

    fn render(&self, params: &[String]) -> CoeffText;

    /// Number of parameter slots this value mentions (0 for rationals).
    fn param_support(&self) -> u32 {
        0
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }
    fn add(&self, o: &Self) -> Self {
        Rational::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Rational::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Rational::mul(self, o)
    }
    fn neg(&self) -> Self {
        Rational::neg(self)
    }
    fn inv(&self) -> Self {
        Rational::inv(self)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn render(&self, _params: &[String]) -> CoeffText {
        let a = self.abs();
        CoeffText { negative: self.is_negative(), unit: a.is_one(), body: a.to_string(), numeric: true }
    }
}
