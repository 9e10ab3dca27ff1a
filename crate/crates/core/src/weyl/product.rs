//! Normal-ordering of monomial products.

use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::ratpoly::{Coeff, Mono};

const TABLE: usize = 128;

fn binomials() -> &'static Vec<Vec<u128>> {
    static B: OnceLock<Vec<Vec<u128>>> = OnceLock::new();
    B.get_or_init(|| {
        let mut t = vec![vec![0u128; TABLE + 1]; TABLE + 1];
        for n in 0..=TABLE {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1].saturating_add(if k < n { t[n - 1][k] } else { 0 });
            }
        }
        t
    })
}

fn binom_big(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// `k!·C(b,k)·C(c,k)` (equivalently `b!/(b−k)!·C(c,k)`) when it fits.
fn small_factor(b: u16, c: u16, k: u16) -> Option<u128> {
    if b as usize > TABLE || c as usize > TABLE {
        return None;
    }
    let t = binomials();
    let mut falling: u128 = 1;
    for i in 0..k as u128 {
        falling = falling.checked_mul(b as u128 - i)?;
    }
    let cb = t[c as usize][k as usize];
    if cb == u128::MAX {
        return None;
    }
    falling.checked_mul(cb)
}

fn big_factor(b: u16, c: u16, k: u16) -> BigInt {
    let mut falling = BigInt::from(1);
    for i in 0..k as u32 {
        falling *= BigInt::from(b as u32 - i);
    }
    falling * binom_big(c as u32, k as u32)
}

enum Int {
    Small(u128),
    Big(BigInt),
}

impl Int {
    fn mul(self, o: &Int) -> Int {
        match (self, o) {
            (Int::Small(a), Int::Small(b)) => match a.checked_mul(*b) {
                Some(p) => Int::Small(p),
                None => Int::Big(BigInt::from(a) * BigInt::from(*b)),
            },
            (Int::Small(a), Int::Big(b)) => Int::Big(BigInt::from(a) * b),
            (Int::Big(a), Int::Small(b)) => Int::Big(a * BigInt::from(*b)),
            (Int::Big(a), Int::Big(b)) => Int::Big(a * b),
        }
    }

    fn clone_ref(&self) -> Int {
        match self {
            Int::Small(a) => Int::Small(*a),
            Int::Big(b) => Int::Big(b.clone()),
        }
    }

    fn to_coeff<C: Coeff>(&self) -> C {
        match self {
            Int::Small(a) if *a <= i64::MAX as u128 => C::from_i64(*a as i64),
            Int::Small(a) => C::from_bigint(BigInt::from(*a)),
            Int::Big(b) => C::from_bigint(b.clone()),
        }
    }
}

/// Expands `x^α∂^β · x^γ∂^δ` into normal order.
///
/// `pairs` lists `(x slot, ∂ slot)`; every other slot is central. The first
/// returned term is always the commutative product with coefficient 1; the
/// rest have strictly smaller exponents in the touched pairs.
pub fn mono_product<C: Coeff>(pairs: &[(usize, usize)], a: &Mono, b: &Mono) -> Vec<(Mono, C)> {
    let lead = a.mul(b);
    let mut cur: Vec<(Mono, Int)> = vec![(lead, Int::Small(1))];
    for &(xi, di) in pairs {
        let bd = a.exp(di);
        let cx = b.exp(xi);
        let kmax = bd.min(cx);
        if kmax == 0 {
            continue;
        }
        let factors: Vec<Int> = (1..=kmax)
            .map(|k| match small_factor(bd, cx, k) {
                Some(f) => Int::Small(f),
                None => Int::Big(big_factor(bd, cx, k)),
            })
            .collect();
        let mut next = Vec::with_capacity(cur.len() * (kmax as usize + 1));
        for (m, c) in cur {
            let corrections: Vec<(Mono, Int)> = factors
                .iter()
                .enumerate()
                .map(|(k, f)| {
                    let k = k as u16 + 1;
                    let mut n = m;
                    n.set(xi, m.exp(xi) - k);
                    n.set(di, m.exp(di) - k);
                    (n, c.clone_ref().mul(f))
                })
                .collect();
            next.push((m, c));
            next.extend(corrections);
        }
        cur = next;
    }
    debug_assert!(cur[1..].iter().all(|(m, _)| m.divides(&lead) && *m != lead));
    cur.into_iter().map(|(m, c)| (m, c.to_coeff())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{Poly, Rational};

    #[test]
    fn second_powers() {
        // ∂² · x² = x²∂² + 4x∂ + 2
        let a = Mono::from_exps(&[0, 2]);
        let b = Mono::from_exps(&[2, 0]);
        let p = Poly::from_terms(mono_product::<Rational>(&[(0, 1)], &a, &b));
        let expected = Poly::from_terms([
            (Mono::from_exps(&[2, 2]), Rational::from_int(1)),
            (Mono::from_exps(&[1, 1]), Rational::from_int(4)),
            (Mono::from_exps(&[0, 0]), Rational::from_int(2)),
        ]);
        assert_eq!(p, expected);
    }

    #[test]
    fn large_exponents_use_big_integers() {
        let a = Mono::from_exps(&[0, 60]);
        let b = Mono::from_exps(&[60, 0]);
        let terms = mono_product::<Rational>(&[(0, 1)], &a, &b);
        assert_eq!(terms.len(), 61);
        let constant = terms.iter().find(|t| t.0.is_one()).unwrap();
        // k = 60: 60!·C(60,60)·C(60,60) = 60!
        assert_eq!(constant.1, Rational::from_bigint(crate::ratpoly::factorial(60)));
    }
}
