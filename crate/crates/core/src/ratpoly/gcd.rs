//! Multivariate GCD over ℚ by recursive primitive PRS.
//!
//! The polynomial is viewed as univariate in a main variable (the one with
//! the fewest occurrences) over the ring of the remaining variables; contents
//! are handled recursively and the primitive parts by a primitive
//! pseudo-remainder sequence.

use super::mono::{Mono, MAX_VARS};
use super::poly::Poly;
use super::rational::Rational;

type P = Poly<Rational>;

/// A greatest common divisor, monic under the canonical order.
///
/// `gcd(0, q)` is `monic(q)`; `gcd(0, 0)` is `0`.
pub fn gcd(p: &P, q: &P) -> P {
    gcd_rec(p, q).monic()
}

fn monomial_content(p: &P) -> Mono {
    let mut it = p.terms().iter();
    let mut m = match it.next() {
        Some(t) => t.0,
        None => return Mono::ONE,
    };
    for t in it {
        m = m.gcd(&t.0);
    }
    m
}

fn gcd_rec(p: &P, q: &P) -> P {
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    if p.is_constant() || q.is_constant() {
        return P::one();
    }
    if p.len() == 1 || q.len() == 1 {
        let m = monomial_content(p).gcd(&monomial_content(q));
        return P::monomial(m, Rational::one());
    }
    if p == q {
        return p.clone();
    }
    let sp = p.support();
    let sq = q.support();
    let var = match pick_main_var(p, q, sp | sq) {
        Some(v) => v,
        None => return P::one(),
    };
    let in_p = sp & (1 << var) != 0;
    let in_q = sq & (1 << var) != 0;
    match (in_p, in_q) {
        (true, false) => gcd_rec(&content(p, var), q),
        (false, true) => gcd_rec(p, &content(q, var)),
        _ => {
            let cp = content(p, var);
            let cq = content(q, var);
            let g = gcd_rec(&cp, &cq);
            let pp = p.div_exact(&cp).expect("content divides");
            let qq = q.div_exact(&cq).expect("content divides");
            let h = primitive_prs(pp, qq, var);
            g.mul(&h)
        }
    }
}

fn pick_main_var(p: &P, q: &P, mask: u32) -> Option<usize> {
    (0..MAX_VARS).filter(|i| mask & (1 << i) != 0).min_by_key(|&i| {
        let count = |x: &P| x.terms().iter().filter(|t| t.0.exp(i) > 0).count();
        (count(p) + count(q), i)
    })
}

/// GCD of the coefficients of `p` seen as a polynomial in `var`.
fn content(p: &P, var: usize) -> P {
    let mut g = P::zero();
    for c in p.univariate_coeffs(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, &c);
        if g.is_constant() {
            return P::one();
        }
    }
    g.monic()
}

fn primitive_part(p: &P, var: usize) -> P {
    let c = content(p, var);
    p.div_exact(&c).expect("content divides").monic()
}

fn leading_in(p: &P, var: usize) -> (u16, P) {
    let d = p.degree_in(var);
    let c = p.univariate_coeffs(var).pop().unwrap_or_default();
    (d, c)
}

/// Pseudo-remainder of `a` by `b` in `var` (up to a unit-free factor).
fn prem(a: &P, b: &P, var: usize) -> P {
    let (db, lb) = leading_in(b, var);
    let mut r = a.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let (dr, lr) = leading_in(&r, var);
        if dr < db {
            return r;
        }
        let shift = Mono::var(var, dr - db);
        r = r.mul(&lb).sub(&b.mul(&lr).mul_mono(&shift));
    }
}

fn primitive_prs(a: P, b: P, var: usize) -> P {
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) { (a, b) } else { (b, a) };
    a = a.monic();
    b = b.monic();
    loop {
        let r = prem(&a, &b, var);
        if r.is_zero() {
            return b;
        }
        if r.degree_in(var) == 0 {
            return P::one();
        }
        a = b;
        b = primitive_part(&r, var);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> P {
        P::var(i)
    }

    fn c(n: i64) -> P {
        P::from_i64(n)
    }

    #[test]
    fn monomial_gcd() {
        let x1 = v(0);
        let x2 = v(1);
        assert_eq!(gcd(&x1.pow(2), &x1.mul(&x2)), x1);
    }

    #[test]
    fn zero_case_is_monic() {
        let p = v(0).scale(&Rational::from_int(3)).add(&c(6));
        assert_eq!(gcd(&p, &P::zero()), v(0).add(&c(2)));
        assert_eq!(gcd(&P::zero(), &p), v(0).add(&c(2)));
    }

    #[test]
    fn parameter_factors() {
        // (λ − ν)(λ + ν − 1) and (λ − ν)
        let lam = v(0);
        let nu = v(3);
        let f1 = lam.sub(&nu);
        let f2 = lam.add(&nu).sub(&c(1));
        assert_eq!(gcd(&f1.mul(&f2), &f1), f1.monic());
        assert_eq!(gcd(&f1.mul(&f2).scale(&Rational::new(2, 3)), &f2.mul(&f2)), f2.monic());
        assert!(gcd(&f1, &f2).is_constant());
    }

    #[test]
    fn multivariate_common_factor() {
        let x = v(0);
        let y = v(1);
        let z = v(2);
        let g = x.mul(&y).add(&z.pow(2)).sub(&c(3));
        let a = g.mul(&x.add(&y.pow(2)));
        let b = g.mul(&z.sub(&x)).mul(&y.add(&c(1)));
        assert_eq!(gcd(&a, &b), g.monic());
    }
}
