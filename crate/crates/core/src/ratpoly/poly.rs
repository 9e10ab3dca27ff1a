//! Sparse multivariate polynomials with terms kept in canonical order.

use std::cmp::Ordering;

use super::coeff::Coeff;
use super::mono::{degrevlex_cmp, Mono, MAX_VARS};

/// A sparse polynomial; terms sorted descending by [`degrevlex_cmp`], no
/// zero coefficients.
///
/// The type carries no variable names: exponent slot `i` is variable `i` of
/// whichever context owns the value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<C> {
    terms: Vec<(Mono, C)>,
}

impl<C: Coeff> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

fn merge<C: Coeff>(a: &[(Mono, C)], b: &[(Mono, C)], negate_b: bool) -> Vec<(Mono, C)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match degrevlex_cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let c = if negate_b { b[j].1.neg() } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    for t in &b[j..] {
        let c = if negate_b { t.1.neg() } else { t.1.clone() };
        out.push((t.0, c));
    }
    out
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(Mono::ONE, c)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(C::from_i64(n))
    }

    pub fn monomial(m: Mono, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn var(i: usize) -> Self {
        Self::monomial(Mono::var(i, 1), C::one())
    }

    /// Sums arbitrary terms, combining repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = (Mono, C)>>(it: I) -> Self {
        let mut v: Vec<(Mono, C)> = it.into_iter().filter(|t| !t.1.is_zero()).collect();
        v.sort_by(|a, b| degrevlex_cmp(&b.0, &a.0));
        let mut out: Vec<(Mono, C)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == m => {
                    last.1 = last.1.add(&c);
                }
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, C)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    /// The coefficient of the monomial `1`.
    pub fn constant_term(&self) -> C {
        self.coeff_of(&Mono::ONE)
    }

    pub fn coeff_of(&self, m: &Mono) -> C {
        self.terms
            .binary_search_by(|t| degrevlex_cmp(m, &t.0))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    /// Leading term under the canonical order.
    pub fn leading(&self) -> Option<&(Mono, C)> {
        self.terms.first()
    }

    pub fn add(&self, o: &Self) -> Self {
        Poly { terms: merge(&self.terms, &o.terms, false) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Poly { terms: merge(&self.terms, &o.terms, true) }
    }

    pub fn neg(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, d)| (*m, d.mul(c))).collect() }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        Poly { terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect() }
    }

    pub fn mul_term(&self, m: &Mono, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(n, d)| (n.mul(m), d.mul(c))).collect() }
    }

    /// Commutative product.
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if o.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        if self.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc = Self::zero();
        for (m, c) in &o.terms {
            acc = acc.add(&self.mul_term(m, c));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.total_degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|t| t.0.exp(var)).max().unwrap_or(0)
    }

    /// Bitmask of the variables that occur.
    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |acc, t| acc | t.0.support())
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        Self::from_terms(self.terms.iter().filter(|t| t.0.exp(var) > 0).map(|(m, c)| {
            let e = m.exp(var);
            let mut n = *m;
            n.set(var, e - 1);
            (n, c.mul(&C::from_i64(e as i64)))
        }))
    }

    /// Division by a single polynomial under the canonical order.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dm, dc) = d.terms[0].clone();
        let dinv = dc.inv();
        let mut q: Vec<(Mono, C)> = Vec::new();
        let mut r: Vec<(Mono, C)> = Vec::new();
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.first().cloned() {
            match dm.quotient_of(&m) {
                Some(qm) => {
                    let qc = c.mul(&dinv);
                    p = p.sub(&d.mul_term(&qm, &qc));
                    q.push((qm, qc));
                }
                None => {
                    r.push((m, c));
                    p.terms.remove(0);
                }
            }
        }
        (Self::from_terms(q), Poly { terms: r })
    }

    /// `self / d` when the division is exact.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Scales so the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> Poly<D> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Remaps exponent slots; `map[i]` is the new slot of variable `i`.
    pub fn remap_vars(&self, map: &[usize]) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let mut n = Mono::ONE;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    n.set(map[i], n.exp(map[i]) + e);
                }
            }
            (n, c.clone())
        }))
    }

    /// Coefficients as a polynomial in `var`: entry `k` multiplies `var^k`.
    pub fn univariate_coeffs(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in(var) as usize;
        let mut parts: Vec<Vec<(Mono, C)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let mut n = *m;
            let k = n.exp(var) as usize;
            n.set(var, 0);
            parts[k].push((n, c.clone()));
        }
        parts.into_iter().map(Self::from_terms).collect()
    }

    pub fn from_univariate(var: usize, coeffs: &[Self]) -> Self {
        let mut terms = Vec::new();
        for (k, p) in coeffs.iter().enumerate() {
            let vk = Mono::var(var, k as u16);
            terms.extend(p.terms.iter().map(|(m, c)| (m.mul(&vk), c.clone())));
        }
        Self::from_terms(terms)
    }

    /// Replaces variable `var` by the polynomial `value`.
    pub fn substitute(&self, var: usize, value: &Self) -> Self {
        let coeffs = self.univariate_coeffs(var);
        let mut acc = Self::zero();
        for p in coeffs.iter().rev() {
            acc = acc.mul(value).add(p);
        }
        acc
    }

    pub fn eval_var(&self, var: usize, value: &C) -> Self {
        self.substitute(var, &Self::constant(value.clone()))
    }

    /// `true` when no term mentions a variable outside `mask`.
    pub fn supported_in(&self, mask: u32) -> bool {
        self.support() & !mask == 0
    }

    pub fn render(&self, names: &[String], params: &[String]) -> String {
        render_terms(self.terms.iter(), names, params)
    }
}

/// Renders a monomial with `*` between variables.
pub fn render_mono(m: &Mono, names: &[String]) -> String {
    let mut parts = Vec::new();
    for i in 0..MAX_VARS.min(names.len().max(1)) {
        let e = m.exp(i);
        if e == 0 {
            continue;
        }
        let name = names.get(i).map(String::as_str).unwrap_or("?");
        if e == 1 {
            parts.push(name.to_string());
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

/// Renders terms in the order given.
pub fn render_terms<'a, C: Coeff, I: Iterator<Item = &'a (Mono, C)>>(
    terms: I,
    names: &[String],
    params: &[String],
) -> String {
    let mut out = String::new();
    for (k, (m, c)) in terms.enumerate() {
        let ct = c.render(params);
        if k == 0 {
            if ct.negative {
                out.push('-');
            }
        } else {
            out.push_str(if ct.negative { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&ct.body);
        } else {
            let ms = render_mono(m, names);
            if ct.unit {
                out.push_str(&ms);
            } else if ct.numeric {
                out.push_str(&ct.body);
                out.push_str(&ms);
            } else {
                out.push_str(&ct.body);
                out.push('*');
                out.push_str(&ms);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
