//! Dense fixed-capacity exponent vectors.

use std::cmp::Ordering;

/// Upper bound on the number of variables of any context.
pub const MAX_VARS: usize = 16;

/// Exponent vector; slots beyond a context's arity stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(pub [u16; MAX_VARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; MAX_VARS]);

    pub fn var(i: usize, e: u16) -> Self {
        let mut m = Mono::ONE;
        m.0[i] = e;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        let mut m = Mono::ONE;
        m.0[..exps.len()].copy_from_slice(exps);
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, e: u16) {
        self.0[i] = e;
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        r
    }

    #[inline]
    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self` when `self | o`.
    #[inline]
    pub fn quotient_of(&self, o: &Mono) -> Option<Mono> {
        let mut r = Mono::ONE;
        for i in 0..MAX_VARS {
            r.0[i] = o.0[i].checked_sub(self.0[i])?;
        }
        Some(r)
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a = (*a).max(*b);
        }
        r
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        r
    }

    pub fn coprime(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&i| self.0[i] as u32).sum()
    }

    /// Bit `i` set iff variable `i` occurs.
    pub fn support(&self) -> u32 {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |acc, (i, _)| acc | (1 << i))
    }
}

impl std::fmt::Debug for Mono {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let last = self.0.iter().rposition(|&e| e > 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.0[..last])
    }
}

/// Graded reverse lexicographic comparison in index order (index 0 largest).
#[inline]
pub fn degrevlex_cmp(a: &Mono, b: &Mono) -> Ordering {
    let da = a.total_degree();
    let db = b.total_degree();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..MAX_VARS).rev() {
        if a.0[i] != b.0[i] {
            return b.0[i].cmp(&a.0[i]);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_basics() {
        let x = Mono::var(0, 1);
        let y = Mono::var(1, 1);
        let z = Mono::var(2, 1);
        assert_eq!(degrevlex_cmp(&x, &y), Ordering::Greater);
        assert_eq!(degrevlex_cmp(&y, &z), Ordering::Greater);
        // x*z < y^2 in degrevlex
        assert_eq!(degrevlex_cmp(&x.mul(&z), &y.mul(&y)), Ordering::Less);
        assert_eq!(degrevlex_cmp(&Mono::ONE, &z), Ordering::Less);
    }

    #[test]
    fn divisibility() {
        let a = Mono::from_exps(&[1, 2]);
        let b = Mono::from_exps(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient_of(&b), Some(Mono::from_exps(&[1, 0, 1])));
        assert_eq!(b.quotient_of(&a), None);
        assert_eq!(a.lcm(&Mono::from_exps(&[0, 3])), Mono::from_exps(&[1, 3]));
        assert!(Mono::var(0, 2).coprime(&Mono::var(1, 1)));
    }
}
