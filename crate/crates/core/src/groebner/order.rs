use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::ratpoly::{Mono, MAX_VARS};
use crate::weyl::WeylContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Degrevlex,
    Lex,
    Block,
}

/// A monomial order: an ordered partition of the exponent slots into
/// blocks, compared block by block, degrevlex inside each block.
///
/// Lex is the case of singleton blocks.
#[derive(Clone, PartialEq, Eq)]
pub struct TermOrder {
    kind: OrderKind,
    blocks: Vec<Vec<usize>>,
}

impl TermOrder {
    pub fn degrevlex(nvars: usize) -> Self {
        Self::checked(OrderKind::Degrevlex, vec![(0..nvars).collect()])
    }

    pub fn lex(nvars: usize) -> Self {
        Self::checked(OrderKind::Lex, (0..nvars).map(|i| vec![i]).collect())
    }

    /// Block order from slot indices; the blocks must partition `0..nvars`.
    pub fn blocks(nvars: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; nvars];
        for &i in blocks.iter().flatten() {
            if i >= nvars || seen[i] {
                return Err(Error::InvalidArgument(format!("blocks do not partition the {nvars} variables")));
            }
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidArgument(format!("blocks do not partition the {nvars} variables")));
        }
        let blocks: Vec<Vec<usize>> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
        Ok(Self::checked(OrderKind::Block, blocks))
    }

    /// Block order from variable names of a context.
    pub fn named_blocks(ctx: &WeylContext, blocks: &[&[&str]]) -> Result<Self> {
        let mut slots = Vec::new();
        for b in blocks {
            let mut v = Vec::new();
            for name in *b {
                v.push(ctx.index_of(name).ok_or_else(|| Error::UnknownIdentifier(name.to_string()))?);
            }
            slots.push(v);
        }
        Self::blocks(ctx.nvars(), slots)
    }

    /// Eliminates the complement of `keep`: every monomial outside the
    /// kept slots is larger than every monomial inside.
    pub fn elimination(nvars: usize, keep: &[usize]) -> Result<Self> {
        let first: Vec<usize> = (0..nvars).filter(|i| !keep.contains(i)).collect();
        Self::blocks(nvars, vec![first, keep.to_vec()])
    }

    fn checked(kind: OrderKind, blocks: Vec<Vec<usize>>) -> Self {
        let o = TermOrder { kind, blocks };
        o.sample_check();
        o
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn block_slots(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn nvars(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    #[inline]
    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        for block in &self.blocks {
            let mut da = 0u32;
            let mut db = 0u32;
            for &i in block {
                da += a.0[i] as u32;
                db += b.0[i] as u32;
            }
            if da != db {
                return da.cmp(&db);
            }
            for &i in block.iter().rev() {
                if a.0[i] != b.0[i] {
                    return b.0[i].cmp(&a.0[i]);
                }
            }
        }
        Ordering::Equal
    }

    /// Checks on pseudo-random monomials that 1 is minimal and the order is
    /// multiplicative.
    fn sample_check(&self) {
        let n = self.nvars().min(MAX_VARS);
        if n == 0 {
            return;
        }
        let mut state: u64 = 0x9e37_79b9_7f4a_7c15 ^ (n as u64);
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let rand_mono = |next: &mut dyn FnMut() -> u64| {
            let mut m = Mono::ONE;
            for i in 0..n {
                m.set(i, (next() % 4) as u16);
            }
            m
        };
        for _ in 0..64 {
            let a = rand_mono(&mut next);
            let b = rand_mono(&mut next);
            let c = rand_mono(&mut next);
            assert!(a.is_one() || self.cmp(&a, &Mono::ONE) == Ordering::Greater, "1 is not minimal");
            let ab = self.cmp(&a, &b);
            assert_eq!(ab, self.cmp(&a.mul(&c), &b.mul(&c)), "order is not multiplicative");
        }
    }
}

impl fmt::Debug for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.kind, self.blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_matches_canonical() {
        let o = TermOrder::degrevlex(3);
        let a = Mono::from_exps(&[1, 0, 1]);
        let b = Mono::from_exps(&[0, 2, 0]);
        assert_eq!(o.cmp(&a, &b), crate::ratpoly::degrevlex_cmp(&a, &b));
        assert_eq!(o.cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn elimination_block_dominates() {
        let o = TermOrder::elimination(3, &[2]).unwrap();
        let x = Mono::from_exps(&[1, 0, 0]);
        let s = Mono::from_exps(&[0, 0, 9]);
        assert_eq!(o.cmp(&x, &s), Ordering::Greater);
        assert!(TermOrder::blocks(3, vec![vec![0], vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn lex_is_lexicographic() {
        let o = TermOrder::lex(2);
        assert_eq!(o.cmp(&Mono::from_exps(&[1, 0]), &Mono::from_exps(&[0, 5])), Ordering::Greater);
    }
}
