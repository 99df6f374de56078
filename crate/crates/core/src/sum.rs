//! Finite integer combinations of canonical trees.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::tree::{canonicalize, CanonicalTree, Sign, SignedTree};

/// The grading and alphabet a sum lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SumContext {
    pub order: usize,
    pub labels: u32,
    pub alphabet: u8,
}

impl SumContext {
    pub fn new(order: usize, labels: u32, alphabet: u8) -> SumContext {
        SumContext { order, labels, alphabet }
    }

    fn admits(&self, t: &CanonicalTree) -> Result<()> {
        if t.order() != self.order {
            return Err(Error::Precondition(alloc::format!(
                "tree of order {} in a sum of order {}",
                t.order(),
                self.order
            )));
        }
        if let Some(l) = t.labels().last() {
            if l.index() > self.labels {
                return Err(Error::LabelOutOfRange { label: l.index(), max: self.labels });
            }
        }
        if t.max_generator() > self.alphabet {
            return Err(Error::Precondition(alloc::format!("decoration outside alphabet of {}", self.alphabet)));
        }
        Ok(())
    }
}

/// A finite combination `sum c_t t` of canonical trees. Zero coefficients
/// are never stored, and coefficients of two-torsion trees live in `{1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeSum {
    ctx: SumContext,
    terms: BTreeMap<CanonicalTree, i64>,
}

fn normalize(t: &CanonicalTree, c: i64) -> i64 {
    if t.two_torsion() {
        c.rem_euclid(2)
    } else {
        c
    }
}

impl TreeSum {
    pub fn zero(ctx: SumContext) -> TreeSum {
        TreeSum { ctx, terms: BTreeMap::new() }
    }

    pub fn term(ctx: SumContext, t: CanonicalTree, coeff: i64) -> Result<TreeSum> {
        let mut s = TreeSum::zero(ctx);
        s.add_term(t, coeff)?;
        Ok(s)
    }

    /// The canonical form of a signed tree as a one-term sum.
    pub fn from_signed(ctx: SumContext, s: &SignedTree) -> Result<TreeSum> {
        let (c, sign) = canonicalize(s);
        TreeSum::term(ctx, c, sign.value())
    }

    pub fn context(&self) -> SumContext {
        self.ctx
    }

    /// Adds `coeff * t` in place.
    pub fn add_term(&mut self, t: CanonicalTree, coeff: i64) -> Result<()> {
        self.ctx.admits(&t)?;
        let old = self.terms.get(&t).copied().unwrap_or(0);
        let new = normalize(&t, old.checked_add(coeff).ok_or(Error::Overflow)?);
        if new == 0 {
            self.terms.remove(&t);
        } else {
            self.terms.insert(t, new);
        }
        Ok(())
    }

    pub fn add_signed(&mut self, s: &SignedTree) -> Result<()> {
        let (c, sign) = canonicalize(s);
        self.add_term(c, sign.value())
    }

    pub fn add(&self, other: &TreeSum) -> Result<TreeSum> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let mut out = self.clone();
        for (t, &c) in &other.terms {
            out.add_term(t.clone(), c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TreeSum) -> Result<TreeSum> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> TreeSum {
        self.scale(-1).expect("negation cannot overflow a normalized coefficient")
    }

    pub fn scale(&self, k: i64) -> Result<TreeSum> {
        let mut out = TreeSum::zero(self.ctx);
        for (t, &c) in &self.terms {
            out.add_term(t.clone(), c.checked_mul(k).ok_or(Error::Overflow)?)?;
        }
        Ok(out)
    }

    /// True when no term survives; this is equality in the quotient without
    /// the IHX relation.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, t: &CanonicalTree) -> i64 {
        self.terms.get(t).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalTree, i64)> {
        self.terms.iter().map(|(t, &c)| (t, c))
    }

    pub fn is_trivially_decorated(&self) -> bool {
        self.terms.keys().all(|t| t.is_trivially_decorated())
    }

    /// Keeps the terms whose leaf labels are pairwise distinct.
    pub fn nonrepeating_project(&self) -> TreeSum {
        TreeSum {
            ctx: self.ctx,
            terms: self.terms.iter().filter(|(t, _)| t.is_nonrepeating()).map(|(t, &c)| (t.clone(), c)).collect(),
        }
    }

    /// Applies a label permutation to every term.
    pub fn relabel(&self, f: impl Fn(crate::tree::Label) -> crate::tree::Label) -> Result<TreeSum> {
        let mut out = TreeSum::zero(self.ctx);
        for (t, &c) in &self.terms {
            let (u, s) = t.relabel(&f);
            out.add_term(u, c * s.value())?;
        }
        Ok(out)
    }

    /// The terms as signed unit trees, one per unit of coefficient.
    pub fn expand(&self) -> Vec<(Sign, CanonicalTree)> {
        let mut out = Vec::new();
        for (t, &c) in &self.terms {
            let s = if c < 0 { Sign::Minus } else { Sign::Plus };
            for _ in 0..c.unsigned_abs() {
                out.push((s, t.clone()));
            }
        }
        out
    }
}

impl fmt::Display for TreeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, &c)) in self.terms.iter().enumerate() {
            let sep = match (i, c < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            f.write_str(sep)?;
            if c.unsigned_abs() != 1 {
                write!(f, "{}*", c.unsigned_abs())?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{canonicalize_tree, inner_product, RootedTree};
    use crate::word::GroupWord;

    fn tree(a: u32, b: u32, c: u32) -> CanonicalTree {
        let t = inner_product(
            &RootedTree::leaf(a),
            &RootedTree::node(RootedTree::leaf(b), RootedTree::leaf(c)),
            &GroupWord::identity(),
        );
        canonicalize_tree(&t).0
    }

    #[test]
    fn arithmetic() {
        let ctx = SumContext::new(1, 3, 0);
        let t = TreeSum::term(ctx, tree(1, 2, 3), 1).unwrap();
        let s = TreeSum::term(ctx, tree(1, 1, 3), 1).unwrap();
        assert!(t.add(&t.negate()).unwrap().is_empty());
        assert!(s.scale(2).unwrap().is_empty());
        assert_eq!(s.add(&t).unwrap().sub(&t).unwrap(), s);
        assert_eq!(s.add(&s).unwrap().add(&s).unwrap(), s);
        let other = TreeSum::zero(SumContext::new(1, 4, 0));
        assert_eq!(t.add(&other), Err(Error::ContextMismatch));
    }

    #[test]
    fn projection() {
        let ctx = SumContext::new(1, 3, 0);
        let t = TreeSum::term(ctx, tree(1, 2, 3), 3).unwrap();
        let s = TreeSum::term(ctx, tree(1, 1, 3), 1).unwrap();
        let sum = t.add(&s).unwrap();
        let p = sum.nonrepeating_project();
        assert_eq!(p, t);
        assert_eq!(p.nonrepeating_project(), p);
    }
}
