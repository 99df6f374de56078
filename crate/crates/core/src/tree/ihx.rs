use super::{DecoratedTree, EdgeId, PuncturedTree, RootedTree, Sign};
use crate::error::{Error, Result};
use crate::word::GroupWord;

/// Three trees agreeing outside one interior edge, related by
/// `I - H + X = 0`. Each carries the sign it enters the relator with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IhxTriple {
    pub i: PuncturedTree,
    pub h: PuncturedTree,
    pub x: PuncturedTree,
}

impl IhxTriple {
    /// The three terms of `sign * (I - H + X)`.
    pub fn terms(&self, sign: Sign) -> [PuncturedTree; 3] {
        let scale = |p: &PuncturedTree, s: Sign| if s * sign == Sign::Plus { p.clone() } else { p.negate() };
        [scale(&self.i, Sign::Plus), scale(&self.h, Sign::Minus), scale(&self.x, Sign::Plus)]
    }

    /// Replacement of the term `sign * I` by the equal sum `sign * (H - X)`.
    pub fn split_terms(&self, sign: Sign) -> [PuncturedTree; 2] {
        let scale = |p: &PuncturedTree, s: Sign| if s * sign == Sign::Plus { p.clone() } else { p.negate() };
        [scale(&self.h, Sign::Plus), scale(&self.x, Sign::Minus)]
    }
}

/// The IHX triple of `t` at the interior edge `e`, with `I` equivalent to
/// `t` itself.
///
/// Cutting `e = (u, v)` leaves subtrees `P1, P2` at `u` and `Q1, Q2` at `v`
/// in cyclic order. Hanging everything from `P1`, the three trees are
/// `(P2, (Q1, Q2))`, `((Q2, P2), Q1)` and `((P2, Q1), Q2)`, the rooted
/// Jacobi triple, with `e` normalized to the identity.
pub fn ihx_triple(t: &DecoratedTree, e: EdgeId) -> Result<IhxTriple> {
    let edge = t.edge(e)?;
    if t.is_leaf(edge.tail) || t.is_leaf(edge.head) {
        return Err(Error::NotInteriorEdge);
    }
    let (p, q, g) = t.split(e)?;
    let (RootedTree::Node { left: p1, right: p2, .. }, RootedTree::Node { left: q1, right: q2, .. }) = (p, q)
    else {
        return Err(Error::NotInteriorEdge);
    };
    let push = |c: &RootedTree| {
        let w = g.mul(c.top_word());
        c.clone().with_top_word(w)
    };
    let (q1, q2) = (push(&q1), push(&q2));
    let p2 = *p2;
    let id = GroupWord::identity();
    let i = RootedTree::node(p2.clone(), RootedTree::node(q1.clone(), q2.clone()));
    let h = RootedTree::node(RootedTree::node(q2.clone(), p2.clone()), q1.clone());
    let x = RootedTree::node(RootedTree::node(p2, q1), q2);
    Ok(IhxTriple {
        i: PuncturedTree::from_split(Sign::Plus, &p1, &i, &id),
        h: PuncturedTree::from_split(Sign::Plus, &p1, &h, &id),
        x: PuncturedTree::from_split(Sign::Minus, &p1, &x, &id),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{canonicalize, canonicalize_tree, inner_product};

    #[test]
    fn i_is_the_input_tree() {
        let a = RootedTree::node(RootedTree::leaf(1), RootedTree::leaf(2));
        let b = RootedTree::node(RootedTree::leaf(3), RootedTree::leaf(4));
        let t = inner_product(&a, &b, &GroupWord::identity());
        let e = t.interior_edges()[0];
        let tr = ihx_triple(&t, e).unwrap();
        assert_eq!(canonicalize(&tr.i.signed()), canonicalize_tree(&t));
        assert!(ihx_triple(&t, t.leaves().iter().map(|&l| t.incident(l)[0]).next().unwrap()).is_err());
    }
}
