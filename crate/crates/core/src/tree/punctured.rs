use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::decorated::build_inner;
use super::{DecoratedTree, EdgeId, RootedTree, Sign, SignedTree, VertexId};
use crate::error::{Error, Result};
use crate::word::GroupWord;

/// Which side of the marked edge a path starts on: `A` is the tail side,
/// `B` the head side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    A,
    B,
}

/// One step down a rooted tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    L,
    R,
}

/// Address of an edge relative to a marked edge.
///
/// The empty path is the marked edge itself. Otherwise the path names a
/// side and then left/right steps down the rooted tree hanging on that
/// side, exactly as in the split form `inner(A, B, g)`. Text form: `""`,
/// `"aL"`, `"bRL"`, ...
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgePath {
    side: Option<Side>,
    steps: Vec<Branch>,
}

impl EdgePath {
    pub fn marked() -> EdgePath {
        EdgePath::default()
    }

    pub fn new(side: Side, steps: Vec<Branch>) -> EdgePath {
        if steps.is_empty() {
            EdgePath::marked()
        } else {
            EdgePath { side: Some(side), steps }
        }
    }

    pub fn is_marked(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn side(&self) -> Option<Side> {
        self.side
    }

    pub fn steps(&self) -> &[Branch] {
        &self.steps
    }
}

impl fmt::Display for EdgePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            None => Ok(()),
            Some(side) => {
                f.write_str(if side == Side::A { "a" } else { "b" })?;
                for b in &self.steps {
                    f.write_str(if *b == Branch::L { "L" } else { "R" })?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for EdgePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<EdgePath> {
        let s = s.trim();
        let mut chars = s.char_indices();
        let side = match chars.next() {
            None => return Ok(EdgePath::marked()),
            Some((_, 'a')) => Side::A,
            Some((_, 'b')) => Side::B,
            Some((pos, _)) => return Err(Error::Syntax { pos, msg: "edge path must start with 'a' or 'b'" }),
        };
        let mut steps = Vec::new();
        for (pos, c) in chars {
            steps.push(match c {
                'L' => Branch::L,
                'R' => Branch::R,
                _ => return Err(Error::Syntax { pos, msg: "edge path steps are 'L' or 'R'" }),
            });
        }
        Ok(EdgePath::new(side, steps))
    }
}

/// A signed tree with one marked edge, the edge of the intersection point
/// itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PuncturedTree {
    sign: Sign,
    tree: DecoratedTree,
    marked: EdgeId,
}

impl PuncturedTree {
    pub fn new(signed: SignedTree, marked: EdgeId) -> Result<PuncturedTree> {
        signed.tree.edge(marked)?;
        Ok(PuncturedTree { sign: signed.sign, tree: signed.tree, marked })
    }

    /// The inner product `inner(a, b, g)` punctured at its fused edge.
    pub fn from_split(sign: Sign, a: &RootedTree, b: &RootedTree, g: &GroupWord) -> PuncturedTree {
        let built = build_inner(a, b, g);
        PuncturedTree { sign, tree: built.tree, marked: built.fused }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn tree(&self) -> &DecoratedTree {
        &self.tree
    }

    pub fn marked_edge(&self) -> EdgeId {
        self.marked
    }

    pub fn signed(&self) -> SignedTree {
        SignedTree::new(self.sign, self.tree.clone())
    }

    pub fn order(&self) -> usize {
        self.tree.order()
    }

    pub fn negate(&self) -> PuncturedTree {
        PuncturedTree { sign: -self.sign, ..self.clone() }
    }

    /// `inner(A, B, g)` split at the marked edge.
    pub fn split(&self) -> (RootedTree, RootedTree, GroupWord) {
        self.tree.split(self.marked).expect("marked edge exists")
    }

    fn start(&self, side: Side) -> VertexId {
        let e = &self.tree.edges()[self.marked];
        match side {
            Side::A => e.tail,
            Side::B => e.head,
        }
    }

    /// The edge addressed by `path`.
    pub fn resolve(&self, path: &EdgePath) -> Result<EdgeId> {
        let Some(side) = path.side else { return Ok(self.marked) };
        let mut v = self.start(side);
        let mut via = self.marked;
        for step in &path.steps {
            if self.tree.is_leaf(v) {
                return Err(Error::UnknownEdge);
            }
            let (c1, c2) = self.tree.cyclic_after(v, via);
            via = if *step == Branch::L { c1 } else { c2 };
            v = self.tree.other_end(via, v);
        }
        Ok(via)
    }

    /// The address of edge `e`.
    pub fn path_of(&self, e: EdgeId) -> Result<EdgePath> {
        self.tree.edge(e)?;
        if e == self.marked {
            return Ok(EdgePath::marked());
        }
        for side in [Side::A, Side::B] {
            let mut stack = alloc::vec![(self.start(side), self.marked, Vec::new())];
            while let Some((v, via, steps)) = stack.pop() {
                if via == e {
                    return Ok(EdgePath::new(side, steps));
                }
                if self.tree.is_leaf(v) {
                    continue;
                }
                let (c1, c2) = self.tree.cyclic_after(v, via);
                for (c, b) in [(c1, Branch::L), (c2, Branch::R)] {
                    let mut s = steps.clone();
                    s.push(b);
                    stack.push((self.tree.other_end(c, v), c, s));
                }
            }
        }
        Err(Error::UnknownEdge)
    }

    /// Moves the puncture to edge `e`; the signed tree is unchanged.
    pub fn with_marked(&self, e: EdgeId) -> Result<PuncturedTree> {
        self.tree.edge(e)?;
        Ok(PuncturedTree { marked: e, ..self.clone() })
    }

    /// The same punctured tree rebuilt in split form, so that the marked
    /// edge is the fused edge of `inner(A, B, g)`.
    pub fn resplit(&self) -> PuncturedTree {
        let (a, b, g) = self.split();
        PuncturedTree::from_split(self.sign, &a, &b, &g)
    }
}

impl fmt::Display for PuncturedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, g) = self.split();
        write!(f, "{}inner({a},{b},{g})", self.sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn paths_round_trip() {
        let a = RootedTree::node(RootedTree::leaf(1), RootedTree::leaf(2));
        let b = RootedTree::node(RootedTree::leaf(3), RootedTree::node(RootedTree::leaf(4), RootedTree::leaf(5)));
        let p = PuncturedTree::from_split(Sign::Plus, &a, &b, &GroupWord::identity());
        for e in 0..p.tree().edges().len() {
            let path = p.path_of(e).unwrap();
            assert_eq!(p.resolve(&path).unwrap(), e);
            let text = path.to_string();
            assert_eq!(text.parse::<EdgePath>().unwrap(), path);
        }
        assert_eq!(p.resolve(&"bRL".parse().unwrap()).unwrap(), p.resolve(&"bRL".parse().unwrap()).unwrap());
        assert!(p.resolve(&"aLL".parse().unwrap()).is_err());
    }

    #[test]
    fn split_at_marked_prints_inner() {
        let a = RootedTree::node(RootedTree::leaf(1), RootedTree::leaf(2));
        let p = PuncturedTree::from_split(Sign::Minus, &a, &RootedTree::leaf(3), &GroupWord::identity());
        assert_eq!(p.to_string(), "-inner((1,2),3,)");
    }
}
