use alloc::vec;
use alloc::vec::Vec;

use super::{Label, RootedTree};
use crate::error::{Error, Result};
use crate::word::GroupWord;

pub type VertexId = usize;
pub type EdgeId = usize;

/// A vertex of an unrooted tree. A trivalent vertex lists its edges in
/// cyclic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Vertex {
    Leaf { label: Label, edge: EdgeId },
    Trivalent { edges: [EdgeId; 3] },
}

/// An oriented edge decorated by a group element read from tail to head.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
    pub word: GroupWord,
}

/// An unrooted, vertex-oriented unitrivalent tree with oriented, decorated
/// edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecoratedTree {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl DecoratedTree {
    /// Builds and validates a tree from its parts.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<DecoratedTree> {
        let t = DecoratedTree { vertices, edges };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let nv = self.vertices.len();
        if nv < 2 {
            return Err(Error::InvalidTree("fewer than two vertices"));
        }
        if self.edges.len() + 1 != nv {
            return Err(Error::InvalidTree("edge count is not vertex count minus one"));
        }
        let mut seen = vec![0u8; self.edges.len()];
        for (vid, v) in self.vertices.iter().enumerate() {
            let list: &[EdgeId] = match v {
                Vertex::Leaf { edge, .. } => core::slice::from_ref(edge),
                Vertex::Trivalent { edges } => edges,
            };
            for &e in list {
                let edge = self.edges.get(e).ok_or(Error::InvalidTree("dangling edge id"))?;
                if edge.tail != vid && edge.head != vid {
                    return Err(Error::InvalidTree("vertex lists a non-incident edge"));
                }
                seen[e] += 1;
            }
        }
        for (e, edge) in self.edges.iter().enumerate() {
            if edge.tail >= nv || edge.head >= nv || edge.tail == edge.head || seen[e] != 2 {
                return Err(Error::InvalidTree("edge endpoints inconsistent"));
            }
        }
        let mut reached = vec![false; nv];
        let mut stack = vec![0];
        reached[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &e in self.incident(v) {
                let u = self.other_end(e, v);
                if !reached[u] {
                    reached[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        if count != nv {
            return Err(Error::InvalidTree("not connected"));
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Result<&Edge> {
        self.edges.get(e).ok_or(Error::UnknownEdge)
    }

    pub fn order(&self) -> usize {
        self.vertices.iter().filter(|v| matches!(v, Vertex::Trivalent { .. })).count()
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        match &self.vertices[v] {
            Vertex::Leaf { edge, .. } => core::slice::from_ref(edge),
            Vertex::Trivalent { edges } => edges,
        }
    }

    pub fn is_leaf(&self, v: VertexId) -> bool {
        matches!(self.vertices[v], Vertex::Leaf { .. })
    }

    pub fn label(&self, v: VertexId) -> Option<Label> {
        match self.vertices[v] {
            Vertex::Leaf { label, .. } => Some(label),
            Vertex::Trivalent { .. } => None,
        }
    }

    /// Leaf vertices in id order.
    pub fn leaves(&self) -> Vec<VertexId> {
        (0..self.vertices.len()).filter(|&v| self.is_leaf(v)).collect()
    }

    /// Leaf labels, sorted.
    pub fn labels(&self) -> Vec<Label> {
        let mut l: Vec<Label> = self.leaves().into_iter().filter_map(|v| self.label(v)).collect();
        l.sort();
        l
    }

    pub fn max_generator(&self) -> u8 {
        self.edges.iter().map(|e| e.word.max_generator()).max().unwrap_or(0)
    }

    pub fn is_trivially_decorated(&self) -> bool {
        self.edges.iter().all(|e| e.word.is_identity())
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let edge = &self.edges[e];
        if edge.tail == v {
            edge.head
        } else {
            edge.tail
        }
    }

    /// The decoration of `e` read in the direction leaving `v`.
    pub fn word_from(&self, e: EdgeId, v: VertexId) -> GroupWord {
        let edge = &self.edges[e];
        if edge.tail == v {
            edge.word.clone()
        } else {
            edge.word.inverse()
        }
    }

    /// The two edges following `via` in the cyclic order at `v`.
    pub(crate) fn cyclic_after(&self, v: VertexId, via: EdgeId) -> (EdgeId, EdgeId) {
        match &self.vertices[v] {
            Vertex::Trivalent { edges } => {
                let i = edges.iter().position(|&e| e == via).expect("edge incident to vertex");
                (edges[(i + 1) % 3], edges[(i + 2) % 3])
            }
            Vertex::Leaf { .. } => panic!("leaf has no cyclic order"),
        }
    }

    /// The rooted tree hanging from `v` when entered along `via`; its top
    /// decoration is the identity.
    pub fn hang(&self, v: VertexId, via: EdgeId) -> RootedTree {
        match self.vertices[v] {
            Vertex::Leaf { label, .. } => RootedTree::Leaf { label, word: GroupWord::identity() },
            Vertex::Trivalent { .. } => {
                let (c1, c2) = self.cyclic_after(v, via);
                let child = |c: EdgeId| {
                    let u = self.other_end(c, v);
                    self.hang(u, c).with_top_word(self.word_from(c, v))
                };
                RootedTree::Node {
                    left: child(c1).into(),
                    right: child(c2).into(),
                    word: GroupWord::identity(),
                }
            }
        }
    }

    /// Cuts `e` and returns the tail side, the head side and the decoration,
    /// so that `inner_product` of the result rebuilds an equivalent tree.
    pub fn split(&self, e: EdgeId) -> Result<(RootedTree, RootedTree, GroupWord)> {
        let edge = self.edge(e)?;
        Ok((self.hang(edge.tail, e), self.hang(edge.head, e), edge.word.clone()))
    }

    /// The tree rooted at a leaf: the body hanging off it, whose top
    /// decoration is that of the leaf edge read away from the leaf.
    pub fn rooted_at_leaf(&self, leaf: VertexId) -> Result<(Label, RootedTree)> {
        match self.vertices.get(leaf) {
            Some(&Vertex::Leaf { label, edge }) => {
                let v = self.other_end(edge, leaf);
                Ok((label, self.hang(v, edge).with_top_word(self.word_from(edge, leaf))))
            }
            _ => Err(Error::InvalidTree("not a leaf")),
        }
    }

    /// Transposes two edges in the cyclic order at `v` (the AS move; the
    /// caller negates the sign).
    pub fn flip_vertex(&self, v: VertexId) -> Result<DecoratedTree> {
        let mut t = self.clone();
        match t.vertices.get_mut(v) {
            Some(Vertex::Trivalent { edges }) => edges.swap(0, 1),
            _ => return Err(Error::InvalidTree("not a trivalent vertex")),
        }
        Ok(t)
    }

    /// Reverses an edge and inverts its decoration (the OR move).
    pub fn reverse_edge(&self, e: EdgeId) -> Result<DecoratedTree> {
        let mut t = self.clone();
        let edge = t.edges.get_mut(e).ok_or(Error::UnknownEdge)?;
        core::mem::swap(&mut edge.tail, &mut edge.head);
        edge.word = edge.word.inverse();
        Ok(t)
    }

    /// Multiplies the decorations at a trivalent vertex by `h` (the HOL
    /// move): outgoing edges become `h g`, incoming edges `g h^-1`.
    pub fn hol(&self, v: VertexId, h: &GroupWord) -> Result<DecoratedTree> {
        if !matches!(self.vertices.get(v), Some(Vertex::Trivalent { .. })) {
            return Err(Error::InvalidTree("not a trivalent vertex"));
        }
        let mut t = self.clone();
        for &e in self.incident(v) {
            let edge = &mut t.edges[e];
            edge.word = if edge.tail == v { h.mul(&edge.word) } else { edge.word.mul(&h.inverse()) };
        }
        Ok(t)
    }

    /// Orients every edge away from the canonical root leaf and pushes all
    /// decorations onto the other leaf edges. Vertex and edge ids are kept.
    pub fn hol_normalize(&self) -> DecoratedTree {
        let root = super::canonical_form(self).root_leaf;
        self.normalize_from(root)
    }

    pub(crate) fn normalize_from(&self, root: VertexId) -> DecoratedTree {
        let mut t = self.clone();
        let order = self.order();
        let mut stack = vec![(root, usize::MAX, GroupWord::identity())];
        while let Some((v, via, acc)) = stack.pop() {
            for &e in self.incident(v) {
                if e == via {
                    continue;
                }
                let u = self.other_end(e, v);
                let w = self.word_from(e, v);
                let acc_u = acc.mul(&w);
                let edge = &mut t.edges[e];
                edge.tail = v;
                edge.head = u;
                edge.word = if order == 0 {
                    w
                } else if self.is_leaf(u) {
                    acc_u.clone()
                } else {
                    GroupWord::identity()
                };
                stack.push((u, e, acc_u));
            }
        }
        t
    }

    /// Edges whose endpoints are both trivalent.
    pub fn interior_edges(&self) -> Vec<EdgeId> {
        (0..self.edges.len())
            .filter(|&e| !self.is_leaf(self.edges[e].tail) && !self.is_leaf(self.edges[e].head))
            .collect()
    }

    /// True when the trivalent vertices lie on a single path.
    pub fn is_simple(&self) -> bool {
        (0..self.vertices.len()).filter(|&v| !self.is_leaf(v)).all(|v| {
            self.incident(v).iter().filter(|&&e| !self.is_leaf(self.other_end(e, v))).count() <= 2
        })
    }

    /// Applies a label map to every leaf.
    pub fn relabel(&self, f: impl Fn(Label) -> Label) -> DecoratedTree {
        let mut t = self.clone();
        for v in &mut t.vertices {
            if let Vertex::Leaf { label, .. } = v {
                *label = f(*label);
            }
        }
        t
    }
}

/// Result of assembling an inner product, with the edges above every
/// subtree of the second factor listed in preorder (the fused edge first).
pub(crate) struct Built {
    pub tree: DecoratedTree,
    pub fused: EdgeId,
    pub b_edges: Vec<EdgeId>,
}

struct Builder {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl Builder {
    fn side(&mut self, t: &RootedTree, parent: EdgeId, out: &mut Option<&mut Vec<EdgeId>>) -> VertexId {
        if let Some(o) = out.as_deref_mut() {
            o.push(parent);
        }
        let v = self.vertices.len();
        match t {
            RootedTree::Leaf { label, .. } => {
                self.vertices.push(Vertex::Leaf { label: *label, edge: parent });
            }
            RootedTree::Node { left, right, .. } => {
                self.vertices.push(Vertex::Trivalent { edges: [0; 3] });
                let mut child = |b: &mut Builder, c: &RootedTree| {
                    let e = b.edges.len();
                    b.edges.push(Edge { tail: v, head: 0, word: c.top_word().clone() });
                    let u = b.side(c, e, out);
                    b.edges[e].head = u;
                    e
                };
                let el = child(self, left);
                let er = child(self, right);
                self.vertices[v] = Vertex::Trivalent { edges: [el, er, parent] };
            }
        }
        v
    }
}

pub(crate) fn build_inner(a: &RootedTree, b: &RootedTree, g: &GroupWord) -> Built {
    let mut bld = Builder { vertices: Vec::new(), edges: Vec::new() };
    let word = a.top_word().inverse().mul(g).mul(b.top_word());
    bld.edges.push(Edge { tail: 0, head: 0, word });
    let mut b_edges = Vec::new();
    let ta = bld.side(a, 0, &mut None);
    let tb = bld.side(b, 0, &mut Some(&mut b_edges));
    bld.edges[0].tail = ta;
    bld.edges[0].head = tb;
    let tree = DecoratedTree { vertices: bld.vertices, edges: bld.edges };
    debug_assert!(tree.validate().is_ok());
    Built { tree, fused: 0, b_edges }
}

/// Identifies the roots of `a` and `b` into a single edge decorated `g`,
/// oriented from the `a` side to the `b` side. Top decorations of the
/// factors are absorbed into the fused edge.
pub fn inner_product(a: &RootedTree, b: &RootedTree, g: &GroupWord) -> DecoratedTree {
    build_inner(a, b, g).tree
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(a: u32, b: u32, c: u32) -> DecoratedTree {
        inner_product(
            &RootedTree::leaf(a),
            &RootedTree::node(RootedTree::leaf(b), RootedTree::leaf(c)),
            &GroupWord::identity(),
        )
    }

    #[test]
    fn inner_product_counts() {
        let a = RootedTree::node(RootedTree::leaf(1), RootedTree::leaf(2));
        let b = RootedTree::node(RootedTree::leaf(3), RootedTree::leaf(4));
        let t = inner_product(&a, &b, &GroupWord::identity());
        assert_eq!(t.order(), 2);
        assert_eq!(t.edges().len(), 5);
        assert_eq!(t.leaves().len(), 4);
        assert_eq!(t.interior_edges().len(), 1);
    }

    #[test]
    fn split_rebuilds() {
        let t = y(1, 2, 3);
        for e in 0..t.edges().len() {
            let (a, b, g) = t.split(e).unwrap();
            let u = inner_product(&a, &b, &g);
            assert_eq!(super::super::canonicalize_tree(&u), super::super::canonicalize_tree(&t));
        }
    }

    #[test]
    fn rejects_cycles_and_bad_degree() {
        let l = Label::new(1);
        let verts = vec![Vertex::Leaf { label: l, edge: 0 }, Vertex::Leaf { label: l, edge: 1 }];
        let edges = vec![
            Edge { tail: 0, head: 1, word: GroupWord::identity() },
            Edge { tail: 0, head: 1, word: GroupWord::identity() },
        ];
        assert!(DecoratedTree::new(verts, edges).is_err());
    }

    #[test]
    fn simple_detection() {
        assert!(y(1, 2, 3).is_simple());
        let ab = RootedTree::node(RootedTree::leaf(1), RootedTree::leaf(2));
        let cd = RootedTree::node(RootedTree::leaf(3), RootedTree::leaf(4));
        let branch = RootedTree::node(ab.clone(), cd.clone());
        let sym = inner_product(&branch, &RootedTree::node(ab, cd), &GroupWord::identity());
        assert_eq!(sym.order(), 6);
        assert!(!sym.is_simple());
    }
}
