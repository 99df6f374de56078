use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::decorated::build_inner;
use super::{DecoratedTree, EdgeId, Label, RootedTree, Sign, VertexId};
use crate::word::GroupWord;

/// A tree with a sign, the unit of an intersection invariant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedTree {
    pub sign: Sign,
    pub tree: DecoratedTree,
}

impl SignedTree {
    pub fn new(sign: Sign, tree: DecoratedTree) -> SignedTree {
        SignedTree { sign, tree }
    }
}

/// Normal form of a tree modulo isomorphism, OR, HOL and AS.
///
/// The tree is rooted at a leaf `root`; `body` is the rest, with children
/// sorted at every vertex and decorations pushed onto the leaves. For order
/// zero the body is a single leaf carrying the edge decoration.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalTree {
    root: Label,
    body: RootedTree,
    two_torsion: bool,
}

impl CanonicalTree {
    pub fn root(&self) -> Label {
        self.root
    }

    pub fn body(&self) -> &RootedTree {
        &self.body
    }

    /// True when the tree equals its own negative.
    pub fn two_torsion(&self) -> bool {
        self.two_torsion
    }

    pub fn order(&self) -> usize {
        self.body.order()
    }

    /// Leaf labels, sorted.
    pub fn labels(&self) -> Vec<Label> {
        let mut l = self.body.labels();
        l.push(self.root);
        l.sort();
        l
    }

    pub fn is_nonrepeating(&self) -> bool {
        let l = self.labels();
        l.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_trivially_decorated(&self) -> bool {
        self.body.is_trivially_decorated()
    }

    pub fn max_generator(&self) -> u8 {
        self.body.max_generator()
    }

    /// Split form `(root leaf, body, decoration of the root edge)`.
    pub fn split_form(&self) -> (RootedTree, RootedTree, GroupWord) {
        let top = self.body.top_word().clone();
        let body = self.body.clone().with_top_word(GroupWord::identity());
        (RootedTree::Leaf { label: self.root, word: GroupWord::identity() }, body, top)
    }

    /// A concrete tree with this normal form and positive sign.
    pub fn representative(&self) -> DecoratedTree {
        let (a, b, g) = self.split_form();
        build_inner(&a, &b, &g).tree
    }

    pub fn is_simple(&self) -> bool {
        self.representative().is_simple()
    }

    /// Applies a label map and renormalizes; returns the sign picked up.
    pub fn relabel(&self, f: impl Fn(Label) -> Label) -> (CanonicalTree, Sign) {
        canonicalize_tree(&self.representative().relabel(f))
    }
}

impl fmt::Display for CanonicalTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, g) = self.split_form();
        write!(f, "inner({a},{b},{g})")
    }
}

/// Orientation-explicit normal form: isomorphism, OR and HOL only.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RawTree {
    pub root: Label,
    pub body: RootedTree,
}

impl RawTree {
    pub fn representative(&self) -> DecoratedTree {
        let top = self.body.top_word().clone();
        let body = self.body.clone().with_top_word(GroupWord::identity());
        build_inner(&RootedTree::Leaf { label: self.root, word: GroupWord::identity() }, &body, &top).tree
    }
}

impl fmt::Display for RawTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.body.top_word().clone();
        let body = self.body.clone().with_top_word(GroupWord::identity());
        write!(f, "inner({},{body},{top})", self.root)
    }
}

/// Canonical form with the data needed to transport edges.
#[derive(Clone, Debug)]
pub(crate) struct CanonicalForm {
    pub canon: CanonicalTree,
    /// `input = sign * representative`, before any two-torsion
    /// normalization.
    pub sign: Sign,
    pub root_leaf: VertexId,
    /// Input edge to representative edge.
    pub edge_map: Vec<EdgeId>,
    /// For two-torsion trees, an automorphism of the input tree reversing
    /// an odd number of vertex orientations, as a map on input edges.
    pub odd_automorphism: Option<Vec<EdgeId>>,
}

impl CanonicalForm {
    /// Representative edge to input edge.
    pub fn inverse_map(&self) -> Vec<EdgeId> {
        let mut inv = vec![0; self.edge_map.len()];
        for (e, &c) in self.edge_map.iter().enumerate() {
            inv[c] = e;
        }
        inv
    }
}

struct Hung {
    tree: RootedTree,
    edges: Vec<EdgeId>,
    odd: bool,
    twins: Option<(Vec<EdgeId>, Vec<EdgeId>)>,
}

fn hang(t: &DecoratedTree, v: VertexId, via: EdgeId, acc: GroupWord, sort: bool) -> Hung {
    if let Some(label) = t.label(v) {
        return Hung { tree: RootedTree::Leaf { label, word: acc }, edges: vec![via], odd: false, twins: None };
    }
    let (c1, c2) = t.cyclic_after(v, via);
    let child = |c: EdgeId| {
        let u = t.other_end(c, v);
        hang(t, u, c, acc.mul(&t.word_from(c, v)), sort)
    };
    let mut l = child(c1);
    let mut r = child(c2);
    let mut odd = l.odd ^ r.odd;
    if sort && l.tree > r.tree {
        core::mem::swap(&mut l, &mut r);
        odd = !odd;
    }
    let twins = if l.tree == r.tree { Some((l.edges.clone(), r.edges.clone())) } else { l.twins.or(r.twins) };
    let mut edges = Vec::with_capacity(1 + l.edges.len() + r.edges.len());
    edges.push(via);
    edges.extend_from_slice(&l.edges);
    edges.extend_from_slice(&r.edges);
    Hung {
        tree: RootedTree::Node { left: l.tree.into(), right: r.tree.into(), word: GroupWord::identity() },
        edges,
        odd,
        twins,
    }
}

fn hang_from_leaf(t: &DecoratedTree, leaf: VertexId, sort: bool) -> (Label, Hung) {
    let label = t.label(leaf).expect("leaf");
    let e = t.incident(leaf)[0];
    let v = t.other_end(e, leaf);
    (label, hang(t, v, e, t.word_from(e, leaf), sort))
}

pub(crate) fn canonical_form(t: &DecoratedTree) -> CanonicalForm {
    let mut best: Option<(VertexId, Label, Hung)> = None;
    let mut rivals: Vec<(VertexId, Hung)> = Vec::new();
    for leaf in t.leaves() {
        let (label, h) = hang_from_leaf(t, leaf, true);
        match &best {
            Some((_, bl, bh)) if (bl, &bh.tree) < (&label, &h.tree) => {}
            Some((_, bl, bh)) if (bl, &bh.tree) == (&label, &h.tree) => rivals.push((leaf, h)),
            _ => {
                best = Some((leaf, label, h));
                rivals.clear();
            }
        }
    }
    let (root_leaf, root, h) = best.expect("a tree has leaves");
    let canon_body = h.tree.clone();
    let rep_top = canon_body.top_word().clone();
    let built = build_inner(
        &RootedTree::Leaf { label: root, word: GroupWord::identity() },
        &canon_body.clone().with_top_word(GroupWord::identity()),
        &rep_top,
    );
    let mut edge_map = vec![0; t.edges().len()];
    for (i, &e) in h.edges.iter().enumerate() {
        edge_map[e] = built.b_edges[i];
    }
    let mut odd_automorphism = None;
    if let Some((l, r)) = &h.twins {
        let mut sigma: Vec<EdgeId> = (0..t.edges().len()).collect();
        for (&a, &b) in l.iter().zip(r) {
            sigma[a] = b;
            sigma[b] = a;
        }
        odd_automorphism = Some(sigma);
    } else if let Some((_, other)) = rivals.iter().find(|(_, o)| o.odd != h.odd) {
        let mut sigma = vec![0; t.edges().len()];
        for (&a, &b) in h.edges.iter().zip(&other.edges) {
            sigma[a] = b;
        }
        odd_automorphism = Some(sigma);
    }
    CanonicalForm {
        canon: CanonicalTree { root, body: canon_body, two_torsion: odd_automorphism.is_some() },
        sign: Sign::from_parity(h.odd),
        root_leaf,
        edge_map,
        odd_automorphism,
    }
}

/// Normal form of an unsigned tree and the sign relating it to the input.
/// Two-torsion trees always report a positive sign.
pub fn canonicalize_tree(t: &DecoratedTree) -> (CanonicalTree, Sign) {
    let f = canonical_form(t);
    let sign = if f.canon.two_torsion { Sign::Plus } else { f.sign };
    (f.canon, sign)
}

/// Normal form of a signed tree: `s = sign * canonical`.
pub fn canonicalize(s: &SignedTree) -> (CanonicalTree, Sign) {
    let (c, sign) = canonicalize_tree(&s.tree);
    if c.two_torsion {
        (c, Sign::Plus)
    } else {
        (c, s.sign * sign)
    }
}

/// Normal form of a rooted tree: children sorted, decorations pushed onto
/// the leaves.
pub fn canonicalize_rooted(t: &RootedTree) -> (RootedTree, Sign) {
    fn go(t: &RootedTree, acc: &GroupWord) -> (RootedTree, bool) {
        match t {
            RootedTree::Leaf { label, word } => (RootedTree::Leaf { label: *label, word: acc.mul(word) }, false),
            RootedTree::Node { left, right, word } => {
                let acc = acc.mul(word);
                let (mut l, lo) = go(left, &acc);
                let (mut r, ro) = go(right, &acc);
                let mut odd = lo ^ ro;
                if l > r {
                    core::mem::swap(&mut l, &mut r);
                    odd = !odd;
                }
                (RootedTree::Node { left: l.into(), right: r.into(), word: GroupWord::identity() }, odd)
            }
        }
    }
    let (r, odd) = go(t, &GroupWord::identity());
    (r, Sign::from_parity(odd))
}

/// Orientation-explicit code: the least HOL-normalized, unsorted body over
/// all root leaves.
pub fn raw_code(t: &DecoratedTree) -> RawTree {
    t.leaves()
        .into_iter()
        .map(|leaf| {
            let (root, h) = hang_from_leaf(t, leaf, false);
            RawTree { root, body: h.tree }
        })
        .min()
        .expect("a tree has leaves")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::inner_product;

    fn leaf(i: u32) -> RootedTree {
        RootedTree::leaf(i)
    }

    fn y(a: u32, b: u32, c: u32) -> DecoratedTree {
        inner_product(&leaf(a), &RootedTree::node(leaf(b), leaf(c)), &GroupWord::identity())
    }

    #[test]
    fn opposite_cyclic_orders_differ_by_sign() {
        let (c1, s1) = canonicalize_tree(&y(1, 2, 3));
        let (c2, s2) = canonicalize_tree(&y(1, 3, 2));
        assert_eq!(c1, c2);
        assert_eq!(s1, -s2);
        assert!(!c1.two_torsion());
    }

    #[test]
    fn repeated_label_y_is_two_torsion() {
        let (c, _) = canonicalize_tree(&y(1, 1, 1));
        assert!(c.two_torsion());
        let (c, _) = canonicalize_tree(&y(1, 1, 2));
        assert!(c.two_torsion());
        let (c, _) = canonicalize_tree(&inner_product(&leaf(1), &leaf(1), &GroupWord::identity()));
        assert!(!c.two_torsion());
    }

    #[test]
    fn edge_map_is_a_bijection() {
        let a = RootedTree::node(leaf(2), RootedTree::node(leaf(1), leaf(3)));
        let t = inner_product(&a, &leaf(4), &GroupWord::identity());
        let f = canonical_form(&t);
        let mut m = f.edge_map.clone();
        m.sort();
        assert_eq!(m, (0..t.edges().len()).collect::<Vec<_>>());
    }

    #[test]
    fn representative_is_a_fixed_point() {
        let a = RootedTree::node(leaf(2), RootedTree::node(leaf(1), leaf(3)));
        let t = inner_product(&a, &RootedTree::node(leaf(4), leaf(1)), &GroupWord::identity());
        let (c, _) = canonicalize_tree(&t);
        let (c2, s2) = canonicalize_tree(&c.representative());
        assert_eq!(c, c2);
        assert_eq!(s2, Sign::Plus);
    }
}
