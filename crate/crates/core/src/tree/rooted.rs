use alloc::boxed::Box;
use alloc::vec::Vec;

use super::Label;
use crate::word::GroupWord;

/// A rooted, labelled, vertex-oriented unitrivalent tree.
///
/// A `Node` is a trivalent vertex whose cyclic orientation is
/// `(left, right, root)`. Every variant carries the decoration of the edge
/// above it, read in the direction pointing away from the root.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootedTree {
    Leaf { label: Label, word: GroupWord },
    Node { left: Box<RootedTree>, right: Box<RootedTree>, word: GroupWord },
}

impl RootedTree {
    pub fn leaf(label: u32) -> RootedTree {
        RootedTree::Leaf { label: Label::new(label), word: GroupWord::identity() }
    }

    pub fn node(left: RootedTree, right: RootedTree) -> RootedTree {
        RootedTree::Node {
            left: Box::new(left),
            right: Box::new(right),
            word: GroupWord::identity(),
        }
    }

    /// Number of trivalent vertices.
    pub fn order(&self) -> usize {
        match self {
            RootedTree::Leaf { .. } => 0,
            RootedTree::Node { left, right, .. } => left.order() + right.order() + 1,
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, RootedTree::Leaf { .. })
    }

    /// Leaf labels, left to right.
    pub fn labels(&self) -> Vec<Label> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut Vec<Label>) {
        match self {
            RootedTree::Leaf { label, .. } => out.push(*label),
            RootedTree::Node { left, right, .. } => {
                left.collect_labels(out);
                right.collect_labels(out);
            }
        }
    }

    pub fn top_word(&self) -> &GroupWord {
        match self {
            RootedTree::Leaf { word, .. } | RootedTree::Node { word, .. } => word,
        }
    }

    pub fn with_top_word(mut self, w: GroupWord) -> RootedTree {
        match &mut self {
            RootedTree::Leaf { word, .. } | RootedTree::Node { word, .. } => *word = w,
        }
        self
    }

    /// True when every decoration, including the top one, is the identity.
    pub fn is_trivially_decorated(&self) -> bool {
        match self {
            RootedTree::Leaf { word, .. } => word.is_identity(),
            RootedTree::Node { left, right, word } => {
                word.is_identity() && left.is_trivially_decorated() && right.is_trivially_decorated()
            }
        }
    }

    pub fn max_generator(&self) -> u8 {
        match self {
            RootedTree::Leaf { word, .. } => word.max_generator(),
            RootedTree::Node { left, right, word } => word
                .max_generator()
                .max(left.max_generator())
                .max(right.max_generator()),
        }
    }
}

/// The rooted product `t(I) * t(J) = t(I, J)`: the two roots are identified
/// and a new root edge sprouts from the new vertex, whose cyclic order is
/// `(a, b, root)`.
pub fn rooted_product(a: RootedTree, b: RootedTree) -> RootedTree {
    RootedTree::node(a, b)
}
