//! Decorated unitrivalent trees and their normal forms.

mod canonical;
mod decorated;
mod enumerate;
mod grammar;
mod ihx;
mod punctured;
mod rooted;

use core::fmt;
use core::ops::{Mul, Neg};

use crate::error::{Error, Result};

pub use canonical::{
    canonicalize, canonicalize_rooted, canonicalize_tree, raw_code, CanonicalTree, RawTree,
    SignedTree,
};
pub(crate) use canonical::canonical_form;
pub use decorated::{inner_product, DecoratedTree, Edge, EdgeId, Vertex, VertexId};
pub use enumerate::{all_trees, block_trees, raw_trees};
pub use grammar::{parse_tree, Parsed, ParsedTree};
pub use ihx::{ihx_triple, IhxTriple};
pub use punctured::{Branch, EdgePath, PuncturedTree, Side};
pub use rooted::{rooted_product, RootedTree};

/// A univalent label `i` from `{1, ..., m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(u32);

impl Label {
    /// Panics on 0.
    pub fn new(index: u32) -> Label {
        assert!(index >= 1, "labels start at 1");
        Label(index)
    }

    /// A label checked against the range `1..=max`.
    pub fn checked(index: u32, max: u32) -> Result<Label> {
        if index == 0 || index > max {
            return Err(Error::LabelOutOfRange { label: index, max });
        }
        Ok(Label(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The sign of an intersection point or a tree coefficient.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}
