use alloc::string::String;
use core::fmt;

use crate::sum::TreeSum;

/// Errors produced by the tree, group and tower layers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Malformed tree text; `pos` is a byte offset into the input.
    Syntax { pos: usize, msg: &'static str },
    LabelOutOfRange { label: u32, max: u32 },
    UnknownLetter { pos: usize, letter: char },
    UnreducedWord { pos: usize },
    BoundExceeded { what: &'static str, value: usize, max: usize },
    /// Operands live over different (order, labels, alphabet) contexts.
    ContextMismatch,
    /// The operation only supports trivial decorations.
    Decorated,
    InvalidTree(&'static str),
    UnknownEdge,
    NotInteriorEdge,
    UnknownPoint(u64),
    InvalidTower(String),
    Precondition(String),
    NotSimple(u64),
    /// The intersection tree does not vanish; carries its normal form.
    ObstructionNonzero(TreeSum),
    Overflow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Syntax { pos, msg } => write!(f, "syntax error at {pos}: {msg}"),
            Error::LabelOutOfRange { label, max } => {
                write!(f, "label {label} out of range 1..={max}")
            }
            Error::UnknownLetter { pos, letter } => {
                write!(f, "unknown group letter '{letter}' at {pos}")
            }
            Error::UnreducedWord { pos } => write!(f, "group word not freely reduced at {pos}"),
            Error::BoundExceeded { what, value, max } => {
                write!(f, "{what} {value} exceeds configured bound {max}")
            }
            Error::ContextMismatch => f.write_str("operands have different contexts"),
            Error::Decorated => f.write_str("operation requires trivial decorations"),
            Error::InvalidTree(msg) => write!(f, "invalid tree: {msg}"),
            Error::UnknownEdge => f.write_str("no such edge"),
            Error::NotInteriorEdge => f.write_str("edge is not interior"),
            Error::UnknownPoint(id) => write!(f, "no point with id {id}"),
            Error::InvalidTower(msg) => write!(f, "invalid tower: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            Error::NotSimple(id) => write!(f, "point {id} does not carry a simple tree"),
            Error::ObstructionNonzero(nf) => write!(f, "obstruction nonzero: {nf}"),
            Error::Overflow => f.write_str("integer overflow"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
