//! Text form of trees.
//!
//! ```text
//! tree     := [sign] (rooted | unrooted)
//! rooted   := label [":" word] | "(" rooted "," rooted ")" [":" word]
//! unrooted := "inner(" rooted "," rooted "," word ")"
//! label    := decimal in 1..=m
//! word     := letters a-z, uppercase for inverses, possibly empty
//! ```
//!
//! Whitespace between tokens is ignored.

use alloc::boxed::Box;
use core::fmt;

use super::{inner_product, DecoratedTree, Label, RootedTree, Sign, SignedTree};
use crate::error::{Error, Result};
use crate::word::GroupWord;

/// A parsed tree, rooted or in inner-product form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ParsedTree {
    Rooted(RootedTree),
    Inner { left: RootedTree, right: RootedTree, word: GroupWord },
}

impl ParsedTree {
    pub fn order(&self) -> usize {
        match self {
            ParsedTree::Rooted(t) => t.order(),
            ParsedTree::Inner { left, right, .. } => left.order() + right.order(),
        }
    }

    /// The unrooted tree; rooted input is rejected.
    pub fn to_decorated(&self) -> Result<DecoratedTree> {
        match self {
            ParsedTree::Inner { left, right, word } => Ok(inner_product(left, right, word)),
            ParsedTree::Rooted(_) => Err(Error::InvalidTree("expected an unrooted tree")),
        }
    }
}

/// A tree with an optional explicit sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Parsed {
    pub sign: Option<Sign>,
    pub tree: ParsedTree,
}

impl Parsed {
    pub fn sign_or_plus(&self) -> Sign {
        self.sign.unwrap_or(Sign::Plus)
    }

    pub fn signed(&self) -> Result<SignedTree> {
        Ok(SignedTree::new(self.sign_or_plus(), self.tree.to_decorated()?))
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootedTree::Leaf { label, word } => {
                write!(f, "{label}")?;
                if !word.is_identity() {
                    write!(f, ":{word}")?;
                }
            }
            RootedTree::Node { left, right, word } => {
                write!(f, "({left},{right})")?;
                if !word.is_identity() {
                    write!(f, ":{word}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for ParsedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParsedTree::Rooted(t) => write!(f, "{t}"),
            ParsedTree::Inner { left, right, word } => write!(f, "inner({left},{right},{word})"),
        }
    }
}

impl fmt::Display for Parsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.sign {
            write!(f, "{s}")?;
        }
        write!(f, "{}", self.tree)
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    labels: u32,
    alphabet: u8,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char, msg: &'static str) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            None => Err(self.error("unexpected end of input")),
            Some(_) => Err(self.error(msg)),
        }
    }

    fn error(&self, msg: &'static str) -> Error {
        Error::Syntax { pos: self.pos, msg }
    }

    fn word(&mut self) -> Result<GroupWord> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !c.is_ascii_alphabetic() {
                break;
            }
            self.pos += 1;
        }
        GroupWord::parse(&self.text[start..self.pos], self.alphabet, start)
    }

    fn suffix_word(&mut self) -> Result<GroupWord> {
        self.skip_ws();
        if self.peek() == Some(':') {
            self.pos += 1;
            self.word()
        } else {
            Ok(GroupWord::identity())
        }
    }

    fn rooted(&mut self, depth: usize) -> Result<RootedTree> {
        if depth > 256 {
            return Err(self.error("nesting too deep"));
        }
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let left = self.rooted(depth + 1)?;
                self.expect(',', "expected ','")?;
                let right = self.rooted(depth + 1)?;
                self.expect(')', "expected ')'")?;
                let word = self.suffix_word()?;
                Ok(RootedTree::Node { left: Box::new(left), right: Box::new(right), word })
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let value: u32 = self.text[start..self.pos]
                    .parse()
                    .map_err(|_| Error::Syntax { pos: start, msg: "label too large" })?;
                let label = Label::checked(value, self.labels)?;
                let word = self.suffix_word()?;
                Ok(RootedTree::Leaf { label, word })
            }
            None => Err(self.error("unexpected end of input")),
            Some(_) => Err(self.error("expected '(' or a label")),
        }
    }

    fn parse(&mut self) -> Result<Parsed> {
        self.skip_ws();
        let sign = match self.peek() {
            Some('+') => Some(Sign::Plus),
            Some('-') => Some(Sign::Minus),
            _ => None,
        };
        if sign.is_some() {
            self.pos += 1;
            self.skip_ws();
        }
        let tree = if self.text[self.pos..].starts_with("inner") {
            self.pos += "inner".len();
            self.expect('(', "expected '(' after inner")?;
            let left = self.rooted(0)?;
            self.expect(',', "expected ','")?;
            let right = self.rooted(0)?;
            self.expect(',', "expected ','")?;
            let word = self.word()?;
            self.expect(')', "expected ')'")?;
            ParsedTree::Inner { left, right, word }
        } else {
            ParsedTree::Rooted(self.rooted(0)?)
        };
        self.skip_ws();
        if self.pos != self.text.len() {
            return Err(self.error("trailing input"));
        }
        Ok(Parsed { sign, tree })
    }
}

/// Parses a tree with labels in `1..=labels` and decorations over the first
/// `alphabet` generators.
pub fn parse_tree(text: &str, labels: u32, alphabet: u8) -> Result<Parsed> {
    Parser { text, pos: 0, labels, alphabet }.parse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn round_trips() {
        for s in ["(1,2)", "((1,2),(3,(4,5)))", "-inner((1,2):a,3:B,ab)", "+(2,1)", "inner(1,1,)", "7"] {
            let p = parse_tree(s, 9, 2).unwrap();
            assert_eq!(p.to_string(), s);
        }
    }

    #[test]
    fn whitespace_is_ignored() {
        let p = parse_tree("  - inner( (1 , 2) , 3 , a )  ", 3, 1).unwrap();
        assert_eq!(p.to_string(), "-inner((1,2),3,a)");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_tree("((1,2)", 5, 0),
            Err(Error::Syntax { pos: 6, msg: "unexpected end of input" })
        );
        assert_eq!(parse_tree("(1,6)", 5, 0), Err(Error::LabelOutOfRange { label: 6, max: 5 }));
        assert_eq!(parse_tree("(1:aA,2)", 5, 1), Err(Error::UnreducedWord { pos: 4 }));
        assert!(matches!(parse_tree("(1:c,2)", 5, 2), Err(Error::UnknownLetter { .. })));
        assert!(matches!(parse_tree("(1,2))", 5, 0), Err(Error::Syntax { pos: 5, .. })));
    }

    #[test]
    fn orders() {
        assert_eq!(parse_tree("((1,2),(3,(4,5)))", 5, 0).unwrap().tree.order(), 4);
        assert_eq!(parse_tree("inner((1,2),(3,4),)", 5, 0).unwrap().tree.order(), 2);
    }
}
