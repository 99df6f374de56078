//! Elements of a finitely generated free group.
//!
//! Generators are the letters `a..z`; the inverse of a generator is written
//! in uppercase. The empty alphabet is the trivial group.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported alphabet.
pub const MAX_ALPHABET: u8 = 26;

/// One letter of a word: generator index `1..=26`, negative for inverses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(i8);

impl Letter {
    pub fn generator(index: u8) -> Letter {
        assert!(index >= 1 && index <= MAX_ALPHABET);
        Letter(index as i8)
    }

    pub fn index(self) -> u8 {
        self.0.unsigned_abs()
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    fn to_char(self) -> char {
        let base = if self.is_inverse() { b'A' } else { b'a' };
        (base + self.index() - 1) as char
    }
}

/// A freely reduced word in the free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn identity() -> GroupWord {
        GroupWord(Vec::new())
    }

    /// Builds a word, reducing it freely.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> GroupWord {
        let mut w = GroupWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index used, 0 for the identity.
    pub fn max_generator(&self) -> u8 {
        self.0.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverse()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    /// Parses a word over an alphabet of `alphabet` generators. `offset` is
    /// only used to report positions.
    pub fn parse(text: &str, alphabet: u8, offset: usize) -> Result<GroupWord> {
        let mut letters = Vec::with_capacity(text.len());
        for (i, c) in text.char_indices() {
            let pos = offset + i;
            let l = match c {
                'a'..='z' => Letter(c as i8 - b'a' as i8 + 1),
                'A'..='Z' => Letter(-(c as i8 - b'A' as i8 + 1)),
                _ => return Err(Error::UnknownLetter { pos, letter: c }),
            };
            if l.index() > alphabet {
                return Err(Error::UnknownLetter { pos, letter: c });
            }
            if letters.last() == Some(&l.inverse()) {
                return Err(Error::UnreducedWord { pos });
            }
            letters.push(l);
        }
        Ok(GroupWord(letters))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn w(s: &str) -> GroupWord {
        GroupWord::parse(s, 26, 0).unwrap()
    }

    #[test]
    fn multiplication_reduces() {
        assert_eq!(w("ab").mul(&w("Bc")), w("ac"));
        assert!(w("abC").mul(&w("abC").inverse()).is_identity());
        assert_eq!(w("abC").inverse().to_string(), "cBA");
    }

    #[test]
    fn parse_rejects_bad_words() {
        assert_eq!(GroupWord::parse("aA", 2, 5), Err(Error::UnreducedWord { pos: 6 }));
        assert_eq!(
            GroupWord::parse("ac", 2, 0),
            Err(Error::UnknownLetter { pos: 1, letter: 'c' })
        );
        assert!(matches!(GroupWord::parse("a", 0, 0), Err(Error::UnknownLetter { .. })));
        assert_eq!(GroupWord::parse("", 0, 0), Ok(GroupWord::identity()));
    }
}
