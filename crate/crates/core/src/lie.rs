//! Free Lie algebra oracle: trees to Lie elements, expanded in the free
//! associative algebra on `X_1, ..., X_m`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::sum::TreeSum;
use crate::tree::{all_trees, DecoratedTree, Label, RootedTree};
use crate::Bounds;

/// An integer combination of words in the generators, stored by the
/// generator indices of each word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LieElement {
    terms: BTreeMap<Vec<u32>, i64>,
}

impl LieElement {
    pub fn zero() -> LieElement {
        LieElement::default()
    }

    pub fn generator(i: u32) -> LieElement {
        let mut terms = BTreeMap::new();
        terms.insert(vec![i], 1);
        LieElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], i64)> {
        self.terms.iter().map(|(w, &c)| (w.as_slice(), c))
    }

    fn add_word(&mut self, w: Vec<u32>, c: i64) {
        let e = self.terms.entry(w.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (w, &c) in &other.terms {
            out.add_word(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> LieElement {
        if k == 0 {
            return LieElement::zero();
        }
        LieElement { terms: self.terms.iter().map(|(w, &c)| (w.clone(), c * k)).collect() }
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        self.add(&other.scale(-1))
    }

    /// Product in the free associative algebra.
    pub fn mul(&self, other: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (a, &x) in &self.terms {
            for (b, &y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_word(w, x * y);
            }
        }
        out
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, &c)) in self.terms.iter().enumerate() {
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if c.unsigned_abs() != 1 {
                write!(f, "{}", c.unsigned_abs())?;
            }
            for g in w {
                write!(f, "X{g}")?;
            }
        }
        Ok(())
    }
}

/// `ab - ba`.
pub fn lie_bracket(a: &LieElement, b: &LieElement) -> LieElement {
    a.mul(b).sub(&b.mul(a))
}

/// Leaf `i` to `X_i`, a vertex to the bracket of its children.
pub fn rooted_tree_to_lie(t: &RootedTree) -> Result<LieElement> {
    match t {
        RootedTree::Leaf { label, word } => {
            if !word.is_identity() {
                return Err(Error::Decorated);
            }
            Ok(LieElement::generator(label.index()))
        }
        RootedTree::Node { left, right, word } => {
            if !word.is_identity() {
                return Err(Error::Decorated);
            }
            Ok(lie_bracket(&rooted_tree_to_lie(left)?, &rooted_tree_to_lie(right)?))
        }
    }
}

/// Lie elements indexed by label.
pub type EtaImage = BTreeMap<Label, LieElement>;

fn add_into(acc: &mut EtaImage, label: Label, x: &LieElement) {
    let e = acc.entry(label).or_default();
    *e = e.add(x);
    if e.is_zero() {
        acc.remove(&label);
    }
}

/// Sum over leaves `v` of the tree rooted at `v`, placed in the component
/// of the label of `v`.
pub fn eta(t: &DecoratedTree) -> Result<EtaImage> {
    if !t.is_trivially_decorated() {
        return Err(Error::Decorated);
    }
    let mut out = EtaImage::new();
    for leaf in t.leaves() {
        let (label, body) = t.rooted_at_leaf(leaf)?;
        add_into(&mut out, label, &rooted_tree_to_lie(&body)?);
    }
    Ok(out)
}

/// `eta` extended linearly to a sum.
pub fn eta_sum(ts: &TreeSum) -> Result<EtaImage> {
    let mut out = EtaImage::new();
    for (t, c) in ts.terms() {
        for (label, x) in eta(&t.representative())? {
            add_into(&mut out, label, &x.scale(c));
        }
    }
    Ok(out)
}

/// Lyndon words of the given length over `1..=m`, in lexicographic order
/// (Duval's algorithm).
pub fn lyndon_words(m: u32, length: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if m == 0 || length == 0 {
        return out;
    }
    let mut w: Vec<u32> = vec![1];
    while !w.is_empty() {
        if w.len() == length {
            out.push(w.clone());
        }
        let base = w.clone();
        while w.len() < length {
            w.push(base[w.len() % base.len()]);
        }
        while w.last() == Some(&m) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    out
}

fn is_lyndon(w: &[u32]) -> bool {
    (1..w.len()).all(|i| w[i..] > *w)
}

/// Standard bracketing of a Lyndon word: `w = uv` with `v` the longest
/// proper Lyndon suffix, bracketed as `[P(u), P(v)]`.
pub fn standard_bracket(w: &[u32]) -> LieElement {
    if w.len() == 1 {
        return LieElement::generator(w[0]);
    }
    let split = (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("a single letter is Lyndon");
    lie_bracket(&standard_bracket(&w[..split]), &standard_bracket(&w[split..]))
}

/// A Hall family (the Lyndon basis) of the degree-`length` part of the
/// free Lie algebra on `m` generators.
pub fn hall_basis(m: u32, length: usize, bounds: &Bounds) -> Result<Vec<LieElement>> {
    bounds.check_lie(length)?;
    Ok(lyndon_words(m, length).iter().map(|w| standard_bracket(w)).collect())
}

/// Rank over the rationals of integer vectors, by fraction-free (Bareiss)
/// elimination; every division is exact.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        let piv = a[rank][c].clone();
        for i in rank + 1..a.len() {
            let lead = a[i][c].clone();
            for j in c + 1..ncols {
                let v = (&piv * &a[i][j] - &lead * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = piv;
        rank += 1;
    }
    rank
}

/// Rank of a family of label-indexed Lie elements, as vectors over the
/// coordinates `(label, word)`.
pub fn image_rank(images: &[EtaImage]) -> usize {
    let mut coords: BTreeMap<(Label, Vec<u32>), usize> = BTreeMap::new();
    for im in images {
        for (l, x) in im {
            for (w, _) in x.terms() {
                let n = coords.len();
                coords.entry((*l, w.to_vec())).or_insert(n);
            }
        }
    }
    let rows: Vec<Vec<i64>> = images
        .iter()
        .map(|im| {
            let mut v = vec![0; coords.len()];
            for (l, x) in im {
                for (w, c) in x.terms() {
                    v[coords[&(*l, w.to_vec())]] = c;
                }
            }
            v
        })
        .collect();
    integer_rank(&rows)
}

/// Rank of `{eta(t)}` over all canonical trees of order `n` with labels in
/// `1..=m`; a lower bound for the free rank of `T_n(m)`.
pub fn rational_rank_bound(n: usize, m: u32, bounds: &Bounds) -> Result<usize> {
    bounds.check_lie(n + 1)?;
    let images: Result<Vec<EtaImage>> = all_trees(n, m, bounds)?.iter().map(|t| eta(&t.representative())).collect();
    Ok(image_rank(&images?))
}
