use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{canonical_form, raw_code, CanonicalTree, Label, RawTree, RootedTree};
use crate::error::Result;
use crate::word::GroupWord;
use crate::Bounds;

/// Rooted trees with `k` leaves labelled from `lo..=m`; with `sorted`, only
/// those whose children are in increasing order at every vertex.
fn bodies(k: usize, lo: u32, m: u32, sorted: bool) -> Vec<RootedTree> {
    if k == 1 {
        return (lo..=m).map(RootedTree::leaf).collect();
    }
    let mut out = Vec::new();
    for k1 in 1..k {
        let left = bodies(k1, lo, m, sorted);
        let right = bodies(k - k1, lo, m, sorted);
        for l in &left {
            for r in &right {
                if !sorted || l <= r {
                    out.push(RootedTree::node(l.clone(), r.clone()));
                }
            }
        }
    }
    out
}

fn candidates(n: usize, m: u32, sorted: bool) -> impl Iterator<Item = (Label, RootedTree)> {
    (1..=m).flat_map(move |r| bodies(n + 1, r, m, sorted).into_iter().map(move |b| (Label::new(r), b)))
}

fn representative(root: Label, body: &RootedTree) -> super::DecoratedTree {
    super::inner_product(&RootedTree::Leaf { label: root, word: GroupWord::identity() }, body, &GroupWord::identity())
}

/// Rooted trees, sorted at every vertex, whose leaves carry exactly the
/// multiset `labels` (given sorted).
fn sorted_bodies_on(labels: &[u32]) -> Vec<RootedTree> {
    if labels.len() == 1 {
        return alloc::vec![RootedTree::leaf(labels[0])];
    }
    let mut set = BTreeSet::new();
    let n = labels.len();
    for mask in 1..(1u32 << n) - 1 {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (i, &l) in labels.iter().enumerate() {
            if mask & (1 << i) != 0 {
                a.push(l);
            } else {
                b.push(l);
            }
        }
        let left = sorted_bodies_on(&a);
        let right = sorted_bodies_on(&b);
        for l in &left {
            for r in &right {
                if l <= r {
                    set.insert(RootedTree::node(l.clone(), r.clone()));
                }
            }
        }
    }
    set.into_iter().collect()
}

/// Every canonical trivially-decorated tree whose leaf labels form the
/// multiset `labels`, sorted and without duplicates.
pub fn block_trees(labels: &[Label]) -> Vec<CanonicalTree> {
    let mut ls: Vec<u32> = labels.iter().map(|l| l.index()).collect();
    ls.sort_unstable();
    if ls.len() < 2 {
        return Vec::new();
    }
    let root = Label::new(ls[0]);
    let set: BTreeSet<CanonicalTree> = sorted_bodies_on(&ls[1..])
        .iter()
        .map(|b| canonical_form(&representative(root, b)).canon)
        .collect();
    set.into_iter().collect()
}

/// Every canonical trivially-decorated tree of order `n` with labels in
/// `1..=m`, sorted and without duplicates.
pub fn all_trees(n: usize, m: u32, bounds: &Bounds) -> Result<Vec<CanonicalTree>> {
    bounds.check(n, m)?;
    let set: BTreeSet<CanonicalTree> =
        candidates(n, m, true).map(|(r, b)| canonical_form(&representative(r, &b)).canon).collect();
    Ok(set.into_iter().collect())
}

/// Every orientation-explicit trivially-decorated tree of order `n` with
/// labels in `1..=m`, sorted and without duplicates.
pub fn raw_trees(n: usize, m: u32, bounds: &Bounds) -> Result<Vec<RawTree>> {
    bounds.check(n, m)?;
    let set: BTreeSet<RawTree> = candidates(n, m, false).map(|(r, b)| raw_code(&representative(r, &b))).collect();
    Ok(set.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let b = Bounds::default();
        assert_eq!(all_trees(0, 1, &b).unwrap().len(), 1);
        assert_eq!(all_trees(0, 2, &b).unwrap().len(), 3);
        assert_eq!(all_trees(1, 1, &b).unwrap().len(), 1);
        assert!(all_trees(5, 2, &b).is_err());
    }

    #[test]
    fn sorted_without_duplicates() {
        let t = all_trees(2, 3, &Bounds::default()).unwrap();
        assert!(t.windows(2).all(|w| w[0] < w[1]));
    }
}
