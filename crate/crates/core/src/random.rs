//! Random trees, models and raw towers for randomized suites.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::tree::{
    canonicalize, ihx_triple, inner_product, DecoratedTree, Label, PuncturedTree, RootedTree, Sign, SignedTree,
};
use crate::tower::{Bracket, RawDisk, RawPoint, RawTower, TowerModel};
use crate::word::{GroupWord, Letter};

pub fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// A reduced word of length at most `max_len` in `alphabet` generators.
pub fn random_word<R: Rng>(rng: &mut R, alphabet: u8, max_len: usize) -> GroupWord {
    if alphabet == 0 {
        return GroupWord::identity();
    }
    let len = rng.gen_range(0..=max_len);
    GroupWord::from_letters((0..len).map(|_| {
        let l = Letter::generator(rng.gen_range(1..=alphabet));
        if rng.gen() {
            l
        } else {
            l.inverse()
        }
    }))
}

/// A rooted tree with `leaves` leaves labelled from `1..=m`, decorated
/// from `alphabet` (trivially when it is 0).
pub fn random_rooted<R: Rng>(rng: &mut R, leaves: usize, m: u32, alphabet: u8) -> RootedTree {
    let t = if leaves <= 1 {
        RootedTree::leaf(rng.gen_range(1..=m))
    } else {
        let k = rng.gen_range(1..leaves);
        RootedTree::node(random_rooted(rng, k, m, alphabet), random_rooted(rng, leaves - k, m, alphabet))
    };
    t.with_top_word(random_word(rng, alphabet, 2))
}

/// A tree of order `n` with random shape, labels and decorations.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize, m: u32, alphabet: u8) -> DecoratedTree {
    let k = rng.gen_range(1..=n + 1);
    let a = random_rooted(rng, k, m, alphabet);
    let b = random_rooted(rng, n + 2 - k, m, alphabet);
    inner_product(&a, &b, &random_word(rng, alphabet, 2))
}

/// A random presentation of the same signed tree: vertex flips with
/// compensating signs, edge reversals and holonomy moves.
pub fn random_gauge<R: Rng>(rng: &mut R, s: &SignedTree, alphabet: u8) -> SignedTree {
    let mut sign = s.sign;
    let mut t = s.tree.clone();
    let trivalent: Vec<usize> = (0..t.vertices().len()).filter(|&v| !t.is_leaf(v)).collect();
    for _ in 0..rng.gen_range(0..6) {
        match rng.gen_range(0..3) {
            0 => {
                if let Some(&v) = trivalent.choose(rng) {
                    t = t.flip_vertex(v).expect("trivalent");
                    sign = -sign;
                }
            }
            1 => {
                let e = rng.gen_range(0..t.edges().len());
                t = t.reverse_edge(e).expect("edge exists");
            }
            _ => {
                if let Some(&v) = trivalent.choose(rng) {
                    t = t.hol(v, &random_word(rng, alphabet, 1)).expect("trivalent");
                }
            }
        }
    }
    SignedTree::new(sign, t)
}

/// A signed tree punctured at a random edge.
pub fn random_punctured<R: Rng>(rng: &mut R, n: usize, m: u32, alphabet: u8) -> PuncturedTree {
    let t = random_tree(rng, n, m, alphabet);
    let e = rng.gen_range(0..t.edges().len());
    PuncturedTree::new(SignedTree::new(random_sign(rng), t), e).expect("edge exists")
}

fn repuncture<R: Rng>(rng: &mut R, p: &PuncturedTree) -> PuncturedTree {
    let e = rng.gen_range(0..p.tree().edges().len());
    p.with_marked(e).expect("edge exists")
}

/// Two punctured trees whose terms cancel, in unrelated presentations.
pub fn random_cancelling_pair<R: Rng>(rng: &mut R, n: usize, m: u32, alphabet: u8) -> [PuncturedTree; 2] {
    let p = random_punctured(rng, n, m, alphabet);
    let q = random_gauge(rng, &p.negate().signed(), alphabet);
    let q = PuncturedTree::new(q.clone(), rng.gen_range(0..q.tree.edges().len())).expect("edge exists");
    [p, q]
}

/// The three points of a random IHX relator with a random sign.
pub fn random_relator<R: Rng>(rng: &mut R, n: usize, m: u32) -> Vec<PuncturedTree> {
    let t = random_tree(rng, n, m, 0);
    let interior = t.interior_edges();
    let Some(&e) = interior.choose(rng) else { return Vec::new() };
    let triple = ihx_triple(&t, e).expect("interior edge");
    triple.terms(random_sign(rng)).iter().map(|p| repuncture(rng, p)).collect()
}

/// An order-`n` model with vanishing invariant: IHX relators and cancelling
/// pairs, shuffled.
pub fn random_zero_model<R: Rng>(rng: &mut R, n: usize, m: u32) -> TowerModel {
    let mut points = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        points.extend(random_relator(rng, n, m));
    }
    for _ in 0..rng.gen_range(0..=2) {
        points.extend(random_cancelling_pair(rng, n, m, 0));
    }
    points.shuffle(rng);
    TowerModel::from_points(m, 0, n, points).expect("points are in range")
}

/// A caterpillar tree on `n + 2` distinct labels from `1..=m`.
pub fn random_simple_nonrepeating<R: Rng>(rng: &mut R, n: usize, m: u32) -> PuncturedTree {
    let mut labels: Vec<u32> = (1..=m).collect();
    labels.shuffle(rng);
    let mut body = RootedTree::leaf(labels[1]);
    for &l in &labels[2..n + 2] {
        body = if rng.gen() {
            RootedTree::node(body, RootedTree::leaf(l))
        } else {
            RootedTree::node(RootedTree::leaf(l), body)
        };
    }
    let t = inner_product(&RootedTree::leaf(labels[0]), &body, &GroupWord::identity());
    let e = rng.gen_range(0..t.edges().len());
    PuncturedTree::new(SignedTree::new(random_sign(rng), t), e).expect("edge exists")
}

/// A zero model plus one simple nonrepeating point; needs `m >= n + 2`.
pub fn random_obstructed_model<R: Rng>(rng: &mut R, n: usize, m: u32) -> TowerModel {
    let zero = random_zero_model(rng, n, m);
    zero.add_point(random_simple_nonrepeating(rng, n, m)).expect("points are in range")
}

/// A random model with decorations, every point of order `n`.
pub fn random_model<R: Rng>(rng: &mut R, n: usize, m: u32, alphabet: u8, points: usize) -> TowerModel {
    let pts: Vec<PuncturedTree> = (0..points).map(|_| random_punctured(rng, n, m, alphabet)).collect();
    TowerModel::from_points(m, alphabet, n, pts).expect("points are in range")
}

/// Whether two signed trees are equal as elements up to AS and gauge.
pub fn same_term(a: &SignedTree, b: &SignedTree) -> bool {
    let (ca, sa) = canonicalize(a);
    let (cb, sb) = canonicalize(b);
    ca == cb && (sa == sb || ca.two_torsion())
}

fn random_bracket<R: Rng>(rng: &mut R, order: usize, m: u32) -> Bracket {
    let t = random_rooted(rng, order + 1, m, 0);
    crate::tower::tree_of_bracket(&t)
}

fn constituents(b: &Bracket, out: &mut Vec<Bracket>) {
    if let RootedTree::Node { left, right, .. } = b {
        constituents(left, out);
        constituents(right, out);
        if !out.contains(b) {
            out.push(b.clone());
        }
    }
}

/// A valid raw tower of order `order` on `m` surfaces: Whitney disks on
/// random brackets, each pairing two points, and unpaired points of order
/// at least `order` among the present surfaces.
pub fn random_raw_tower<R: Rng>(rng: &mut R, order: usize, m: u32, alphabet: u8) -> RawTower {
    let mut brackets = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let k = rng.gen_range(1..=order.max(1) + 1);
        constituents(&random_bracket(rng, k, m), &mut brackets);
    }
    let surface_orientations = (0..m).map(|_| random_sign(rng)).collect();
    let mut disks = Vec::new();
    let mut points = Vec::new();
    for b in &brackets {
        disks.push(RawDisk {
            bracket: b.clone(),
            whisker: random_word(rng, alphabet, 2),
            orientation: random_sign(rng),
        });
        let RootedTree::Node { left, right, .. } = b else { unreachable!() };
        let s = random_sign(rng);
        for sign in [s, -s] {
            let (l, r) = if rng.gen() { (left, right) } else { (right, left) };
            points.push(RawPoint {
                left: (**l).clone(),
                right: (**r).clone(),
                sign,
                word: random_word(rng, alphabet, 2),
                paired_by: Some(b.clone()),
            });
        }
    }
    let mut surfaces: Vec<Bracket> = (1..=m).map(RootedTree::leaf).collect();
    surfaces.extend(brackets.iter().cloned());
    for _ in 0..rng.gen_range(1..=4) {
        for _ in 0..20 {
            let a = surfaces.choose(rng).expect("m > 0");
            let b = surfaces.choose(rng).expect("m > 0");
            if a.order() + b.order() + 1 > order {
                points.push(RawPoint {
                    left: a.clone(),
                    right: b.clone(),
                    sign: random_sign(rng),
                    word: random_word(rng, alphabet, 2),
                    paired_by: None,
                });
                break;
            }
        }
    }
    points.shuffle(rng);
    RawTower { m, order, alphabet, surface_orientations, disks, points }
}

pub fn random_label<R: Rng>(rng: &mut R, m: u32) -> Label {
    Label::new(rng.gen_range(1..=m))
}
