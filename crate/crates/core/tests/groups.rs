use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use whitney_core::group::{
    group_structure, is_zero, nonrepeating_group_structure, presentation, reduce_to_simple, AbelianGroupStructure,
};
use whitney_core::random::{random_relator, random_sign, random_tree};
use whitney_core::sum::{SumContext, TreeSum};
use whitney_core::tree::{canonicalize_tree, SignedTree};
use whitney_core::Bounds;

fn binom(n: u32, k: u32) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

fn raw_structure(n: usize, m: u32) -> AbelianGroupStructure {
    let p = presentation(n, m, &Bounds::default()).unwrap();
    AbelianGroupStructure::cokernel(&p.rows, p.generators.len()).unwrap()
}

#[test]
fn block_structure_matches_raw_presentation() {
    let b = Bounds::default();
    for (n, m) in [(0, 1), (0, 3), (1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 2)] {
        assert_eq!(group_structure(n, m, &b).unwrap(), raw_structure(n, m), "n={n} m={m}");
    }
}

#[test]
fn order_zero_is_free_on_label_pairs() {
    let b = Bounds::default();
    for m in 1..=5 {
        let s = group_structure(0, m, &b).unwrap();
        assert_eq!(s, AbelianGroupStructure { free_rank: binom(m + 1, 2), torsion: vec![] });
    }
}

#[test]
fn order_one_is_triples_plus_repeated_label_torsion() {
    let b = Bounds::default();
    for m in 1..=4 {
        let s = group_structure(1, m, &b).unwrap();
        assert_eq!(s.free_rank, binom(m, 3), "m={m}");
        assert_eq!(s.torsion, vec![2; (m * m) as usize], "m={m}");
    }
    assert_eq!(group_structure(1, 3, &b).unwrap().to_string(), "Z + Z/2 + Z/2 + Z/2 + Z/2 + Z/2 + Z/2 + Z/2 + Z/2 + Z/2");
}

#[test]
fn nonrepeating_ranks_are_factorials() {
    let b = Bounds::default();
    let expected = [1, 1, 2, 6];
    for (n, &r) in expected.iter().enumerate() {
        let s = nonrepeating_group_structure(n, n as u32 + 2, &b).unwrap();
        assert_eq!(s, AbelianGroupStructure { free_rank: r, torsion: vec![] }, "n={n}");
    }
}

#[test]
fn rational_rank_bounded_by_free_rank() {
    let b = Bounds::default();
    for (n, m) in [(0, 2), (1, 3), (2, 2), (2, 3), (3, 2)] {
        let r = whitney_core::lie::rational_rank_bound(n, m, &b).unwrap();
        assert!(r <= group_structure(n, m, &b).unwrap().free_rank, "n={n} m={m}");
    }
}

fn sum_of(points: &[whitney_core::tree::PuncturedTree], n: usize, m: u32) -> TreeSum {
    let mut s = TreeSum::zero(SumContext::new(n, m, 0));
    for p in points {
        s.add_signed(&p.signed()).unwrap();
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn relator_sums_vanish(seed in any::<u64>(), n in 1usize..=3, m in 1u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pts = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            pts.extend(random_relator(&mut rng, n, m));
        }
        prop_assert!(is_zero(&sum_of(&pts, n, m), n, m, &Bounds::default()).unwrap());
    }

    #[test]
    fn reduction_to_simple_trees_is_an_identity(seed in any::<u64>(), n in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = 4;
        let t = random_tree(&mut rng, n, m, 0);
        let (c, _) = canonicalize_tree(&t);
        let r = reduce_to_simple(&c, m).unwrap();
        prop_assert!(r.terms().all(|(u, _)| u.is_simple()));
        let diff = r.sub(&TreeSum::term(r.context(), c, 1).unwrap()).unwrap();
        prop_assert!(is_zero(&diff, n, m, &Bounds::default()).unwrap());
    }

    #[test]
    fn single_nonrepeating_tree_is_nonzero(seed in any::<u64>(), n in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = n as u32 + 2;
        let p = whitney_core::random::random_simple_nonrepeating(&mut rng, n, m);
        let s = SignedTree::new(random_sign(&mut rng) * p.sign(), p.tree().clone());
        let sum = TreeSum::from_signed(SumContext::new(n, m, 0), &s).unwrap();
        prop_assert!(!is_zero(&sum, n, m, &Bounds::default()).unwrap());
    }
}
