use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use whitney_core::random::{random_model, random_raw_tower, random_sign, random_tree, random_word, random_zero_model};
use whitney_core::sum::TreeSum;
use whitney_core::tower::{bch_tower, extract_model, glue, IhxSite};
use whitney_core::tree::{EdgePath, PuncturedTree, Sign, SignedTree};
use whitney_core::Bounds;

fn tau(raw: &whitney_core::tower::RawTower) -> TreeSum {
    extract_model(raw).unwrap().tau()
}

#[test]
fn gauge_moves_preserve_tau() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..300 {
        let order = rng.gen_range(0..=3);
        let raw = random_raw_tower(&mut rng, order, 4, 2);
        raw.validate().unwrap_or_else(|e| panic!("tower {i}: {e}"));
        let before = tau(&raw);
        let mut g = raw.clone();
        for _ in 0..4 {
            g = match rng.gen_range(0..3) {
                0 if !g.disks.is_empty() => g.flip_disk(rng.gen_range(0..g.disks.len())).unwrap(),
                1 if !g.disks.is_empty() => {
                    let h = random_word(&mut rng, 2, 2);
                    g.change_whisker(rng.gen_range(0..g.disks.len()), &h).unwrap()
                }
                _ => g.reverse_point(rng.gen_range(0..g.points.len())).unwrap(),
            };
        }
        assert_eq!(tau(&g), before, "tower {i}");
    }
}

#[test]
fn surface_flip_negates_odd_terms() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..200 {
        let order = rng.gen_range(0..=3);
        let raw = random_raw_tower(&mut rng, order, 4, 0);
        let k = rng.gen_range(1..=4u32);
        let flipped = tau(&raw.flip_surface(k).unwrap());
        let base = tau(&raw);
        let mut expected = TreeSum::zero(base.context());
        for (t, c) in base.terms() {
            let odd = t.labels().iter().filter(|l| l.index() == k).count() % 2 == 1;
            expected.add_term(t.clone(), if odd { -c } else { c }).unwrap();
        }
        assert_eq!(flipped, expected, "tower {i}");
    }
}

fn signed_sum(model: &whitney_core::tower::TowerModel) -> TreeSum {
    let mut s = TreeSum::zero(model.context());
    for p in model.top_points() {
        s.add_signed(&p.tree().signed()).unwrap();
    }
    s
}

#[test]
fn glue_subtracts_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let n = rng.gen_range(0..=3);
        let (ka, kb) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
        let a = random_model(&mut rng, n, 3, 2, ka);
        let b = random_model(&mut rng, n, 3, 2, kb);
        let g = glue(&a, &b).unwrap();
        assert_eq!(g.tau(), signed_sum(&a).sub(&signed_sum(&b)).unwrap());
        assert!(glue(&a, &a).unwrap().tau().is_empty());
    }
}

#[test]
fn bch_realizes_its_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    assert!(bch_tower(&[], 2, 3).unwrap().points().is_empty());
    for _ in 0..100 {
        let n = rng.gen_range(0..=3);
        let sigma: Vec<SignedTree> =
            (0..rng.gen_range(1..=4)).map(|_| SignedTree::new(random_sign(&mut rng), random_tree(&mut rng, n, 3, 0))).collect();
        let w = bch_tower(&sigma, n, 3).unwrap();
        let mut expected = TreeSum::zero(w.context());
        for s in &sigma {
            expected.add_signed(s).unwrap();
        }
        assert_eq!(w.tau(), expected);
    }
}

#[test]
fn local_moves_preserve_the_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let bounds = Bounds::default();
    for _ in 0..100 {
        let n = rng.gen_range(2..=3);
        let model = random_zero_model(&mut rng, n, 3);
        let Some(p) = model.points().first() else { continue };
        let (id, edges) = (p.id(), p.tree().tree().edges().len());
        let moved = model.move_puncture(id, rng.gen_range(0..edges)).unwrap();
        assert_eq!(moved.tau(), model.tau());

        let t = random_tree(&mut rng, n, 3, 0);
        let interior = t.interior_edges();
        let e = interior[rng.gen_range(0..interior.len())];
        let site = IhxSite {
            tree: PuncturedTree::new(SignedTree::new(Sign::Plus, t), e).unwrap(),
            edge: EdgePath::marked(),
        };
        let s = random_sign(&mut rng);
        let inserted = model.ihx_insert(&site, s).unwrap();
        assert!(inserted.tau_is_zero(&bounds).unwrap());
        assert_eq!(inserted.ihx_insert(&site, -s).unwrap().hat_tau(), model.hat_tau());

        let split = inserted.ihx_split(id, &EdgePath::marked());
        if let Ok(split) = split {
            assert!(split.tau_is_zero(&bounds).unwrap());
        }
    }
}
