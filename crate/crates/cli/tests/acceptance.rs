//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use whitney_core::group::{ihx_relators, nonrepeating_group_structure, reduce_to_simple, RelatorLattice};
use whitney_core::lie::{eta, rational_rank_bound, EtaImage};
use whitney_core::planner::{certify_raise_order, verify_certificate};
use whitney_core::random::{
    random_gauge, random_model, random_obstructed_model, random_raw_tower, random_sign, random_tree,
    random_word, random_zero_model,
};
use whitney_core::sum::TreeSum;
use whitney_core::tower::{bch_tower, extract_model, glue, IhxSite};
use whitney_core::tree::{
    all_trees, ihx_triple, parse_tree, raw_trees, DecoratedTree, PuncturedTree, Sign, SignedTree,
};
use whitney_core::{Bounds, Error};

const SEED: u64 = 0x5eed;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed <= limit
}

fn groups_small() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_whitney");
    let start = Instant::now();
    let run = |n: &str| {
        let out = Command::new(bin).args(["groups", "--order", n, "--labels", "1"]).output().expect("binary runs");
        String::from_utf8_lossy(&out.stdout).trim().to_string()
    };
    let (t0, t1) = (run("0"), run("1"));
    let elapsed = start.elapsed();
    let ok = t0 == "Z" && t1 == "Z/2" && within(elapsed, Duration::from_secs(1));
    outcome(ok, format!("T_0(1) = {t0}, T_1(1) = {t1}, {elapsed:.2?} (limit 1s)"))
}

fn torsion_free() -> Outcome {
    let b = Bounds { max_labels: 5, ..Bounds::default() };
    let mut parts = Vec::new();
    let mut ok = true;
    for n in 0..=3 {
        let start = Instant::now();
        let s = nonrepeating_group_structure(n, n as u32 + 2, &b).expect("within bounds");
        let elapsed = start.elapsed();
        ok &= s.torsion.is_empty() && (n < 3 || within(elapsed, Duration::from_secs(60)));
        parts.push(format!("n={n}: {s} ({elapsed:.2?})"));
    }
    outcome(ok, parts.join("; "))
}

/// `t + t'` for every tree and vertex flip, as unreduced signed pairs.
fn as_relators(n: usize, m: u32) -> Vec<[SignedTree; 2]> {
    let mut out = Vec::new();
    for r in raw_trees(n, m, &Bounds::default()).expect("within bounds") {
        let t = r.representative();
        for v in (0..t.vertices().len()).filter(|&v| !t.is_leaf(v)) {
            out.push([SignedTree::new(Sign::Plus, t.clone()), SignedTree::new(Sign::Plus, t.flip_vertex(v).unwrap())]);
        }
    }
    out
}

/// `I - H + X` at every interior edge of every orientation-explicit tree.
fn raw_ihx_relators(n: usize, m: u32) -> Vec<Vec<PuncturedTree>> {
    let mut out = Vec::new();
    for r in raw_trees(n, m, &Bounds::default()).expect("within bounds") {
        let t = r.representative();
        for e in t.interior_edges() {
            out.push(ihx_triple(&t, e).unwrap().terms(Sign::Plus).to_vec());
        }
    }
    out
}

fn relators_vanish() -> Outcome {
    let b = Bounds::default();
    let (mut total, mut zero) = (0usize, 0usize);
    for n in 0..=3 {
        for m in 1..=4 {
            let lat = RelatorLattice::new(n, m, &b).unwrap();
            let ctx = lat.context();
            let mut check = |terms: &[SignedTree]| {
                let mut s = TreeSum::zero(ctx);
                for t in terms {
                    s.add_signed(t).unwrap();
                }
                total += 1;
                zero += usize::from(lat.is_zero(&s).unwrap());
            };
            for r in as_relators(n, m) {
                check(&r);
            }
            for r in raw_ihx_relators(n, m) {
                check(&r.iter().map(PuncturedTree::signed).collect::<Vec<_>>());
            }
            for r in ihx_relators(n, m, &b).unwrap() {
                check(&r.sum.expand().into_iter().map(|(s, t)| SignedTree::new(s, t.representative())).collect::<Vec<_>>());
            }
        }
    }
    outcome(total == zero && total > 0, format!("{zero}/{total} relators vanish (n <= 3, m <= 4)"))
}

fn simple_spanning() -> Outcome {
    let b = Bounds::default();
    let start = Instant::now();
    let (mut trees, mut good) = (0usize, 0usize);
    for n in 0..=4 {
        for m in 1..=4 {
            let mut lat = RelatorLattice::for_blocks(n, m, [], &b).unwrap();
            for t in all_trees(n, m, &b).unwrap() {
                trees += 1;
                let r = reduce_to_simple(&t, m).unwrap();
                let diff = r.sub(&TreeSum::term(r.context(), t.clone(), 1).unwrap()).unwrap();
                lat.cover(&diff).unwrap();
                let simple = r.terms().all(|(u, _)| u.is_simple());
                good += usize::from(simple && lat.is_zero(&diff).unwrap());
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = good == trees && within(elapsed, Duration::from_secs(120));
    outcome(ok, format!("{good}/{trees} trees reduce to simple trees, {elapsed:.2?} (limit 120s)"))
}

fn gauge_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = 0;
    let trials = 1000;
    for _ in 0..trials {
        let order = rng.gen_range(0..=3);
        let m = rng.gen_range(2..=4);
        let raw = random_raw_tower(&mut rng, order, m, 2);
        let before = extract_model(&raw).unwrap().tau();
        let mut g = raw.clone();
        for _ in 0..rng.gen_range(1..=6) {
            g = match rng.gen_range(0..3) {
                0 if !g.disks.is_empty() => g.flip_disk(rng.gen_range(0..g.disks.len())).unwrap(),
                1 if !g.disks.is_empty() => {
                    let h = random_word(&mut rng, 2, 2);
                    g.change_whisker(rng.gen_range(0..g.disks.len()), &h).unwrap()
                }
                _ => g.reverse_point(rng.gen_range(0..g.points.len())).unwrap(),
            };
        }
        let after = extract_model(&g).unwrap();
        let mut regauged = TreeSum::zero(after.context());
        for p in after.top_points() {
            regauged.add_signed(&random_gauge(&mut rng, &p.tree().signed(), 2)).unwrap();
        }
        failures += usize::from(after.tau() != before || regauged != before);
    }
    outcome(failures == 0, format!("{failures} failures in {trials} gauge trials"))
}

fn move_conservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let b = Bounds::default();
    let trials = 1000;
    let mut failures = 0;
    for _ in 0..trials {
        let n = rng.gen_range(0..=3);
        let m = rng.gen_range(2..=4);
        let mut model = if rng.gen() { random_zero_model(&mut rng, n, m) } else { random_model(&mut rng, n, m, 0, 3) };
        let zero = model.tau_is_zero(&b).unwrap();
        let mut ok = true;
        for _ in 0..4 {
            if rng.gen() && !model.points().is_empty() {
                let p = &model.points()[rng.gen_range(0..model.points().len())];
                let e = rng.gen_range(0..p.tree().tree().edges().len());
                let next = model.move_puncture(p.id(), e).unwrap();
                ok &= next.tau() == model.tau() && next.hat_tau() == model.hat_tau();
                model = next;
            } else {
                let t = random_tree(&mut rng, n, m, 0);
                let Some(&e) = t.interior_edges().first() else { continue };
                let site = IhxSite {
                    tree: PuncturedTree::new(SignedTree::new(Sign::Plus, t.clone()), e).unwrap(),
                    edge: "".parse().unwrap(),
                };
                let sign = random_sign(&mut rng);
                let next = model.ihx_insert(&site, sign).unwrap();
                let mut added = TreeSum::zero(model.context());
                for p in site.triple().unwrap().terms(sign) {
                    added.add_signed(&p.signed()).unwrap();
                }
                ok &= next.points().len() == model.points().len() + 3
                    && next.tau().sub(&model.tau()).unwrap() == added
                    && next.tau_is_zero(&b).unwrap() == zero;
                model = next;
            }
        }
        failures += usize::from(!ok);
    }
    outcome(failures == 0, format!("{failures} failures in {trials} move sequences"))
}

fn certified_raising() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let b = Bounds::default();
    let (mut certified, mut obstructed) = (0, 0);
    for i in 0..200 {
        let m = rng.gen_range(1..=4);
        let model = random_zero_model(&mut rng, i % 4, m);
        if let Ok(cert) = certify_raise_order(&model, &b) {
            certified += usize::from(verify_certificate(&model, &cert, &b));
        }
    }
    for i in 0..200 {
        let n = 1 + i % 3;
        let m = if n == 3 { 5 } else { 4 };
        let model = random_obstructed_model(&mut rng, n, m);
        obstructed += usize::from(matches!(certify_raise_order(&model, &b), Err(Error::ObstructionNonzero(_))));
    }
    outcome(
        certified == 200 && obstructed == 200,
        format!("{certified}/200 zero models certified and verified, {obstructed}/200 obstructed models rejected"),
    )
}

fn gluing() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let b = Bounds::default();
    let mut exact = 0;
    for _ in 0..500 {
        let n = rng.gen_range(0..=3);
        let m = rng.gen_range(2..=4);
        let (ka, kc) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
        let a = random_model(&mut rng, n, m, 2, ka);
        let c = random_model(&mut rng, n, m, 2, kc);
        let g = glue(&a, &c).unwrap();
        exact += usize::from(g.tau() == a.tau().sub(&c.tau()).unwrap());
    }
    let mut doubled = 0;
    for _ in 0..100 {
        let n = rng.gen_range(0..=3);
        let m = rng.gen_range(2..=4);
        let sigma: Vec<SignedTree> =
            (0..rng.gen_range(0..=3)).map(|_| SignedTree::new(random_sign(&mut rng), random_tree(&mut rng, n, m, 0))).collect();
        let w = bch_tower(&sigma, n, m).unwrap();
        let d = glue(&w, &w).unwrap();
        doubled += usize::from(certify_raise_order(&d, &b).is_ok_and(|c| verify_certificate(&d, &c, &b)));
    }
    outcome(exact == 500 && doubled == 100, format!("{exact}/500 exact glue identities, {doubled}/100 doubled towers certified"))
}

fn bing_fixture() -> Outcome {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/bing_order2.json")).unwrap();
    let model = whitney::json::read_tower(&text).unwrap();
    let i = parse_tree("inner((1,2),(3,4),)", 4, 0).unwrap().signed().unwrap();
    let expected = TreeSum::from_signed(model.context(), &i).unwrap();
    let tau = model.tau();
    outcome(
        model.declared_order() == 2 && tau == expected,
        format!("order {} tower, tau = {tau}", model.declared_order()),
    )
}

fn add_image(acc: &mut EtaImage, im: EtaImage, sign: Sign) {
    for (l, x) in im {
        let e = acc.entry(l).or_default();
        *e = e.add(&x.scale(sign.value()));
        if e.is_zero() {
            acc.remove(&l);
        }
    }
}

fn signed_image(terms: &[(Sign, &DecoratedTree)]) -> EtaImage {
    let mut acc = BTreeMap::new();
    for (s, t) in terms {
        add_image(&mut acc, eta(t).unwrap(), *s);
    }
    acc
}

fn lie_oracle() -> Outcome {
    let b = Bounds::default();
    let start = Instant::now();
    let (mut relators, mut killed, mut cells, mut bounded) = (0usize, 0usize, 0usize, 0usize);
    for n in 0..=3 {
        for m in 1..=4 {
            for [p, q] in as_relators(n, m) {
                relators += 1;
                killed += usize::from(signed_image(&[(p.sign, &p.tree), (q.sign, &q.tree)]).is_empty());
            }
            for r in raw_ihx_relators(n, m) {
                relators += 1;
                let terms: Vec<(Sign, &DecoratedTree)> = r.iter().map(|p| (p.sign(), p.tree())).collect();
                killed += usize::from(signed_image(&terms).is_empty());
            }
            cells += 1;
            let rank = rational_rank_bound(n, m, &b).unwrap();
            let free = RelatorLattice::new(n, m, &b).unwrap().structure().unwrap().free_rank;
            bounded += usize::from(rank <= free);
        }
    }
    let elapsed = start.elapsed();
    let ok = killed == relators && bounded == cells && within(elapsed, Duration::from_secs(60));
    outcome(ok, format!("{killed}/{relators} relators killed, rank <= free rank in {bounded}/{cells} cells, {elapsed:.2?} (limit 60s)"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("group structures T_0(1) and T_1(1)", groups_small),
        ("nonrepeating T_n(n+2) torsion-free", torsion_free),
        ("AS and IHX relators vanish", relators_vanish),
        ("reduction to simple trees", simple_spanning),
        ("gauge invariance of tau", gauge_invariance),
        ("move conservation", move_conservation),
        ("certified order raising", certified_raising),
        ("gluing identity", gluing),
        ("order-2 Bing tower fixture", bing_fixture),
        ("Lie oracle", lie_oracle),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        println!("criterion {:>2} {}: {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
