use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use whitney_core::planner::{certificate_failure, certify_raise_order};
use whitney_core::random::{random_obstructed_model, random_zero_model};
use whitney_core::{Bounds, Error};

#[test]
fn zero_models_certify() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let b = Bounds::default();
    for i in 0..60 {
        let n = 1 + i % 3;
        let model = random_zero_model(&mut rng, n, 4);
        let cert = certify_raise_order(&model, &b).unwrap_or_else(|e| panic!("model {i}: {e}"));
        assert_eq!(certificate_failure(&model, &cert, &b), None, "model {i}");
    }
}

#[test]
fn obstructed_models_are_reported() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let b = Bounds::default();
    for i in 0..30 {
        let n = 1 + i % 2;
        let model = random_obstructed_model(&mut rng, n, 4);
        assert!(matches!(certify_raise_order(&model, &b), Err(Error::ObstructionNonzero(_))));
    }
}

#[test]
fn order_four_models_certify() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let b = Bounds::default();
    for i in 0..20 {
        let model = random_zero_model(&mut rng, 4, 4);
        let cert = certify_raise_order(&model, &b).unwrap_or_else(|e| panic!("model {i}: {e}"));
        assert_eq!(certificate_failure(&model, &cert, &b), None, "model {i}");
    }
}
