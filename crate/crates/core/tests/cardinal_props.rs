use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tormod::cardinal::{
    compare, normalize, normalize_randomized, stability_predicate, CardinalExpr, Index, TriBool,
};

fn atom() -> impl Strategy<Value = CardinalExpr> {
    prop_oneof![
        (0u64..=5).prop_map(CardinalExpr::finite),
        (0u32..=3).prop_map(CardinalExpr::aleph),
        Just(CardinalExpr::Aleph(Index::Omega)),
        (0u32..=3).prop_map(|n| CardinalExpr::beth(Index::Finite(n))),
        Just(CardinalExpr::beth(Index::Omega)),
        prop_oneof![Just("lambda"), Just("kappa")].prop_map(CardinalExpr::var),
    ]
}

/// Expressions of depth at most 4.
fn expr() -> impl Strategy<Value = CardinalExpr> {
    atom().prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 2..=3).prop_map(CardinalExpr::sum),
            proptest::collection::vec(inner.clone(), 2..=3).prop_map(CardinalExpr::product),
            (inner.clone(), inner).prop_map(|(a, b)| CardinalExpr::pow(a, b)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn normalization_is_idempotent_and_confluent(e in expr(), seed in any::<u64>()) {
        let n = normalize(&e);
        prop_assert_eq!(normalize(&n), n.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(normalize_randomized(&e, &mut rng), n);
    }

    #[test]
    fn powers_to_aleph0_are_stable(mu in expr()) {
        let lam = CardinalExpr::pow(mu, CardinalExpr::aleph0());
        if let Ok(s) = stability_predicate(&lam) {
            prop_assert_eq!(s.verdict, TriBool::True, "{}: {}", lam, s.reason);
        }
    }

    #[test]
    fn verdicts_are_consistent(a in expr(), b in expr()) {
        let ab = compare(&a, &b);
        let ba = compare(&b, &a);
        prop_assert_eq!(ab.eq, ba.eq);
        // a < b excludes b ≤ a; a ≤ b and b ≤ a give equality.
        prop_assert!(!(ab.lt == TriBool::True && ba.le == TriBool::True));
        if ab.le == TriBool::True && ba.le == TriBool::True {
            prop_assert_eq!(ab.eq, TriBool::True);
        }
        if ab.lt == TriBool::True {
            prop_assert_eq!(ab.le, TriBool::True);
            prop_assert_eq!(ab.eq, TriBool::False);
        }
    }

    #[test]
    fn printing_round_trips(e in expr()) {
        prop_assert_eq!(CardinalExpr::parse(&e.ascii()).unwrap(), e.clone());
        prop_assert_eq!(CardinalExpr::parse(&e.unicode()).unwrap(), e);
    }
}

#[test]
fn cantor_and_konig_instances() {
    let c = |s: &str| CardinalExpr::parse(s).unwrap();
    for k in ["aleph0", "aleph3", "beth(omega)", "lambda", "2^lambda"] {
        assert_eq!(compare(&c(k), &c(&format!("2^({k})"))).lt, TriBool::True, "{k}");
    }
    for k in ["beth(omega)", "aleph(omega)"] {
        assert_eq!(compare(&c(k), &c(&format!("{k}^aleph0"))).lt, TriBool::True, "{k}");
    }
}
