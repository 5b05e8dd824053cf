use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tormod::chain::{consecutive_indices, evaluate_chain, expected_index, witness_chain};
use tormod::formula::{scalar_formula, sum_formulas, PpFormula};
use tormod::group::CyclicSum;
use tormod::oracle::{bitmap_of, brute_force_evaluate, lowness_by_search, Table};
use tormod::ppsolve::evaluate;
use tormod::verify::random_formula;

fn formula(arity: usize) -> impl Strategy<Value = PpFormula> {
    any::<u64>().prop_map(move |seed| random_formula(&mut ChaCha8Rng::seed_from_u64(seed), arity, 2, 3))
}

fn small_group() -> impl Strategy<Value = CyclicSum> {
    proptest::collection::vec(2i64..=9, 1..=2).prop_map(|m| CyclicSum::from_moduli(&m))
}

fn agrees_with_enumeration(f: &PpFormula, m: &CyclicSum) -> bool {
    let h = evaluate(f, m);
    let got = bitmap_of(&Table::of(h.ambient()).unwrap(), &h.generators());
    got == brute_force_evaluate(f, &Table::of(m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn printing_preserves_meaning(f in formula(1), m in small_group()) {
        let text = f.to_string();
        let g = PpFormula::parse(&text).unwrap();
        prop_assert_eq!(g.arity(), 1);
        prop_assert_eq!(evaluate(&g, &m), evaluate(&f, &m), "{}", text);
        prop_assert_eq!(g.to_string(), text);
    }

    #[test]
    fn evaluation_matches_enumeration(f in formula(1), g in formula(2), m in small_group()) {
        prop_assert!(agrees_with_enumeration(&f, &m));
        prop_assert!(agrees_with_enumeration(&g, &m));
    }

    #[test]
    fn lowness_matches_bounded_search(f in formula(1)) {
        let d = f.integer_solution_generator().unwrap();
        prop_assert_eq!(lowness_by_search(&f), Some(d.clone()));
        prop_assert_eq!(f.is_low().unwrap(), d.is_zero());
    }

    #[test]
    fn low_formulas_are_closed(f in formula(1), g in formula(1), r in -6i64..=6) {
        prop_assume!(f.is_low().unwrap() && g.is_low().unwrap());
        prop_assert!(sum_formulas(&f, &g).unwrap().is_low().unwrap());
        prop_assert!(scalar_formula(&BigInt::from(r), &f).unwrap().is_low().unwrap());
    }

    #[test]
    fn sum_and_scalar_evaluate_pointwise(f in formula(1), g in formula(1), r in -4i64..=4, m in small_group()) {
        let (hf, hg) = (evaluate(&f, &m), evaluate(&g, &m));
        prop_assert_eq!(evaluate(&sum_formulas(&f, &g).unwrap(), &m), hf.sum(&hg).unwrap());
        prop_assert_eq!(evaluate(&scalar_formula(&BigInt::from(r), &f).unwrap(), &m), hf.scale(&BigInt::from(r)));
    }

    #[test]
    fn witness_chain_index_is_p_to_the_k(p in prop_oneof![Just(2u64), Just(3), Just(5)], m0 in 1u32..=5, k in 1usize..=3) {
        let (chain, b) = witness_chain(p, m0, k).unwrap();
        let ev = evaluate_chain(&chain, &b, m0 as u64 + 1).unwrap();
        prop_assert!(ev.is_descending());
        let idx = consecutive_indices(&ev.levels).unwrap();
        for (n, i) in idx.iter().enumerate() {
            let want = if n < m0 as usize { expected_index(p, k) } else { BigInt::from(1) };
            prop_assert_eq!(i.clone(), Some(want));
        }
    }
}

#[test]
fn parse_errors_carry_positions() {
    for bad in ["E y. x = y*x", "x = 2a", "x = 1", "E y y. x = y", "E . x = 0", "x = (2"] {
        assert!(PpFormula::parse(bad).is_err(), "{bad}");
    }
}
