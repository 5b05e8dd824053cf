use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use tormod::group::{CyclicSum, FgGroup};
use tormod::matrix::{hermite_normal_form, smith_normal_form, IntMatrix};
use tormod::purity::{complement, is_pure, torsion_radical};
use tormod::subgroup::{quotient, Subgroup};
use tormod::ulm::{reconstruct, ulm_invariants};

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-12i64..=12, c), r).prop_map(move |rows| {
            IntMatrix::from_rows(c, rows.into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect())
        })
    })
}

fn finite_group() -> impl Strategy<Value = CyclicSum> {
    proptest::collection::vec(2i64..=12, 1..=3).prop_map(|m| CyclicSum::from_moduli(&m))
}

fn fg_group() -> impl Strategy<Value = CyclicSum> {
    proptest::collection::vec(prop_oneof![Just(0i64), 2i64..=12], 1..=3).prop_map(|m| CyclicSum::from_moduli(&m))
}

/// A group with a subgroup generated by two random elements.
fn group_with_subgroup() -> impl Strategy<Value = (CyclicSum, Subgroup)> {
    finite_group().prop_flat_map(|m| {
        let k = m.ngens();
        proptest::collection::vec(proptest::collection::vec(-20i64..=20, k), 0..=2).prop_map(move |gens| {
            let gens: Vec<_> = gens.iter().map(|g| m.reduce(g.iter().map(|&x| BigInt::from(x)).collect())).collect();
            let h = Subgroup::generated_by(&m, &gens).unwrap();
            (m.clone(), h)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_is_a_diagonal_divisor_chain(a in matrix()) {
        let snf = smith_normal_form(&a);
        prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s.clone());
        prop_assert!(snf.u.determinant().abs().is_one());
        prop_assert!(snf.v.mul(&snf.v_inv) == IntMatrix::identity(a.cols()));
        for i in 0..snf.s.rows() {
            for j in 0..snf.s.cols() {
                prop_assert!(i == j || snf.s[(i, j)].is_zero());
            }
        }
        let inv = snf.invariants();
        for w in inv.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(inv.iter().all(|x| x.is_positive()));
    }

    #[test]
    fn hermite_form_is_canonical(a in matrix(), shear in -3i64..=3) {
        let h = hermite_normal_form(&a);
        prop_assert_eq!(h.transform.mul(&a), h.full.clone());
        // Row operations do not change the lattice, hence not the form.
        let mut rows = a.row_vecs();
        if rows.len() > 1 {
            let r0 = rows[0].clone();
            for (x, y) in rows[1].iter_mut().zip(&r0) {
                *x += y * shear;
            }
            rows.swap(0, 1);
        }
        let b = IntMatrix::from_rows(a.cols(), rows);
        prop_assert_eq!(hermite_normal_form(&b).basis(), h.basis());
    }

    #[test]
    fn subgroup_form_ignores_generating_set((m, h) in group_with_subgroup()) {
        let mut gens = h.generators();
        if gens.len() >= 2 {
            let s = m.add(&gens[0], &gens[1]);
            gens.push(s);
            gens.reverse();
        }
        prop_assert_eq!(Subgroup::generated_by(&m, &gens).unwrap(), h.clone());
        let order = h.order().unwrap() * quotient(&h).order().unwrap();
        prop_assert_eq!(Some(order), m.order());
    }

    #[test]
    fn complement_exists_iff_pure((_m, h) in group_with_subgroup()) {
        let pure = is_pure(&h).unwrap();
        let k = complement(&h).unwrap();
        prop_assert_eq!(k.is_some(), pure);
        if let Some(k) = k {
            prop_assert!(h.intersect(&k).unwrap().is_trivial());
            prop_assert!(h.sum(&k).unwrap().is_whole());
        }
    }

    #[test]
    fn radical_laws(m in fg_group()) {
        let t = torsion_radical(&m);
        prop_assert!(is_pure(&t).unwrap());
        prop_assert!(torsion_radical(&quotient(&t).cyclic_sum()).is_trivial());
        prop_assert!(t.structure().0.is_finite());
        prop_assert_eq!(t.is_whole(), m.is_finite());
    }

    #[test]
    fn ulm_invariants_are_additive_and_complete(a in finite_group(), b in finite_group()) {
        let (ga, gb) = (a.canonical(), b.canonical());
        let sum = ga.direct_sum(&gb);
        let ia = ulm_invariants(&ga).unwrap();
        let ib = ulm_invariants(&gb).unwrap();
        prop_assert_eq!(ulm_invariants(&sum).unwrap(), ia.add(&ib));
        prop_assert!(reconstruct(&ia).unwrap().is_isomorphic(&ga));
        prop_assert_eq!(ia == ib, ga.is_isomorphic(&gb));
    }
}

#[test]
fn infinite_group_has_no_ulm_invariants() {
    assert!(ulm_invariants(&FgGroup::parse("Z + Z/2").unwrap()).is_err());
}
