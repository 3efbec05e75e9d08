use std::collections::BTreeMap;

use chaoslab::walsh::{
    chaos_monomial, chaos_sum, distribution_exact, distribution_mc, evaluate_dyadic, randomize_signs, CoefficientMap,
    MultiIndex,
};
use proptest::prelude::*;

fn coeff_strategy() -> impl Strategy<Value = CoefficientMap> {
    prop::collection::btree_map(
        prop::collection::btree_set(1u32..=8, 1..=3).prop_map(|s| s.into_iter().collect::<Vec<_>>()),
        -3.0f64..3.0,
        1..6,
    )
    .prop_map(|m| {
        // keep one order per map
        let order = m.keys().next().unwrap().len();
        CoefficientMap::from_pairs(
            m.into_iter()
                .filter(|(k, _)| k.len() == order)
                .map(|(k, a)| (MultiIndex::from_unordered(k).unwrap(), a)),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hypercube_matches_dyadic_histogram(c in coeff_strategy()) {
        let f = chaos_sum(&c).unwrap();
        let exact = distribution_exact(&f, 24).unwrap();
        let dyadic = evaluate_dyadic(&f, 10).unwrap().histogram();
        prop_assert_eq!(exact.len(), dyadic.len());
        for (a, b) in exact.atoms().iter().zip(dyadic.atoms()) {
            prop_assert!((a.0 - b.0).abs() < 1e-12);
            prop_assert!((a.1 - b.1).abs() < 1e-12);
        }
    }

    #[test]
    fn second_moment_is_coefficient_norm(c in coeff_strategy()) {
        let dist = distribution_exact(&chaos_sum(&c).unwrap(), 24).unwrap();
        prop_assert!((dist.abs_moment(2.0).sqrt() - c.l2_norm()).abs() < 1e-12);
        prop_assert!(dist.mean().abs() < 1e-12);
    }

    #[test]
    fn sign_flips_preserve_l2(c in coeff_strategy(), bits in any::<u64>()) {
        let flips: BTreeMap<MultiIndex, i8> = c
            .keys()
            .enumerate()
            .map(|(i, k)| (k.clone(), if bits >> (i % 64) & 1 == 1 { -1 } else { 1 }))
            .collect();
        let dist = distribution_exact(&randomize_signs(&c, &flips).unwrap(), 24).unwrap();
        prop_assert!((dist.abs_moment(2.0).sqrt() - c.l2_norm()).abs() < 1e-12);
    }
}

#[test]
fn distinct_monomials_are_orthonormal() {
    let idx: Vec<MultiIndex> = [vec![2, 1], vec![3, 2], vec![3, 1], vec![4, 1], vec![5, 4]]
        .into_iter()
        .map(|e| MultiIndex::new(e).unwrap())
        .collect();
    for (i, u) in idx.iter().enumerate() {
        for (j, v) in idx.iter().enumerate() {
            let mut c = CoefficientMap::new();
            c.insert(u.clone(), 1.0).unwrap();
            if i != j {
                // ‖r_u + r_v‖₂² = 2 exactly when ⟨r_u, r_v⟩ = 0
                let mut both = CoefficientMap::new();
                both.insert(u.clone(), 1.0).unwrap();
                both.insert(v.clone(), 1.0).unwrap();
                let d = distribution_exact(&chaos_sum(&both).unwrap(), 24).unwrap();
                assert!((d.abs_moment(2.0) - 2.0).abs() < 1e-12, "{u:?} {v:?}");
            } else {
                let d = distribution_exact(&chaos_monomial(u), 24).unwrap();
                assert_eq!(d.atoms(), &[(-1.0, 0.5), (1.0, 0.5)]);
            }
        }
    }
}

#[test]
fn monte_carlo_is_seed_deterministic() {
    let c = CoefficientMap::linear(&[1.0, 0.5, 0.25, 2.0]);
    let f = chaos_sum(&c).unwrap();
    let a = distribution_mc(&f, 4096, 11).unwrap();
    let b = distribution_mc(&f, 4096, 11).unwrap();
    let other = distribution_mc(&f, 4096, 12).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, other);
    let exact = distribution_exact(&f, 24).unwrap();
    assert!((a.abs_moment(2.0) - exact.abs_moment(2.0)).abs() < 0.2);
}

#[test]
fn too_many_bits_is_a_resource_error() {
    let c = CoefficientMap::linear(&[1.0; 30]);
    let err = distribution_exact(&chaos_sum(&c).unwrap(), 24).unwrap_err();
    assert!(matches!(err, chaoslab::Error::ResourceLimit { .. }), "{err:?}");
}
