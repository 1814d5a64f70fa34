//! Property tests for the element-set algebra, cross-checked against the
//! mask oracles in `common`.

mod common;

use common::{
    addable_mask, build, from_elem_set, is_locally_maximal_mask, is_product_free_mask,
    random_product_free_mask, sqrt_mask, t_closure_mask, to_elem_set, SplitMix64,
};
use filled_groups::search::greedy_maximal_extension;
use filled_groups::verify_witness;
use proptest::prelude::*;

const SPECS: &[&str] = &[
    "C(6)",
    "C(7)",
    "C(12)",
    "C(16)",
    "C(24)",
    "D(8)",
    "D(12)",
    "D(20)",
    "D(44)",
    "Q(8)",
    "Q(16)",
    "Q(24)",
    "EA(8)",
    "EA(16)",
    "C(3)xC(3)",
    "C(4)xC(4)",
    "C(2)xD(8)",
    "ESC4(16)",
    "ESM(32)",
    "ESP(32)",
];

const DIHEDRAL_SPECS: &[&str] = &["D(8)", "D(12)", "D(14)", "D(20)", "D(26)", "D(44)"];

fn tail_mask(n: usize) -> u64 {
    (1u64 << n) - 1
}

fn arbitrary_masks(spec_idx: usize, seed: u64) -> (filled_groups::FiniteGroup, u64, u64, u64) {
    let g = build(SPECS[spec_idx]);
    let mut rng = SplitMix64(seed);
    let t = tail_mask(g.order());
    (g, rng.next() & t, rng.next() & t, rng.next() & t)
}

proptest! {
    #[test]
    fn singleton_products_are_table_entries(idx in 0..SPECS.len(), a in 0usize..64, b in 0usize..64) {
        let g = build(SPECS[idx]);
        let a = a % g.order();
        let b = b % g.order();
        let p = g.product_set(&g.singleton_set(a), &g.singleton_set(b));
        prop_assert_eq!(p.to_indices(), vec![g.mul(a, b)]);
    }

    #[test]
    fn inverse_set_is_an_involution(idx in 0..SPECS.len(), seed in any::<u64>()) {
        let (g, m, _, _) = arbitrary_masks(idx, seed);
        let s = to_elem_set(&g, m);
        prop_assert_eq!(g.inverse_set(&g.inverse_set(&s)), s);
    }

    #[test]
    fn product_set_is_associative(idx in 0..SPECS.len(), seed in any::<u64>()) {
        let (g, ma, mb, mc) = arbitrary_masks(idx, seed);
        let (a, b, c) = (to_elem_set(&g, ma), to_elem_set(&g, mb), to_elem_set(&g, mc));
        let left = g.product_set(&g.product_set(&a, &b), &c);
        let right = g.product_set(&a, &g.product_set(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_set_is_monotone(idx in 0..SPECS.len(), seed in any::<u64>()) {
        let (g, ma, mb, mc) = arbitrary_masks(idx, seed);
        let (a, b) = (to_elem_set(&g, ma), to_elem_set(&g, mb));
        let wider = to_elem_set(&g, mb | mc);
        prop_assert!(g.product_set(&a, &b).is_subset_of(&g.product_set(&a, &wider)));
    }

    #[test]
    fn t_closure_matches_the_mask_oracle(idx in 0..SPECS.len(), seed in any::<u64>()) {
        let (g, m, _, _) = arbitrary_masks(idx, seed);
        prop_assert_eq!(from_elem_set(&g.t_closure(&to_elem_set(&g, m))), t_closure_mask(&g, m));
    }

    #[test]
    fn sqrt_set_matches_the_mask_oracle(idx in 0..SPECS.len(), seed in any::<u64>()) {
        let (g, m, _, _) = arbitrary_masks(idx, seed);
        prop_assert_eq!(from_elem_set(&g.sqrt_set(&to_elem_set(&g, m))), sqrt_mask(&g, m));
    }

    #[test]
    fn product_freeness_matches_the_mask_oracle(idx in 0..SPECS.len(), seed in any::<u64>()) {
        let (g, m, _, _) = arbitrary_masks(idx, seed);
        prop_assert_eq!(g.is_product_free(&to_elem_set(&g, m)), is_product_free_mask(&g, m));
    }

    #[test]
    fn addable_set_matches_elementwise_rechecking(idx in 0..SPECS.len(), seed in any::<u64>()) {
        let g = build(SPECS[idx]);
        let m = random_product_free_mask(&g, seed);
        let addable = g.addable_set(&to_elem_set(&g, m)).unwrap();
        prop_assert_eq!(from_elem_set(&addable), addable_mask(&g, m));
    }

    #[test]
    fn local_maximality_matches_the_definition(idx in 0..SPECS.len(), seed in any::<u64>()) {
        let g = build(SPECS[idx]);
        let m = random_product_free_mask(&g, seed);
        let lm = g.is_locally_maximal(&to_elem_set(&g, m)).unwrap();
        prop_assert_eq!(lm, is_locally_maximal_mask(&g, m));
    }

    #[test]
    fn filling_product_free_sets_are_locally_maximal(idx in 0..SPECS.len(), seed in any::<u64>()) {
        let g = build(SPECS[idx]);
        let m = random_product_free_mask(&g, seed);
        if m != 0 && g.fills(&to_elem_set(&g, m)) {
            prop_assert!(is_locally_maximal_mask(&g, m));
        }
    }

    #[test]
    fn verify_witness_agrees_with_the_oracles(idx in 0..SPECS.len(), seed in any::<u64>()) {
        let (g, m, _, _) = arbitrary_masks(idx, seed);
        let report = verify_witness(&g, &to_elem_set(&g, m)).unwrap();
        prop_assert_eq!(report.product_free, is_product_free_mask(&g, m));
        if report.product_free {
            prop_assert_eq!(report.locally_maximal, Some(is_locally_maximal_mask(&g, m)));
            prop_assert_eq!(report.fills, Some(common::fills_mask(&g, m)));
        } else {
            prop_assert_eq!(report.locally_maximal, None);
            prop_assert_eq!(report.fills, None);
        }
    }

    // In a dihedral group, with A the rotation part of S, the closure
    // S u SS u SS^-1 u S^-1S collapses to S u SS u AA^-1.
    #[test]
    fn dihedral_t_closure_collapses(idx in 0..DIHEDRAL_SPECS.len(), seed in any::<u64>()) {
        let g = build(DIHEDRAL_SPECS[idx]);
        let mut rng = SplitMix64(seed);
        let m = rng.next() & tail_mask(g.order());
        let s = to_elem_set(&g, m);
        let (a, _) = g.dihedral_split(&s).unwrap();
        let mut expect = s.union(&g.product_set(&s, &s));
        expect.union_with(&g.product_set(&a, &g.inverse_set(&a)));
        prop_assert_eq!(g.t_closure(&s), expect);
    }

    #[test]
    fn set_order_matches_sorted_list_order(idx in 0..SPECS.len(), seed in any::<u64>()) {
        let (g, ma, mb, _) = arbitrary_masks(idx, seed);
        let (a, b) = (to_elem_set(&g, ma), to_elem_set(&g, mb));
        prop_assert_eq!(a.cmp(&b), a.to_indices().cmp(&b.to_indices()));
    }

    #[test]
    fn greedy_extensions_are_locally_maximal_and_inverse_covered(
        idx in 0..SPECS.len(),
        seed in any::<u64>(),
    ) {
        let g = build(SPECS[idx]);
        let m = random_product_free_mask(&g, seed);
        let s = greedy_maximal_extension(&g, &to_elem_set(&g, m), seed);
        prop_assert!(is_locally_maximal_mask(&g, from_elem_set(&s)));
        prop_assert!(g.inverse_cover_property(&s));
    }
}
