mod common;

use c2kit::algebra::{Monomial, Prime};
use common::*;
use proptest::prelude::*;

#[test]
fn point_counts_divisible_by_p_squared() {
    divisible_by_p_squared().unwrap();
}

#[test]
fn kirchhoff_splits_at_every_edge() {
    contraction_deletion().unwrap();
}

#[test]
fn forest_expansion_reconstructs_dodgson() {
    forests_reconstruct_dodgsons().unwrap();
}

#[test]
fn five_invariant_ignores_edge_order() {
    assert_eq!(permutations5([0, 1, 2, 3, 4]).len(), 120);
    five_invariant_order_free().unwrap();
}

#[test]
fn worker_count_does_not_change_counts() {
    worker_invariance().unwrap();
}

#[test]
fn monomial_exponents_round_trip() {
    let m = Monomial::var(2, 3).unwrap();
    assert_eq!(m.exponent(2), 3);
    assert_eq!(m.exponent(1), 0);
}

#[test]
fn lemma_sign_on_a_square() {
    // x0·x1 has 5 zeros in F_3^2; the top coefficient of its square is 1.
    assert!(lemma_holds(vec![(0b11, 1)], 2, Prime::THREE).unwrap());
}

fn multilinear_strategy() -> impl Strategy<Value = (usize, Vec<(u128, i128)>)> {
    (1usize..=4).prop_flat_map(|n| {
        let top = (1u128 << n) - 1;
        (Just(n), -3i128..=3, prop::collection::vec((0..=top, -3i128..=3), 0..6)).prop_map(
            move |(n, lead, rest)| {
                let lead = if lead == 0 { 1 } else { lead };
                let mut terms = vec![(top, lead)];
                terms.extend(rest.into_iter().filter(|&(m, _)| m != top));
                (n, terms)
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn top_coefficient_counts_zeros((n, terms) in multilinear_strategy(), pi in 0usize..3) {
        let p = [Prime::TWO, Prime::THREE, Prime::new(5).unwrap()][pi];
        prop_assert!(lemma_holds(terms, n, p).unwrap());
    }
}

#[test]
fn circulant_c2_same_at_every_decompletion_vertex() {
    use c2kit::c2::{c2_direct, CountConfig};
    use c2kit::graph::{decomplete, make_circulant, CirculantSpec};
    let cfg = CountConfig::default();
    for (n, j, k) in [(7, 1, 2), (8, 1, 3), (9, 2, 3)] {
        let full = make_circulant(CirculantSpec::new(n, j, k).unwrap()).unwrap();
        let values: Vec<u32> = (0..n)
            .map(|v| {
                let g = decomplete(&full, v).unwrap();
                c2_direct(&g, Prime::TWO, &cfg).unwrap().value
            })
            .collect();
        assert!(values.iter().all(|&x| x == values[0]), "C_{n}({j},{k}): {values:?}");
    }
}
