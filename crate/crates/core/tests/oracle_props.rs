use std::collections::HashSet;

use itertools::Itertools;
use num_complex::Complex64;
use proptest::prelude::*;

use upn_core::oracle::{
    max_abs_diff, random_state, random_unitary, word_code, word_product, PhaseOracleState,
    WordCode,
};
use upn_core::Permutation;

fn word() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (1usize..=9).prop_flat_map(|n| (Just(n), prop::collection::vec(1..=n, 0..40)))
}

#[test]
fn codes_are_injective_on_short_words() {
    for n in 1..=4usize {
        let mut seen = HashSet::new();
        let mut count = 0;
        for len in 0..=5 {
            for w in (0..len).map(|_| 1..=n).multi_cartesian_product() {
                assert!(seen.insert(word_code(&w, n).unwrap().value().clone()), "n={n} {w:?}");
                count += 1;
            }
        }
        assert_eq!(seen.len(), count);
    }
}

#[test]
fn permutation_codes_are_distinct() {
    for n in 1..=6 {
        let codes: HashSet<_> = Permutation::all(n)
            .iter()
            .map(|p| word_code(p.images(), n).unwrap().value().clone())
            .collect();
        assert_eq!(codes.len(), (1..=n).product::<usize>());
    }
}

proptest! {
    #[test]
    fn decode_inverts_code((n, w) in word()) {
        let code = word_code(&w, n).unwrap();
        prop_assert_eq!(code.decode(), w.clone());
        let back = WordCode::from_decimal(&code.to_string(), n).unwrap();
        prop_assert_eq!(back.decode(), w);
    }

    #[test]
    fn phase_oracle_accumulates_the_code((n, w) in word()) {
        let on = PhaseOracleState::new(true, n).apply_word(&w).unwrap();
        prop_assert_eq!(on.counter(), w.len());
        let expected = word_code(&w, n).unwrap();
        prop_assert_eq!(on.code().value(), expected.value());
        prop_assert!(on.bit());
        let off = PhaseOracleState::new(false, n).apply_word(&w).unwrap();
        prop_assert_eq!(off.counter(), w.len());
        prop_assert_eq!(off.code().value(), &num_bigint::BigUint::default());
    }

    #[test]
    fn product_matches_stepwise_application(
        seed in any::<u64>(),
        w in prop::collection::vec(1usize..=3, 0..=6),
    ) {
        let gates: Vec<_> = (0..3).map(|k| random_unitary(2, seed.wrapping_add(k)).unwrap()).collect();
        let input = random_state(2, seed ^ 0x5eed).unwrap();
        let mut state: Vec<Complex64> = input.clone();
        for &j in &w {
            state = gates[j - 1].apply(&state).unwrap();
        }
        let direct = word_product(&w, &gates).unwrap().apply(&input).unwrap();
        prop_assert!(max_abs_diff(&state, &direct) <= 1e-9);
    }

    #[test]
    fn random_unitaries_are_unitary(dim in 1usize..=8, seed in any::<u64>()) {
        prop_assert!(random_unitary(dim, seed).unwrap().unitarity_error() <= 1e-10);
    }
}
