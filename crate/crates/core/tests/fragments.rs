//! Properties of determinate sets and of the fragment recognizers.

mod common;

use common::{mixed_signature, random_pair};
use hoau::fragments::{
    det, is_k_determined, is_kl_distinct, is_total_k_determined, sdet, DeterminateSet,
};
use hoau::oracle::{naive_det, naive_k_determined, naive_kl_distinct, naive_sdet, naive_total_k_determined};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word(max: usize) -> impl Strategy<Value = Vec<char>> {
    prop::collection::vec((0u8..4).prop_map(|x| (b'a' + x) as char), 0..=max)
}

fn distinct_word() -> impl Strategy<Value = Vec<char>> {
    Just(('a'..='h').collect::<Vec<char>>())
        .prop_shuffle()
        .prop_flat_map(|w| (0..=w.len()).prop_map(move |n| w[..n].to_vec()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn repetition_free_words_align_to_themselves(w in distinct_word(), k in 1usize..4) {
        let mut set = det(k, &w, &w);
        for (n, &c) in w.iter().enumerate() {
            let blocks = set.blocks().to_vec();
            prop_assert_eq!(blocks.len(), 1);
            let b = &blocks[0];
            prop_assert_eq!((b.entry.symbol, b.entry.i, b.entry.j), (c, n + 1, n + 1));
            set = b.nested.clone();
        }
        prop_assert!(!set.is_failure());
    }

    #[test]
    fn swapping_the_inputs_swaps_every_entry(a in word(7), b in word(7), k in 1usize..4) {
        prop_assert_eq!(det(k, &b, &a), det(k, &a, &b).swapped());
        prop_assert_eq!(sdet(k, &b, &a), sdet(k, &a, &b).swapped());
    }

    #[test]
    fn extracted_alignments_are_valid(a in word(8), b in word(8), k in 1usize..4) {
        for set in [det(k, &a, &b), sdet(k, &a, &b)] {
            for al in set.alignments() {
                prop_assert!(al.is_valid_for(&a, &b), "{} for {:?} {:?}", al, a, b);
            }
        }
    }

    #[test]
    fn agrees_with_the_unfolded_definition(a in word(6), b in word(6), k in 1usize..4) {
        prop_assert_eq!(det(k, &a, &b).to_string(), naive_det(k, &a, &b).render());
        prop_assert_eq!(sdet(k, &a, &b).to_string(), naive_sdet(k, &a, &b).render());
    }

    #[test]
    fn recognizers_agree_with_the_oracle(seed in any::<u64>(), k in 1usize..3, l in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sig = mixed_signature();
        let (t, s) = random_pair(&mut rng, &mut sig, 30);
        let (t, s) = (t.body(), s.body());
        prop_assert_eq!(is_k_determined(&t, &s, &sig, k), naive_k_determined(&t, &s, &sig, k));
        prop_assert_eq!(
            is_total_k_determined(&t, &s, &sig, k),
            naive_total_k_determined(&t, &s, &sig, k)
        );
        prop_assert_eq!(is_kl_distinct(&t, &s, &sig, k, l), naive_kl_distinct(&t, &s, &sig, k, l));
    }
}

#[test]
fn larger_bounds_can_lose_the_bottom_out() {
    let (a, b): (Vec<char>, Vec<char>) = ("ab".chars().collect(), "aba".chars().collect());
    assert_eq!(det(1, &a, &b), DeterminateSet::BottomOut);
    assert!(det(2, &a, &b).is_failure());
}
