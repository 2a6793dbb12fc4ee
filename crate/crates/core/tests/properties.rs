use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};

use scatfact::spectra::{has_full_k_spectrum, is_scattered_factor, spectrum, spectrum_cardinality};
use scatfact::BinaryWord;

fn word(max_len: usize) -> impl Strategy<Value = BinaryWord> {
    (0..=max_len).prop_flat_map(|len| {
        (0..1u128 << len).prop_map(move |x| BinaryWord::from_index(x, len).unwrap())
    })
}

proptest! {
    #[test]
    fn cardinality_matches_set(w in word(20), k in 0usize..=20) {
        prop_assume!(k <= w.len());
        prop_assert_eq!(spectrum(&w, k).unwrap().len() as u128, spectrum_cardinality(&w, k));
    }

    #[test]
    fn invariant_under_orbit(w in word(20), k in 0usize..=12) {
        let c = spectrum_cardinality(&w, k);
        for v in w.orbit() {
            prop_assert_eq!(spectrum_cardinality(&v, k), c);
        }
    }

    #[test]
    fn members_embed(w in word(16), k in 0usize..=10) {
        for u in spectrum(&w, k).unwrap().iter() {
            prop_assert!(is_scattered_factor(&u, &w));
        }
    }

    #[test]
    fn concatenation_is_monotone(u in word(10), v in word(10), k in 0usize..=8) {
        let uv = u.concat(&v).unwrap();
        prop_assert!(spectrum(&u, k).unwrap().is_subset(&spectrum(&uv, k).unwrap()));
        prop_assert!(spectrum(&v, k).unwrap().is_subset(&spectrum(&uv, k).unwrap()));
    }

    #[test]
    fn full_spectrum_criterion(w in word(16), k in 0usize..=8) {
        prop_assert_eq!(has_full_k_spectrum(&w, k), spectrum(&w, k).unwrap().len() == 1 << k);
    }
}

#[test]
fn long_random_words() {
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..10_000 {
        let len = rng.gen_range(21..=60);
        let x = BinaryWord::from_index(rng.gen_range(0..1u128 << len), len).unwrap();
        let k = rng.gen_range(0..=14);
        assert_eq!(
            spectrum(&x, k).unwrap().len() as u128,
            spectrum_cardinality(&x, k),
            "{x} k={k}"
        );
    }
}
