use catlift::corpus::{model_categories, random_category, random_functor, small_categories};
use catlift::fincat::{coproduct, core, enumerate_functors, is_equivalence_by_search, opposite, product};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BUDGET: usize = 100_000;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_categories_are_valid(seed in any::<u64>(), size in 1usize..=12) {
        let (name, c) = random_category(&mut ChaCha8Rng::seed_from_u64(seed), size);
        prop_assert!(c.validate().is_valid(), "{name}");
        prop_assert!(c.num_morphisms() <= size, "{name} has {} morphisms", c.num_morphisms());
    }

    #[test]
    fn opposite_is_an_involution(seed in any::<u64>()) {
        let (_, c) = random_category(&mut ChaCha8Rng::seed_from_u64(seed), 12);
        let op = opposite(&c);
        prop_assert!(op.validate().is_valid());
        prop_assert_eq!(&opposite(&op), &*c);
    }

    #[test]
    fn core_is_a_groupoid(seed in any::<u64>()) {
        let (_, c) = random_category(&mut ChaCha8Rng::seed_from_u64(seed), 12);
        let k = core(&c);
        prop_assert!(k.validate().is_valid());
        prop_assert!(k.is_groupoid());
        prop_assert_eq!(k.num_objects(), c.num_objects());
    }

    #[test]
    fn equivalence_test_agrees_with_search(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, c) = random_category(&mut rng, 8);
        let (_, d) = random_category(&mut rng, 8);
        if let Ok(Some(f)) = random_functor(&mut rng, &c, &d, BUDGET) {
            if let Ok(by_search) = is_equivalence_by_search(&f, BUDGET) {
                prop_assert_eq!(f.is_equivalence(), by_search);
            }
        }
    }
}

#[test]
fn equivalences_between_corpus_categories() {
    let cats = model_categories();
    let mut equivalences = 0;
    for (cn, c) in &cats {
        for (dn, d) in &cats {
            for f in enumerate_functors(c, d, BUDGET).unwrap() {
                let searched = is_equivalence_by_search(&f, BUDGET).unwrap();
                assert_eq!(f.is_equivalence(), searched, "{cn} -> {dn}: {:?}", f.describe());
                equivalences += searched as usize;
            }
        }
    }
    assert!(equivalences >= cats.len(), "identities alone give {} equivalences", cats.len());
}

#[test]
fn constructions_stay_valid() {
    let cats = small_categories();
    for (an, a) in &cats {
        for (bn, b) in cats.iter().take(6) {
            let p = product(a, b);
            let s = coproduct(a, b);
            assert!(p.category.validate().is_valid(), "{an} x {bn}");
            assert!(s.category.validate().is_valid(), "{an} + {bn}");
            assert_eq!(p.category.num_morphisms(), a.num_morphisms() * b.num_morphisms());
            assert_eq!(s.category.num_morphisms(), a.num_morphisms() + b.num_morphisms());
        }
        assert!(opposite(a).validate().is_valid());
    }
}
