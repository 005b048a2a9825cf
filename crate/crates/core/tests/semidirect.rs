use catlift::corpus::{action_corpus, random_diagram};
use catlift::semidirect::{comma_partition, inclusion_iota, semidirect, verify_lan_formula};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn semidirect_products_and_inclusions_are_valid() {
    for (name, action) in action_corpus().unwrap() {
        let sd = semidirect(&action);
        assert!(sd.category.validate().is_valid(), "{name}");
        let n = action.group().order();
        assert_eq!(sd.category.num_morphisms(), action.target().num_morphisms() * n, "{name}");
        let iota = inclusion_iota(&sd);
        assert!(iota.violations().is_empty(), "{name}");
        let c = action.target();
        for (g, f, h) in c.composable_pairs() {
            assert_eq!(sd.category.compose(iota.mor(g), iota.mor(f)), iota.mor(h), "{name}");
        }
    }
}

/// `ι↓x` splits into one component per group element, each with a terminal object.
#[test]
fn comma_categories_split_by_group_element() {
    for (name, action) in action_corpus().unwrap() {
        let sd = semidirect(&action);
        for x in 0..action.target().num_objects() {
            let p = comma_partition(&sd, x);
            assert!(p.holds(action.group().order()), "{name} at {}: {p:?}", p.object);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lan_formula_on_random_diagrams(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (name, action) in action_corpus().unwrap() {
            let f = random_diagram(&mut rng, action.target(), 20).unwrap();
            let r = verify_lan_formula(&action, &f).unwrap();
            prop_assert!(r.passed, "{}: {:?}", name, r.failure);
            prop_assert_eq!(&r.restricted_sizes, &r.coproduct_sizes);
        }
    }
}
