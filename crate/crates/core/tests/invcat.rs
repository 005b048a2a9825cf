use catlift::corpus::{random_category, small_categories};
use catlift::fincat::enumerate_functors;
use catlift::invcat::{check_exercise, forget_inv, involutive_corpus, l_inv, l_inv_map, r_inv, InvolutiveCategory};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn is_involution(x: &InvolutiveCategory) -> bool {
    let c = x.base();
    (0..c.num_objects()).all(|a| x.tau_obj(x.tau_obj(a)) == a) && (0..c.num_morphisms()).all(|m| x.tau_mor(x.tau_mor(m)) == m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn free_and_cofree_involutions_square_to_the_identity(seed in any::<u64>()) {
        let (_, c) = random_category(&mut ChaCha8Rng::seed_from_u64(seed), 12);
        for x in [l_inv(&c), r_inv(&c)] {
            prop_assert!(x.base().validate().is_valid());
            prop_assert!(is_involution(&x));
        }
    }
}

#[test]
fn corpus_involutions_square_to_the_identity() {
    for (name, x) in involutive_corpus() {
        assert!(is_involution(&x), "{name}");
    }
}

/// `forget ∘ L` keeps functors injective on objects and keeps equivalences.
#[test]
fn free_involution_preserves_cofibrations_and_equivalences() {
    let cats = small_categories();
    let mut checked = 0;
    for (an, a) in &cats {
        for (bn, b) in &cats {
            for u in enumerate_functors(a, b, 50_000).unwrap() {
                let lu = l_inv_map(&u).unwrap();
                assert_eq!(forget_inv(&lu.source), *lu.functor.dom());
                if u.is_injective_on_objects() {
                    assert!(lu.functor.is_injective_on_objects(), "{an} -> {bn}");
                }
                if u.is_equivalence() {
                    assert!(lu.functor.is_equivalence(), "{an} -> {bn}");
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn cofibration_criterion_matches_lifting() {
    let r = check_exercise(&involutive_corpus(), 100_000).unwrap();
    assert!(r.disagreements.is_empty(), "{:?}", r.disagreements);
    assert!(r.cofibrations > 0 && r.cofibrations < r.maps_checked);
}
