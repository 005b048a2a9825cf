use catlift::catmodel::{
    bounded_soa, default_acyclic_cofibrations, default_cofibrations, has_rlp, is_acyclic_fibration, is_isofibration,
    pushout_category, DEFAULT_PUSHOUT_BUDGET,
};
use catlift::corpus::{model_categories, random_category, random_functor, small_categories};
use catlift::fincat::enumerate_functors;
use catlift::nabla::{boundary_inclusion, simplex_to_point};
use catlift::setval::{enumerate_maps, DiagramMap};
use catlift::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BUDGET: usize = 50_000;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn isofibrations_are_the_rlp_maps(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, c) = random_category(&mut rng, 12);
        let (_, d) = random_category(&mut rng, 12);
        prop_assume!(c.num_objects() <= 4 && d.num_objects() <= 4);
        let Ok(Some(p)) = random_functor(&mut rng, &c, &d, BUDGET) else { return Ok(()) };
        match has_rlp(&default_acyclic_cofibrations().maps, &p, BUDGET) {
            Ok(rlp) => prop_assert_eq!(is_isofibration(&p), rlp),
            Err(Error::Budget { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

/// The default generating cofibrations detect exactly the acyclic fibrations.
#[test]
fn generating_cofibrations_detect_acyclic_fibrations() {
    let gens = default_cofibrations().maps;
    let cats = model_categories();
    let (mut checked, mut acyclic) = (0, 0);
    for (cn, c) in &cats {
        for (dn, d) in &cats {
            for p in enumerate_functors(c, d, BUDGET).unwrap() {
                match has_rlp(&gens, &p, BUDGET) {
                    Ok(rlp) => {
                        assert_eq!(rlp, is_acyclic_fibration(&p), "{cn} -> {dn}: {:?}", p.describe());
                        checked += 1;
                        acyclic += rlp as usize;
                    }
                    Err(Error::Budget { .. }) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
    assert!(checked > 1000 && acyclic >= cats.len(), "{checked} functors, {acyclic} acyclic fibrations");
}

/// Pushing an equivalence out along an injective-on-objects functor gives
/// an equivalence, whenever the pushout completes within budget.
#[test]
fn left_proper_on_a_sample() {
    let cats: Vec<_> = small_categories().into_iter().filter(|(_, c)| c.num_objects() <= 3).collect();
    let (mut squares, mut skipped) = (0, 0);
    'outer: for (_, a) in &cats {
        for (_, b) in &cats {
            for (_, c) in &cats {
                let is: Vec<_> =
                    enumerate_functors(a, b, BUDGET).unwrap().into_iter().filter(|i| i.is_injective_on_objects()).collect();
                let ws: Vec<_> = enumerate_functors(a, c, BUDGET).unwrap().into_iter().filter(|w| w.is_equivalence()).collect();
                for i in is.iter().take(3) {
                    for w in ws.iter().take(3) {
                        match pushout_category(i, w, DEFAULT_PUSHOUT_BUDGET) {
                            Ok(po) => {
                                assert!(po.category.validate().is_valid());
                                assert!(po.left.is_equivalence(), "pushout of {:?} along {:?}", w.describe(), i.describe());
                                squares += 1;
                            }
                            Err(Error::Budget { .. }) => skipped += 1,
                            Err(e) => panic!("{e}"),
                        }
                        if squares >= 400 {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    assert!(squares > 50, "only {squares} squares, {skipped} over budget");
}

/// Factorizations of maps between small truncated simplicial sets.
#[test]
fn small_object_argument_recomposes() {
    let dim = 1;
    let gens: Vec<DiagramMap> = (0..=dim).map(|n| boundary_inclusion(n, dim)).collect();
    let objects = [
        boundary_inclusion(0, dim).source().clone(),
        boundary_inclusion(1, dim).source().clone(),
        simplex_to_point(0, dim).source().clone(),
        simplex_to_point(1, dim).source().clone(),
        simplex_to_point(1, dim).target().clone(),
    ];
    let mut checked = 0;
    for x in &objects {
        for y in &objects {
            for f in enumerate_maps(x, y, BUDGET).unwrap() {
                let r = bounded_soa(&gens, &f, 3, BUDGET).unwrap();
                assert!(r.recomposes_to(&f));
                assert!(r.cell_record_is_valid(&gens, &f));
                checked += 1;
            }
        }
    }
    assert!(checked >= 10);
}
