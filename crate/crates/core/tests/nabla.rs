use std::sync::Arc;

use catlift::corpus::random_real_simplicial_set;
use catlift::nabla::{build_nabla, monotone_maps, Nabla};
use catlift::setval::{enumerate_maps, pushout_diagrams, DiagramMap, SetDiagram};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DIM: usize = 2;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A random subset closed under every structure map, with its inclusion.
fn random_sub<R: Rng>(rng: &mut R, x: &SetDiagram) -> DiagramMap {
    let c = x.shape();
    let mut keep: Vec<Vec<bool>> = (0..c.num_objects()).map(|a| (0..x.size(a)).map(|_| rng.gen_bool(0.3)).collect()).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for m in 0..c.num_morphisms() {
            for e in 0..x.size(c.src(m)) {
                let img = x.apply(m, e);
                if keep[c.src(m)][e] && !keep[c.tgt(m)][img] {
                    keep[c.tgt(m)][img] = true;
                    changed = true;
                }
            }
        }
    }
    x.subdiagram(&keep).unwrap().1
}

/// Levelwise injective, and every simplex outside the image moved by `σ`.
fn normal_by_definition(nb: &Nabla, f: &DiagramMap) -> bool {
    let y = f.target();
    f.is_injective()
        && (0..=nb.dim()).all(|n| {
            let s = nb.sigma_action(y, n);
            (0..y.size(n)).all(|v| f.component(n).contains(&v) || s[v] != v)
        })
}

#[test]
fn presentations_agree_up_to_dimension_four() {
    for dim in 0..=4 {
        let nb = build_nabla(dim).unwrap();
        assert!(nb.semidirect.category.validate().is_valid());
        assert!(nb.pairs.validate().is_valid());
        let (sd, pairs) = (&nb.semidirect.category, &nb.pairs);
        assert!(nb.iso.violations().is_empty());
        assert!(nb.iso.is_injective_on_morphisms() && nb.iso.is_injective_on_objects());
        assert_eq!(sd.num_morphisms(), pairs.num_morphisms(), "dim {dim}");
        assert_eq!(sd.num_objects(), pairs.num_objects());
        for m in 0..=dim {
            for n in 0..=dim {
                assert_eq!(monotone_maps(m, n).len(), binomial(m + n + 1, m + 1));
                assert_eq!(nb.hom_count(m, n), 2 * binomial(m + n + 1, m + 1), "hom([{m}], [{n}])");
            }
        }
    }
}

#[test]
fn generators_are_normal_monos() {
    let nb = build_nabla(DIM).unwrap();
    for g in nb.generating_cofibrations().unwrap() {
        assert!(normal_by_definition(&nb, &g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sigma_is_an_involution(seed in any::<u64>()) {
        let nb = build_nabla(DIM).unwrap();
        let x = random_real_simplicial_set(&mut ChaCha8Rng::seed_from_u64(seed), &nb, 30).unwrap();
        for n in 0..=DIM {
            let s = nb.sigma_action(&x, n);
            prop_assert!((0..s.len()).all(|v| s[s[v]] == v));
        }
        prop_assert!(nb.sigma_square_failures(&x).is_empty());
    }

    #[test]
    fn involutive_roundtrip(seed in any::<u64>()) {
        let nb = build_nabla(DIM).unwrap();
        let x = random_real_simplicial_set(&mut ChaCha8Rng::seed_from_u64(seed), &nb, 30).unwrap();
        let (a, sigma) = nb.to_involutive(&x).unwrap();
        prop_assert_eq!(&nb.from_involutive(&a, &sigma).unwrap(), &*x);
    }

    /// Normal monos compose and are stable under pushout.
    #[test]
    fn normal_monos_compose_and_push_out(seed in any::<u64>()) {
        let nb = build_nabla(DIM).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_real_simplicial_set(&mut rng, &nb, 30).unwrap();
        let j = random_sub(&mut rng, &x);
        let i = random_sub(&mut rng, j.source());
        for f in [&i, &j] {
            prop_assert_eq!(nb.is_normal_mono(f).unwrap(), normal_by_definition(&nb, f));
        }
        let ji = i.then(&j).unwrap();
        prop_assert_eq!(nb.is_normal_mono(&ji).unwrap(), normal_by_definition(&nb, &ji));
        if nb.is_normal_mono(&i).unwrap() && nb.is_normal_mono(&j).unwrap() {
            prop_assert!(nb.is_normal_mono(&ji).unwrap());
        }
        if nb.is_normal_mono(&j).unwrap() {
            let a = j.source();
            let z = random_real_simplicial_set(&mut rng, &nb, 12).unwrap();
            let terminal = Arc::new(SetDiagram::terminal(nb.opposite.clone()));
            let mut legs: Vec<DiagramMap> = enumerate_maps(a, &z, 20_000).map(|v| v.into_iter().take(4).collect()).unwrap_or_default();
            legs.extend(enumerate_maps(a, &terminal, 20_000).unwrap());
            for g in &legs {
                let po = pushout_diagrams(&j, g).unwrap();
                prop_assert!(po.object.violations().is_empty());
                prop_assert!(nb.is_normal_mono(&po.right).unwrap());
            }
        }
    }
}
