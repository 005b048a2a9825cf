use std::sync::Arc;

use catlift::chaincx::{
    check_change_of_rings_counts, check_preservation, dual_number_modules, hom_basis, homotopy_truncate, module_map_corpus,
    naive_truncate, random_module_complex, split_modules, AlgebraMap, Field, FiniteAlgebra, FiniteComplex, Matrix, Module,
};
use catlift::{F2, F3};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn degrees<F: Field>(c: &FiniteComplex<F>) -> Vec<i32> {
    c.window().map_or(vec![], |(lo, hi)| (lo - 1..=hi + 1).collect())
}

fn squares_to_zero<F: Field>(c: &FiniteComplex<F>) -> bool {
    degrees(c).into_iter().all(|k| (&c.d(k) * &c.d(k - 1)).is_zero())
}

fn euler<F: Field>(c: &FiniteComplex<F>, dims: impl Fn(i32) -> usize) -> i64 {
    degrees(c).into_iter().map(|k| if k % 2 == 0 { dims(k) as i64 } else { -(dims(k) as i64) }).sum()
}

fn random_complex(seed: u64) -> FiniteComplex<F3> {
    let modules = dual_number_modules::<F3>(3);
    random_module_complex(&modules, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap().complex().clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn differentials_square_to_zero(seed in any::<u64>()) {
        let c = random_complex(seed);
        for t in [c.clone(), naive_truncate(&c), homotopy_truncate(&c)] {
            prop_assert!(squares_to_zero(&t));
            prop_assert_eq!(euler(&t, |k| t.dim(k)), euler(&t, |k| t.homology_dim(k)));
        }
    }

    /// The homotopy truncation keeps cohomology in non-negative degrees; the
    /// naive one replaces degree 0 by the cycles.
    #[test]
    fn truncations_have_the_expected_cohomology(seed in any::<u64>()) {
        let c = random_complex(seed);
        let (naive, homotopy) = (naive_truncate(&c), homotopy_truncate(&c));
        for k in -2..=3 {
            let kept = if k >= 0 { c.homology_dim(k) } else { 0 };
            prop_assert_eq!(homotopy.homology_dim(k), kept, "degree {}", k);
            if k > 0 {
                prop_assert_eq!(naive.homology_dim(k), kept);
            }
        }
        prop_assert_eq!(naive.homology_dim(0), c.cycles(0).len());
    }
}

/// Hom spaces counted by running over every matrix over F₂.
#[test]
fn hom_bases_match_brute_force() {
    let modules = dual_number_modules::<F2>(2);
    let elems = F2::elements().unwrap();
    for m in &modules {
        for n in &modules {
            let cells = m.dim() * n.dim();
            let brute = (0..1usize << cells)
                .filter(|bits| {
                    let data = (0..cells).map(|k| elems[(bits >> k) & 1]).collect();
                    m.is_linear(n, &Matrix::from_vec(n.dim(), m.dim(), data).unwrap())
                })
                .count();
            assert_eq!(brute, 1 << hom_basis(m, n).len(), "{} -> {}", m.dim(), n.dim());
        }
    }
}

fn change_of_rings_maps() -> Vec<(AlgebraMap<F3>, Vec<Module<F3>>, Vec<Module<F3>>)> {
    let dual = Arc::new(FiniteAlgebra::<F3>::truncated_polynomial(2));
    let field = Arc::new(FiniteAlgebra::<F3>::field());
    let split = Arc::new(FiniteAlgebra::<F3>::split(2));
    let unit = AlgebraMap::from_field(dual.clone());
    let augmentation =
        AlgebraMap::new(dual.clone(), field.clone(), Matrix::from_rows(&[vec![F3::new(1), F3::new(0)]]).unwrap()).unwrap();
    let diagonal = AlgebraMap::from_field(split);
    vec![
        (unit, split_modules(1, 3), dual_number_modules(3)),
        (augmentation, dual_number_modules(3), split_modules(1, 3)),
        (diagonal, split_modules(1, 3), split_modules(2, 3)),
    ]
}

#[test]
fn change_of_rings_adjunctions_count_correctly() {
    for (f, rs, ss) in change_of_rings_maps() {
        let r = check_change_of_rings_counts(&f, &rs, &ss).unwrap();
        assert!(r.passed, "{:?}", r.entries.iter().find(|e| !e.agree));
        assert_eq!(r.entries.len(), 2 * rs.len() * ss.len());
    }
}

/// Along the free extension `F → F[x]/(x²)` both composites keep their classes.
#[test]
fn free_extension_preserves_classes() {
    let dual = Arc::new(FiniteAlgebra::<F3>::truncated_polynomial(2));
    let f = AlgebraMap::from_field(dual);
    let corpus = module_map_corpus(&split_modules::<F3>(1, 2), 12, &mut ChaCha8Rng::seed_from_u64(7)).unwrap();
    let r = check_preservation(&f, &corpus).unwrap();
    assert!(r.fr_preserves && r.fl_preserves, "{:?}", r.failures);
    assert!(r.epis > 0 && r.monos > 0 && r.quasi_isos > 0);
}
