use std::collections::BTreeSet;
use std::sync::Arc;

use catlift::corpus::{random_category, random_diagram, random_functor};
use catlift::fincat::FiniteCategory;
use catlift::setval::{colimit, count_maps, enumerate_maps, lan, lan_map, limit, ran, ran_map, DiagramMap, SetDiagram};
use catlift::{Error, Result};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BUDGET: usize = 50_000;

/// `None` when a search runs out of budget.
fn bounded<T>(r: Result<T>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(Error::Budget { .. }) => None,
        Err(e) => panic!("{e}"),
    }
}

/// Connected components of the category of elements, by flood fill.
fn components_of_elements(x: &SetDiagram) -> usize {
    let c = x.shape();
    let nodes: Vec<(usize, usize)> = (0..c.num_objects()).flat_map(|a| (0..x.size(a)).map(move |e| (a, e))).collect();
    let mut seen = BTreeSet::new();
    let mut count = 0;
    for &start in &nodes {
        if !seen.insert(start) {
            continue;
        }
        count += 1;
        let mut stack = vec![start];
        while let Some((a, e)) = stack.pop() {
            for m in 0..c.num_morphisms() {
                if c.src(m) == a {
                    let next = (c.tgt(m), x.apply(m, e));
                    if seen.insert(next) {
                        stack.push(next);
                    }
                }
                if c.tgt(m) == a {
                    for e2 in 0..x.size(c.src(m)) {
                        let prev = (c.src(m), e2);
                        if x.apply(m, e2) == e && seen.insert(prev) {
                            stack.push(prev);
                        }
                    }
                }
            }
        }
    }
    count
}

/// Every tuple in the product of the sets, kept when compatible.
fn compatible_families(x: &SetDiagram) -> BTreeSet<Vec<usize>> {
    let c = x.shape();
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for a in 0..c.num_objects() {
        tuples = tuples.into_iter().flat_map(|t| (0..x.size(a)).map(move |e| [t.clone(), vec![e]].concat())).collect();
    }
    tuples.into_iter().filter(|t| (0..c.num_morphisms()).all(|m| x.apply(m, t[c.src(m)]) == t[c.tgt(m)])).collect()
}

fn setup(seed: u64, morphisms: usize, elements: usize) -> (Arc<FiniteCategory>, Arc<FiniteCategory>, ChaCha8Rng, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (_, c) = random_category(&mut rng, morphisms);
    let (_, d) = random_category(&mut rng, morphisms);
    (c, d, rng, elements)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn colimit_matches_flood_fill(seed in any::<u64>()) {
        let (c, _, mut rng, n) = setup(seed, 12, 20);
        let x = random_diagram(&mut rng, &c, n).unwrap();
        let col = colimit(&x);
        prop_assert_eq!(col.elements.len(), components_of_elements(&x));
        for m in 0..c.num_morphisms() {
            for e in 0..x.size(c.src(m)) {
                prop_assert_eq!(col.injections[c.src(m)][e], col.injections[c.tgt(m)][x.apply(m, e)]);
            }
        }
    }

    #[test]
    fn limit_matches_product_filter(seed in any::<u64>()) {
        let (c, _, mut rng, n) = setup(seed, 12, 12);
        let x = random_diagram(&mut rng, &c, n).unwrap();
        let lim = limit(&x).unwrap();
        let got: BTreeSet<Vec<usize>> = lim.families.iter().cloned().collect();
        prop_assert_eq!(got.len(), lim.families.len());
        prop_assert_eq!(got, compatible_families(&x));
    }

    /// `|hom(ι_!X, Y)| = |hom(X, ι*Y)|` and `|hom(ι*Y, X)| = |hom(Y, ι_*X)|`.
    #[test]
    fn kan_extensions_represent_restriction(seed in any::<u64>()) {
        let (c, d, mut rng, n) = setup(seed, 8, 10);
        let Some(Some(iota)) = bounded(random_functor(&mut rng, &c, &d, BUDGET)) else { return Ok(()) };
        let x = random_diagram(&mut rng, &c, n).unwrap();
        let y = random_diagram(&mut rng, &d, n).unwrap();
        let ry = Arc::new(y.restrict(&iota).unwrap());
        let l = lan(&iota, &x).unwrap();
        prop_assert!(l.diagram().violations().is_empty());
        if let (Some(a), Some(b)) = (bounded(count_maps(l.diagram(), &y, BUDGET)), bounded(count_maps(&x, &ry, BUDGET))) {
            prop_assert_eq!(a, b);
        }
        let Some(r) = bounded(ran(&iota, &x)) else { return Ok(()) };
        prop_assert!(r.diagram().violations().is_empty());
        if let (Some(a), Some(b)) = (bounded(count_maps(&ry, &x, BUDGET)), bounded(count_maps(&y, r.diagram(), BUDGET))) {
            prop_assert_eq!(a, b);
        }
    }

    /// `ι_!` and `ι_*` send composites to composites and identities to identities.
    #[test]
    fn kan_extensions_are_functorial(seed in any::<u64>()) {
        let (c, d, mut rng, n) = setup(seed, 8, 8);
        let Some(Some(iota)) = bounded(random_functor(&mut rng, &c, &d, BUDGET)) else { return Ok(()) };
        let xs: Vec<_> = (0..3).map(|_| random_diagram(&mut rng, &c, n).unwrap()).collect();
        let Some(f) = bounded(enumerate_maps(&xs[0], &xs[1], BUDGET)).and_then(|v| v.into_iter().next()) else { return Ok(()) };
        let Some(g) = bounded(enumerate_maps(&xs[1], &xs[2], BUDGET)).and_then(|v| v.into_iter().next()) else { return Ok(()) };
        let gf = f.then(&g).unwrap();
        let ls: Vec<_> = xs.iter().map(|x| lan(&iota, x).unwrap()).collect();
        let lf = lan_map(&ls[0], &ls[1], &f).unwrap();
        let lg = lan_map(&ls[1], &ls[2], &g).unwrap();
        prop_assert_eq!(lf.then(&lg).unwrap(), lan_map(&ls[0], &ls[2], &gf).unwrap());
        prop_assert!(lf.first_unnatural().is_none());
        let Some(rs) = xs.iter().map(|x| bounded(ran(&iota, x))).collect::<Option<Vec<_>>>() else { return Ok(()) };
        let rf = ran_map(&rs[0], &rs[1], &f).unwrap();
        let rg = ran_map(&rs[1], &rs[2], &g).unwrap();
        prop_assert_eq!(rf.then(&rg).unwrap(), ran_map(&rs[0], &rs[2], &gf).unwrap());
        let id = DiagramMap::identity(&xs[0]);
        prop_assert_eq!(lan_map(&ls[0], &ls[0], &id).unwrap(), DiagramMap::identity(ls[0].diagram()));
    }
}
