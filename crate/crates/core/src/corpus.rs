//! Seeded generators for the small categories, functors, diagrams, group
//! actions and real simplicial sets that the property checks run on.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::fincat::constructions::{
    codiscrete, coproduct, discrete, empty, ordinal, parallel_pair, product, terminal, walking_arrow, walking_iso,
};
use crate::fincat::{all_permutations, CatFunctor, FiniteCategory, FiniteGroup, FunctorSearch};
use crate::nabla::Nabla;
use crate::semidirect::GroupAction;
use crate::setval::{coproduct_diagrams, pushout_diagrams, DiagramMap, SetDiagram};

/// The one-object category `{1, e}` with `e∘e = e`.
pub fn idempotent() -> FiniteCategory {
    FiniteCategory::new(vec!["*".into()], vec![("1".into(), 0, 0), ("e".into(), 0, 0)], vec![0], |g, f| {
        Some(if g == 0 {
            f
        } else if f == 0 {
            g
        } else {
            1
        })
    })
    .expect("idempotent monoid")
}

/// The poset on `0..k` generated by `relations` (pairs `i < j`).
pub fn poset(k: usize, relations: &[(usize, usize)]) -> FiniteCategory {
    let mut le = vec![vec![false; k]; k];
    for i in 0..k {
        le[i][i] = true;
    }
    for &(i, j) in relations {
        le[i][j] = true;
    }
    for m in 0..k {
        for i in 0..k {
            for j in 0..k {
                if le[i][m] && le[m][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let mut idx = vec![vec![usize::MAX; k]; k];
    let mut mors = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if le[i][j] {
                idx[i][j] = mors.len();
                mors.push((if i == j { format!("id_{i}") } else { format!("{i}<{j}") }, i, j));
            }
        }
    }
    let ends: Vec<(usize, usize)> = mors.iter().map(|m| (m.1, m.2)).collect();
    FiniteCategory::new((0..k).map(|i| i.to_string()).collect(), mors, (0..k).map(|i| idx[i][i]).collect(), |g, f| {
        Some(idx[ends[f].0][ends[g].1])
    })
    .expect("poset")
}

/// Named categories with at most three objects.
pub fn small_categories() -> Vec<(String, Arc<FiniteCategory>)> {
    let mut out: Vec<(String, FiniteCategory)> = vec![
        ("empty".into(), empty()),
        ("pt".into(), terminal()),
        ("pt+pt".into(), discrete(&["a", "b"])),
        ("[1]".into(), walking_arrow()),
        ("E".into(), walking_iso()),
        ("parallel".into(), parallel_pair()),
        ("[2]".into(), ordinal(2)),
        ("C2".into(), FiniteGroup::cyclic(2).as_category()),
        ("idempotent".into(), idempotent()),
        ("span".into(), poset(3, &[(0, 1), (0, 2)])),
        ("K3".into(), codiscrete(&["a", "b", "c"])),
    ];
    out.push(("[1]+pt".into(), (*coproduct(&Arc::new(walking_arrow()), &Arc::new(terminal())).category).clone()));
    out.into_iter().map(|(n, c)| (n, Arc::new(c))).collect()
}

/// [`small_categories`] together with some four-object categories.
pub fn model_categories() -> Vec<(String, Arc<FiniteCategory>)> {
    let mut out = small_categories();
    let e = Arc::new(walking_iso());
    let arrow = Arc::new(walking_arrow());
    out.push(("[3]".into(), Arc::new(ordinal(3))));
    out.push(("E+E".into(), coproduct(&e, &e).category));
    out.push(("[1]x[1]".into(), product(&arrow, &arrow).category));
    out.push(("K2+[1]".into(), coproduct(&Arc::new(codiscrete(&["a", "b"])), &arrow).category));
    out
}

fn pieces() -> Vec<(&'static str, FiniteCategory)> {
    vec![
        ("pt", terminal()),
        ("[1]", walking_arrow()),
        ("E", walking_iso()),
        ("parallel", parallel_pair()),
        ("[2]", ordinal(2)),
        ("C2", FiniteGroup::cyclic(2).as_category()),
        ("C3", FiniteGroup::cyclic(3).as_category()),
        ("idempotent", idempotent()),
        ("K2", codiscrete(&["a", "b"])),
    ]
}

/// A random category with at most `max_morphisms` morphisms: a random poset,
/// a sum of standard pieces, or a product of two pieces.
pub fn random_category<R: Rng + ?Sized>(rng: &mut R, max_morphisms: usize) -> (String, Arc<FiniteCategory>) {
    loop {
        let (name, c) = match rng.gen_range(0..3) {
            0 => {
                let k = rng.gen_range(1..=4);
                let rels: Vec<(usize, usize)> =
                    (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|_| rng.gen_bool(0.4)).collect();
                (format!("poset{k}{rels:?}"), poset(k, &rels))
            }
            1 => {
                let ps = pieces();
                let count = rng.gen_range(1..=3);
                let mut name = Vec::new();
                let mut acc: Option<Arc<FiniteCategory>> = None;
                for _ in 0..count {
                    let (n, c) = ps.choose(rng).unwrap().clone();
                    name.push(n);
                    let c = Arc::new(c);
                    acc = Some(match acc {
                        None => c,
                        Some(a) => coproduct(&a, &c).category,
                    });
                }
                (name.join("+"), (*acc.unwrap()).clone())
            }
            _ => {
                let ps = pieces();
                let (n1, a) = ps.choose(rng).unwrap().clone();
                let (n2, b) = ps.choose(rng).unwrap().clone();
                (format!("{n1}x{n2}"), (*product(&Arc::new(a), &Arc::new(b)).category).clone())
            }
        };
        if c.num_morphisms() <= max_morphisms {
            return (name, Arc::new(c));
        }
    }
}

/// A random functor `c → d`: a random object assignment is tried first and
/// relaxed until some functor exists.
pub fn random_functor<R: Rng + ?Sized>(
    rng: &mut R,
    c: &Arc<FiniteCategory>,
    d: &Arc<FiniteCategory>,
    budget: usize,
) -> Result<Option<CatFunctor>> {
    if d.num_objects() == 0 {
        return Ok((c.num_objects() == 0).then(|| CatFunctor::new(c.clone(), d.clone(), vec![], vec![]).unwrap()));
    }
    let mut fixed: Vec<Option<usize>> = (0..c.num_objects()).map(|_| Some(rng.gen_range(0..d.num_objects()))).collect();
    loop {
        let mut search = FunctorSearch::new(c, d).budget(budget).limit(16);
        search.fixed_objects = fixed.clone();
        let found = search.run()?;
        if let Some(f) = found.choose(rng) {
            return Ok(Some(f.clone()));
        }
        match fixed.iter().position(Option::is_some) {
            Some(k) => fixed[k] = None,
            None => return Ok(None),
        }
    }
}

/// The map `hom(c, −) → x` picking out `elem ∈ x(c)`.
pub fn yoneda_map(x: &Arc<SetDiagram>, c: usize, elem: usize) -> Result<DiagramMap> {
    let shape = x.shape().clone();
    let rep = Arc::new(SetDiagram::representable(shape.clone(), c));
    let components = (0..shape.num_objects()).map(|d| shape.hom(c, d).iter().map(|&u| x.apply(u, elem)).collect()).collect();
    DiagramMap::new(rep, x.clone(), components)
}

/// `x` with the elements `a, b ∈ x(c)` identified, and everything that forces.
pub fn identify(x: &Arc<SetDiagram>, c: usize, a: usize, b: usize) -> Result<Arc<SetDiagram>> {
    let shape = x.shape().clone();
    let rep = SetDiagram::representable(shape.clone(), c);
    let (sum, _) = coproduct_diagrams(&shape, &[("1".into(), &rep), ("2".into(), &rep)])?;
    let sum = Arc::new(sum);
    let (ya, yb) = (yoneda_map(x, c, a)?, yoneda_map(x, c, b)?);
    let pair = (0..shape.num_objects()).map(|d| [ya.component(d), yb.component(d)].concat()).collect();
    let fold =
        (0..shape.num_objects()).map(|d| [(0..rep.size(d)).collect::<Vec<_>>(), (0..rep.size(d)).collect()].concat()).collect();
    let f = DiagramMap::new(sum.clone(), x.clone(), pair)?;
    let g = DiagramMap::new(sum, Arc::new(rep), fold)?;
    Ok(pushout_diagrams(&f, &g)?.object)
}

/// A random diagram with at most `max_total` elements, built from
/// representables, points and two-element constants, then quotiented.
pub fn random_diagram<R: Rng + ?Sized>(rng: &mut R, shape: &Arc<FiniteCategory>, max_total: usize) -> Result<Arc<SetDiagram>> {
    if shape.num_objects() == 0 {
        return Ok(Arc::new(SetDiagram::empty(shape.clone())));
    }
    for _ in 0..64 {
        let count = rng.gen_range(0..=3);
        let parts: Vec<SetDiagram> = (0..count)
            .map(|_| match rng.gen_range(0..4) {
                0 | 1 => SetDiagram::representable(shape.clone(), rng.gen_range(0..shape.num_objects())),
                2 => SetDiagram::terminal(shape.clone()),
                _ => SetDiagram::constant(shape.clone(), &["p".to_string(), "q".to_string()]),
            })
            .collect();
        let tagged: Vec<(String, &SetDiagram)> = parts.iter().enumerate().map(|(k, d)| (k.to_string(), d)).collect();
        let mut x = Arc::new(coproduct_diagrams(shape, &tagged)?.0);
        if x.total_size() > max_total {
            continue;
        }
        if rng.gen_bool(0.5) {
            let c = rng.gen_range(0..shape.num_objects());
            if x.size(c) >= 2 {
                let (a, b) = (rng.gen_range(0..x.size(c)), rng.gen_range(0..x.size(c)));
                x = identify(&x, c, a, b)?;
            }
        }
        return Ok(x);
    }
    Ok(Arc::new(SetDiagram::terminal(shape.clone())))
}

/// `|S|` copies of `b` permuted by a `G`-set `S`, where `g` sends copy `s` to `act(g, s)`.
pub fn action_on_copies(
    group: &FiniteGroup,
    b: &Arc<FiniteCategory>,
    points: usize,
    act: impl Fn(usize, usize) -> usize,
) -> Result<GroupAction> {
    let names: Vec<String> = (0..points).map(|s| s.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let s = Arc::new(discrete(&refs));
    let c = product(b, &s).category;
    let n = points;
    GroupAction::from_maps(group.clone(), c.clone(), |g| {
        let objs = (0..c.num_objects()).map(|o| o / n * n + act(g, o % n)).collect();
        let mors = (0..c.num_morphisms()).map(|m| m / n * n + act(g, m % n)).collect();
        (objs, mors)
    })
}

/// `G` acting on its own one-object category by conjugation.
pub fn conjugation_action(group: &FiniteGroup) -> Result<GroupAction> {
    let c = group.as_category_arc();
    GroupAction::from_maps(group.clone(), c, |g| {
        let mors = (0..group.order()).map(|h| group.mul(group.mul(g, h), group.inverse(g))).collect();
        (vec![0], mors)
    })
}

/// `G` acting through a homomorphism `G → C₂` by swapping the walking isomorphism.
fn swap_iso_action(group: &FiniteGroup, sign: impl Fn(usize) -> bool) -> Result<GroupAction> {
    let e = Arc::new(walking_iso());
    let iso = e.morphism_index("iso").unwrap();
    let inv = e.morphism_index("inv").unwrap();
    let (ia, ib) = (e.identity(0), e.identity(1));
    GroupAction::from_maps(group.clone(), e.clone(), |g| {
        if sign(g) {
            let mut mors = vec![0; 4];
            mors[ia] = ib;
            mors[ib] = ia;
            mors[iso] = inv;
            mors[inv] = iso;
            (vec![1, 0], mors)
        } else {
            (vec![0, 1], (0..4).collect())
        }
    })
}

fn sign_of(p: &[usize]) -> bool {
    let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    inversions % 2 == 1
}

/// Actions of `C₂`, `C₃`, `C₂×C₂` and `S₃` on categories with at most twelve
/// morphisms: trivial, regular on copies, conjugation, through a sign, and on
/// cosets.
pub fn action_corpus() -> Result<Vec<(String, GroupAction)>> {
    let c2 = FiniteGroup::cyclic(2);
    let c3 = FiniteGroup::cyclic(3);
    let v4 = c2.product(&c2);
    let s3 = FiniteGroup::symmetric(3);
    let pt = Arc::new(terminal());
    let arrow = Arc::new(walking_arrow());
    let mut out = Vec::new();
    for (gname, g) in [("C2", &c2), ("C3", &c3), ("C2xC2", &v4), ("S3", &s3)] {
        let regular_base = if g.order() <= 4 { &arrow } else { &pt };
        out.push((format!("{gname} trivial on [1]"), GroupAction::trivial(g.clone(), arrow.clone())));
        out.push((format!("{gname} trivial on parallel"), GroupAction::trivial(g.clone(), Arc::new(parallel_pair()))));
        out.push((format!("{gname} regular on copies"), action_on_copies(g, regular_base, g.order(), |a, s| g.mul(a, s))?));
        out.push((format!("{gname} by conjugation"), conjugation_action(g)?));
    }
    out.push(("C2 swapping E".into(), swap_iso_action(&c2, |g| g == 1)?));
    out.push(("C2xC2 swapping E through a projection".into(), swap_iso_action(&v4, |g| g / 2 == 1)?));
    let perms = all_permutations(3);
    out.push(("S3 swapping E through the sign".into(), swap_iso_action(&s3, |g| sign_of(&perms[g]))?));
    out.push(("S3 permuting three arrows".into(), action_on_copies(&s3, &arrow, 3, |g, s| perms[g][s])?));
    out.push(("C3 rotating K3".into(), {
        let k3 = Arc::new(codiscrete(&["a", "b", "c"]));
        GroupAction::from_maps(c3.clone(), k3.clone(), |g| {
            let objs: Vec<usize> = (0..3).map(|a| (a + g) % 3).collect();
            let mors = (0..9)
                .map(|m| {
                    let (s, t) = (k3.src(m), k3.tgt(m));
                    k3.hom(objs[s], objs[t])[0]
                })
                .collect();
            (objs, mors)
        })?
    }));
    out.push(("C2xC2 on two copies of [2]".into(), action_on_copies(&v4, &Arc::new(ordinal(2)), 2, |g, s| s ^ (g % 2))?));
    Ok(out)
}

/// A random truncated real simplicial set with at most `max_simplices`
/// simplices: sums of representables at `[0]` and constant sets with an
/// involution, with random identifications.
pub fn random_real_simplicial_set<R: Rng + ?Sized>(rng: &mut R, nabla: &Nabla, max_simplices: usize) -> Result<Arc<SetDiagram>> {
    let shape = nabla.opposite.clone();
    let sigma_of = |m: usize| nabla.semidirect.pair(m).1 == 1;
    for _ in 0..64 {
        let count = rng.gen_range(1..=3);
        let mut parts = Vec::new();
        for _ in 0..count {
            if rng.gen_bool(0.4) {
                parts.push(nabla.representable(0));
            } else {
                // a set with an involution, placed constantly in every degree
                let k = rng.gen_range(1..=3);
                let mut inv: Vec<usize> = (0..k).collect();
                if k >= 2 && rng.gen_bool(0.6) {
                    inv.swap(0, 1);
                }
                let names: Vec<String> = (0..k).map(|e| format!("v{e}")).collect();
                let sets = vec![names; shape.num_objects()];
                let maps = (0..shape.num_morphisms()).map(|m| if sigma_of(m) { inv.clone() } else { (0..k).collect() }).collect();
                parts.push(SetDiagram::new(shape.clone(), sets, maps)?);
            }
        }
        let tagged: Vec<(String, &SetDiagram)> = parts.iter().enumerate().map(|(k, d)| (k.to_string(), d)).collect();
        let mut x = Arc::new(coproduct_diagrams(&shape, &tagged)?.0);
        if rng.gen_bool(0.5) && x.size(0) >= 2 {
            let (a, b) = (rng.gen_range(0..x.size(0)), rng.gen_range(0..x.size(0)));
            x = identify(&x, 0, a, b)?;
        }
        if x.total_size() <= max_simplices {
            return Ok(x);
        }
    }
    Ok(Arc::new(SetDiagram::terminal(shape)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nabla::build_nabla;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn posets_are_transitive() {
        let p = poset(3, &[(0, 1), (1, 2)]);
        assert_eq!(p.num_morphisms(), 6);
        assert!(p.is_valid());
    }

    #[test]
    fn generated_objects_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let (_, c) = random_category(&mut rng, 12);
            assert!(c.num_morphisms() <= 12 && c.is_valid());
            let x = random_diagram(&mut rng, &c, 20).unwrap();
            assert!(x.total_size() <= 20 && x.violations().is_empty());
            let (_, d) = random_category(&mut rng, 12);
            if let Some(f) = random_functor(&mut rng, &c, &d, 100_000).unwrap() {
                assert!(f.violations().is_empty());
            }
        }
    }

    #[test]
    fn identify_merges_generated_elements() {
        let c = Arc::new(walking_arrow());
        let (two, _) = coproduct_diagrams(
            &c,
            &[("1".into(), &SetDiagram::representable(c.clone(), 0)), ("2".into(), &SetDiagram::representable(c.clone(), 0))],
        )
        .unwrap();
        let q = identify(&Arc::new(two), 0, 0, 1).unwrap();
        assert_eq!((q.size(0), q.size(1)), (1, 1));
    }

    #[test]
    fn action_corpus_covers_every_group() {
        let corpus = action_corpus().unwrap();
        for order in [2, 3, 4, 6] {
            assert!(corpus.iter().any(|(_, a)| a.group().order() == order));
        }
        assert!(corpus.iter().all(|(_, a)| a.target().num_morphisms() <= 12));
    }

    #[test]
    fn random_real_sets_are_valid() {
        let nb = build_nabla(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let x = random_real_simplicial_set(&mut rng, &nb, 30).unwrap();
            assert!(x.violations().is_empty());
            let (a, s) = nb.to_involutive(&x).unwrap();
            assert_eq!(nb.from_involutive(&a, &s).unwrap(), *x);
        }
    }
}
