//! Standard small categories and elementary constructions on them.

use std::collections::HashSet;
use std::sync::Arc;

use super::category::FiniteCategory;
use super::functor::CatFunctor;

/// The category with no objects.
pub fn empty() -> FiniteCategory {
    FiniteCategory::new(vec![], vec![], vec![], |_, _| None).unwrap()
}

/// One object `*`, one morphism `id_*`.
pub fn terminal() -> FiniteCategory {
    discrete(&["*"])
}

pub fn discrete(names: &[&str]) -> FiniteCategory {
    FiniteCategory::new(
        names.iter().map(|s| s.to_string()).collect(),
        names.iter().enumerate().map(|(i, s)| (format!("id_{s}"), i, i)).collect(),
        (0..names.len()).collect(),
        |g, f| (g == f).then_some(g),
    )
    .unwrap()
}

/// `[1]`: objects `a`, `b` and one arrow `f: a → b`.
pub fn walking_arrow() -> FiniteCategory {
    FiniteCategory::new(
        vec!["a".into(), "b".into()],
        vec![("id_a".into(), 0, 0), ("id_b".into(), 1, 1), ("f".into(), 0, 1)],
        vec![0, 1],
        |g, f| Some(if g < 2 { f } else { g }),
    )
    .unwrap()
}

/// The walking isomorphism `E`: objects `a`, `b`, arrows `iso: a → b`, `inv: b → a`.
pub fn walking_iso() -> FiniteCategory {
    codiscrete_named(&["a", "b"], |s, t| match (s, t) {
        ("a", "b") => "iso".into(),
        ("b", "a") => "inv".into(),
        _ => format!("id_{s}"),
    })
}

/// The linear order `[n] = {0 < 1 < … < n}` with arrows `i->j` for `i < j`.
pub fn ordinal(n: usize) -> FiniteCategory {
    let objects: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let mut mors = Vec::new();
    let mut idx = vec![vec![usize::MAX; n + 1]; n + 1];
    for i in 0..=n {
        for j in i..=n {
            idx[i][j] = mors.len();
            let name = if i == j { format!("id_{i}") } else { format!("{i}->{j}") };
            mors.push((name, i, j));
        }
    }
    let ids = (0..=n).map(|i| idx[i][i]).collect();
    let ends: Vec<(usize, usize)> = mors.iter().map(|m| (m.1, m.2)).collect();
    FiniteCategory::new(objects, mors, ids, |g, f| Some(idx[ends[f].0][ends[g].1])).unwrap()
}

/// Two parallel arrows `s, t: a → b`.
pub fn parallel_pair() -> FiniteCategory {
    FiniteCategory::new(
        vec!["a".into(), "b".into()],
        vec![("id_a".into(), 0, 0), ("id_b".into(), 1, 1), ("s".into(), 0, 1), ("t".into(), 0, 1)],
        vec![0, 1],
        |g, f| Some(if g < 2 { f } else { g }),
    )
    .unwrap()
}

/// Every hom-set a singleton; arrows named `a~b` (`id_a` on the diagonal).
pub fn codiscrete(names: &[&str]) -> FiniteCategory {
    codiscrete_named(names, |s, t| if s == t { format!("id_{s}") } else { format!("{s}~{t}") })
}

fn codiscrete_named(names: &[&str], name: impl Fn(&str, &str) -> String) -> FiniteCategory {
    let n = names.len();
    let mut mors = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            mors.push((name(names[i], names[j]), i, j));
        }
    }
    FiniteCategory::new(names.iter().map(|s| s.to_string()).collect(), mors, (0..n).map(|i| i * n + i).collect(), |g, f| {
        Some((f / n) * n + (g % n))
    })
    .unwrap()
}

/// Same identifiers, endpoints swapped, composition reversed.
pub fn opposite(c: &FiniteCategory) -> FiniteCategory {
    FiniteCategory::new(
        c.objects().to_vec(),
        c.morphisms().iter().map(|m| (m.name.clone(), m.tgt, m.src)).collect(),
        c.identities().to_vec(),
        |g, f| c.try_compose(f, g),
    )
    .expect("opposite of a well-formed category")
}

/// A coproduct with its two injections.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub category: Arc<FiniteCategory>,
    pub left: CatFunctor,
    pub right: CatFunctor,
}

/// Renames identifiers of the right summand that collide with the left one by
/// appending `'` until the name is fresh.
fn fresh_names<'a>(left: impl Iterator<Item = &'a String>, right: &[String]) -> Vec<String> {
    let mut taken: HashSet<String> = left.cloned().collect();
    let reserved: HashSet<&String> = right.iter().collect();
    right
        .iter()
        .map(|n| {
            if !taken.contains(n) {
                taken.insert(n.clone());
                return n.clone();
            }
            let mut cand = format!("{n}'");
            while taken.contains(&cand) || reserved.contains(&cand) {
                cand.push('\'');
            }
            taken.insert(cand.clone());
            cand
        })
        .collect()
}

/// Disjoint union; colliding identifiers from `d` get `'` suffixes.
pub fn coproduct(c: &Arc<FiniteCategory>, d: &Arc<FiniteCategory>) -> Coproduct {
    let (n, m) = (c.num_objects(), c.num_morphisms());
    let obj_names = fresh_names(c.objects().iter(), d.objects());
    let d_mor_names: Vec<String> = d.morphisms().iter().map(|x| x.name.clone()).collect();
    let mor_names = fresh_names(c.morphisms().iter().map(|x| &x.name), &d_mor_names);
    let mut objects = c.objects().to_vec();
    objects.extend(obj_names);
    let mut mors: Vec<(String, usize, usize)> = c.morphisms().iter().map(|x| (x.name.clone(), x.src, x.tgt)).collect();
    mors.extend(d.morphisms().iter().zip(mor_names).map(|(x, name)| (name, x.src + n, x.tgt + n)));
    let mut ids = c.identities().to_vec();
    ids.extend(d.identities().iter().map(|i| i + m));
    let category = Arc::new(
        FiniteCategory::new(objects, mors, ids, |g, f| {
            if g < m {
                c.try_compose(g, f)
            } else {
                d.try_compose(g - m, f - m).map(|h| h + m)
            }
        })
        .expect("coproduct"),
    );
    let left = CatFunctor::new_unchecked(c.clone(), category.clone(), (0..n).collect(), (0..m).collect()).unwrap();
    let right = CatFunctor::new_unchecked(
        d.clone(),
        category.clone(),
        (0..d.num_objects()).map(|i| i + n).collect(),
        (0..d.num_morphisms()).map(|i| i + m).collect(),
    )
    .unwrap();
    Coproduct { category, left, right }
}

/// A product with its two projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub category: Arc<FiniteCategory>,
    pub first: CatFunctor,
    pub second: CatFunctor,
}

/// Objects `(a,b)`, morphisms `(f,g)`, componentwise composition. Indices are
/// row-major: object `(a, b)` is `a * |ob D| + b`.
pub fn product(c: &Arc<FiniteCategory>, d: &Arc<FiniteCategory>) -> Product {
    let (n2, m2) = (d.num_objects(), d.num_morphisms());
    let mut objects = Vec::new();
    for a in c.objects() {
        for b in d.objects() {
            objects.push(format!("({a},{b})"));
        }
    }
    let mut mors = Vec::new();
    for f in c.morphisms() {
        for g in d.morphisms() {
            mors.push((format!("({},{})", f.name, g.name), f.src * n2 + g.src, f.tgt * n2 + g.tgt));
        }
    }
    let mut ids = Vec::new();
    for a in 0..c.num_objects() {
        for b in 0..n2 {
            ids.push(c.identity(a) * m2 + d.identity(b));
        }
    }
    let category = Arc::new(
        FiniteCategory::new(objects, mors, ids, |g, f| {
            let h1 = c.try_compose(g / m2, f / m2)?;
            let h2 = d.try_compose(g % m2, f % m2)?;
            Some(h1 * m2 + h2)
        })
        .expect("product"),
    );
    let first = CatFunctor::new_unchecked(
        category.clone(),
        c.clone(),
        (0..category.num_objects()).map(|x| x / n2).collect(),
        (0..category.num_morphisms()).map(|x| x / m2).collect(),
    )
    .unwrap();
    let second = CatFunctor::new_unchecked(
        category.clone(),
        d.clone(),
        (0..category.num_objects()).map(|x| x % n2).collect(),
        (0..category.num_morphisms()).map(|x| x % m2).collect(),
    )
    .unwrap();
    Product { category, first, second }
}

/// The unique functor to the terminal category.
pub fn to_terminal(c: &Arc<FiniteCategory>) -> CatFunctor {
    CatFunctor::new_unchecked(c.clone(), Arc::new(terminal()), vec![0; c.num_objects()], vec![0; c.num_morphisms()]).unwrap()
}

/// The maximal subgroupoid: all objects, exactly the invertible morphisms.
pub fn core(c: &FiniteCategory) -> FiniteCategory {
    let objs: Vec<usize> = (0..c.num_objects()).collect();
    let mors: Vec<usize> = (0..c.num_morphisms()).filter(|&f| c.is_iso(f)).collect();
    c.subcategory(&objs, &mors).expect("isomorphisms form a wide subcategory")
}

/// Inclusion of a single object `obj` of `c`, viewed as the terminal category.
pub fn point_at(c: &Arc<FiniteCategory>, obj: usize) -> CatFunctor {
    CatFunctor::new_unchecked(Arc::new(terminal()), c.clone(), vec![obj], vec![c.identity(obj)]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(c: FiniteCategory) -> Arc<FiniteCategory> {
        Arc::new(c)
    }

    #[test]
    fn standard_categories_validate() {
        for c in [
            empty(),
            terminal(),
            discrete(&["x", "y", "z"]),
            walking_arrow(),
            walking_iso(),
            ordinal(3),
            parallel_pair(),
            codiscrete(&["x", "x'", "y"]),
        ] {
            assert!(c.validate().is_valid(), "{:?}", c.objects());
        }
        assert_eq!(ordinal(3).num_morphisms(), 10);
    }

    #[test]
    fn opposite_is_an_involution() {
        for c in [walking_arrow(), ordinal(2), parallel_pair(), walking_iso()] {
            let oo = opposite(&opposite(&c));
            assert_eq!(oo, c);
            assert!(opposite(&c).validate().is_valid());
        }
    }

    #[test]
    fn opposite_of_arrow_reverses_f() {
        let op = opposite(&walking_arrow());
        let f = op.morphism_index("f").unwrap();
        assert_eq!(op.object_name(op.src(f)), "b");
        assert_eq!(op.object_name(op.tgt(f)), "a");
    }

    #[test]
    fn coproduct_with_opposite_doubles_morphisms() {
        let c = arc(ordinal(2));
        let cop = arc(opposite(&c));
        let s = coproduct(&c, &cop);
        assert_eq!(s.category.num_morphisms(), 2 * c.num_morphisms());
        assert!(s.category.validate().is_valid());
        assert!(s.left.violations().is_empty() && s.right.violations().is_empty());
        assert_eq!(s.category.object_name(3), "0'");
    }

    #[test]
    fn rename_avoids_existing_primes() {
        let c = arc(discrete(&["a", "a'"]));
        let s = coproduct(&c, &c);
        let names: Vec<_> = s.category.objects().to_vec();
        assert_eq!(names, vec!["a", "a'", "a''", "a'''"]);
    }

    #[test]
    fn product_counts_and_unit_law() {
        let c = arc(walking_arrow());
        let cop = arc(opposite(&c));
        let p = product(&c, &cop);
        assert_eq!(p.category.num_objects(), 4);
        assert!(p.category.validate().is_valid());
        let t = arc(terminal());
        let q = product(&c, &t);
        // the first projection is an isomorphism of categories
        assert!(q.first.is_equivalence());
        assert!(q.first.is_injective_on_objects() && q.first.is_injective_on_morphisms());
        assert!(q.first.is_surjective_on_objects());
    }

    #[test]
    fn core_examples() {
        assert_eq!(core(&walking_iso()), walking_iso());
        let k = core(&walking_arrow());
        assert_eq!(k.num_objects(), 2);
        assert_eq!(k.num_morphisms(), 2);
        assert!(k.is_groupoid());
    }

    #[test]
    fn equivalence_examples() {
        let e = arc(walking_iso());
        assert!(point_at(&e, 0).is_equivalence());
        let collapse = to_terminal(&arc(walking_arrow()));
        assert!(!collapse.is_full());
        assert!(!collapse.is_equivalence());
        assert!(CatFunctor::identity(arc(ordinal(2))).is_equivalence());
    }
}
