use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::fincat::presentation::Presentation;
use crate::fincat::{coproduct, CatFunctor, FiniteCategory};

/// A pushout `B ⊔_A C` in Cat with its two legs.
#[derive(Clone, Debug)]
pub struct CatPushout {
    pub category: Arc<FiniteCategory>,
    pub left: CatFunctor,
    pub right: CatFunctor,
}

/// Default cap on words examined while completing a pushout.
pub const DEFAULT_PUSHOUT_BUDGET: usize = 20_000;

/// Pushout of `B ←i− A −f→ C`, presented by the morphisms of `B ⊔ C` with
/// `i(m) = f(m)` and the composition tables of `B` and `C` as relations, then
/// completed within `max_words`. Objects and generators are named after their
/// first representative in `B ⊔ C`.
pub fn pushout_category(i: &CatFunctor, f: &CatFunctor, max_words: usize) -> Result<CatPushout> {
    if i.dom() != f.dom() {
        return Err(Error::invalid("pushout", "functors do not share a domain"));
    }
    let (a, b, c) = (i.dom(), i.cod(), f.cod());
    let sum = coproduct(b, c);
    let s = &*sum.category;
    let (nb, mb) = (b.num_objects(), b.num_morphisms());
    let mut objs = UnionFind::<usize>::new(s.num_objects());
    let mut mors = UnionFind::<usize>::new(s.num_morphisms());
    for x in 0..a.num_objects() {
        objs.union(i.obj(x), nb + f.obj(x));
    }
    for m in 0..a.num_morphisms() {
        mors.union(i.mor(m), mb + f.mor(m));
    }
    // object classes in order of first member
    let mut obj_class: HashMap<usize, usize> = HashMap::new();
    let mut objects = Vec::new();
    let mut oc = vec![0; s.num_objects()];
    for o in 0..s.num_objects() {
        let r = objs.find_mut(o);
        oc[o] = *obj_class.entry(r).or_insert_with(|| {
            objects.push(s.object_name(o).to_string());
            objects.len() - 1
        });
    }
    let id_names: Vec<String> = (0..objects.len())
        .map(|k| {
            let o = (0..s.num_objects()).find(|&o| oc[o] == k).unwrap();
            s.morphism_name(s.identity(o)).to_string()
        })
        .collect();
    // a morphism class containing an identity is an identity
    let mut is_id: HashMap<usize, bool> = HashMap::new();
    for m in 0..s.num_morphisms() {
        let r = mors.find_mut(m);
        *is_id.entry(r).or_insert(false) |= s.is_identity(m);
    }
    let mut p = Presentation::new(objects, id_names);
    let mut gen_of: HashMap<usize, usize> = HashMap::new();
    let mut word = vec![Vec::new(); s.num_morphisms()];
    for m in 0..s.num_morphisms() {
        let r = mors.find_mut(m);
        if is_id[&r] {
            continue;
        }
        let g = *gen_of.entry(r).or_insert_with(|| p.generator(s.morphism_name(m), oc[s.src(m)], oc[s.tgt(m)]));
        word[m] = vec![g];
    }
    for (g, h, gh) in s.composable_pairs() {
        let mut lhs = word[h].clone();
        lhs.extend_from_slice(&word[g]);
        if lhs != word[gh] {
            p.relation(oc[s.src(h)], lhs, word[gh].clone())?;
        }
    }
    let (cat, gens) = p.complete_mapped(max_words)?;
    let category = Arc::new(cat);
    let leg = |offset_o: usize, offset_m: usize, src: &Arc<FiniteCategory>| {
        let obj_map = (0..src.num_objects()).map(|o| oc[o + offset_o]).collect();
        let mor_map = (0..src.num_morphisms())
            .map(|m| match word[m + offset_m].as_slice() {
                [] => category.identity(oc[s.src(m + offset_m)]),
                [g] => gens[*g],
                _ => unreachable!(),
            })
            .collect();
        CatFunctor::new(src.clone(), category.clone(), obj_map, mor_map)
    };
    let left = leg(0, 0, b)?;
    let right = leg(nb, mb, c)?;
    Ok(CatPushout { category, left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::constructions::*;

    #[test]
    fn pushout_along_identity_is_the_other_codomain() {
        let a = Arc::new(walking_arrow());
        let id = CatFunctor::identity(a.clone());
        let t = to_terminal(&a);
        let po = pushout_category(&id, &t, 1000).unwrap();
        assert_eq!(po.category.num_objects(), 1);
        assert_eq!(po.category.num_morphisms(), 1);
    }

    #[test]
    fn gluing_endpoints_of_two_arrows() {
        let pt = Arc::new(terminal());
        let a = Arc::new(walking_arrow());
        let head = CatFunctor::from_names(pt.clone(), a.clone(), &[("*", "b")], &[]).unwrap();
        let tail = CatFunctor::from_names(pt, a, &[("*", "a")], &[]).unwrap();
        let po = pushout_category(&head, &tail, 1000).unwrap();
        let c = &po.category;
        assert!(c.is_valid());
        assert_eq!(c.num_objects(), 3);
        // identities, two generators and their composite
        assert_eq!(c.num_morphisms(), 6);
        let composite = c.compose(po.right.mor(2), po.left.mor(2));
        assert_eq!(c.morphism_name(composite), "f'∘f");
        assert_eq!(c.src(composite), po.left.obj(0));
        assert_eq!(c.tgt(composite), po.right.obj(1));
    }

    #[test]
    fn endpoints_glued_to_a_point_give_a_free_loop() {
        let two = Arc::new(discrete(&["a", "b"]));
        let a = Arc::new(walking_arrow());
        let ends = CatFunctor::from_names(two.clone(), a, &[("a", "a"), ("b", "b")], &[]).unwrap();
        let collapse = to_terminal(&two);
        let err = pushout_category(&ends, &collapse, 500).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
    }
}
