//! Comma categories and pointwise Kan extensions along functors between finite
//! categories.

use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::diagram::{DiagramMap, SetDiagram};
use super::limits::family_name;
use super::solve::solve_families;
use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FiniteCategory, DEFAULT_SEARCH_BUDGET};

/// A comma category `ι↓d` or `d↓ι` with its projection to the domain of `ι`.
#[derive(Clone, Debug)]
pub struct CommaCategory {
    pub category: Arc<FiniteCategory>,
    pub projection: CatFunctor,
    /// For each comma object, the arrow of the codomain it carries.
    pub arrows: Vec<usize>,
}

/// `ι↓d`: objects `(c,u)` with `u: ι c → d`; a morphism `(h,u')` goes from
/// `(c, u'∘ι h)` to `(c', u')` for `h: c → c'`.
pub fn comma_over(iota: &CatFunctor, d: usize) -> CommaCategory {
    let (c, dd) = (&**iota.dom(), &**iota.cod());
    let mut objects = Vec::new();
    let mut key: HashMap<(usize, usize), usize> = HashMap::new();
    let mut proj_obj = Vec::new();
    let mut arrows = Vec::new();
    for a in 0..c.num_objects() {
        for &u in dd.hom(iota.obj(a), d) {
            key.insert((a, u), objects.len());
            objects.push(format!("({},{})", c.object_name(a), dd.morphism_name(u)));
            proj_obj.push(a);
            arrows.push(u);
        }
    }
    let mut mors = Vec::new();
    let mut mkey: HashMap<(usize, usize), usize> = HashMap::new();
    let mut proj_mor = Vec::new();
    let mut data = Vec::new();
    for h in 0..c.num_morphisms() {
        let (a, b) = (c.src(h), c.tgt(h));
        for &u2 in dd.hom(iota.obj(b), d) {
            let u1 = dd.compose(u2, iota.mor(h));
            mkey.insert((h, u2), mors.len());
            mors.push((format!("({},{})", c.morphism_name(h), dd.morphism_name(u2)), key[&(a, u1)], key[&(b, u2)]));
            proj_mor.push(h);
            data.push((h, u2));
        }
    }
    let identities = (0..objects.len()).map(|o| mkey[&(c.identity(proj_obj[o]), arrows[o])]).collect();
    let category = Arc::new(
        FiniteCategory::new(objects, mors, identities, |g, f| {
            let ((k, u3), (h, _)) = (data[g], data[f]);
            mkey.get(&(c.compose(k, h), u3)).copied()
        })
        .expect("comma category table"),
    );
    let projection = CatFunctor::new_unchecked(category.clone(), iota.dom().clone(), proj_obj, proj_mor).unwrap();
    CommaCategory { category, projection, arrows }
}

/// `d↓ι`: objects `(u,c)` with `u: d → ι c`; a morphism `(u,h)` goes from
/// `(u, c)` to `(ι h∘u, c')`.
pub fn comma_under(d: usize, iota: &CatFunctor) -> CommaCategory {
    let (c, dd) = (&**iota.dom(), &**iota.cod());
    let mut objects = Vec::new();
    let mut key: HashMap<(usize, usize), usize> = HashMap::new();
    let mut proj_obj = Vec::new();
    let mut arrows = Vec::new();
    for a in 0..c.num_objects() {
        for &u in dd.hom(d, iota.obj(a)) {
            key.insert((u, a), objects.len());
            objects.push(format!("({},{})", dd.morphism_name(u), c.object_name(a)));
            proj_obj.push(a);
            arrows.push(u);
        }
    }
    let mut mors = Vec::new();
    let mut mkey: HashMap<(usize, usize), usize> = HashMap::new();
    let mut proj_mor = Vec::new();
    let mut data = Vec::new();
    for h in 0..c.num_morphisms() {
        let (a, b) = (c.src(h), c.tgt(h));
        for &u in dd.hom(d, iota.obj(a)) {
            let u2 = dd.compose(iota.mor(h), u);
            mkey.insert((u, h), mors.len());
            mors.push((format!("({},{})", dd.morphism_name(u), c.morphism_name(h)), key[&(u, a)], key[&(u2, b)]));
            proj_mor.push(h);
            data.push((u, h));
        }
    }
    let identities = (0..objects.len()).map(|o| mkey[&(arrows[o], c.identity(proj_obj[o]))]).collect();
    let category = Arc::new(
        FiniteCategory::new(objects, mors, identities, |g, f| {
            let ((_, k), (u, h)) = (data[g], data[f]);
            mkey.get(&(u, c.compose(k, h))).copied()
        })
        .expect("comma category table"),
    );
    let projection = CatFunctor::new_unchecked(category.clone(), iota.dom().clone(), proj_obj, proj_mor).unwrap();
    CommaCategory { category, projection, arrows }
}

/// Restriction `ι* Y = Y ∘ ι`.
pub fn restrict(iota: &CatFunctor, y: &SetDiagram) -> Result<SetDiagram> {
    y.restrict(iota)
}

/// `ι_! X` with the bookkeeping needed for its unit and functoriality.
#[derive(Clone, Debug)]
pub struct LeftKan {
    iota: CatFunctor,
    source: Arc<SetDiagram>,
    diagram: Arc<SetDiagram>,
    // per target object d: index of (c, u) among the comma objects, and the
    // class of each (comma object, element) pair
    pairs: Vec<HashMap<(usize, usize), usize>>,
    offsets: Vec<Vec<usize>>,
    class: Vec<Vec<usize>>,
    // a representative (c, u, x) per class
    reps: Vec<Vec<(usize, usize, usize)>>,
}

/// Pointwise left Kan extension: `(ι_! X)(d) = colim_{ι↓d} X`. Elements are
/// named `x@(c,u)` after their least representative, matching [`colimit`]
/// over [`comma_over`].
///
/// [`colimit`]: super::colimit
pub fn lan(iota: &CatFunctor, x: &Arc<SetDiagram>) -> Result<LeftKan> {
    if x.shape() != iota.dom() {
        return Err(Error::invalid("left Kan extension", "diagram is not over the functor's domain"));
    }
    let (c, dd) = (&**iota.dom(), &**iota.cod());
    let nd = dd.num_objects();
    let mut pairs = Vec::with_capacity(nd);
    let mut offsets = Vec::with_capacity(nd);
    let mut classes = Vec::with_capacity(nd);
    let mut reps: Vec<Vec<(usize, usize, usize)>> = Vec::with_capacity(nd);
    let mut sets = Vec::with_capacity(nd);
    for d in 0..nd {
        let mut index = HashMap::new();
        let mut off = vec![0];
        let mut list = Vec::new();
        for a in 0..c.num_objects() {
            for &u in dd.hom(iota.obj(a), d) {
                index.insert((a, u), list.len());
                list.push((a, u));
                off.push(off.last().unwrap() + x.size(a));
            }
        }
        let total = *off.last().unwrap();
        let mut uf = UnionFind::<usize>::new(total);
        for h in 0..c.num_morphisms() {
            let (a, b) = (c.src(h), c.tgt(h));
            for &u2 in dd.hom(iota.obj(b), d) {
                let u1 = dd.compose(u2, iota.mor(h));
                let (p1, p2) = (index[&(a, u1)], index[&(b, u2)]);
                for e in 0..x.size(a) {
                    uf.union(off[p1] + e, off[p2] + x.apply(h, e));
                }
            }
        }
        let mut best: HashMap<usize, (String, (usize, usize, usize))> = HashMap::new();
        for (p, &(a, u)) in list.iter().enumerate() {
            for e in 0..x.size(a) {
                let name = format!("{}@({},{})", x.set(a)[e], c.object_name(a), dd.morphism_name(u));
                let root = uf.find_mut(off[p] + e);
                match best.get_mut(&root) {
                    Some(slot) if slot.0 <= name => {}
                    Some(slot) => *slot = (name, (a, u, e)),
                    None => {
                        best.insert(root, (name, (a, u, e)));
                    }
                }
            }
        }
        let mut named: Vec<(String, (usize, usize, usize), usize)> = best.into_iter().map(|(r, (n, rep))| (n, rep, r)).collect();
        named.sort();
        let pos: HashMap<usize, usize> = named.iter().enumerate().map(|(i, t)| (t.2, i)).collect();
        let class: Vec<usize> = (0..total).map(|i| pos[&uf.find_mut(i)]).collect();
        sets.push(named.iter().map(|t| t.0.clone()).collect());
        reps.push(named.iter().map(|t| t.1).collect());
        pairs.push(index);
        offsets.push(off);
        classes.push(class);
    }
    let maps = (0..dd.num_morphisms())
        .map(|m| {
            let (d1, d2) = (dd.src(m), dd.tgt(m));
            reps[d1]
                .iter()
                .map(|&(a, u, e)| {
                    let p = pairs[d2][&(a, dd.compose(m, u))];
                    classes[d2][offsets[d2][p] + e]
                })
                .collect()
        })
        .collect();
    let diagram = Arc::new(SetDiagram::new_unchecked(iota.cod().clone(), sets, maps)?);
    Ok(LeftKan { iota: iota.clone(), source: x.clone(), diagram, pairs, offsets, class: classes, reps })
}

impl LeftKan {
    pub fn diagram(&self) -> &Arc<SetDiagram> {
        &self.diagram
    }

    pub fn source(&self) -> &Arc<SetDiagram> {
        &self.source
    }

    /// Class of `x ∈ X(c)` placed along `u: ι c → d`.
    pub fn class_of(&self, d: usize, c: usize, u: usize, x: usize) -> usize {
        let p = self.pairs[d][&(c, u)];
        self.class[d][self.offsets[d][p] + x]
    }

    /// A representative `(c, u, x)` of an element at `d`.
    pub fn representative(&self, d: usize, k: usize) -> (usize, usize, usize) {
        self.reps[d][k]
    }

    /// `η: X → ι* ι_! X`, `x ↦ [x@(c, id)]`.
    pub fn unit(&self) -> Result<DiagramMap> {
        let c = self.iota.dom();
        let dd = self.iota.cod();
        let target = Arc::new(self.diagram.restrict(&self.iota)?);
        let components = (0..c.num_objects())
            .map(|a| {
                let d = self.iota.obj(a);
                (0..self.source.size(a)).map(|x| self.class_of(d, a, dd.identity(d), x)).collect()
            })
            .collect();
        DiagramMap::new_unchecked(self.source.clone(), target, components)
    }
}

/// `ι_!(f)` between two extensions along the same functor.
pub fn lan_map(from: &LeftKan, to: &LeftKan, f: &DiagramMap) -> Result<DiagramMap> {
    if f.source() != &from.source || f.target() != &to.source {
        return Err(Error::invalid("left Kan extension of a map", "endpoints do not match"));
    }
    let dd = from.iota.cod();
    let components = (0..dd.num_objects())
        .map(|d| from.reps[d].iter().map(|&(a, u, x)| to.class_of(d, a, u, f.apply(a, x))).collect())
        .collect();
    DiagramMap::new_unchecked(from.diagram.clone(), to.diagram.clone(), components)
}

/// `ε: ι_! ι* Y → Y`, `[y@(c,u)] ↦ Y(u)(y)`. `kan` must extend `ι* Y`.
pub fn lan_counit(kan: &LeftKan, y: &Arc<SetDiagram>) -> Result<DiagramMap> {
    if *kan.source != y.restrict(&kan.iota)? {
        return Err(Error::invalid("counit", "extension is not of the restriction"));
    }
    let dd = kan.iota.cod();
    let components = (0..dd.num_objects()).map(|d| kan.reps[d].iter().map(|&(_, u, e)| y.apply(u, e)).collect()).collect();
    DiagramMap::new_unchecked(kan.diagram.clone(), y.clone(), components)
}

/// `ι_* X` with its comma-object indexing.
#[derive(Clone, Debug)]
pub struct RightKan {
    iota: CatFunctor,
    source: Arc<SetDiagram>,
    diagram: Arc<SetDiagram>,
    // per d: comma objects (u, c) in order, and the families
    objects: Vec<Vec<(usize, usize)>>,
    index: Vec<HashMap<(usize, usize), usize>>,
    families: Vec<Vec<Vec<usize>>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
}

/// Pointwise right Kan extension: `(ι_* X)(d) = lim_{d↓ι} X`. Elements are the
/// compatible families, named as in [`limit`] over [`comma_under`].
///
/// [`limit`]: super::limit
pub fn ran(iota: &CatFunctor, x: &Arc<SetDiagram>) -> Result<RightKan> {
    ran_with_budget(iota, x, DEFAULT_SEARCH_BUDGET)
}

pub fn ran_with_budget(iota: &CatFunctor, x: &Arc<SetDiagram>, budget: usize) -> Result<RightKan> {
    if x.shape() != iota.dom() {
        return Err(Error::invalid("right Kan extension", "diagram is not over the functor's domain"));
    }
    let (c, dd) = (&**iota.dom(), &**iota.cod());
    let nd = dd.num_objects();
    let mut objects = Vec::with_capacity(nd);
    let mut index = Vec::with_capacity(nd);
    let mut families = Vec::with_capacity(nd);
    let mut lookup = Vec::with_capacity(nd);
    let mut sets = Vec::with_capacity(nd);
    for d in 0..nd {
        let mut list = Vec::new();
        let mut idx = HashMap::new();
        for a in 0..c.num_objects() {
            for &u in dd.hom(d, iota.obj(a)) {
                idx.insert((u, a), list.len());
                list.push((u, a));
            }
        }
        let domains: Vec<usize> = list.iter().map(|&(_, a)| x.size(a)).collect();
        let mut constraints: Vec<(usize, usize, &[usize])> = Vec::new();
        for h in 0..c.num_morphisms() {
            if c.is_identity(h) {
                continue;
            }
            let (a, b) = (c.src(h), c.tgt(h));
            for &u in dd.hom(d, iota.obj(a)) {
                let u2 = dd.compose(iota.mor(h), u);
                constraints.push((idx[&(u, a)], idx[&(u2, b)], x.map(h)));
            }
        }
        let fams = solve_families(&domains, &constraints, budget, "right Kan extension", None)?;
        sets.push(
            fams.iter().map(|f| family_name(f.iter().zip(&list).map(|(&e, &(_, a))| x.set(a)[e].as_str()))).collect::<Vec<_>>(),
        );
        lookup.push(fams.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect::<HashMap<_, _>>());
        families.push(fams);
        objects.push(list);
        index.push(idx);
    }
    let maps = (0..dd.num_morphisms())
        .map(|m| {
            let (d1, d2) = (dd.src(m), dd.tgt(m));
            families[d1]
                .iter()
                .map(|fam| {
                    let image: Vec<usize> = objects[d2].iter().map(|&(v, a)| fam[index[d1][&(dd.compose(v, m), a)]]).collect();
                    lookup[d2][&image]
                })
                .collect()
        })
        .collect();
    let diagram = Arc::new(SetDiagram::new_unchecked(iota.cod().clone(), sets, maps)?);
    Ok(RightKan { iota: iota.clone(), source: x.clone(), diagram, objects, index, families, lookup })
}

impl RightKan {
    pub fn diagram(&self) -> &Arc<SetDiagram> {
        &self.diagram
    }

    pub fn source(&self) -> &Arc<SetDiagram> {
        &self.source
    }

    /// `ε: ι* ι_* X → X`, a family at `ι c` goes to its `(id, c)` component.
    pub fn counit(&self) -> Result<DiagramMap> {
        let c = self.iota.dom();
        let dd = self.iota.cod();
        let source = Arc::new(self.diagram.restrict(&self.iota)?);
        let components = (0..c.num_objects())
            .map(|a| {
                let d = self.iota.obj(a);
                let p = self.index[d][&(dd.identity(d), a)];
                self.families[d].iter().map(|f| f[p]).collect()
            })
            .collect();
        DiagramMap::new_unchecked(source, self.source.clone(), components)
    }

    fn family_index(&self, d: usize, fam: &[usize]) -> Option<usize> {
        self.lookup[d].get(fam).copied()
    }
}

/// `ι_*(f)` between two extensions along the same functor.
pub fn ran_map(from: &RightKan, to: &RightKan, f: &DiagramMap) -> Result<DiagramMap> {
    if f.source() != &from.source || f.target() != &to.source {
        return Err(Error::invalid("right Kan extension of a map", "endpoints do not match"));
    }
    let dd = from.iota.cod();
    let components = (0..dd.num_objects())
        .map(|d| {
            from.families[d]
                .iter()
                .map(|fam| {
                    let image: Vec<usize> = fam.iter().zip(&from.objects[d]).map(|(&e, &(_, a))| f.apply(a, e)).collect();
                    to.family_index(d, &image).expect("image of a compatible family is compatible")
                })
                .collect()
        })
        .collect();
    DiagramMap::new_unchecked(from.diagram.clone(), to.diagram.clone(), components)
}

/// `η: Y → ι_* ι* Y`, `y ↦ ((u,c) ↦ Y(u)(y))`. `kan` must extend `ι* Y`.
pub fn ran_unit(kan: &RightKan, y: &Arc<SetDiagram>) -> Result<DiagramMap> {
    if *kan.source != y.restrict(&kan.iota)? {
        return Err(Error::invalid("unit", "extension is not of the restriction"));
    }
    let dd = kan.iota.cod();
    let components = (0..dd.num_objects())
        .map(|d| {
            (0..y.size(d))
                .map(|e| {
                    let fam: Vec<usize> = kan.objects[d].iter().map(|&(u, _)| y.apply(u, e)).collect();
                    kan.family_index(d, &fam).expect("a cone gives a compatible family")
                })
                .collect()
        })
        .collect();
    DiagramMap::new_unchecked(y.clone(), kan.diagram.clone(), components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::constructions::*;
    use crate::setval::{colimit, limit};

    fn arrow_x() -> Arc<SetDiagram> {
        let a = Arc::new(walking_arrow());
        Arc::new(
            SetDiagram::from_names(a, &[("a", vec!["x", "y"]), ("b", vec!["u", "v"])], &[("f", vec![("x", "u"), ("y", "u")])])
                .unwrap(),
        )
    }

    #[test]
    fn comma_of_identity_is_the_slice() {
        let c = Arc::new(walking_arrow());
        let id = CatFunctor::identity(c.clone());
        let slice = comma_over(&id, 1);
        assert_eq!(slice.category.num_objects(), 2);
        assert!(slice.category.is_valid());
        let coslice = comma_under(0, &id);
        assert_eq!(coslice.category.num_objects(), 2);
        assert!(coslice.category.is_valid());
    }

    #[test]
    fn lan_along_identity_is_isomorphic() {
        let x = arrow_x();
        let id = CatFunctor::identity(x.shape().clone());
        let k = lan(&id, &x).unwrap();
        let eta = k.unit().unwrap();
        assert!(eta.first_unnatural().is_none());
        assert!(eta.is_iso());
    }

    #[test]
    fn lan_to_terminal_is_the_colimit() {
        let x = arrow_x();
        let t = to_terminal(x.shape());
        let k = lan(&t, &x).unwrap();
        assert_eq!(k.diagram().size(0), colimit(&x).elements.len());
    }

    #[test]
    fn ran_to_terminal_is_the_limit() {
        let x = arrow_x();
        let t = to_terminal(x.shape());
        let k = ran(&t, &x).unwrap();
        assert_eq!(k.diagram().size(0), limit(&x).unwrap().elements.len());
    }

    #[test]
    fn pointwise_formulas_match_comma_constructions() {
        let x = arrow_x();
        let c = x.shape().clone();
        let d = Arc::new(ordinal(2));
        let iota = CatFunctor::from_names(c, d.clone(), &[("a", "0"), ("b", "2")], &[("f", "0->2")]).unwrap();
        let l = lan(&iota, &x).unwrap();
        let r = ran(&iota, &x).unwrap();
        for dd in 0..d.num_objects() {
            let over = comma_over(&iota, dd);
            let xo = x.restrict(&over.projection).unwrap();
            assert_eq!(l.diagram().set(dd), colimit(&xo).elements.as_slice());
            let under = comma_under(dd, &iota);
            let xu = x.restrict(&under.projection).unwrap();
            assert_eq!(r.diagram().set(dd), limit(&xu).unwrap().elements.as_slice());
        }
        assert!(l.diagram().violations().is_empty());
        assert!(r.diagram().violations().is_empty());
    }
}
