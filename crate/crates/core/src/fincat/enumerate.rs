//! Exhaustive enumeration of functors and natural transformations.
//!
//! Results are ordered lexicographically: objects of the domain are visited in
//! identifier order and candidate images are tried in identifier order, then
//! the same for non-identity morphisms.

use std::sync::Arc;

use super::category::FiniteCategory;
use super::functor::{CatFunctor, NaturalTransformation};
use crate::error::{Error, Result};

/// Default cap on search nodes for enumerations.
pub const DEFAULT_SEARCH_BUDGET: usize = 2_000_000;

fn sorted_by_name(n: usize, name: impl Fn(usize) -> String) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.sort_by_key(|&i| name(i));
    v
}

/// Constraints on a functor search: fixed object or morphism images and an
/// optional per-morphism candidate filter.
pub struct FunctorSearch<'a> {
    pub dom: &'a Arc<FiniteCategory>,
    pub cod: &'a Arc<FiniteCategory>,
    pub fixed_objects: Vec<Option<usize>>,
    pub allowed_objects: Option<Vec<Vec<usize>>>,
    pub fixed_morphisms: Vec<Option<usize>>,
    pub morphism_filter: Option<&'a dyn Fn(usize, usize) -> bool>,
    pub budget: usize,
    pub limit: Option<usize>,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(dom: &'a Arc<FiniteCategory>, cod: &'a Arc<FiniteCategory>) -> Self {
        FunctorSearch {
            dom,
            cod,
            fixed_objects: vec![None; dom.num_objects()],
            allowed_objects: None,
            fixed_morphisms: vec![None; dom.num_morphisms()],
            morphism_filter: None,
            budget: DEFAULT_SEARCH_BUDGET,
            limit: None,
        }
    }

    pub fn budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    /// Stop after this many results.
    pub fn limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn run(&self) -> Result<Vec<CatFunctor>> {
        let (c, d) = (&**self.dom, &**self.cod);
        let obj_order = sorted_by_name(c.num_objects(), |i| c.object_name(i).to_string());
        let mor_order: Vec<usize> = sorted_by_name(c.num_morphisms(), |i| c.morphism_name(i).to_string())
            .into_iter()
            .filter(|&f| !c.is_identity(f))
            .collect();
        let d_objs = sorted_by_name(d.num_objects(), |i| d.object_name(i).to_string());
        // composites to check once all three entries are assigned, keyed by the
        // latest-assigned of the three in `mor_order`
        let mut rank = vec![usize::MAX; c.num_morphisms()];
        for (i, &f) in mor_order.iter().enumerate() {
            rank[f] = i;
        }
        let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); mor_order.len()];
        for (g, f, h) in c.composable_pairs() {
            let r = [g, f, h].iter().map(|&x| rank[x]).filter(|&r| r != usize::MAX).max();
            if let Some(r) = r {
                checks[r].push((g, f, h));
            }
        }
        let mut state = Search {
            c,
            d,
            obj_order,
            mor_order,
            d_objs,
            checks,
            obj_map: vec![usize::MAX; c.num_objects()],
            mor_map: vec![usize::MAX; c.num_morphisms()],
            nodes: 0,
            cfg: self,
            out: Vec::new(),
        };
        state.objects(0)?;
        Ok(state
            .out
            .into_iter()
            .map(|(o, m)| CatFunctor::new_unchecked(self.dom.clone(), self.cod.clone(), o, m).unwrap())
            .collect())
    }
}

struct Search<'s, 'a> {
    c: &'s FiniteCategory,
    d: &'s FiniteCategory,
    obj_order: Vec<usize>,
    mor_order: Vec<usize>,
    d_objs: Vec<usize>,
    checks: Vec<Vec<(usize, usize, usize)>>,
    obj_map: Vec<usize>,
    mor_map: Vec<usize>,
    nodes: usize,
    cfg: &'s FunctorSearch<'a>,
    out: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Search<'_, '_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cfg.budget {
            return Err(Error::Budget { what: "functor search", limit: self.cfg.budget });
        }
        Ok(())
    }

    fn done(&self) -> bool {
        self.cfg.limit.is_some_and(|l| self.out.len() >= l)
    }

    fn objects(&mut self, k: usize) -> Result<()> {
        if self.done() {
            return Ok(());
        }
        if k == self.obj_order.len() {
            for a in 0..self.c.num_objects() {
                let id = self.c.identity(a);
                let target = self.d.identity(self.obj_map[a]);
                match self.cfg.fixed_morphisms[id] {
                    Some(m) if m != target => return Ok(()),
                    _ => self.mor_map[id] = target,
                }
            }
            return self.morphisms(0);
        }
        let a = self.obj_order[k];
        let candidates: Vec<usize> = match (self.cfg.fixed_objects[a], &self.cfg.allowed_objects) {
            (Some(x), _) => vec![x],
            (None, Some(allowed)) => {
                let mut v = allowed[a].clone();
                v.sort_by_key(|&i| self.d.object_name(i).to_string());
                v
            }
            (None, None) => self.d_objs.clone(),
        };
        for x in candidates {
            self.tick()?;
            self.obj_map[a] = x;
            self.objects(k + 1)?;
        }
        self.obj_map[a] = usize::MAX;
        Ok(())
    }

    fn morphisms(&mut self, k: usize) -> Result<()> {
        if self.done() {
            return Ok(());
        }
        if k == self.mor_order.len() {
            self.out.push((self.obj_map.clone(), self.mor_map.clone()));
            return Ok(());
        }
        let f = self.mor_order[k];
        let (a, b) = (self.obj_map[self.c.src(f)], self.obj_map[self.c.tgt(f)]);
        let mut candidates: Vec<usize> = match self.cfg.fixed_morphisms[f] {
            Some(m) => {
                if self.d.src(m) == a && self.d.tgt(m) == b {
                    vec![m]
                } else {
                    vec![]
                }
            }
            None => self.d.hom(a, b).to_vec(),
        };
        if let Some(filter) = self.cfg.morphism_filter {
            candidates.retain(|&m| filter(f, m));
        }
        candidates.sort_by_key(|&m| self.d.morphism_name(m).to_string());
        for m in candidates {
            self.tick()?;
            self.mor_map[f] = m;
            let ok =
                self.checks[k].iter().all(|&(g, f2, h)| self.d.compose(self.mor_map[g], self.mor_map[f2]) == self.mor_map[h]);
            if ok {
                self.morphisms(k + 1)?;
            }
        }
        self.mor_map[f] = usize::MAX;
        Ok(())
    }
}

/// All functors `c → d`, lexicographically ordered by identifier.
pub fn enumerate_functors(c: &Arc<FiniteCategory>, d: &Arc<FiniteCategory>, budget: usize) -> Result<Vec<CatFunctor>> {
    FunctorSearch::new(c, d).budget(budget).run()
}

/// All natural transformations `f ⇒ g`, ordered by component identifiers.
pub fn enumerate_naturals(f: &CatFunctor, g: &CatFunctor, budget: usize) -> Result<Vec<NaturalTransformation>> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::invalid("natural transformation", "functors are not parallel"));
    }
    let (c, d) = (&**f.dom(), &**f.cod());
    let order = sorted_by_name(c.num_objects(), |i| c.object_name(i).to_string());
    let mut pos = vec![0; c.num_objects()];
    for (i, &a) in order.iter().enumerate() {
        pos[a] = i;
    }
    // naturality squares checked once both endpoints are assigned
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); order.len()];
    for m in 0..c.num_morphisms() {
        checks[pos[c.src(m)].max(pos[c.tgt(m)])].push(m);
    }
    let mut comps = vec![usize::MAX; c.num_objects()];
    let mut out = Vec::new();
    let mut nodes = 0usize;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        order: &[usize],
        checks: &[Vec<usize>],
        f: &CatFunctor,
        g: &CatFunctor,
        c: &FiniteCategory,
        d: &FiniteCategory,
        comps: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        nodes: &mut usize,
        budget: usize,
    ) -> Result<()> {
        if k == order.len() {
            out.push(comps.clone());
            return Ok(());
        }
        let a = order[k];
        let mut cands = d.hom(f.obj(a), g.obj(a)).to_vec();
        cands.sort_by_key(|&m| d.morphism_name(m).to_string());
        for m in cands {
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::Budget { what: "natural transformation search", limit: budget });
            }
            comps[a] = m;
            let ok = checks[k].iter().all(|&h| d.compose(comps[c.tgt(h)], f.mor(h)) == d.compose(g.mor(h), comps[c.src(h)]));
            if ok {
                rec(k + 1, order, checks, f, g, c, d, comps, out, nodes, budget)?;
            }
        }
        comps[a] = usize::MAX;
        Ok(())
    }
    rec(0, &order, &checks, f, g, c, d, &mut comps, &mut out, &mut nodes, budget)?;
    Ok(out
        .into_iter()
        .map(|cs| NaturalTransformation::new(f.clone(), g.clone(), cs).expect("search only emits natural families"))
        .collect())
}

/// Equivalence by search: some `G: D → C` with natural isomorphisms `GF ≅ id`
/// and `FG ≅ id`. Independent of [`CatFunctor::is_equivalence`].
pub fn is_equivalence_by_search(f: &CatFunctor, budget: usize) -> Result<bool> {
    let (c, d) = (f.dom(), f.cod());
    let id_c = CatFunctor::identity(c.clone());
    let id_d = CatFunctor::identity(d.clone());
    for g in enumerate_functors(d, c, budget)? {
        let gf = f.then(&g)?;
        let fg = g.then(f)?;
        let left = enumerate_naturals(&gf, &id_c, budget)?.into_iter().any(|t| t.is_iso());
        if left && enumerate_naturals(&fg, &id_d, budget)?.into_iter().any(|t| t.is_iso()) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::constructions::*;

    fn arc(c: FiniteCategory) -> Arc<FiniteCategory> {
        Arc::new(c)
    }

    #[test]
    fn functors_from_the_point_pick_objects() {
        let pt = arc(terminal());
        let d = arc(ordinal(3));
        assert_eq!(enumerate_functors(&pt, &d, 1000).unwrap().len(), 4);
    }

    #[test]
    fn endofunctors_of_the_arrow() {
        let a = arc(walking_arrow());
        let fs = enumerate_functors(&a, &a, 1000).unwrap();
        assert_eq!(fs.len(), 3);
        // lexicographic order: (a,a), (a,b), (b,b)
        let images: Vec<(usize, usize)> = fs.iter().map(|f| (f.obj(0), f.obj(1))).collect();
        assert_eq!(images, vec![(0, 0), (0, 1), (1, 1)]);
    }

    #[test]
    fn naturals_on_identity_of_arrow() {
        let a = arc(walking_arrow());
        let id = CatFunctor::identity(a);
        assert_eq!(enumerate_naturals(&id, &id, 1000).unwrap().len(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let c = arc(discrete(&["a", "b", "c", "d"]));
        let d = arc(discrete(&["a", "b", "c", "d", "e"]));
        let err = enumerate_functors(&c, &d, 10).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
    }

    #[test]
    fn results_are_duplicate_free() {
        let c = arc(parallel_pair());
        let d = arc(walking_iso());
        let fs = enumerate_functors(&c, &d, 10_000).unwrap();
        for (i, f) in fs.iter().enumerate() {
            assert!(f.violations().is_empty());
            for g in &fs[i + 1..] {
                assert_ne!(f, g);
            }
        }
        // parallel pair → E: object pairs (4) and, for each, 1 choice per arrow
        assert_eq!(fs.len(), 4);
    }

    #[test]
    fn search_oracle_agrees_on_examples() {
        let e = arc(walking_iso());
        assert!(is_equivalence_by_search(&point_at(&e, 0), 10_000).unwrap());
        let collapse = to_terminal(&arc(walking_arrow()));
        assert!(!is_equivalence_by_search(&collapse, 10_000).unwrap());
    }
}
