use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::constructions::{discrete, empty, parallel_pair, terminal, walking_arrow, walking_iso};
use crate::fincat::{enumerate_functors, CatFunctor, FunctorSearch};

/// Every isomorphism of the codomain whose source has a preimage lifts to an
/// isomorphism with that source.
pub fn is_isofibration(p: &CatFunctor) -> bool {
    let (x, y) = (&**p.dom(), &**p.cod());
    (0..y.num_morphisms()).filter(|&phi| y.is_iso(phi)).all(|phi| {
        (0..x.num_objects())
            .filter(|&a| p.obj(a) == y.src(phi))
            .all(|a| x.out_of(a).iter().any(|&psi| p.mor(psi) == phi && x.is_iso(psi)))
    })
}

pub fn is_injective_on_objects(i: &CatFunctor) -> bool {
    i.is_injective_on_objects()
}

/// A commutative square `p ∘ top = bottom ∘ i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingSquare {
    pub i: CatFunctor,
    pub p: CatFunctor,
    pub top: CatFunctor,
    pub bottom: CatFunctor,
}

impl LiftingSquare {
    pub fn new(i: CatFunctor, p: CatFunctor, top: CatFunctor, bottom: CatFunctor) -> Result<Self> {
        let upper = top.then(&p)?;
        let lower = i.then(&bottom)?;
        if upper != lower {
            return Err(Error::invalid("lifting square", "the square does not commute"));
        }
        Ok(LiftingSquare { i, p, top, bottom })
    }

    fn search<'a>(&'a self, filter: &'a dyn Fn(usize, usize) -> bool) -> Option<FunctorSearch<'a>> {
        let (b, x) = (self.i.cod(), self.p.dom());
        let mut s = FunctorSearch::new(b, x);
        for a in 0..self.i.dom().num_objects() {
            let (bi, xa) = (self.i.obj(a), self.top.obj(a));
            match s.fixed_objects[bi] {
                Some(prev) if prev != xa => return None,
                _ => s.fixed_objects[bi] = Some(xa),
            }
        }
        for m in 0..self.i.dom().num_morphisms() {
            let (bm, xm) = (self.i.mor(m), self.top.mor(m));
            match s.fixed_morphisms[bm] {
                Some(prev) if prev != xm => return None,
                _ => s.fixed_morphisms[bm] = Some(xm),
            }
        }
        s.allowed_objects = Some(
            (0..b.num_objects())
                .map(|o| (0..x.num_objects()).filter(|&e| self.p.obj(e) == self.bottom.obj(o)).collect())
                .collect(),
        );
        s.morphism_filter = Some(filter);
        Some(s)
    }

    /// Diagonals `l` with `l ∘ i = top`, `p ∘ l = bottom` and `accept(l)`, up
    /// to `limit` of them.
    pub fn lifts(&self, budget: usize, limit: Option<usize>, accept: &dyn Fn(&CatFunctor) -> bool) -> Result<Vec<CatFunctor>> {
        let filter = |m: usize, e: usize| self.p.mor(e) == self.bottom.mor(m);
        let Some(mut s) = self.search(&filter) else {
            return Ok(Vec::new());
        };
        s.budget = budget;
        let mut out = Vec::new();
        for l in s.run()? {
            if accept(&l) {
                out.push(l);
                if limit.is_some_and(|n| out.len() >= n) {
                    break;
                }
            }
        }
        Ok(out)
    }
}

/// A diagonal filler, or `None` when exhaustive search finds none.
pub fn solve_lifting(sq: &LiftingSquare, budget: usize) -> Result<Option<CatFunctor>> {
    let filter = |m: usize, e: usize| sq.p.mor(e) == sq.bottom.mor(m);
    let Some(s) = sq.search(&filter) else {
        return Ok(None);
    };
    Ok(s.budget(budget).limit(1).run()?.into_iter().next())
}

/// Every commutative square from `i` to `p`.
pub fn squares(i: &CatFunctor, p: &CatFunctor, budget: usize) -> Result<Vec<LiftingSquare>> {
    let mut out = Vec::new();
    for bottom in enumerate_functors(i.cod(), p.cod(), budget)? {
        let lower = i.then(&bottom)?;
        let (a, x) = (i.dom(), p.dom());
        let mut s = FunctorSearch::new(a, x);
        s.allowed_objects =
            Some((0..a.num_objects()).map(|o| (0..x.num_objects()).filter(|&e| p.obj(e) == lower.obj(o)).collect()).collect());
        let filter = |m: usize, e: usize| p.mor(e) == lower.mor(m);
        s.morphism_filter = Some(&filter);
        for top in s.budget(budget).run()? {
            out.push(LiftingSquare { i: i.clone(), p: p.clone(), top, bottom: bottom.clone() });
        }
    }
    Ok(out)
}

/// The first square from some `i ∈ tests` to `p` without a diagonal.
pub fn find_unliftable(tests: &[CatFunctor], p: &CatFunctor, budget: usize) -> Result<Option<LiftingSquare>> {
    for i in tests {
        for sq in squares(i, p, budget)? {
            if solve_lifting(&sq, budget)?.is_none() {
                return Ok(Some(sq));
            }
        }
    }
    Ok(None)
}

pub fn has_rlp(tests: &[CatFunctor], p: &CatFunctor, budget: usize) -> Result<bool> {
    Ok(find_unliftable(tests, p, budget)?.is_none())
}

pub fn has_llp(i: &CatFunctor, tests: &[CatFunctor], budget: usize) -> Result<bool> {
    for p in tests {
        if find_unliftable(std::slice::from_ref(i), p, budget)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Named generating maps for the canonical model structure on Cat.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratingSet {
    pub names: Vec<String>,
    #[serde(skip)]
    pub maps: Vec<CatFunctor>,
}

/// `∅ → pt`, `pt ⊔ pt → [1]` and `parallel pair → [1]`.
pub fn default_cofibrations() -> GeneratingSet {
    let pt = Arc::new(terminal());
    let arrow = Arc::new(walking_arrow());
    let e = CatFunctor::new(Arc::new(empty()), pt, vec![], vec![]).unwrap();
    let two = Arc::new(discrete(&["a", "b"]));
    let ends = CatFunctor::from_names(two, arrow.clone(), &[("a", "a"), ("b", "b")], &[]).unwrap();
    let pair = Arc::new(parallel_pair());
    let collapse = CatFunctor::from_names(pair, arrow, &[("a", "a"), ("b", "b")], &[("s", "f"), ("t", "f")]).unwrap();
    GeneratingSet { names: vec!["empty->pt".into(), "pt+pt->[1]".into(), "parallel->[1]".into()], maps: vec![e, ends, collapse] }
}

/// `pt → E`.
pub fn default_acyclic_cofibrations() -> GeneratingSet {
    let e = Arc::new(walking_iso());
    GeneratingSet { names: vec!["pt->E".into()], maps: vec![crate::fincat::constructions::point_at(&e, 0)] }
}

/// Acyclic fibrations of the canonical structure: surjective-on-objects
/// equivalences, equivalently isofibrations that are equivalences.
pub fn is_acyclic_fibration(p: &CatFunctor) -> bool {
    p.is_equivalence() && is_isofibration(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::constructions::*;

    const B: usize = 100_000;

    #[test]
    fn identity_is_an_isofibration() {
        let e = Arc::new(walking_iso());
        assert!(is_isofibration(&CatFunctor::identity(e)));
    }

    #[test]
    fn point_into_iso_is_not_an_isofibration() {
        let e = Arc::new(walking_iso());
        assert!(!is_isofibration(&point_at(&e, 0)));
    }

    #[test]
    fn identity_square_has_the_top_as_lift() {
        let a = Arc::new(walking_arrow());
        let id = CatFunctor::identity(a.clone());
        let sq = LiftingSquare::new(id.clone(), id.clone(), id.clone(), id.clone()).unwrap();
        assert_eq!(solve_lifting(&sq, B).unwrap(), Some(id));
    }

    #[test]
    fn rlp_against_point_in_iso_matches_isofibration() {
        let j = default_acyclic_cofibrations().maps;
        let e = Arc::new(walking_iso());
        let p = point_at(&e, 0);
        assert_eq!(has_rlp(&j, &p, B).unwrap(), is_isofibration(&p));
        let q = to_terminal(&e);
        assert!(is_isofibration(&q));
        assert!(has_rlp(&j, &q, B).unwrap());
    }

    #[test]
    fn empty_to_point_lifts_against_surjections() {
        let i = default_cofibrations().maps[0].clone();
        let a = Arc::new(walking_arrow());
        assert!(has_llp(&i, &[to_terminal(&a)], B).unwrap());
    }

    #[test]
    fn identity_maps_lift_against_everything() {
        let a = Arc::new(walking_arrow());
        let id = CatFunctor::identity(a.clone());
        let e = Arc::new(walking_iso());
        for p in enumerate_functors(&a, &e, B).unwrap() {
            assert!(has_rlp(std::slice::from_ref(&id), &p, B).unwrap());
        }
    }

    #[test]
    fn collapse_is_not_an_acyclic_fibration() {
        let a = Arc::new(walking_arrow());
        let c = to_terminal(&a);
        assert!(!is_acyclic_fibration(&c));
        assert!(!has_rlp(&default_cofibrations().maps, &c, B).unwrap());
    }
}
