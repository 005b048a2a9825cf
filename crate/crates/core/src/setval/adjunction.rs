//! Certification of adjunctions on a finite corpus of objects and maps.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use super::diagram::{enumerate_maps, DiagramMap, SetDiagram};
use super::kan::{lan, lan_counit, lan_map, ran_map, ran_unit, ran_with_budget, LeftKan, RightKan};
use crate::error::Result;
use crate::fincat::{CatFunctor, DEFAULT_SEARCH_BUDGET};

/// A category whose hom-sets can be enumerated.
pub trait HomCategory {
    type Obj: Clone + PartialEq;
    type Map: Clone + PartialEq;

    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<Self::Map>>;
    fn source(&self, f: &Self::Map) -> Self::Obj;
    fn target(&self, f: &Self::Map) -> Self::Obj;
    fn identity(&self, a: &Self::Obj) -> Self::Map;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Map, f: &Self::Map) -> Result<Self::Map>;
    /// An encoding that tells apart parallel maps.
    fn key(&self, f: &Self::Map) -> Vec<usize>;
    /// Where two parallel maps differ, for reports.
    fn difference(&self, f: &Self::Map, g: &Self::Map) -> Option<String>;
}

/// Functors `L: A → B`, `R: B → A` with a candidate unit and counit.
pub trait AdjunctionData {
    type A: HomCategory;
    type B: HomCategory;

    fn left_category(&self) -> &Self::A;
    fn right_category(&self) -> &Self::B;
    fn left(&self, a: &Obj<Self::A>) -> Result<Obj<Self::B>>;
    fn right(&self, b: &Obj<Self::B>) -> Result<Obj<Self::A>>;
    fn left_map(&self, f: &Map<Self::A>) -> Result<Map<Self::B>>;
    fn right_map(&self, g: &Map<Self::B>) -> Result<Map<Self::A>>;
    /// `a → R L a`
    fn unit(&self, a: &Obj<Self::A>) -> Result<Map<Self::A>>;
    /// `L R b → b`
    fn counit(&self, b: &Obj<Self::B>) -> Result<Map<Self::B>>;
}

pub type Obj<C> = <C as HomCategory>::Obj;
pub type Map<C> = <C as HomCategory>::Map;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub passed: bool,
    pub checks: usize,
    pub failure: Option<String>,
}

/// The corpus an adjunction is certified on.
pub struct Corpus<'a, D: AdjunctionData + ?Sized> {
    pub left_objects: &'a [Obj<D::A>],
    pub right_objects: &'a [Obj<D::B>],
    pub left_maps: &'a [Map<D::A>],
    pub right_maps: &'a [Map<D::B>],
}

struct Run {
    checks: usize,
    failure: Option<String>,
}

impl Run {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(msg());
        }
        self.failure.is_none()
    }
}

fn differ<C: HomCategory>(c: &C, f: &C::Map, g: &C::Map) -> String {
    c.difference(f, g).unwrap_or_else(|| "endpoints".into())
}

/// Checks unit and counit naturality on the corpus maps, both triangle
/// identities, and that `g ↦ R(g) ∘ η` is a bijection
/// `hom(L a, b) ≅ hom(a, R b)` with inverse `f ↦ ε ∘ L(f)`, natural in both
/// variables along the corpus maps. Stops at the first failure.
pub fn certify_adjunction<D: AdjunctionData>(adj: &D, corpus: &Corpus<'_, D>) -> Result<AdjunctionReport> {
    let (ca, cb) = (adj.left_category(), adj.right_category());
    let mut run = Run { checks: 0, failure: None };
    'all: {
        for (k, f) in corpus.left_maps.iter().enumerate() {
            let (a, a2) = (ca.source(f), ca.target(f));
            let lhs = ca.compose(&adj.unit(&a2)?, f)?;
            let rhs = ca.compose(&adj.right_map(&adj.left_map(f)?)?, &adj.unit(&a)?)?;
            if !run.check(lhs == rhs, || format!("unit not natural along left map {k}: {}", differ(ca, &lhs, &rhs))) {
                break 'all;
            }
        }
        for (k, g) in corpus.right_maps.iter().enumerate() {
            let (b, b2) = (cb.source(g), cb.target(g));
            let lhs = cb.compose(g, &adj.counit(&b)?)?;
            let rhs = cb.compose(&adj.counit(&b2)?, &adj.left_map(&adj.right_map(g)?)?)?;
            if !run.check(lhs == rhs, || format!("counit not natural along right map {k}: {}", differ(cb, &lhs, &rhs))) {
                break 'all;
            }
        }
        for a in corpus.left_objects {
            let la = adj.left(a)?;
            let t = cb.compose(&adj.counit(&la)?, &adj.left_map(&adj.unit(a)?)?)?;
            let id = cb.identity(&la);
            if !run.check(t == id, || format!("triangle ε_L ∘ L(η) fails at {}", differ(cb, &t, &id))) {
                break 'all;
            }
        }
        for b in corpus.right_objects {
            let rb = adj.right(b)?;
            let t = ca.compose(&adj.right_map(&adj.counit(b)?)?, &adj.unit(&rb)?)?;
            let id = ca.identity(&rb);
            if !run.check(t == id, || format!("triangle R(ε) ∘ η_R fails at {}", differ(ca, &t, &id))) {
                break 'all;
            }
        }
        for (i, a) in corpus.left_objects.iter().enumerate() {
            let la = adj.left(a)?;
            let eta = adj.unit(a)?;
            for (j, b) in corpus.right_objects.iter().enumerate() {
                let rb = adj.right(b)?;
                let eps = adj.counit(b)?;
                let phi = |g: &Map<D::B>| -> Result<Map<D::A>> { ca.compose(&adj.right_map(g)?, &eta) };
                let left_hom = cb.hom(&la, b)?;
                let right_hom = ca.hom(a, &rb)?;
                let images: Vec<Map<D::A>> = left_hom.iter().map(&phi).collect::<Result<_>>()?;
                let hit: HashSet<Vec<usize>> = images.iter().map(|f| ca.key(f)).collect();
                let ok = hit.len() == images.len()
                    && images.len() == right_hom.len()
                    && right_hom.iter().all(|f| hit.contains(&ca.key(f)));
                if !run.check(ok, || {
                    format!(
                        "transposition is not a bijection for left object {i}, right object {j} ({} vs {} maps)",
                        left_hom.len(),
                        right_hom.len()
                    )
                }) {
                    break 'all;
                }
                for (g, f) in left_hom.iter().zip(&images) {
                    let back = cb.compose(&eps, &adj.left_map(f)?)?;
                    if !run.check(back == *g, || format!("inverse transposition fails at {}", differ(cb, &back, g))) {
                        break 'all;
                    }
                    for (k, m) in corpus.right_maps.iter().enumerate() {
                        if cb.source(m) != *b {
                            continue;
                        }
                        let lhs = phi(&cb.compose(m, g)?)?;
                        let rhs = ca.compose(&adj.right_map(m)?, f)?;
                        if !run.check(lhs == rhs, || {
                            format!("transposition not natural along right map {k}: {}", differ(ca, &lhs, &rhs))
                        }) {
                            break 'all;
                        }
                    }
                    for (k, h) in corpus.left_maps.iter().enumerate() {
                        if ca.target(h) != *a {
                            continue;
                        }
                        let lhs = ca.compose(&adj.right_map(&cb.compose(g, &adj.left_map(h)?)?)?, &adj.unit(&ca.source(h))?)?;
                        let rhs = ca.compose(f, h)?;
                        if !run.check(lhs == rhs, || {
                            format!("transposition not natural along left map {k}: {}", differ(ca, &lhs, &rhs))
                        }) {
                            break 'all;
                        }
                    }
                }
            }
        }
    }
    Ok(AdjunctionReport { passed: run.failure.is_none(), checks: run.checks, failure: run.failure })
}

/// Set diagrams over one shape, with hom-set enumeration under a budget.
#[derive(Clone, Debug)]
pub struct Diagrams {
    pub budget: usize,
}

impl Default for Diagrams {
    fn default() -> Self {
        Diagrams { budget: DEFAULT_SEARCH_BUDGET }
    }
}

impl HomCategory for Diagrams {
    type Obj = Arc<SetDiagram>;
    type Map = DiagramMap;

    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<DiagramMap>> {
        enumerate_maps(a, b, self.budget)
    }

    fn source(&self, f: &DiagramMap) -> Self::Obj {
        f.source().clone()
    }

    fn target(&self, f: &DiagramMap) -> Self::Obj {
        f.target().clone()
    }

    fn identity(&self, a: &Self::Obj) -> DiagramMap {
        DiagramMap::identity(a)
    }

    fn compose(&self, g: &DiagramMap, f: &DiagramMap) -> Result<DiagramMap> {
        f.then(g)
    }

    fn key(&self, f: &DiagramMap) -> Vec<usize> {
        f.components().concat()
    }

    fn difference(&self, f: &DiagramMap, g: &DiagramMap) -> Option<String> {
        f.first_difference(g).map(|c| format!("component `{}`", f.shape().object_name(c)))
    }
}

/// The identity adjunction on diagrams over one shape.
pub struct IdentityAdjunction(pub Diagrams);

impl AdjunctionData for IdentityAdjunction {
    type A = Diagrams;
    type B = Diagrams;

    fn left_category(&self) -> &Diagrams {
        &self.0
    }
    fn right_category(&self) -> &Diagrams {
        &self.0
    }
    fn left(&self, a: &Arc<SetDiagram>) -> Result<Arc<SetDiagram>> {
        Ok(a.clone())
    }
    fn right(&self, b: &Arc<SetDiagram>) -> Result<Arc<SetDiagram>> {
        Ok(b.clone())
    }
    fn left_map(&self, f: &DiagramMap) -> Result<DiagramMap> {
        Ok(f.clone())
    }
    fn right_map(&self, g: &DiagramMap) -> Result<DiagramMap> {
        Ok(g.clone())
    }
    fn unit(&self, a: &Arc<SetDiagram>) -> Result<DiagramMap> {
        Ok(DiagramMap::identity(a))
    }
    fn counit(&self, b: &Arc<SetDiagram>) -> Result<DiagramMap> {
        Ok(DiagramMap::identity(b))
    }
}

/// Values computed from a diagram, keyed by its address. Each entry keeps
/// its diagram alive, so an address is never reused while cached.
struct Memo<T>(RefCell<HashMap<*const SetDiagram, (Arc<SetDiagram>, Arc<T>)>>);

impl<T> Default for Memo<T> {
    fn default() -> Self {
        Memo(RefCell::new(HashMap::new()))
    }
}

impl<T> Memo<T> {
    fn get(&self, x: &Arc<SetDiagram>, make: impl FnOnce() -> Result<T>) -> Result<Arc<T>> {
        if let Some((_, v)) = self.0.borrow().get(&Arc::as_ptr(x)) {
            return Ok(v.clone());
        }
        let v = Arc::new(make()?);
        self.0.borrow_mut().insert(Arc::as_ptr(x), (x.clone(), v.clone()));
        Ok(v)
    }
}

/// `ι_! ⊣ ι*` on diagrams.
pub struct LanAdjunction {
    iota: CatFunctor,
    diagrams: Diagrams,
    kans: Memo<LeftKan>,
    restricted: Memo<SetDiagram>,
}

impl LanAdjunction {
    pub fn new(iota: CatFunctor, diagrams: Diagrams) -> Self {
        LanAdjunction { iota, diagrams, kans: Memo::default(), restricted: Memo::default() }
    }

    fn kan(&self, x: &Arc<SetDiagram>) -> Result<Arc<LeftKan>> {
        self.kans.get(x, || lan(&self.iota, x))
    }
}

impl AdjunctionData for LanAdjunction {
    type A = Diagrams;
    type B = Diagrams;

    fn left_category(&self) -> &Diagrams {
        &self.diagrams
    }
    fn right_category(&self) -> &Diagrams {
        &self.diagrams
    }
    fn left(&self, a: &Arc<SetDiagram>) -> Result<Arc<SetDiagram>> {
        Ok(self.kan(a)?.diagram().clone())
    }
    fn right(&self, b: &Arc<SetDiagram>) -> Result<Arc<SetDiagram>> {
        self.restricted.get(b, || b.restrict(&self.iota))
    }
    fn left_map(&self, f: &DiagramMap) -> Result<DiagramMap> {
        lan_map(&*self.kan(f.source())?, &*self.kan(f.target())?, f)
    }
    fn right_map(&self, g: &DiagramMap) -> Result<DiagramMap> {
        g.restrict(&self.iota)
    }
    fn unit(&self, a: &Arc<SetDiagram>) -> Result<DiagramMap> {
        self.kan(a)?.unit()
    }
    fn counit(&self, b: &Arc<SetDiagram>) -> Result<DiagramMap> {
        lan_counit(&*self.kan(&self.right(b)?)?, b)
    }
}

/// `ι* ⊣ ι_*` on diagrams.
pub struct RanAdjunction {
    iota: CatFunctor,
    diagrams: Diagrams,
    kans: Memo<RightKan>,
    restricted: Memo<SetDiagram>,
}

impl RanAdjunction {
    pub fn new(iota: CatFunctor, diagrams: Diagrams) -> Self {
        RanAdjunction { iota, diagrams, kans: Memo::default(), restricted: Memo::default() }
    }

    fn kan(&self, x: &Arc<SetDiagram>) -> Result<Arc<RightKan>> {
        self.kans.get(x, || ran_with_budget(&self.iota, x, self.diagrams.budget))
    }
}

impl AdjunctionData for RanAdjunction {
    type A = Diagrams;
    type B = Diagrams;

    fn left_category(&self) -> &Diagrams {
        &self.diagrams
    }
    fn right_category(&self) -> &Diagrams {
        &self.diagrams
    }
    fn left(&self, a: &Arc<SetDiagram>) -> Result<Arc<SetDiagram>> {
        self.restricted.get(a, || a.restrict(&self.iota))
    }
    fn right(&self, b: &Arc<SetDiagram>) -> Result<Arc<SetDiagram>> {
        Ok(self.kan(b)?.diagram().clone())
    }
    fn left_map(&self, f: &DiagramMap) -> Result<DiagramMap> {
        f.restrict(&self.iota)
    }
    fn right_map(&self, g: &DiagramMap) -> Result<DiagramMap> {
        ran_map(&*self.kan(g.source())?, &*self.kan(g.target())?, g)
    }
    fn unit(&self, a: &Arc<SetDiagram>) -> Result<DiagramMap> {
        ran_unit(&*self.kan(&self.left(a)?)?, a)
    }
    fn counit(&self, b: &Arc<SetDiagram>) -> Result<DiagramMap> {
        self.kan(b)?.counit()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::constructions::*;

    fn corpus_on_arrow() -> (Vec<Arc<SetDiagram>>, Vec<DiagramMap>) {
        let a = Arc::new(walking_arrow());
        let x = Arc::new(
            SetDiagram::from_names(a.clone(), &[("a", vec!["x", "y"]), ("b", vec!["u"])], &[("f", vec![("x", "u"), ("y", "u")])])
                .unwrap(),
        );
        let t = Arc::new(SetDiagram::terminal(a));
        let maps = enumerate_maps(&x, &t, 100).unwrap().into_iter().chain(enumerate_maps(&t, &x, 100).unwrap()).collect();
        (vec![x, t], maps)
    }

    #[test]
    fn identity_adjunction_passes() {
        let (objs, maps) = corpus_on_arrow();
        let adj = IdentityAdjunction(Diagrams::default());
        let corpus = Corpus { left_objects: &objs, right_objects: &objs, left_maps: &maps, right_maps: &maps };
        let r = certify_adjunction(&adj, &corpus).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.checks > 0);
    }

    struct Corrupted(IdentityAdjunction);

    impl AdjunctionData for Corrupted {
        type A = Diagrams;
        type B = Diagrams;
        fn left_category(&self) -> &Diagrams {
            &self.0 .0
        }
        fn right_category(&self) -> &Diagrams {
            &self.0 .0
        }
        fn left(&self, a: &Arc<SetDiagram>) -> Result<Arc<SetDiagram>> {
            self.0.left(a)
        }
        fn right(&self, b: &Arc<SetDiagram>) -> Result<Arc<SetDiagram>> {
            self.0.right(b)
        }
        fn left_map(&self, f: &DiagramMap) -> Result<DiagramMap> {
            self.0.left_map(f)
        }
        fn right_map(&self, g: &DiagramMap) -> Result<DiagramMap> {
            self.0.right_map(g)
        }
        fn unit(&self, a: &Arc<SetDiagram>) -> Result<DiagramMap> {
            // swap the two elements at `a` when there are two
            let mut comps = DiagramMap::identity(a).components().to_vec();
            if comps[0].len() == 2 {
                comps[0] = vec![1, 0];
            }
            DiagramMap::new_unchecked(a.clone(), a.clone(), comps)
        }
        fn counit(&self, b: &Arc<SetDiagram>) -> Result<DiagramMap> {
            self.0.counit(b)
        }
    }

    #[test]
    fn corrupted_unit_is_named() {
        let (objs, _) = corpus_on_arrow();
        let adj = Corrupted(IdentityAdjunction(Diagrams::default()));
        let corpus = Corpus { left_objects: &objs, right_objects: &objs, left_maps: &[], right_maps: &[] };
        let r = certify_adjunction(&adj, &corpus).unwrap();
        assert!(!r.passed);
        assert!(r.failure.unwrap().contains("component `a`"));
    }

    #[test]
    fn kan_adjunctions_on_a_small_functor() {
        let (objs, maps) = corpus_on_arrow();
        let d = Arc::new(ordinal(2));
        let iota =
            CatFunctor::from_names(objs[0].shape().clone(), d.clone(), &[("a", "0"), ("b", "2")], &[("f", "0->2")]).unwrap();
        let y1 = Arc::new(SetDiagram::terminal(d.clone()));
        let y2 = Arc::new(SetDiagram::representable(d, 1));
        let ys = vec![y1.clone(), y2.clone()];
        let ymaps = enumerate_maps(&y2, &y1, 100).unwrap();
        let lan_adj = LanAdjunction::new(iota.clone(), Diagrams::default());
        let corpus = Corpus { left_objects: &objs, right_objects: &ys, left_maps: &maps, right_maps: &ymaps };
        let r = certify_adjunction(&lan_adj, &corpus).unwrap();
        assert!(r.passed, "{r:?}");
        let ran_adj = RanAdjunction::new(iota, Diagrams::default());
        let corpus = Corpus { left_objects: &ys, right_objects: &objs, left_maps: &ymaps, right_maps: &maps };
        let r = certify_adjunction(&ran_adj, &corpus).unwrap();
        assert!(r.passed, "{r:?}");
    }
}
