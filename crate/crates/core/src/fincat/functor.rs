use std::sync::Arc;

use serde::Serialize;

use super::category::FiniteCategory;
use crate::error::{Error, Result};

/// A functor between finite categories, stored as index maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatFunctor {
    dom: Arc<FiniteCategory>,
    cod: Arc<FiniteCategory>,
    obj_map: Vec<usize>,
    mor_map: Vec<usize>,
}

/// A failure of functoriality, named by identifiers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum FunctorViolation {
    Endpoints { morphism: String },
    Identity { object: String },
    Composition { g: String, f: String },
}

impl CatFunctor {
    /// Builds a functor and checks functoriality.
    pub fn new(dom: Arc<FiniteCategory>, cod: Arc<FiniteCategory>, obj_map: Vec<usize>, mor_map: Vec<usize>) -> Result<Self> {
        let f = Self::new_unchecked(dom, cod, obj_map, mor_map)?;
        if let Some(v) = f.violations().into_iter().next() {
            return Err(Error::invalid("functor", format!("{v:?}")));
        }
        Ok(f)
    }

    /// Builds a functor checking only that the maps have the right shape.
    pub fn new_unchecked(
        dom: Arc<FiniteCategory>,
        cod: Arc<FiniteCategory>,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Result<Self> {
        if obj_map.len() != dom.num_objects() || mor_map.len() != dom.num_morphisms() {
            return Err(Error::malformed("functor", "maps do not cover the domain"));
        }
        if obj_map.iter().any(|&o| o >= cod.num_objects()) || mor_map.iter().any(|&m| m >= cod.num_morphisms()) {
            return Err(Error::malformed("functor", "image index out of range"));
        }
        Ok(CatFunctor { dom, cod, obj_map, mor_map })
    }

    pub fn from_names(
        dom: Arc<FiniteCategory>,
        cod: Arc<FiniteCategory>,
        objects: &[(&str, &str)],
        morphisms: &[(&str, &str)],
    ) -> Result<Self> {
        let mut obj_map = vec![usize::MAX; dom.num_objects()];
        for (a, b) in objects {
            let a = dom.object_index(a).ok_or_else(|| Error::unknown("object", *a))?;
            obj_map[a] = cod.object_index(b).ok_or_else(|| Error::unknown("object", *b))?;
        }
        let mut mor_map = vec![usize::MAX; dom.num_morphisms()];
        for (f, g) in morphisms {
            let f = dom.morphism_index(f).ok_or_else(|| Error::unknown("morphism", *f))?;
            mor_map[f] = cod.morphism_index(g).ok_or_else(|| Error::unknown("morphism", *g))?;
        }
        // identities may be left implicit
        for a in 0..dom.num_objects() {
            let id = dom.identity(a);
            if mor_map[id] == usize::MAX && obj_map[a] != usize::MAX {
                mor_map[id] = cod.identity(obj_map[a]);
            }
        }
        if let Some(a) = obj_map.iter().position(|&o| o == usize::MAX) {
            return Err(Error::malformed("functor", format!("object `{}` unmapped", dom.object_name(a))));
        }
        if let Some(f) = mor_map.iter().position(|&o| o == usize::MAX) {
            return Err(Error::malformed("functor", format!("morphism `{}` unmapped", dom.morphism_name(f))));
        }
        Self::new(dom, cod, obj_map, mor_map)
    }

    pub fn identity(c: Arc<FiniteCategory>) -> Self {
        let obj_map = (0..c.num_objects()).collect();
        let mor_map = (0..c.num_morphisms()).collect();
        CatFunctor { dom: c.clone(), cod: c, obj_map, mor_map }
    }

    pub fn dom(&self) -> &Arc<FiniteCategory> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteCategory> {
        &self.cod
    }

    pub fn obj(&self, a: usize) -> usize {
        self.obj_map[a]
    }

    pub fn mor(&self, f: usize) -> usize {
        self.mor_map[f]
    }

    pub fn obj_map(&self) -> &[usize] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[usize] {
        &self.mor_map
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &CatFunctor) -> Result<CatFunctor> {
        if self.cod != other.dom {
            return Err(Error::invalid("functor composite", "codomain and domain differ"));
        }
        Ok(CatFunctor {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            obj_map: self.obj_map.iter().map(|&o| other.obj_map[o]).collect(),
            mor_map: self.mor_map.iter().map(|&m| other.mor_map[m]).collect(),
        })
    }

    pub fn violations(&self) -> Vec<FunctorViolation> {
        let (c, d) = (&*self.dom, &*self.cod);
        let mut out = Vec::new();
        for f in 0..c.num_morphisms() {
            let g = self.mor_map[f];
            if d.src(g) != self.obj_map[c.src(f)] || d.tgt(g) != self.obj_map[c.tgt(f)] {
                out.push(FunctorViolation::Endpoints { morphism: c.morphism_name(f).into() });
            }
        }
        for a in 0..c.num_objects() {
            if self.mor_map[c.identity(a)] != d.identity(self.obj_map[a]) {
                out.push(FunctorViolation::Identity { object: c.object_name(a).into() });
            }
        }
        if out.is_empty() {
            for (g, f, h) in c.composable_pairs() {
                if d.compose(self.mor_map[g], self.mor_map[f]) != self.mor_map[h] {
                    out.push(FunctorViolation::Composition { g: c.morphism_name(g).into(), f: c.morphism_name(f).into() });
                }
            }
        }
        out
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.cod.num_objects()];
        self.obj_map.iter().all(|&o| !std::mem::replace(&mut seen[o], true))
    }

    pub fn is_injective_on_morphisms(&self) -> bool {
        let mut seen = vec![false; self.cod.num_morphisms()];
        self.mor_map.iter().all(|&o| !std::mem::replace(&mut seen[o], true))
    }

    pub fn is_surjective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.cod.num_objects()];
        for &o in &self.obj_map {
            seen[o] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_full(&self) -> bool {
        let (c, d) = (&*self.dom, &*self.cod);
        (0..c.num_objects()).all(|a| {
            (0..c.num_objects()).all(|b| {
                let target = d.hom(self.obj_map[a], self.obj_map[b]);
                let image: Vec<usize> = c.hom(a, b).iter().map(|&f| self.mor_map[f]).collect();
                target.iter().all(|g| image.contains(g))
            })
        })
    }

    pub fn is_faithful(&self) -> bool {
        let c = &*self.dom;
        (0..c.num_objects()).all(|a| {
            (0..c.num_objects()).all(|b| {
                let mut image: Vec<usize> = c.hom(a, b).iter().map(|&f| self.mor_map[f]).collect();
                image.sort_unstable();
                image.windows(2).all(|w| w[0] != w[1])
            })
        })
    }

    pub fn is_essentially_surjective(&self) -> bool {
        let d = &*self.cod;
        (0..d.num_objects()).all(|y| self.obj_map.iter().any(|&x| d.isomorphic(x, y)))
    }

    /// Full, faithful and essentially surjective.
    pub fn is_equivalence(&self) -> bool {
        self.is_full() && self.is_faithful() && self.is_essentially_surjective()
    }

    /// Identifier-level description: object images then morphism images.
    pub fn describe(&self) -> (Vec<(String, String)>, Vec<(String, String)>) {
        let objs = (0..self.dom.num_objects())
            .map(|a| (self.dom.object_name(a).to_string(), self.cod.object_name(self.obj_map[a]).to_string()))
            .collect();
        let mors = (0..self.dom.num_morphisms())
            .map(|f| (self.dom.morphism_name(f).to_string(), self.cod.morphism_name(self.mor_map[f]).to_string()))
            .collect();
        (objs, mors)
    }
}

/// A natural transformation between parallel functors, one component per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalTransformation {
    source: CatFunctor,
    target: CatFunctor,
    components: Vec<usize>,
}

impl NaturalTransformation {
    pub fn new(source: CatFunctor, target: CatFunctor, components: Vec<usize>) -> Result<Self> {
        if source.dom != target.dom || source.cod != target.cod {
            return Err(Error::invalid("natural transformation", "functors are not parallel"));
        }
        if components.len() != source.dom.num_objects() {
            return Err(Error::malformed("natural transformation", "one component per object required"));
        }
        let t = NaturalTransformation { source, target, components };
        if let Some(m) = t.first_unnatural() {
            return Err(Error::invalid("natural transformation", format!("square at `{m}` fails")));
        }
        Ok(t)
    }

    pub fn identity(f: &CatFunctor) -> Self {
        let components = (0..f.dom.num_objects()).map(|a| f.cod.identity(f.obj(a))).collect();
        NaturalTransformation { source: f.clone(), target: f.clone(), components }
    }

    pub fn source(&self) -> &CatFunctor {
        &self.source
    }

    pub fn target(&self) -> &CatFunctor {
        &self.target
    }

    pub fn component(&self, a: usize) -> usize {
        self.components[a]
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    fn first_unnatural(&self) -> Option<String> {
        let (c, d) = (&*self.source.dom, &*self.source.cod);
        for a in 0..c.num_objects() {
            let m = self.components[a];
            if d.src(m) != self.source.obj(a) || d.tgt(m) != self.target.obj(a) {
                return Some(c.object_name(a).to_string());
            }
        }
        (0..c.num_morphisms())
            .find(|&f| {
                let (a, b) = (c.src(f), c.tgt(f));
                d.compose(self.components[b], self.source.mor(f)) != d.compose(self.target.mor(f), self.components[a])
            })
            .map(|f| c.morphism_name(f).to_string())
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(|&m| self.source.cod.is_iso(m))
    }
}
