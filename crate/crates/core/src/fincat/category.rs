use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A morphism record: identifier plus source and target object indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category given by an explicit, total composition table.
///
/// Objects and morphisms are addressed by dense indices; identifiers are
/// opaque strings and two categories are equal when their identifiers,
/// endpoints, identities and composition tables agree.
///
/// Construction only checks that the table is total on composable pairs and
/// that every index is in range. The category laws are checked separately by
/// [`FiniteCategory::validate`] so that broken tables can still be reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    out: Vec<Vec<usize>>,
    out_pos: Vec<usize>,
    hom: Vec<Vec<Vec<usize>>>,
    // comp[f][out_pos[g]] = g ∘ f, for src(g) = tgt(f)
    comp: Vec<Vec<usize>>,
    obj_index: HashMap<String, usize>,
    mor_index: HashMap<String, usize>,
}

impl FiniteCategory {
    /// Builds a category from indexed data. `compose(g, f)` is queried for
    /// every pair with `tgt(f) == src(g)` and must return the index of `g ∘ f`.
    pub fn new<F>(
        objects: Vec<String>,
        morphisms: Vec<(String, usize, usize)>,
        identities: Vec<usize>,
        mut compose: F,
    ) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Option<usize>,
    {
        let n = objects.len();
        let mut obj_index = HashMap::with_capacity(n);
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(Error::Duplicate { kind: "object", name: o.clone() });
            }
        }
        let mut mor_index = HashMap::with_capacity(morphisms.len());
        let mut mors = Vec::with_capacity(morphisms.len());
        for (i, (name, s, t)) in morphisms.into_iter().enumerate() {
            if s >= n || t >= n {
                return Err(Error::malformed("morphism", format!("`{name}` has an endpoint out of range")));
            }
            if mor_index.insert(name.clone(), i).is_some() {
                return Err(Error::Duplicate { kind: "morphism", name });
            }
            mors.push(Morphism { name, src: s, tgt: t });
        }
        if identities.len() != n {
            return Err(Error::malformed("category", "one identity per object is required"));
        }
        if let Some(&bad) = identities.iter().find(|&&i| i >= mors.len()) {
            return Err(Error::malformed("category", format!("identity index {bad} out of range")));
        }
        let mut out = vec![Vec::new(); n];
        let mut out_pos = vec![0; mors.len()];
        let mut hom = vec![vec![Vec::new(); n]; n];
        for (i, m) in mors.iter().enumerate() {
            out_pos[i] = out[m.src].len();
            out[m.src].push(i);
            hom[m.src][m.tgt].push(i);
        }
        let mut comp = Vec::with_capacity(mors.len());
        for f in 0..mors.len() {
            let b = mors[f].tgt;
            let mut row = Vec::with_capacity(out[b].len());
            for &g in &out[b] {
                match compose(g, f) {
                    Some(h) if h < mors.len() => row.push(h),
                    Some(h) => return Err(Error::malformed("composition", format!("composite index {h} out of range"))),
                    None => {
                        return Err(Error::malformed(
                            "composition",
                            format!("missing composite {} ∘ {}", mors[g].name, mors[f].name),
                        ))
                    }
                }
            }
            comp.push(row);
        }
        Ok(FiniteCategory { objects, morphisms: mors, identities, out, out_pos, hom, comp, obj_index, mor_index })
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_name(&self, a: usize) -> &str {
        &self.objects[a]
    }

    pub fn morphism_name(&self, f: usize) -> &str {
        &self.morphisms[f].name
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.obj_index.get(name).copied()
    }

    pub fn morphism_index(&self, name: &str) -> Option<usize> {
        self.mor_index.get(name).copied()
    }

    pub fn src(&self, f: usize) -> usize {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.morphisms[f].tgt
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.src(f)] == f
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a][b]
    }

    /// Morphisms with source `a`.
    pub fn out_of(&self, a: usize) -> &[usize] {
        &self.out[a]
    }

    /// `g ∘ f`. Panics unless `tgt(f) == src(g)`.
    pub fn compose(&self, g: usize, f: usize) -> usize {
        assert_eq!(self.tgt(f), self.src(g), "composing non-composable morphisms");
        self.comp[f][self.out_pos[g]]
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        (self.tgt(f) == self.src(g)).then(|| self.comp[f][self.out_pos[g]])
    }

    /// Every composable pair `(g, f)` with its composite.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.morphisms.len()).flat_map(move |f| {
            let b = self.tgt(f);
            self.out[b].iter().map(move |&g| (g, f, self.comp[f][self.out_pos[g]]))
        })
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (a, b) = (self.src(f), self.tgt(f));
        self.hom[b][a]
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == self.identities[a] && self.compose(f, g) == self.identities[b])
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.num_morphisms()).all(|f| self.is_iso(f))
    }

    /// Whether some isomorphism `a → b` exists.
    pub fn isomorphic(&self, a: usize, b: usize) -> bool {
        self.hom[a][b].iter().any(|&f| self.is_iso(f))
    }

    /// Connected components of the underlying graph, as a component label per object.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.num_objects()];
        let mut next = 0;
        let mut adj = vec![Vec::new(); self.num_objects()];
        for m in &self.morphisms {
            adj[m.src].push(m.tgt);
            adj[m.tgt].push(m.src);
        }
        for start in 0..self.num_objects() {
            if label[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            label[start] = next;
            while let Some(a) = stack.pop() {
                for &b in &adj[a] {
                    if label[b] == usize::MAX {
                        label[b] = next;
                        stack.push(b);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Checks every category law on the full table.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (a, &i) in self.identities.iter().enumerate() {
            if self.src(i) != a || self.tgt(i) != a {
                violations.push(Violation::IdentityEndpoints { object: self.objects[a].clone() });
            }
        }
        for (g, f, h) in self.composable_pairs() {
            if self.src(h) != self.src(f) || self.tgt(h) != self.tgt(g) {
                violations.push(Violation::CompositeEndpoints {
                    g: self.morphism_name(g).into(),
                    f: self.morphism_name(f).into(),
                    composite: self.morphism_name(h).into(),
                });
            }
        }
        for f in 0..self.num_morphisms() {
            let (a, b) = (self.src(f), self.tgt(f));
            let ia = self.identities[a];
            let ib = self.identities[b];
            if self.src(ia) == a && self.tgt(ia) == a && self.compose(f, ia) != f {
                violations.push(Violation::RightUnit { f: self.morphism_name(f).into() });
            }
            if self.src(ib) == b && self.tgt(ib) == b && self.compose(ib, f) != f {
                violations.push(Violation::LeftUnit { f: self.morphism_name(f).into() });
            }
        }
        // associativity is only meaningful once endpoints are right
        if violations.iter().all(|v| !matches!(v, Violation::CompositeEndpoints { .. })) {
            for f in 0..self.num_morphisms() {
                for &g in &self.out[self.tgt(f)] {
                    let gf = self.compose(g, f);
                    for &h in &self.out[self.tgt(g)] {
                        let hg = self.compose(h, g);
                        if self.compose(h, gf) != self.compose(hg, f) {
                            violations.push(Violation::Associativity {
                                h: self.morphism_name(h).into(),
                                g: self.morphism_name(g).into(),
                                f: self.morphism_name(f).into(),
                            });
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Full subcategory on the given objects (in the given order), with its inclusion data:
    /// returns the category and the morphism indices of the ambient category it keeps.
    pub fn full_subcategory(&self, objs: &[usize]) -> (FiniteCategory, Vec<usize>) {
        let keep: HashSet<usize> = objs.iter().copied().collect();
        let mors: Vec<usize> =
            (0..self.num_morphisms()).filter(|&f| keep.contains(&self.src(f)) && keep.contains(&self.tgt(f))).collect();
        let sub = self.subcategory(objs, &mors).expect("full subcategories are closed under composition");
        (sub, mors)
    }

    /// Subcategory on the listed objects and morphisms; fails if the data is not
    /// closed under identities and composition.
    pub fn subcategory(&self, objs: &[usize], mors: &[usize]) -> Result<FiniteCategory> {
        let mut obj_new = vec![usize::MAX; self.num_objects()];
        for (i, &o) in objs.iter().enumerate() {
            obj_new[o] = i;
        }
        let mut mor_new = vec![usize::MAX; self.num_morphisms()];
        for (i, &m) in mors.iter().enumerate() {
            if obj_new[self.src(m)] == usize::MAX || obj_new[self.tgt(m)] == usize::MAX {
                return Err(Error::invalid("subcategory", format!("`{}` leaves the object set", self.morphism_name(m))));
            }
            mor_new[m] = i;
        }
        let mut identities = Vec::with_capacity(objs.len());
        for &o in objs {
            let id = self.identities[o];
            if mor_new[id] == usize::MAX {
                return Err(Error::invalid("subcategory", format!("identity of `{}` missing", self.objects[o])));
            }
            identities.push(mor_new[id]);
        }
        for &g in mors {
            for &f in mors {
                if let Some(h) = self.try_compose(g, f) {
                    if mor_new[h] == usize::MAX {
                        return Err(Error::invalid(
                            "subcategory",
                            format!("not closed: {} ∘ {}", self.morphism_name(g), self.morphism_name(f)),
                        ));
                    }
                }
            }
        }
        FiniteCategory::new(
            objs.iter().map(|&o| self.objects[o].clone()).collect(),
            mors.iter().map(|&m| (self.morphisms[m].name.clone(), obj_new[self.src(m)], obj_new[self.tgt(m)])).collect(),
            identities,
            |g, f| Some(mor_new[self.compose(mors[g], mors[f])]),
        )
    }
}

/// One violated category law, named by identifiers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum Violation {
    IdentityEndpoints { object: String },
    CompositeEndpoints { g: String, f: String, composite: String },
    LeftUnit { f: String },
    RightUnit { f: String },
    Associativity { h: String, g: String, f: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IdentityEndpoints { object } => write!(f, "identity of `{object}` has the wrong endpoints"),
            Violation::CompositeEndpoints { g, f: h, composite } => {
                write!(f, "`{g} ∘ {h}` = `{composite}` has the wrong endpoints")
            }
            Violation::LeftUnit { f: h } => write!(f, "`id ∘ {h}` ≠ `{h}`"),
            Violation::RightUnit { f: h } => write!(f, "`{h} ∘ id` ≠ `{h}`"),
            Violation::Associativity { h, g, f: k } => write!(f, "`({h} ∘ {g}) ∘ {k}` ≠ `{h} ∘ ({g} ∘ {k})`"),
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.violations.as_slice() {
            [] => write!(f, "no violations"),
            [first, rest @ ..] => {
                write!(f, "{first}")?;
                if !rest.is_empty() {
                    write!(f, " and {} more", rest.len())?;
                }
                Ok(())
            }
        }
    }
}

/// Builds a category from identifier-level data, the way a parsed document describes it.
#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    identities: Vec<(String, String)>,
    composites: Vec<(String, String, String)>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: impl Into<String>) -> &mut Self {
        self.objects.push(name.into());
        self
    }

    pub fn morphism(&mut self, name: impl Into<String>, src: impl Into<String>, tgt: impl Into<String>) -> &mut Self {
        self.morphisms.push((name.into(), src.into(), tgt.into()));
        self
    }

    pub fn identity(&mut self, object: impl Into<String>, morphism: impl Into<String>) -> &mut Self {
        self.identities.push((object.into(), morphism.into()));
        self
    }

    /// Records `g ∘ f = h`.
    pub fn composite(&mut self, g: impl Into<String>, f: impl Into<String>, h: impl Into<String>) -> &mut Self {
        self.composites.push((g.into(), f.into(), h.into()));
        self
    }

    /// Composites with an identity on either side are filled in automatically when
    /// not listed explicitly.
    pub fn build(&self) -> Result<FiniteCategory> {
        let mut obj_index = HashMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            if obj_index.insert(o.as_str(), i).is_some() {
                return Err(Error::Duplicate { kind: "object", name: o.clone() });
            }
        }
        let obj = |name: &str| obj_index.get(name).copied().ok_or_else(|| Error::unknown("object", name));
        let mut mor_index = HashMap::new();
        let mut mors = Vec::new();
        for (i, (m, s, t)) in self.morphisms.iter().enumerate() {
            if mor_index.insert(m.as_str(), i).is_some() {
                return Err(Error::Duplicate { kind: "morphism", name: m.clone() });
            }
            mors.push((m.clone(), obj(s)?, obj(t)?));
        }
        let mor = |name: &str| mor_index.get(name).copied().ok_or_else(|| Error::unknown("morphism", name));
        let mut identities = vec![usize::MAX; self.objects.len()];
        for (o, m) in &self.identities {
            let (o, m) = (obj(o)?, mor(m)?);
            if identities[o] != usize::MAX {
                return Err(Error::Duplicate { kind: "identity", name: self.objects[o].clone() });
            }
            identities[o] = m;
        }
        if let Some(o) = identities.iter().position(|&i| i == usize::MAX) {
            return Err(Error::malformed("category", format!("object `{}` has no identity", self.objects[o])));
        }
        let mut table: HashMap<(usize, usize), usize> = HashMap::new();
        for (g, f, h) in &self.composites {
            let key = (mor(g)?, mor(f)?);
            if table.insert(key, mor(h)?).is_some() {
                return Err(Error::Duplicate { kind: "composite", name: format!("{g} ∘ {f}") });
            }
        }
        let is_id: HashSet<usize> = identities.iter().copied().collect();
        FiniteCategory::new(self.objects.clone(), mors, identities, |g, f| {
            table.get(&(g, f)).copied().or_else(|| {
                if is_id.contains(&g) {
                    Some(f)
                } else if is_id.contains(&f) {
                    Some(g)
                } else {
                    None
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow() -> FiniteCategory {
        let mut b = CategoryBuilder::new();
        b.object("a").object("b").morphism("id_a", "a", "a").morphism("id_b", "b", "b").morphism("f", "a", "b");
        b.identity("a", "id_a").identity("b", "id_b");
        b.build().unwrap()
    }

    #[test]
    fn walking_arrow_is_valid() {
        let c = arrow();
        assert_eq!(c.num_objects(), 2);
        assert_eq!(c.num_morphisms(), 3);
        assert!(c.validate().is_valid());
    }

    #[test]
    fn associativity_violation_is_named() {
        // one object, {1, x, y}, with (y∘x)∘y ≠ y∘(x∘y)
        let mut b = CategoryBuilder::new();
        b.object("*").morphism("1", "*", "*").morphism("x", "*", "*").morphism("y", "*", "*").identity("*", "1");
        b.composite("x", "x", "x").composite("x", "y", "y").composite("y", "x", "x").composite("y", "y", "x");
        let c = b.build().unwrap();
        let report = c.validate();
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| matches!(v, Violation::Associativity { .. })));
        let names: Vec<_> = report
            .violations
            .iter()
            .filter_map(|v| match v {
                Violation::Associativity { h, g, f } => Some((h.clone(), g.clone(), f.clone())),
                _ => None,
            })
            .collect();
        for (h, g, f) in &names {
            let (h, g, f) = (c.morphism_index(h).unwrap(), c.morphism_index(g).unwrap(), c.morphism_index(f).unwrap());
            assert_ne!(c.compose(h, c.compose(g, f)), c.compose(c.compose(h, g), f));
        }
    }

    #[test]
    fn missing_composite_is_an_error() {
        let mut b = CategoryBuilder::new();
        b.object("*").morphism("1", "*", "*").morphism("x", "*", "*").identity("*", "1");
        assert!(matches!(b.build(), Err(Error::Malformed { .. })));
    }

    #[test]
    fn unknown_object_is_reported() {
        let mut b = CategoryBuilder::new();
        b.object("a").morphism("id", "a", "a").identity("a", "id").morphism("f", "a", "zz");
        assert_eq!(b.build().unwrap_err(), Error::unknown("object", "zz"));
    }

    #[test]
    fn inverse_detection() {
        let c = arrow();
        let f = c.morphism_index("f").unwrap();
        assert!(!c.is_iso(f));
        assert!(c.is_iso(c.identity(0)));
    }
}
