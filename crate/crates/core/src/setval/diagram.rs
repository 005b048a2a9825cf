use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::solve::solve_families;
use crate::error::{Error, Result};
use crate::fincat::{CatFunctor, FiniteCategory};

/// A functor from a finite category to finite sets.
///
/// `maps[m][x]` is the index in `sets[tgt m]` of the image of element `x` of
/// `sets[src m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetDiagram {
    shape: Arc<FiniteCategory>,
    sets: Vec<Vec<String>>,
    maps: Vec<Vec<usize>>,
}

impl SetDiagram {
    /// Builds a diagram and checks functoriality on the full table.
    pub fn new(shape: Arc<FiniteCategory>, sets: Vec<Vec<String>>, maps: Vec<Vec<usize>>) -> Result<Self> {
        let d = Self::new_unchecked(shape, sets, maps)?;
        if let Some(v) = d.violations().into_iter().next() {
            return Err(Error::invalid("diagram", v));
        }
        Ok(d)
    }

    /// Checks shapes and ranges only.
    pub fn new_unchecked(shape: Arc<FiniteCategory>, sets: Vec<Vec<String>>, maps: Vec<Vec<usize>>) -> Result<Self> {
        if sets.len() != shape.num_objects() || maps.len() != shape.num_morphisms() {
            return Err(Error::malformed("diagram", "one set per object and one map per morphism required"));
        }
        for (c, s) in sets.iter().enumerate() {
            let mut seen = HashSet::new();
            if let Some(x) = s.iter().find(|x| !seen.insert(x.as_str())) {
                return Err(Error::Duplicate { kind: "element", name: format!("{x}@{}", shape.object_name(c)) });
            }
        }
        for (m, f) in maps.iter().enumerate() {
            let (a, b) = (shape.src(m), shape.tgt(m));
            if f.len() != sets[a].len() || f.iter().any(|&y| y >= sets[b].len()) {
                return Err(Error::malformed(
                    "diagram",
                    format!("map for `{}` does not match its endpoints", shape.morphism_name(m)),
                ));
            }
        }
        Ok(SetDiagram { shape, sets, maps })
    }

    /// Builds from identifiers; maps of identity morphisms may be omitted.
    pub fn from_names(
        shape: Arc<FiniteCategory>,
        sets: &[(&str, Vec<&str>)],
        maps: &[(&str, Vec<(&str, &str)>)],
    ) -> Result<Self> {
        let mut s = vec![Vec::new(); shape.num_objects()];
        for (c, elems) in sets {
            let c = shape.object_index(c).ok_or_else(|| Error::unknown("object", *c))?;
            s[c] = elems.iter().map(|e| e.to_string()).collect();
        }
        let mut m: Vec<Option<Vec<usize>>> = vec![None; shape.num_morphisms()];
        for (f, pairs) in maps {
            let fi = shape.morphism_index(f).ok_or_else(|| Error::unknown("morphism", *f))?;
            let (a, b) = (shape.src(fi), shape.tgt(fi));
            let mut table = vec![usize::MAX; s[a].len()];
            for (x, y) in pairs {
                let xi = s[a].iter().position(|e| e == x).ok_or_else(|| Error::unknown("element", *x))?;
                let yi = s[b].iter().position(|e| e == y).ok_or_else(|| Error::unknown("element", *y))?;
                table[xi] = yi;
            }
            if table.contains(&usize::MAX) {
                return Err(Error::malformed("diagram", format!("map for `{f}` is not total")));
            }
            m[fi] = Some(table);
        }
        let maps = (0..shape.num_morphisms())
            .map(|f| match m[f].take() {
                Some(t) => Ok(t),
                None if shape.is_identity(f) => Ok((0..s[shape.src(f)].len()).collect()),
                None => Err(Error::malformed("diagram", format!("no map for `{}`", shape.morphism_name(f)))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(shape, s, maps)
    }

    /// Every object sent to the same set, every morphism to the identity.
    pub fn constant(shape: Arc<FiniteCategory>, elements: &[String]) -> Self {
        let sets = vec![elements.to_vec(); shape.num_objects()];
        let maps = vec![(0..elements.len()).collect(); shape.num_morphisms()];
        SetDiagram { shape, sets, maps }
    }

    pub fn empty(shape: Arc<FiniteCategory>) -> Self {
        Self::constant(shape, &[])
    }

    pub fn terminal(shape: Arc<FiniteCategory>) -> Self {
        Self::constant(shape, &["*".to_string()])
    }

    /// The covariant representable `hom(c, −)`.
    pub fn representable(shape: Arc<FiniteCategory>, c: usize) -> Self {
        let sets: Vec<Vec<String>> = (0..shape.num_objects())
            .map(|x| shape.hom(c, x).iter().map(|&f| shape.morphism_name(f).to_string()).collect())
            .collect();
        let maps = (0..shape.num_morphisms())
            .map(|m| {
                let (a, b) = (shape.src(m), shape.tgt(m));
                shape
                    .hom(c, a)
                    .iter()
                    .map(|&f| {
                        let g = shape.compose(m, f);
                        shape.hom(c, b).iter().position(|&h| h == g).unwrap()
                    })
                    .collect()
            })
            .collect();
        SetDiagram { shape, sets, maps }
    }

    pub fn violations(&self) -> Vec<String> {
        let c = &*self.shape;
        let mut out = Vec::new();
        for a in 0..c.num_objects() {
            let id = &self.maps[c.identity(a)];
            if id.iter().enumerate().any(|(x, &y)| x != y) {
                out.push(format!("identity of `{}` is not sent to an identity", c.object_name(a)));
            }
        }
        for (g, f, h) in c.composable_pairs() {
            let (mg, mf, mh) = (&self.maps[g], &self.maps[f], &self.maps[h]);
            if (0..mf.len()).any(|x| mg[mf[x]] != mh[x]) {
                out.push(format!("composite `{}` ∘ `{}` is not preserved", c.morphism_name(g), c.morphism_name(f)));
            }
        }
        out
    }

    pub fn shape(&self) -> &Arc<FiniteCategory> {
        &self.shape
    }

    pub fn set(&self, c: usize) -> &[String] {
        &self.sets[c]
    }

    pub fn sets(&self) -> &[Vec<String>] {
        &self.sets
    }

    pub fn size(&self, c: usize) -> usize {
        self.sets[c].len()
    }

    pub fn total_size(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    pub fn map(&self, m: usize) -> &[usize] {
        &self.maps[m]
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn apply(&self, m: usize, x: usize) -> usize {
        self.maps[m][x]
    }

    pub fn element_index(&self, c: usize, name: &str) -> Option<usize> {
        self.sets[c].iter().position(|e| e == name)
    }

    /// Precomposition with `f`, which must land in this diagram's shape.
    pub fn restrict(&self, f: &CatFunctor) -> Result<SetDiagram> {
        if **f.cod() != *self.shape {
            return Err(Error::invalid("restriction", "functor codomain is not the diagram shape"));
        }
        let c = f.dom();
        let sets = (0..c.num_objects()).map(|a| self.sets[f.obj(a)].clone()).collect();
        let maps = (0..c.num_morphisms()).map(|m| self.maps[f.mor(m)].clone()).collect();
        Ok(SetDiagram { shape: c.clone(), sets, maps })
    }

    /// Same data with elements renamed through `rename(object, old name)`.
    pub fn renamed(&self, rename: impl Fn(usize, &str) -> String) -> Result<SetDiagram> {
        let sets = self.sets.iter().enumerate().map(|(c, s)| s.iter().map(|x| rename(c, x)).collect()).collect();
        SetDiagram::new_unchecked(self.shape.clone(), sets, self.maps.clone())
    }

    /// Levelwise image of a subset closed under the action; `keep[c][x]`.
    pub fn subdiagram(&self, keep: &[Vec<bool>]) -> Result<(SetDiagram, DiagramMap)> {
        let c = &*self.shape;
        for m in 0..c.num_morphisms() {
            let (a, b) = (c.src(m), c.tgt(m));
            if (0..self.sets[a].len()).any(|x| keep[a][x] && !keep[b][self.maps[m][x]]) {
                return Err(Error::invalid("subdiagram", "subset is not closed under the action"));
            }
        }
        let idx: Vec<Vec<usize>> = keep.iter().map(|k| (0..k.len()).filter(|&x| k[x]).collect()).collect();
        let sets = idx.iter().enumerate().map(|(a, xs)| xs.iter().map(|&x| self.sets[a][x].clone()).collect()).collect();
        let maps = (0..c.num_morphisms())
            .map(|m| {
                let (a, b) = (c.src(m), c.tgt(m));
                idx[a].iter().map(|&x| idx[b].binary_search(&self.maps[m][x]).unwrap()).collect()
            })
            .collect();
        let sub = Arc::new(SetDiagram { shape: self.shape.clone(), sets, maps });
        let inc = DiagramMap { source: sub.clone(), target: Arc::new(self.clone()), components: idx };
        Ok(((*sub).clone(), inc))
    }
}

/// A natural transformation between set diagrams on the same shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramMap {
    source: Arc<SetDiagram>,
    target: Arc<SetDiagram>,
    components: Vec<Vec<usize>>,
}

impl DiagramMap {
    pub fn new(source: Arc<SetDiagram>, target: Arc<SetDiagram>, components: Vec<Vec<usize>>) -> Result<Self> {
        let f = Self::new_unchecked(source, target, components)?;
        if let Some(m) = f.first_unnatural() {
            return Err(Error::invalid("diagram map", format!("square at `{}` fails", f.shape().morphism_name(m))));
        }
        Ok(f)
    }

    pub fn new_unchecked(source: Arc<SetDiagram>, target: Arc<SetDiagram>, components: Vec<Vec<usize>>) -> Result<Self> {
        if source.shape != target.shape {
            return Err(Error::invalid("diagram map", "source and target have different shapes"));
        }
        if components.len() != source.sets.len() {
            return Err(Error::malformed("diagram map", "one component per object required"));
        }
        for (c, comp) in components.iter().enumerate() {
            if comp.len() != source.size(c) || comp.iter().any(|&y| y >= target.size(c)) {
                return Err(Error::malformed(
                    "diagram map",
                    format!("component at `{}` has the wrong shape", source.shape.object_name(c)),
                ));
            }
        }
        Ok(DiagramMap { source, target, components })
    }

    pub fn identity(x: &Arc<SetDiagram>) -> Self {
        let components = x.sets.iter().map(|s| (0..s.len()).collect()).collect();
        DiagramMap { source: x.clone(), target: x.clone(), components }
    }

    pub fn source(&self) -> &Arc<SetDiagram> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SetDiagram> {
        &self.target
    }

    pub fn shape(&self) -> &Arc<FiniteCategory> {
        &self.source.shape
    }

    pub fn component(&self, c: usize) -> &[usize] {
        &self.components[c]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn apply(&self, c: usize, x: usize) -> usize {
        self.components[c][x]
    }

    /// The first morphism whose naturality square fails.
    pub fn first_unnatural(&self) -> Option<usize> {
        let c = self.shape();
        (0..c.num_morphisms()).find(|&m| {
            let (a, b) = (c.src(m), c.tgt(m));
            (0..self.source.size(a))
                .any(|x| self.components[b][self.source.maps[m][x]] != self.target.maps[m][self.components[a][x]])
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &DiagramMap) -> Result<DiagramMap> {
        if self.target != other.source {
            return Err(Error::invalid("diagram map composite", "target and source differ"));
        }
        let components = self.components.iter().zip(&other.components).map(|(f, g)| f.iter().map(|&x| g[x]).collect()).collect();
        Ok(DiagramMap { source: self.source.clone(), target: other.target.clone(), components })
    }

    /// The first object at which two parallel maps differ.
    pub fn first_difference(&self, other: &DiagramMap) -> Option<usize> {
        (0..self.components.len()).find(|&c| self.components[c] != other.components[c])
    }

    pub fn is_injective(&self) -> bool {
        self.components.iter().enumerate().all(|(c, f)| {
            let mut seen = vec![false; self.target.size(c)];
            f.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.components.iter().enumerate().all(|(c, f)| {
            let mut seen = vec![false; self.target.size(c)];
            f.iter().for_each(|&y| seen[y] = true);
            seen.into_iter().all(|s| s)
        })
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<DiagramMap> {
        if !self.is_iso() {
            return None;
        }
        let components = self
            .components
            .iter()
            .map(|f| {
                let mut inv = vec![0; f.len()];
                for (x, &y) in f.iter().enumerate() {
                    inv[y] = x;
                }
                inv
            })
            .collect();
        Some(DiagramMap { source: self.target.clone(), target: self.source.clone(), components })
    }

    /// Precomposition with a functor, applied to both ends.
    pub fn restrict(&self, f: &CatFunctor) -> Result<DiagramMap> {
        let source = Arc::new(self.source.restrict(f)?);
        let target = Arc::new(self.target.restrict(f)?);
        let components = (0..f.dom().num_objects()).map(|a| self.components[f.obj(a)].clone()).collect();
        Ok(DiagramMap { source, target, components })
    }
}

/// All maps `x → y`, or a budget error.
pub fn enumerate_maps(x: &Arc<SetDiagram>, y: &Arc<SetDiagram>, budget: usize) -> Result<Vec<DiagramMap>> {
    let families = map_families(x, y, budget, None)?;
    Ok(families.into_iter().map(|f| DiagramMap { source: x.clone(), target: y.clone(), components: unflatten(x, &f) }).collect())
}

/// Number of maps `x → y`.
pub fn count_maps(x: &Arc<SetDiagram>, y: &Arc<SetDiagram>, budget: usize) -> Result<usize> {
    let mut n = 0;
    map_families(x, y, budget, Some(&mut |_| n += 1))?;
    Ok(n)
}

fn offsets(x: &SetDiagram) -> Vec<usize> {
    let mut off = Vec::with_capacity(x.sets.len() + 1);
    let mut acc = 0;
    for s in &x.sets {
        off.push(acc);
        acc += s.len();
    }
    off.push(acc);
    off
}

fn unflatten(x: &SetDiagram, flat: &[usize]) -> Vec<Vec<usize>> {
    let off = offsets(x);
    (0..x.sets.len()).map(|c| flat[off[c]..off[c + 1]].to_vec()).collect()
}

fn map_families(
    x: &SetDiagram,
    y: &SetDiagram,
    budget: usize,
    sink: Option<&mut dyn FnMut(&[usize])>,
) -> Result<Vec<Vec<usize>>> {
    if x.shape != y.shape {
        return Err(Error::invalid("diagram maps", "diagrams have different shapes"));
    }
    let c = &*x.shape;
    let off = offsets(x);
    let mut domains = Vec::with_capacity(off[c.num_objects()]);
    for a in 0..c.num_objects() {
        domains.extend(std::iter::repeat_n(y.size(a), x.size(a)));
    }
    let mut constraints = Vec::new();
    for m in 0..c.num_morphisms() {
        if c.is_identity(m) {
            continue;
        }
        let (a, b) = (c.src(m), c.tgt(m));
        for e in 0..x.size(a) {
            constraints.push((off[a] + e, off[b] + x.maps[m][e], y.maps[m].as_slice()));
        }
    }
    solve_families(&domains, &constraints, budget, "diagram map search", sink)
}

/// Disjoint union of tagged diagrams over one shape; elements become `(tag,x)`.
pub fn coproduct_diagrams(shape: &Arc<FiniteCategory>, parts: &[(String, &SetDiagram)]) -> Result<(SetDiagram, Vec<DiagramMap>)> {
    let n = shape.num_objects();
    let mut sets = vec![Vec::new(); n];
    let mut maps = vec![Vec::new(); shape.num_morphisms()];
    let mut starts = Vec::new();
    for (tag, d) in parts {
        if d.shape != *shape {
            return Err(Error::invalid("coproduct", "summands have different shapes"));
        }
        let start: Vec<usize> = sets.iter().map(Vec::len).collect();
        for a in 0..n {
            sets[a].extend(d.sets[a].iter().map(|x| format!("({tag},{x})")));
        }
        for m in 0..shape.num_morphisms() {
            let b = shape.tgt(m);
            maps[m].extend(d.maps[m].iter().map(|&y| y + start[b]));
        }
        starts.push(start);
    }
    let sum = Arc::new(SetDiagram::new_unchecked(shape.clone(), sets, maps)?);
    let injections = parts
        .iter()
        .zip(starts)
        .map(|((_, d), start)| {
            let components = (0..n).map(|a| (0..d.size(a)).map(|x| x + start[a]).collect()).collect();
            DiagramMap { source: Arc::new((*d).clone()), target: sum.clone(), components }
        })
        .collect();
    Ok(((*sum).clone(), injections))
}

/// A levelwise pushout with its two legs.
#[derive(Clone, Debug)]
pub struct DiagramPushout {
    pub object: Arc<SetDiagram>,
    pub left: DiagramMap,
    pub right: DiagramMap,
}

/// Pushout of `y ← x → z` computed levelwise. Classes meeting `y` keep the
/// least `y` name; the remaining elements of `z` keep their names, with `'`
/// appended until fresh.
pub fn pushout_diagrams(f: &DiagramMap, g: &DiagramMap) -> Result<DiagramPushout> {
    if f.source != g.source {
        return Err(Error::invalid("pushout", "maps do not share a source"));
    }
    let (y, z) = (&f.target, &g.target);
    let shape = f.shape().clone();
    let n = shape.num_objects();
    let mut sets = Vec::with_capacity(n);
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for a in 0..n {
        let (ny, nz) = (y.size(a), z.size(a));
        let mut uf = UnionFind::<usize>::new(ny + nz);
        for x in 0..f.source.size(a) {
            uf.union(f.components[a][x], ny + g.components[a][x]);
        }
        let mut class: HashMap<usize, usize> = HashMap::new();
        let mut names: Vec<String> = Vec::new();
        let mut rank: Vec<&str> = Vec::new();
        let mut cls = vec![0; ny + nz];
        for e in 0..ny + nz {
            let r = uf.find_mut(e);
            let k = *class.entry(r).or_insert_with(|| {
                names.push(String::new());
                rank.push("");
                names.len() - 1
            });
            cls[e] = k;
        }
        // name each class by its least y-element, if any
        let mut named = vec![false; names.len()];
        for e in 0..ny {
            let k = cls[e];
            let nm = y.sets[a][e].as_str();
            if !named[k] || nm < rank[k] {
                rank[k] = nm;
                named[k] = true;
            }
        }
        let mut taken: HashSet<String> = HashSet::new();
        for k in 0..names.len() {
            if named[k] {
                names[k] = rank[k].to_string();
                taken.insert(names[k].clone());
            }
        }
        for e in 0..nz {
            let k = cls[ny + e];
            if !named[k] {
                let mut cand = z.sets[a][e].clone();
                while taken.contains(&cand) {
                    cand.push('\'');
                }
                taken.insert(cand.clone());
                names[k] = cand;
                named[k] = true;
            }
        }
        // order classes by y-first appearance, then z
        let mut order: Vec<usize> = Vec::new();
        let mut pos = vec![usize::MAX; names.len()];
        for e in 0..ny + nz {
            if pos[cls[e]] == usize::MAX {
                pos[cls[e]] = order.len();
                order.push(cls[e]);
            }
        }
        sets.push(order.iter().map(|&k| names[k].clone()).collect::<Vec<_>>());
        left.push((0..ny).map(|e| pos[cls[e]]).collect::<Vec<_>>());
        right.push((0..nz).map(|e| pos[cls[ny + e]]).collect::<Vec<_>>());
    }
    let maps = (0..shape.num_morphisms())
        .map(|m| {
            let (a, b) = (shape.src(m), shape.tgt(m));
            let mut table = vec![usize::MAX; sets[a].len()];
            for e in 0..y.size(a) {
                table[left[a][e]] = left[b][y.maps[m][e]];
            }
            for e in 0..z.size(a) {
                table[right[a][e]] = right[b][z.maps[m][e]];
            }
            table
        })
        .collect();
    let object = Arc::new(SetDiagram::new_unchecked(shape, sets, maps)?);
    Ok(DiagramPushout {
        left: DiagramMap { source: y.clone(), target: object.clone(), components: left },
        right: DiagramMap { source: z.clone(), target: object.clone(), components: right },
        object,
    })
}

/// The map out of a pushout induced by a compatible pair of maps.
pub fn pushout_copair(p: &DiagramPushout, u: &DiagramMap, v: &DiagramMap) -> Result<DiagramMap> {
    if u.target != v.target {
        return Err(Error::invalid("copairing", "maps have different targets"));
    }
    let n = p.object.sets.len();
    let mut comps: Vec<Vec<usize>> = (0..n).map(|a| vec![usize::MAX; p.object.size(a)]).collect();
    for (leg, m) in [(&p.left, u), (&p.right, v)] {
        for a in 0..n {
            for (e, &k) in leg.components[a].iter().enumerate() {
                let img = m.components[a][e];
                if comps[a][k] != usize::MAX && comps[a][k] != img {
                    return Err(Error::invalid("copairing", "maps disagree on the glued part"));
                }
                comps[a][k] = img;
            }
        }
    }
    DiagramMap::new(p.object.clone(), u.target.clone(), comps)
}
