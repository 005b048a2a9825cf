use std::collections::HashMap;

use petgraph::unionfind::UnionFind;

use super::diagram::SetDiagram;
use super::solve::solve_families;
use crate::error::Result;
use crate::fincat::DEFAULT_SEARCH_BUDGET;

/// The limit of a set diagram as its set of compatible families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limit {
    /// Element names `(x_1,…,x_k)`, listing one element per object in order.
    pub elements: Vec<String>,
    /// `families[k][c]` is the component at object `c` of element `k`.
    pub families: Vec<Vec<usize>>,
}

impl Limit {
    pub fn projection(&self, c: usize) -> Vec<usize> {
        self.families.iter().map(|f| f[c]).collect()
    }
}

/// The colimit of a set diagram as a quotient of the disjoint union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colimit {
    /// Class names, sorted; each is the least representative `x@c`.
    pub elements: Vec<String>,
    /// `injections[c][x]` is the class of element `x` at object `c`.
    pub injections: Vec<Vec<usize>>,
}

pub(crate) fn family_name(names: impl Iterator<Item = impl AsRef<str>>) -> String {
    let parts: Vec<String> = names.map(|s| s.as_ref().to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn limit(x: &SetDiagram) -> Result<Limit> {
    limit_with_budget(x, DEFAULT_SEARCH_BUDGET)
}

pub fn limit_with_budget(x: &SetDiagram, budget: usize) -> Result<Limit> {
    let c = &**x.shape();
    let domains: Vec<usize> = (0..c.num_objects()).map(|a| x.size(a)).collect();
    let constraints: Vec<(usize, usize, &[usize])> =
        (0..c.num_morphisms()).filter(|&m| !c.is_identity(m)).map(|m| (c.src(m), c.tgt(m), x.map(m))).collect();
    let families = solve_families(&domains, &constraints, budget, "limit", None)?;
    let elements = families.iter().map(|f| family_name(f.iter().enumerate().map(|(a, &e)| x.set(a)[e].as_str()))).collect();
    Ok(Limit { elements, families })
}

pub fn colimit(x: &SetDiagram) -> Colimit {
    let c = &**x.shape();
    let mut off = vec![0];
    for a in 0..c.num_objects() {
        off.push(off[a] + x.size(a));
    }
    let total = off[c.num_objects()];
    let mut uf = UnionFind::<usize>::new(total);
    for m in 0..c.num_morphisms() {
        let (a, b) = (c.src(m), c.tgt(m));
        for e in 0..x.size(a) {
            uf.union(off[a] + e, off[b] + x.apply(m, e));
        }
    }
    let mut best: HashMap<usize, String> = HashMap::new();
    for a in 0..c.num_objects() {
        for e in 0..x.size(a) {
            let name = format!("{}@{}", x.set(a)[e], c.object_name(a));
            let slot = best.entry(uf.find_mut(off[a] + e)).or_insert_with(|| name.clone());
            if name < *slot {
                *slot = name;
            }
        }
    }
    let mut elements: Vec<String> = best.values().cloned().collect();
    elements.sort();
    let pos: HashMap<&str, usize> = elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let injections =
        (0..c.num_objects()).map(|a| (0..x.size(a)).map(|e| pos[best[&uf.find_mut(off[a] + e)].as_str()]).collect()).collect();
    Colimit { elements, injections }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::constructions::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn one_object_shape_returns_the_set() {
        let x = SetDiagram::constant(Arc::new(terminal()), &names(&["p", "q"]));
        assert_eq!(limit(&x).unwrap().families.len(), 2);
        assert_eq!(colimit(&x).elements, names(&["p@*", "q@*"]));
    }

    #[test]
    fn discrete_limit_is_a_product() {
        let c = Arc::new(discrete(&["a", "b"]));
        let x = SetDiagram::from_names(c, &[("a", vec!["1", "2"]), ("b", vec!["u", "v", "w"])], &[]).unwrap();
        let l = limit(&x).unwrap();
        assert_eq!(l.families.len(), 6);
        assert_eq!(l.elements[0], "(1,u)");
    }

    #[test]
    fn empty_shape() {
        let x = SetDiagram::empty(Arc::new(empty()));
        assert_eq!(limit(&x).unwrap().elements, names(&["()"]));
        assert!(colimit(&x).elements.is_empty());
    }

    #[test]
    fn colimit_with_terminal_object() {
        let c = Arc::new(walking_arrow());
        let x =
            SetDiagram::from_names(c, &[("a", vec!["x", "y"]), ("b", vec!["u", "v"])], &[("f", vec![("x", "u"), ("y", "u")])])
                .unwrap();
        let k = colimit(&x);
        assert_eq!(k.elements.len(), 2);
        assert_eq!(k.injections[0], vec![0, 0]);
    }
}
